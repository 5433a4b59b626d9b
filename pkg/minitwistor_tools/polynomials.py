""" Polynomial roots with multiplicities

Coefficients are stored in ascending order of powers throughout the package.
"""

from typing import List, Tuple

import numpy as np
from numpy.polynomial import polynomial as npp

# Roots farther out than this are treated as points at infinity
ROOT_INFINITY: float = 1e8


def trim(coeffs: np.ndarray, tol: float = 1e-13) -> np.ndarray:
    """ Drop highest-order coefficients that are negligible relative to the largest """
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    scale = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0

    if scale == 0.0:
        return coeffs[:1] * 0

    last = coeffs.size - 1
    while last > 0 and abs(coeffs[last]) <= tol * scale:
        last -= 1

    return coeffs[: last + 1]


def degree(coeffs: np.ndarray, tol: float = 1e-13) -> int:
    """ Degree after trimming """
    return int(trim(coeffs, tol).size - 1)


def _residual(coeffs: np.ndarray, roots: np.ndarray) -> float:
    values = np.abs(npp.polyval(roots, coeffs))
    scale = npp.polyval(np.abs(roots), np.abs(coeffs))
    return float(np.max(values / np.maximum(scale, 1e-300)))


def aberth_roots(
    coeffs: np.ndarray, max_iterations: int = 100, tol: float = 1e-15
) -> np.ndarray:
    """ All roots by Aberth-Ehrlich simultaneous iteration

    The iteration starts from the companion-matrix eigenvalues and the set with
    the smaller backward residual is returned.
    """

    coeffs = trim(coeffs)
    if coeffs.size <= 1:
        return np.zeros(0, dtype=complex)

    derivative = npp.polyder(coeffs)
    initial = np.asarray(npp.polyroots(coeffs), dtype=complex)
    roots = initial.copy()

    for _ in range(max_iterations):
        values = npp.polyval(roots, coeffs)
        slopes = npp.polyval(roots, derivative)

        differences = roots[:, np.newaxis] - roots[np.newaxis, :]
        np.fill_diagonal(differences, 1.0)
        repulsion = np.sum(1.0 / differences, axis=1) - 1.0

        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = values / slopes
            delta = ratio / (1.0 - ratio * repulsion)

        delta = np.where(np.isfinite(delta), delta, 0.0)
        roots = roots - delta

        if np.all(np.abs(delta) <= tol * (1.0 + np.abs(roots))):
            break

    if not np.all(np.isfinite(roots)) or _residual(coeffs, roots) > _residual(
        coeffs, initial
    ):
        return initial

    return roots


def cluster_roots(
    roots: np.ndarray, radius: float = 1e-5
) -> List[Tuple[complex, int]]:
    """ Single-linkage clusters of roots within radius · (1 + |z|) """

    roots = np.asarray(roots, dtype=complex)
    labels = list(range(roots.size))

    def find(index: int) -> int:
        while labels[index] != index:
            labels[index] = labels[labels[index]]
            index = labels[index]
        return index

    for first in range(roots.size):
        for second in range(first + 1, roots.size):
            limit = radius * (1.0 + max(abs(roots[first]), abs(roots[second])))
            if abs(roots[first] - roots[second]) <= limit:
                labels[find(first)] = find(second)

    clusters: dict = {}
    for index in range(roots.size):
        clusters.setdefault(find(index), []).append(roots[index])

    out = [
        (complex(np.mean(members)), len(members)) for members in clusters.values()
    ]
    out.sort(key=lambda item: (item[0].real, item[0].imag))
    return out


def polish_root(
    coeffs: np.ndarray, root: complex, multiplicity: int, iterations: int = 8
) -> complex:
    """ Newton steps on the (m-1)-th derivative, where an m-fold root is simple """

    target = npp.polyder(coeffs, multiplicity - 1) if multiplicity > 1 else coeffs
    slope = npp.polyder(target)

    best = complex(root)
    best_value = abs(npp.polyval(best, target))
    current = best

    for _ in range(iterations):
        denominator = npp.polyval(current, slope)
        if denominator == 0:
            break
        current = current - npp.polyval(current, target) / denominator
        value = abs(npp.polyval(current, target))
        if not np.isfinite(value):
            break
        if value < best_value:
            best, best_value = complex(current), value

    # Never move a root out of its cluster
    if abs(best - root) > 1e-3 * (1.0 + abs(root)):
        return complex(root)
    return best


def multiple_root_error(
    coeffs: np.ndarray, center: complex, multiplicity: int
) -> float:
    """ Backward error of center as an m-fold root

    Largest |p⁽ᵏ⁾(c)| / Σⱼ |pⱼ| (j)ₖ |c|ʲ⁻ᵏ over k < m, which is small exactly
    when a relatively small change of the coefficients makes c an m-fold root.
    """

    coeffs = np.asarray(coeffs, dtype=complex)
    magnitudes = np.abs(coeffs)
    radius = abs(center)
    worst = 0.0
    for order in range(multiplicity):
        value = abs(npp.polyval(center, npp.polyder(coeffs, order)))
        scale = float(npp.polyval(radius, npp.polyder(magnitudes, order)).real)
        worst = max(worst, value / max(scale, 1e-300))
    return float(worst)


def _merge_clusters(
    coeffs: np.ndarray,
    clusters: List[Tuple[complex, int]],
    window: float,
    backward: float,
) -> List[Tuple[complex, int]]:
    """ Join neighbouring clusters while the joint root passes the backward test """

    clusters = list(clusters)
    merged = True
    while merged:
        merged = False
        pairs = []
        for first in range(len(clusters)):
            for second in range(first + 1, len(clusters)):
                a, m_a = clusters[first]
                b, m_b = clusters[second]
                if max(abs(a), abs(b)) >= ROOT_INFINITY:
                    continue
                gap = abs(a - b)
                if gap <= window * (1.0 + max(abs(a), abs(b))):
                    pairs.append((gap, first, second))

        for gap, first, second in sorted(pairs):
            a, m_a = clusters[first]
            b, m_b = clusters[second]
            multiplicity = m_a + m_b
            guess = (m_a * a + m_b * b) / multiplicity
            center = polish_root(coeffs, guess, multiplicity)
            if abs(center - guess) > gap:
                continue
            if multiple_root_error(coeffs, center, multiplicity) > backward:
                continue
            clusters = [
                item
                for index, item in enumerate(clusters)
                if index not in (first, second)
            ]
            clusters.append((center, multiplicity))
            merged = True
            break

    clusters.sort(key=lambda item: (item[0].real, item[0].imag))
    return clusters


def roots_with_multiplicity(
    coeffs: np.ndarray,
    radius: float = 1e-5,
    trim_tol: float = 1e-13,
    window: float = 1e-2,
    backward: float = 1e-9,
) -> List[Tuple[complex, int]]:
    """ Distinct roots with multiplicities, polished per cluster

    Roots within radius are clustered first. Clusters up to window apart are
    then joined when the joint multiple root has backward error below
    backward. A multiple root whose next derivative is small splits by far
    more than radius under coefficient rounding.
    """

    coeffs = trim(coeffs, trim_tol)
    roots = aberth_roots(coeffs)

    out = []
    for center, multiplicity in cluster_roots(roots, radius):
        if abs(center) < ROOT_INFINITY:
            center = polish_root(coeffs, center, multiplicity)
        out.append((center, multiplicity))

    return _merge_clusters(coeffs, out, window, backward)
