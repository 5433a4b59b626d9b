""" Minitwistor lines of toric ALE gravitational instantons """
__version__: str = "0.1.0"
