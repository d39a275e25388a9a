"""divide-forge: open books and Stein surgery data from divides in the n-holed disk."""

__version__ = "0.1.0"
