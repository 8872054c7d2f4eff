"""Gammoid and transversal matroid workbench on finite and truncated digraphs."""
__version__ = "0.1.0"
