"""Safety and co-safety fragments of LTL with past and of first-order logic on words."""

__version__ = "0.1.0"
