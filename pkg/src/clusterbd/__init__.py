"""Exact cluster seeds, Belavin-Drinfeld R-matrices, and Sklyanin brackets
on SL_n and GL_n, with a built-in catalog of verified low-rank cases."""

__version__ = "0.1.0"
