"""Exact counting of t-stack-sortable permutations.

Brute-force oracles, the tail-length/legal-space recurrences for W_2 and W_3
(plain and refined by descents and peaks), generating-function residual
checks, and exact analysis of the resulting sequences.
"""

__version__ = "0.1.0"
