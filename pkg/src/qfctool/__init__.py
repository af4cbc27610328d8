"""Exact decisions for factorial-closure properties of Laurent subalgebras.

``decide`` holds the verdict engine; ``certify`` re-checks its output.
"""

__version__ = "0.1.0"
