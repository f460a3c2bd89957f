"""lsqbench - dense least-squares solvers and a solver benchmark harness.

Compares the SVD pseudoinverse against batch gradient descent on
synthetic regression problems of controlled size and conditioning.
"""

__version__ = "0.1.0"
