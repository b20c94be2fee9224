"""Brown measures of x0 + T for an R-diagonal operator T free from x0."""

__version__ = "0.1.0"
