"""Prime zeta, super-zeta and zeta-regularized determinants."""

__version__ = "0.1.0"
