"""kernelsmith: Seeley kernel coefficients of complex powers of the Dirac operator."""

__version__ = "0.1.0"
