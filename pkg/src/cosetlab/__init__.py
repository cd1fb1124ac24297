"""cosetlab: exact coset-state Fourier sampling over small finite groups."""

__version__ = "0.1.0"
