"""Exact certificates for simple symmetric decompositions and exceptional holonomy.

All computations are carried out over the rationals on split forms.  Every
identity verified is polynomial with rational coefficients, so it holds over
any extension field, in particular over the complex numbers.
"""

__version__ = "0.1.0"
