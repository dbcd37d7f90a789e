"""Essential spectra of Hodge Laplacians on manifolds with corners.

Computes essential-spectrum thresholds, full spectrum descriptions and
Fredholm/compactness certificates for Hodge Laplacians on open manifolds
with multi-cylindrical ends, driven by a face-lattice recursion over a
combinatorial corner complex, with discrete-exterior-calculus and
analytic eigenvalue catalogs at the compact base faces and independent
finite-difference oracles for cross-validation.
"""

__version__ = "0.1.0"
