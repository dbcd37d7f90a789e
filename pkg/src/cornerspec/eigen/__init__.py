"""Dense symmetric eigensolver built on cyclic Jacobi rotation sweeps.

The hot kernel exists twice: a compiled Cython extension and a pure
NumPy implementation of the same sweep (round-robin pivot ordering so
the rotations vectorize).  The compiled kernel is preferred at import
time; `BACKEND` records which one is live.  `benchmarks/bench_eigen.py`
compares the two.
"""

import numpy as np

from cornerspec.errors import NumericalError

from cornerspec.eigen import _jacobi_py

try:
    from cornerspec.eigen import _jacobi_cy

    _kernel = _jacobi_cy
    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = _jacobi_py
    BACKEND = "python"

DEFAULT_TOL = 1e-10
MAX_SWEEPS = 40


def available_backends():
    """Name -> module for every kernel importable in this environment."""
    out = {"python": _jacobi_py}
    if BACKEND == "compiled":
        out["compiled"] = _kernel
    return out


def jacobi_eigenvalues(matrix, tol=DEFAULT_TOL, max_sweeps=MAX_SWEEPS,
                       kernel=None):
    """All eigenvalues of a symmetric matrix, sorted ascending.

    Cyclic Jacobi rotations drive the off-diagonal Frobenius norm below
    ``tol`` relative to the Frobenius norm of the input.  Raises
    NumericalError if the sweep cap is reached first.
    """
    a = np.array(matrix, dtype=np.float64, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return np.zeros(a.shape[0])
    k = _kernel if kernel is None else kernel
    sweeps = k.cyclic_jacobi(a, tol * scale, max_sweeps)
    if sweeps < 0:
        raise NumericalError(
            f"Jacobi sweeps did not converge within {max_sweeps} sweeps "
            f"(n={a.shape[0]}, tol={tol})")
    return np.sort(np.diagonal(a).copy())
