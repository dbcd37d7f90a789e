"""Independent numerical and analytic cross-checks.

Three families live here:

* the one-parameter boundary flows psi_l / phi_l of the weighted
  calculus charts, with their exact group laws;
* a truncated-cylinder finite-difference oracle whose ground energy
  converges from above to the recursion's essential threshold;
* symbol utilities: adiabatic rescaling and the Cayley-transform limit
  check for elliptic positive symbols.

Everything here is deliberately independent of the recursion engine so
the two can be played against each other in tests.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from cornerspec import spectrum as sc
from cornerspec.corner_complex import GeometryTag
from cornerspec.dec.cochain import build_cochain_complex
from cornerspec.dec.mesh import Mesh
from cornerspec.dec.solve import (ResolutionSettings, face_base_spectrum,
                                  laplacian_spectrum, spectrum)
from cornerspec.errors import DomainError, NumericalError


@dataclass(frozen=True)
class FlowMap:
    """The order-l boundary flow: psi_l conjugates it to translation."""

    l: int

    def __post_init__(self):
        if self.l < 1:
            raise DomainError(f"flow order must be >= 1, got {self.l}")


def psi(f: FlowMap, x: float) -> float:
    """psi_l(x) = ln x for l = 1, else x + x^(1-l)/(1-l); x > 0."""
    if x <= 0:
        raise DomainError(f"psi is defined on (0, inf), got x={x}")
    if f.l == 1:
        return math.log(x)
    try:
        return x + x ** (1 - f.l) / (1 - f.l)
    except OverflowError:
        return -math.inf  # x^(1-l)/(1-l) -> -inf as x -> 0+


def _psi_prime(l: int, x: float) -> float:
    if l == 1:
        return 1.0 / x
    try:
        return 1.0 + x ** (-l)
    except OverflowError:
        return math.inf


def _invert_psi(f: FlowMap, y: float, hint: float) -> float:
    """Solve psi_l(x) = y by bracketed bisection plus Newton polish."""
    lo = hi = max(hint, 1e-12)
    for _ in range(2000):
        if psi(f, lo) <= y:
            break
        lo /= 2.0
    else:
        raise NumericalError(f"no lower bracket for psi_{f.l} = {y}")
    for _ in range(2000):
        if psi(f, hi) >= y:
            break
        hi *= 2.0
    else:
        raise NumericalError(f"no upper bracket for psi_{f.l} = {y}")

    for _ in range(250):
        mid = (lo + hi) / 2.0
        if mid <= lo or mid >= hi:
            break  # bracket exhausted at float resolution
        # Newton step from the midpoint, kept only inside the bracket
        g = psi(f, mid) - y
        step = mid - g / _psi_prime(f.l, mid)
        x = step if lo < step < hi else mid
        if psi(f, x) <= y:
            lo = x
        else:
            hi = x
        if hi - lo <= 1e-13 * hi:
            break
    else:
        raise NumericalError(f"psi_{f.l} inversion stalled at y={y}")
    return (lo + hi) / 2.0


def phi(f: FlowMap, t: float, x: float) -> float:
    """The flow phi_l(t, x) = psi_l^{-1}(psi_l(x) + t); fixes 0."""
    if x < 0:
        raise DomainError(f"phi is defined on [0, inf), got x={x}")
    if x == 0.0:
        return 0.0
    if f.l == 1:
        return math.exp(t) * x
    return _invert_psi(f, psi(f, x) + t, hint=x)


@dataclass(frozen=True)
class CylinderModel:
    """Dirichlet truncation of a half-infinite cylinder over a face.

    cross_section: a GeometryTag (analytic/catalog) or a Mesh.
    """

    cross_section: object
    degree: int
    length: float
    grid_n: int = 400
    resolution: ResolutionSettings = field(default_factory=ResolutionSettings)

    def __post_init__(self):
        if self.length <= 0:
            raise DomainError("cylinder length must be positive")
        if self.grid_n < 16:
            raise DomainError(f"grid_n must be >= 16, got {self.grid_n}")


def dirichlet_min(length: float, grid_n: int) -> float:
    """Smallest eigenvalue of the 1-D second-difference Dirichlet matrix.

    grid_n interior points with spacing h = L/(grid_n + 1); the exact
    smallest eigenvalue is (2 - 2 cos(pi/(grid_n+1)))/h^2, which tends
    to (pi/L)^2 from below as the grid refines.
    """
    h = length / (grid_n + 1)
    return (2.0 - 2.0 * math.cos(math.pi / (grid_n + 1))) / (h * h)


def dirichlet_matrix(length: float, grid_n: int) -> np.ndarray:
    h = length / (grid_n + 1)
    t = (np.diag(2.0 * np.ones(grid_n))
         - np.diag(np.ones(grid_n - 1), 1)
         - np.diag(np.ones(grid_n - 1), -1))
    return t / (h * h)


def _cross_section_eigenvalues(m: CylinderModel):
    if isinstance(m.cross_section, GeometryTag):
        desc = face_base_spectrum(m.cross_section, m.degree, m.resolution)
        return list(desc.discrete)
    if isinstance(m.cross_section, Mesh):
        cx = build_cochain_complex(m.cross_section)
        ls = laplacian_spectrum(cx, m.degree, m.resolution)
        return list(ls.eigenvalues)
    raise DomainError(
        f"cross_section must be a GeometryTag or Mesh, "
        f"got {type(m.cross_section).__name__}")


def cylinder_ground_energy(m: CylinderModel, method: str = "tensor") -> float:
    """Lowest eigenvalue of the truncated product operator.

    The discretization of -d^2/dt^2 + Delta_cross on [0, L] with
    Dirichlet ends is a Kronecker sum, so its spectrum is the sumset of
    the two factor spectra ("tensor" method).  The "dense" method
    assembles the full product matrix and solves it, as an independent
    check of that additivity at small sizes.
    """
    mu = _cross_section_eigenvalues(m)
    if not mu:
        raise DomainError("cross-section spectrum is empty")
    if method == "tensor":
        return min(mu) + dirichlet_min(m.length, m.grid_n)
    if method == "dense":
        t = dirichlet_matrix(m.length, m.grid_n)
        full = np.kron(t, np.eye(len(mu))) + np.kron(
            np.eye(m.grid_n), np.diag(mu))
        ls = spectrum(full, degree=m.degree)
        return float(ls.eigenvalues[0])
    raise DomainError(f"unknown method {method!r}")


def indicial_prediction(m_p: float, m_pm1: float | None) -> float:
    """Threshold the cylinder oracle should approach from above."""
    return m_p if m_pm1 is None else min(m_p, m_pm1)


class RescaledSymbol:
    """Symbol xi -> base(t * xi); rescaling composes by multiplying t."""

    def __init__(self, base, factor: float):
        self.base = base
        self.factor = float(factor)

    def __call__(self, xi):
        return self.base(self.factor * np.asarray(xi, dtype=float))


def rescale_symbol(a, t: float):
    """Adiabatic rescaling a_t(xi) = a(t xi); exact composition law."""
    if t <= 0:
        raise DomainError(f"rescaling parameter must be positive, got {t}")
    if isinstance(a, RescaledSymbol):
        return RescaledSymbol(a.base, a.factor * t)
    return RescaledSymbol(a, t)


def cayley_symbol_limit(a, xi, t_max: float) -> complex:
    """Cayley transform of the symbol at a large covector.

    For an elliptic positive symbol of positive order the value
    (a(t xi) + i)/(a(t xi) - i) tends to 1; the error obeys
    |value - 1| = 2 / sqrt(a(t xi)^2 + 1).  Symbols with no growth at
    t_max (order 0) are flagged: no limit claim is made for them.
    """
    if t_max <= 0:
        raise DomainError("t_max must be positive")
    xi = np.asarray(xi, dtype=float)
    base = float(a(xi))
    val = float(a(t_max * xi))
    if base <= 0 or val <= 0:
        raise DomainError(
            f"symbol is not elliptic positive at sample (a={min(base, val)})")
    if val <= base * (1.0 + 1e-9):
        warnings.warn(
            "symbol shows no growth at t_max: order must be > 0 for the "
            "Cayley limit, no limit claim", stacklevel=2)
    return (val + 1j) / (val - 1j)
