"""Closed-form Laplace eigenvalue catalogs for the model geometries.

Each generator returns the eigenvalues of the Hodge Laplacian on
degree-p forms, with multiplicity, up to a cutoff.  These are the exact
reference spectra used at minimal faces when no mesh is requested.

Sphere form spectra: on the round n-sphere of radius r the Laplacian
splits over exact, coexact and harmonic forms.  Coclosed p-eigenforms
have eigenvalues (k+p)(k+n-p-1)/r^2, k >= 1; exact p-forms inherit the
coclosed (p-1)-eigenvalues through d.  Harmonic forms exist only in
degrees 0 and n.  The coclosed multiplicities are the classical
binomial-factorial expression below (an integer; checked by exact
division).
"""

import math
from itertools import product

from cornerspec.errors import DomainError


def circle_eigenvalues(circumference: float, p: int, cutoff: float):
    """Sorted Delta_p eigenvalues on a circle; identical for p = 0, 1."""
    if p not in (0, 1):
        raise DomainError(f"circle has no degree-{p} forms")
    out = [0.0]
    k = 1
    while True:
        lam = (2.0 * math.pi * k / circumference) ** 2
        if lam > cutoff:
            break
        out.extend([lam, lam])
        k += 1
    return out


def torus_eigenvalues(lengths, p: int, cutoff: float):
    """Sorted Delta_p eigenvalues on a flat rectangular torus.

    Scalar eigenvalues are lattice sums sum_i (2 pi k_i / L_i)^2; on a
    flat metric every p-form block repeats the scalar spectrum, so each
    value appears with the extra factor C(d, p).
    """
    d = len(lengths)
    if not 0 <= p <= d:
        raise DomainError(f"torus of dim {d} has no degree-{p} forms")
    reps = math.comb(d, p)
    ranges = []
    for L in lengths:
        kmax = int(math.floor(math.sqrt(cutoff) * L / (2.0 * math.pi)))
        ranges.append(range(-kmax, kmax + 1))
    out = []
    for ks in product(*ranges):
        lam = sum((2.0 * math.pi * k / L) ** 2 for k, L in zip(ks, lengths))
        if lam <= cutoff:
            out.extend([lam] * reps)
    out.sort()
    return out


def _coclosed_multiplicity(k: int, p: int, n: int) -> int:
    num = (2 * k + n - 1) * math.factorial(k + n - 1)
    den = (math.factorial(p) * math.factorial(n - p - 1)
           * math.factorial(k - 1) * (k + p) * (k + n - p - 1))
    if num % den:
        raise AssertionError(f"non-integer multiplicity for k={k} p={p} n={n}")
    return num // den


def sphere_eigenvalues(n: int, radius: float, p: int, cutoff: float):
    """Sorted Delta_p eigenvalues on the round n-sphere of given radius."""
    if not 0 <= p <= n:
        raise DomainError(f"{n}-sphere has no degree-{p} forms")
    r2 = radius * radius
    out = []
    if p in (0, n):
        out.append(0.0)  # harmonic: constants resp. the volume form
    blocks = []
    if p <= n - 1:
        blocks.append(p)          # coclosed p-forms
    if p >= 1:
        blocks.append(p - 1)      # exact p-forms = d of coclosed (p-1)-forms
    for q in blocks:
        k = 1
        while True:
            lam = (k + q) * (k + n - q - 1) / r2
            if lam > cutoff:
                break
            out.extend([lam] * _coclosed_multiplicity(k, q, n))
            k += 1
    out.sort()
    return out
