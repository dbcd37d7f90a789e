"""Exact set arithmetic on spectrum descriptions.

A spectrum here is always "finitely many discrete eigenvalues below a
single essential ray [m, inf)", the shape every operator in scope has.
The essential part may be absent (closed manifolds).  Discrete values at
or above the threshold carry no set information and are dropped on
normalization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from cornerspec.errors import DomainError

#: Distinguished "no essential spectrum" value for ``essential_threshold``.
EMPTY = None


@dataclass(frozen=True)
class SpectrumDesc:
    """Discrete eigenvalue multiset plus an optional essential ray.

    ``discrete`` is sorted and contains only values strictly below
    ``essential_threshold`` (when a threshold is present).  Construct via
    ``make()`` to get normalization; the raw constructor trusts its input.
    """

    discrete: tuple = field(default=())
    essential_threshold: float | None = EMPTY

    @staticmethod
    def make(discrete=(), essential_threshold=EMPTY) -> "SpectrumDesc":
        vals = sorted(float(v) for v in discrete)
        if any(v < 0 for v in vals):
            raise DomainError(f"negative eigenvalue in spectrum: {vals[0]}")
        thr = essential_threshold
        if thr is not EMPTY:
            thr = float(thr)
            if thr < 0:
                raise DomainError(f"negative essential threshold: {thr}")
            vals = [v for v in vals if v < thr]
        return SpectrumDesc(tuple(vals), thr)

    def is_empty(self) -> bool:
        return not self.discrete and self.essential_threshold is EMPTY

    def __contains__(self, x) -> bool:
        if self.essential_threshold is not EMPTY and x >= self.essential_threshold:
            return True
        return any(v == x for v in self.discrete)

    def to_text(self) -> str:
        parts = []
        if self.discrete:
            parts.append("{" + ", ".join(_fmt(v) for v in self.discrete) + "}")
        if self.essential_threshold is not EMPTY:
            parts.append(f"[{_fmt(self.essential_threshold)}, ∞)")
        return " ∪ ".join(parts) if parts else "∅"


def _fmt(v: float) -> str:
    return str(int(v)) if v == int(v) else repr(v)


def min_spectrum(s: SpectrumDesc) -> float:
    """Minimum of the spectrum (discrete values and ray onset)."""
    if s.is_empty():
        raise DomainError(
            "empty spectrum: every Hodge Laplacian has nonempty spectrum, "
            "so an empty description signals an inconsistent face")
    cands = list(s.discrete)
    if s.essential_threshold is not EMPTY:
        cands.append(s.essential_threshold)
    return min(cands)


def indicial_spectrum(p: int, s_p: SpectrumDesc,
                      s_pm1: SpectrumDesc | None) -> SpectrumDesc:
    """Spectrum of the boundary model operator on degree-p forms.

    The model operator over a hyperface is the real-parameter family
    lambda^2 + (degree-p block (+) degree-(p-1) block); sweeping lambda
    over the reals turns every spectral point mu into the ray [mu, inf),
    so the result is a pure ray starting at the smaller block minimum.
    The (p-1) block does not exist for p = 0.
    """
    if p < 0:
        raise DomainError(f"negative form degree {p}")
    if p == 0 and s_pm1 is not None:
        raise DomainError("degree-(p-1) block supplied for p = 0")
    if p > 0 and s_pm1 is None:
        raise DomainError(f"degree-(p-1) block missing for p = {p}")
    m = min_spectrum(s_p)
    if s_pm1 is not None:
        m = min(m, min_spectrum(s_pm1))
    return SpectrumDesc.make((), m)


def union(a: SpectrumDesc, b: SpectrumDesc) -> SpectrumDesc:
    """Set union, renormalized (discrete points at/above the ray drop).

    Set semantics: a point present in both inputs appears once, which
    keeps union idempotent.  Multiplicity bookkeeping lives only in the
    per-face eigenvalue listings, never in set algebra.
    """
    thr = EMPTY
    if a.essential_threshold is not EMPTY and b.essential_threshold is not EMPTY:
        thr = min(a.essential_threshold, b.essential_threshold)
    elif a.essential_threshold is not EMPTY:
        thr = a.essential_threshold
    elif b.essential_threshold is not EMPTY:
        thr = b.essential_threshold
    return SpectrumDesc.make(set(a.discrete) | set(b.discrete), thr)


def to_csv_row(s: SpectrumDesc) -> str:
    """CSV cell pair ``discrete,essential_threshold`` (round-trippable)."""
    disc = " ".join(repr(v) for v in s.discrete)
    thr = "" if s.essential_threshold is EMPTY else repr(s.essential_threshold)
    return f'"{disc}",{thr}'


def from_csv_row(row: str) -> SpectrumDesc:
    """Inverse of ``to_csv_row``."""
    disc_part, _, thr_part = row.rpartition(",")
    disc_part = disc_part.strip().strip('"')
    disc = tuple(float(v) for v in disc_part.split()) if disc_part else ()
    thr = EMPTY if thr_part.strip() == "" else float(thr_part)
    return SpectrumDesc.make(disc, thr)
