"""The three equivalent encodings of a cross-ratio value and their conversions.

* ProjTriple  -- projective triple (a : b : c), canonical representative with
  a + b + c = 1; interior points are all-positive, and the only boundary
  points are (0,1/2,1/2), (1/2,0,1/2), (1/2,1/2,0).
* RatioTriple -- multiplicative triple (alpha, beta, gamma), all finite
  positive with alpha*beta*gamma = 1, or one of the extended points
  (1,inf,0), (0,1,inf), (inf,0,1).
* LogTriple   -- additive triple (x, y, z) with x + y + z = 0, or one of
  (0,inf,-inf), (-inf,0,inf), (inf,-inf,0).

Conversions: ratio_from_proj (b/c, c/a, a/b per component, boundary points
by the fixed extension table) with inverse proj_from_ratio; psi = component
log and phi = component exp between ratio and log triples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Tuple

from .errors import DegenerateTriple
from .extscalar import (
    DEFAULT_REL_TOL,
    INF,
    NEG_INF,
    ExtLog,
    ExtScalar,
    FormalProduct,
    ext_exp,
    ext_ln,
    is_exact,
    st_div,
    values_close,
)

# boundary correspondences, in a fixed order
_PROJ_BOUNDARY = ((0, Fraction(1, 2), Fraction(1, 2)),
                  (Fraction(1, 2), 0, Fraction(1, 2)),
                  (Fraction(1, 2), Fraction(1, 2), 0))
_RATIO_BOUNDARY = ((1, INF, 0), (0, 1, INF), (INF, 0, 1))
_LOG_BOUNDARY = ((0.0, INF, NEG_INF), (NEG_INF, 0.0, INF), (INF, NEG_INF, 0.0))


class ProjTriple:
    """Canonical sum-one representative of a projective cross-ratio value."""

    __slots__ = ("entries",)

    def __init__(self, entries: Tuple[ExtScalar, ExtScalar, ExtScalar]):
        self.entries = tuple(entries)

    @property
    def is_boundary(self) -> bool:
        return any(e == 0 for e in self.entries)

    def boundary_index(self):
        """Index of the zero entry, or None for interior points."""
        for i, e in enumerate(self.entries):
            if e == 0:
                return i
        return None

    def __eq__(self, other):
        if not isinstance(other, ProjTriple):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ProjTriple{self.entries!r}"

    def close_to(self, other: "ProjTriple", rel_tol: float = DEFAULT_REL_TOL) -> bool:
        return all(values_close(a, b, rel_tol) for a, b in zip(self.entries, other.entries))


class RatioTriple:
    __slots__ = ("entries",)

    def __init__(self, entries: Tuple[ExtScalar, ExtScalar, ExtScalar], check: bool = True):
        self.entries = tuple(entries)
        if check:
            self._check()

    def _check(self):
        e = self.entries
        if e in _RATIO_BOUNDARY:
            return
        if any(v == 0 or v == INF for v in e):
            raise ValueError(f"invalid extended ratio triple {e!r}")
        prod = e[0] * e[1] * e[2]
        if all(is_exact(v) for v in e):
            if prod != 1:
                raise ValueError(f"ratio triple product {prod} != 1")
        elif not values_close(prod, 1.0):
            raise ValueError(f"ratio triple product {prod} not within tolerance of 1")

    @property
    def is_boundary(self) -> bool:
        return self.entries in _RATIO_BOUNDARY

    def __eq__(self, other):
        if not isinstance(other, RatioTriple):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"RatioTriple{self.entries!r}"

    def close_to(self, other: "RatioTriple", rel_tol: float = DEFAULT_REL_TOL) -> bool:
        return all(values_close(a, b, rel_tol) for a, b in zip(self.entries, other.entries))


class LogTriple:
    __slots__ = ("entries",)

    def __init__(self, entries: Tuple[ExtLog, ExtLog, ExtLog], check: bool = True):
        self.entries = tuple(float(v) for v in entries)
        if check:
            self._check()

    def _check(self):
        e = self.entries
        if e in _LOG_BOUNDARY:
            return
        if any(v in (INF, NEG_INF) for v in e):
            raise ValueError(f"invalid extended log triple {e!r}")
        total = e[0] + e[1] + e[2]
        scale = max(1.0, *(abs(v) for v in e))
        if abs(total) > 64 * DEFAULT_REL_TOL * scale:
            raise ValueError(f"log triple sum {total} not within tolerance of 0")

    @property
    def is_boundary(self) -> bool:
        return self.entries in _LOG_BOUNDARY

    def __eq__(self, other):
        if not isinstance(other, LogTriple):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"LogTriple{self.entries!r}"

    def close_to(self, other: "LogTriple", rel_tol: float = DEFAULT_REL_TOL) -> bool:
        return all(values_close(a, b, rel_tol) for a, b in zip(self.entries, other.entries))


def normalize_delta(raw, rel_tol: float = DEFAULT_REL_TOL) -> ProjTriple:
    """Canonicalize three formal products into a sum-one projective triple.

    The highest infinity degree among nonzero entries dominates: entries of
    lower degree vanish projectively, entries of equal degree keep their
    coefficients.  Raises DegenerateTriple if more than one entry survives
    as zero, or if a single zero is not flanked by two equal halves.
    """
    fps = [e if isinstance(e, FormalProduct) else FormalProduct(e) for e in raw]
    if len(fps) != 3:
        raise ValueError("normalize_delta expects exactly three entries")
    nonzero = [fp for fp in fps if not fp.is_zero()]
    if len(nonzero) < 2:
        raise DegenerateTriple(f"more than one zero entry after cancellation: {fps!r}")
    top = max(fp.infdeg for fp in nonzero)
    coeffs = [fp.coeff if (not fp.is_zero() and fp.infdeg == top) else 0 for fp in fps]
    zeros = sum(1 for c in coeffs if c == 0)
    if zeros > 1:
        raise DegenerateTriple(f"more than one zero entry after cancellation: {coeffs!r}")
    total = coeffs[0] + coeffs[1] + coeffs[2]
    entries = tuple(_scale(c, total) for c in coeffs)
    if zeros == 1:
        pair = [e for e in entries if e != 0]
        if not values_close(pair[0], pair[1], rel_tol):
            raise DegenerateTriple(
                f"boundary triple {entries!r} is not one of the three allowed points")
        half = Fraction(1, 2) if all(is_exact(e) for e in entries) else 0.5
        entries = tuple(0 if e == 0 else half for e in entries)
    return ProjTriple(entries)


def _scale(c, total):
    if c == 0:
        return 0
    if isinstance(c, (int, Fraction)) and isinstance(total, (int, Fraction)):
        return Fraction(c, 1) / Fraction(total, 1)
    return c / total


def ratio_from_proj(t: ProjTriple) -> RatioTriple:
    """(a : b : c) -> (b/c, c/a, a/b); boundary points via the extension table."""
    i = t.boundary_index()
    if i is not None:
        return RatioTriple(_RATIO_BOUNDARY[i], check=False)
    a, b, c = t.entries
    return RatioTriple((st_div(b, c), st_div(c, a), st_div(a, b)), check=False)


def proj_from_ratio(t: RatioTriple) -> ProjTriple:
    """Inverse of ratio_from_proj.

    Interior points use the cross-multiplied representative (1/beta, alpha, 1),
    projectively equal to the symmetric cube-root form, then normalize to sum 1.
    """
    if t.is_boundary:
        return ProjTriple(_PROJ_BOUNDARY[_RATIO_BOUNDARY.index(t.entries)])
    alpha, beta, _gamma = t.entries
    a = st_div(1, beta)
    rep = (a, alpha, 1)
    total = rep[0] + rep[1] + rep[2]
    return ProjTriple(tuple(_scale(v, total) for v in rep))


def psi(t: RatioTriple) -> LogTriple:
    """Component-wise extended log, a bijection onto the log triples."""
    return LogTriple(tuple(ext_ln(v) for v in t.entries), check=False)


def phi(t: LogTriple) -> RatioTriple:
    """Component-wise extended exp, inverse of psi."""
    return RatioTriple(tuple(ext_exp(v) for v in t.entries), check=False)


def proj_boundary_points():
    return tuple(ProjTriple(p) for p in _PROJ_BOUNDARY)


def ratio_boundary_points():
    return tuple(RatioTriple(p, check=False) for p in _RATIO_BOUNDARY)


def log_boundary_points():
    return tuple(LogTriple(p, check=False) for p in _LOG_BOUNDARY)
