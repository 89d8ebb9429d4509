"""Extended nonnegative arithmetic in which infinities cancel in ratios.

Scalars live in [0, inf]. Finite values are ints, fractions.Fraction
(exact mode) or floats (float mode); the point at infinity is math.inf
for every backend, so Fraction < INF comparisons just work.

Products of distances are kept as FormalProduct values (a nonnegative
coefficient plus a count of infinite factors) so that a later ratio can
cancel the infinities instead of producing inf/inf.  The one deliberate
convention: 0 * inf is absolute zero, which is what makes the cross-ratio
of a quadruple with a repeated point reduce to its boundary value.

That convention is for distance products only.  Combining already-formed
cross-ratio components (st_mul / st_div) is strict: 0*inf, 0/0 and
inf/inf raise IndeterminateSum, because there they mean an ill-posed
inf - inf at the log level.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import IndeterminateRatio, IndeterminateSum

INF = math.inf
NEG_INF = -math.inf

#: finite nonnegative number or INF
ExtScalar = Union[int, float, Fraction]
#: finite real, INF or NEG_INF (log-distance units)
ExtLog = float

DEFAULT_REL_TOL = 1e-9


def is_inf(x) -> bool:
    return x == INF


def is_exact(x) -> bool:
    """True when x carries no float rounding (int, Fraction, or an infinity)."""
    return isinstance(x, (int, Fraction)) or x == INF or x == NEG_INF


class FormalProduct:
    """A nonnegative coefficient times ``infdeg`` factors of infinity.

    coeff == 0 is canonical absolute zero: normalization clears infdeg.
    """

    __slots__ = ("coeff", "infdeg")

    def __init__(self, coeff: ExtScalar, infdeg: int = 0):
        if coeff == INF:
            coeff, infdeg = 1, infdeg + 1
        if coeff < 0 or infdeg < 0:
            raise ValueError("FormalProduct needs coeff >= 0 and infdeg >= 0")
        if coeff == 0:
            infdeg = 0
        self.coeff = coeff
        self.infdeg = infdeg

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalProduct):
            return NotImplemented
        return self.coeff == other.coeff and self.infdeg == other.infdeg

    def __hash__(self):
        return hash((self.coeff, self.infdeg))

    def __repr__(self):
        return f"FormalProduct({self.coeff!r}, infdeg={self.infdeg})"


def fp_mul(a: ExtScalar, b: ExtScalar) -> FormalProduct:
    """Product of two extended scalars with infinity bookkeeping.

    0 * inf is absolute zero (see module docstring).
    """
    if a == 0 or b == 0:
        return FormalProduct(0)
    deg = 0
    coeff: ExtScalar = 1
    for v in (a, b):
        if v == INF:
            deg += 1
        else:
            coeff = coeff * v
    return FormalProduct(coeff, deg)


def fp_ratio(a: FormalProduct, b: FormalProduct) -> ExtScalar:
    """Ratio of formal products after cancelling common infinity factors.

    x/0 = inf for x > 0; a residual infinity in the numerator gives inf,
    in the denominator gives 0.  Raises IndeterminateRatio on 0/0.
    """
    if a.is_zero() and b.is_zero():
        raise IndeterminateRatio("0/0 has no projective value")
    if a.is_zero():
        return 0
    if b.is_zero():
        return INF
    k = min(a.infdeg, b.infdeg)
    da, db = a.infdeg - k, b.infdeg - k
    if da > 0:
        return INF
    if db > 0:
        return 0
    return _div(a.coeff, b.coeff)


def _div(a: ExtScalar, b: ExtScalar):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        return Fraction(a) / Fraction(b)
    return a / b


def st_mul(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    """Strict extended product: 0*inf raises IndeterminateSum."""
    if (a == 0 and b == INF) or (a == INF and b == 0):
        raise IndeterminateSum("0 * inf in a component combination")
    if a == INF or b == INF:
        return INF
    return a * b


def st_div(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    """Strict extended ratio: 0/0 and inf/inf raise IndeterminateSum."""
    if a == 0 and b == 0:
        raise IndeterminateSum("0/0 in a component combination")
    if a == INF and b == INF:
        raise IndeterminateSum("inf/inf in a component combination")
    if a == INF or b == 0:
        return INF
    if b == INF or a == 0:
        return 0
    return _div(a, b)


def ext_ln(a: ExtScalar) -> ExtLog:
    """Logarithm extended by ln(0) = -inf and ln(inf) = inf."""
    if a == 0:
        return NEG_INF
    if a == INF:
        return INF
    return math.log(a)


def ext_exp(x: ExtLog) -> ExtScalar:
    """Exponential extended by exp(-inf) = 0 and exp(inf) = inf."""
    if x == NEG_INF:
        return 0
    if x == INF:
        return INF
    return math.exp(x)


def values_close(a, b, rel_tol: float = DEFAULT_REL_TOL) -> bool:
    """Equality with relative tolerance for floats; 0 and +-inf match structurally.

    Exact operands (int/Fraction) compare exactly against each other.
    """
    if a == b:
        return True
    for special in (0, INF, NEG_INF):
        if a == special or b == special:
            return a == b
    if is_exact(a) and is_exact(b):
        return False
    fa, fb = float(a), float(b)
    return math.isclose(fa, fb, rel_tol=rel_tol, abs_tol=0.0)


def parse_scalar(token, exact: bool = True) -> ExtScalar:
    """Parse a matrix entry: number, 'inf', or an exact 'p/q' string."""
    if isinstance(token, (int, Fraction)):
        if token < 0:
            raise ValueError(f"negative distance {token!r}")
        return token
    if isinstance(token, float):
        if token == INF:
            return INF
        if token < 0 or math.isnan(token):
            raise ValueError(f"invalid distance {token!r}")
        return Fraction(str(token)) if exact else token
    if isinstance(token, str):
        text = token.strip()
        if text.lower() in ("inf", "infinity", "+inf"):
            return INF
        value = Fraction(text)
        if value < 0:
            raise ValueError(f"negative distance {token!r}")
        return value if exact else float(value)
    raise TypeError(f"cannot parse distance entry {token!r}")


def scalar_to_json(x):
    """JSON-friendly form: int stays int, Fraction becomes 'p/q', inf becomes 'inf'."""
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    return x
