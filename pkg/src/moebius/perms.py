"""Symmetric groups S4 and S3, the edge-constellation homomorphism, and the
signed action on log triples.

Permutations are tuples in one-line notation over 0-based slots: p[i] is the
image of slot i.  compose(p, q) is standard function composition, p after q.

The three opposite-edge constellations of a quadruple's slots are, in this
fixed order: {{0,1},{2,3}}, {{0,2},{1,3}}, {{0,3},{1,2}}.  A slot permutation
relabels each constellation; the induced map on constellation indices is
phi_map, a surjective homomorphism S4 -> S3 whose kernel is the identity and
the three double transpositions.
"""

from __future__ import annotations

import itertools
from typing import Sequence, Tuple

from .extscalar import INF, NEG_INF
from .triples import LogTriple, RatioTriple

Perm = Tuple[int, ...]

_CONSTELLATIONS = (
    frozenset((frozenset((0, 1)), frozenset((2, 3)))),
    frozenset((frozenset((0, 2)), frozenset((1, 3)))),
    frozenset((frozenset((0, 3)), frozenset((1, 2)))),
)


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def sign(p: Perm) -> int:
    seen = [False] * len(p)
    sgn = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


def all_perms(n: int):
    """All permutations of n slots in lexicographic one-line order."""
    return [tuple(p) for p in itertools.permutations(range(n))]


def from_cycles(text: str, n: int) -> Perm:
    """Parse 1-based cycle notation like '(12)(34)' or '1' for the identity."""
    text = text.strip()
    p = list(range(n))
    if text in ("1", "()", "e", "id"):
        return tuple(p)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad cycle notation {text!r}")
    for cyc in text[1:-1].split(")("):
        digits = [int(ch) - 1 for ch in cyc if not ch.isspace()]
        if len(set(digits)) != len(digits) or any(d < 0 or d >= n for d in digits):
            raise ValueError(f"bad cycle {cyc!r} for n={n}")
        for a, b in zip(digits, digits[1:] + digits[:1]):
            p[a] = b
    return tuple(p)


def to_cycles(p: Perm) -> str:
    """1-based disjoint-cycle form; '1' for the identity."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(str(j + 1))
            j = p[j]
        out.append("(" + "".join(cyc) + ")")
    return "".join(out) if out else "1"


def permute_tuple(p: Perm, items: Sequence) -> tuple:
    """Left action on tuples: the element in slot i moves to slot p[i]."""
    out = [None] * len(items)
    for i, v in enumerate(items):
        out[p[i]] = v
    return tuple(out)


def phi_map(p: Perm) -> Perm:
    """Induced permutation of the three opposite-edge constellations."""
    if len(p) != 4 or not is_perm(p):
        raise ValueError(f"phi_map needs a permutation of 4 slots, got {p!r}")
    image = []
    for cons in _CONSTELLATIONS:
        moved = frozenset(frozenset(p[i] for i in edge) for edge in cons)
        image.append(_CONSTELLATIONS.index(moved))
    # image[k] = where constellation k lands
    return tuple(image)


def phi_kernel() -> tuple:
    """The four slot permutations acting trivially on constellations."""
    return tuple(p for p in all_perms(4) if phi_map(p) == identity(3))


def _neg(v: float) -> float:
    if v == INF:
        return NEG_INF
    if v == NEG_INF:
        return INF
    return -v


def act(p: Perm, t: LogTriple) -> LogTriple:
    """Signed action matching slot permutations of quadruples:

    permute the components by phi_map(p) (component k moves to slot
    phi_map(p)[k]), then multiply every component by sign(p).
    """
    q = phi_map(p)
    sgn = sign(p)
    permuted = permute_tuple(q, t.entries)
    if sgn == 1:
        return LogTriple(permuted, check=False)
    return LogTriple(tuple(_neg(v) for v in permuted), check=False)


def act_ratio(p: Perm, t: RatioTriple) -> RatioTriple:
    """The same action at the multiplicative level: negation becomes reciprocal."""
    q = phi_map(p)
    sgn = sign(p)
    permuted = permute_tuple(q, t.entries)
    if sgn == 1:
        return RatioTriple(permuted, check=False)
    return RatioTriple(tuple(_recip(v) for v in permuted), check=False)


def _recip(v):
    if v == 0:
        return INF
    if v == INF:
        return 0
    if isinstance(v, (int,)) and v == 1:
        return 1
    from fractions import Fraction

    if isinstance(v, (int, Fraction)):
        return Fraction(1, 1) / Fraction(v)
    return 1.0 / v
