"""Cross-ratio computation, axiom verification, derived semi-metrics,
involution, and structure equivalence.

A structure maps admissible quadruples of points to extended log triples.
Exact-mode identity checks are carried out at the multiplicative
(RatioTriple) level, where every axiom is a rational identity; float-mode
checks use the global relative tolerance.

Conventions.  Quadruples permute by the left slot action (the element in
slot i moves to slot p[i]); the induced action on triples is perms.act /
perms.act_ratio.  Component order of a ratio triple for (w,x,y,z):

    ( d(w,y)d(x,z) / d(w,z)d(x,y),
      d(w,z)d(x,y) / d(w,x)d(y,z),
      d(w,x)d(y,z) / d(w,y)d(x,z) )

On domains of size three there are no non-degenerate quadruples, so
quadruple-level scans are vacuous while derived semi-metrics remain
available.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Dict, Iterable, Optional, Sequence

from . import perms
from .errors import (
    BranchDisagreement,
    InadmissibleQuadruple,
    IndeterminateSum,
)
from .extscalar import (
    DEFAULT_REL_TOL,
    INF,
    ExtScalar,
    FormalProduct,
    ext_ln,
    fp_mul,
    fp_ratio,
    st_div,
    st_mul,
    values_close,
)
from .space import FiniteSpace, is_admissible, is_nondegenerate
from .triples import (
    LogTriple,
    ProjTriple,
    RatioTriple,
    normalize_delta,
    phi,
    proj_from_ratio,
    psi,
    ratio_from_proj,
)

_RATIO_DEGENERATE = (1, INF, 0)  # value at (x,x,y,z)


def crt_of(sp, q) -> ProjTriple:
    """Cross-ratio triple (d(w,x)d(y,z) : d(w,y)d(z,x) : d(w,z)d(x,y)),
    canonicalized; infinity factors cancel degree-wise."""
    if not is_admissible(q):
        raise InadmissibleQuadruple(f"{q!r}")
    w, x, y, z = q
    d = sp.dist
    return normalize_delta((
        fp_mul(d(w, x), d(y, z)),
        fp_mul(d(w, y), d(z, x)),
        fp_mul(d(w, z), d(x, y)),
    ))


def ratio_of(sp, q) -> RatioTriple:
    return ratio_from_proj(crt_of(sp, q))


def M_of(sp, q) -> LogTriple:
    """Log-triple form, equal to the alternating sum of pairwise log
    distances (components sum to zero away from the boundary)."""
    return psi(ratio_of(sp, q))


def classical_cross_ratio(sp, q) -> RatioTriple:
    """Independent expansion of the multiplicative triple straight from the
    six pairwise distances; oracle for the crt -> ratio conversion path."""
    if not is_admissible(q):
        raise InadmissibleQuadruple(f"{q!r}")
    w, x, y, z = q
    d = sp.dist
    return RatioTriple((
        fp_ratio(fp_mul(d(w, y), d(x, z)), fp_mul(d(w, z), d(x, y))),
        fp_ratio(fp_mul(d(w, z), d(x, y)), fp_mul(d(w, x), d(y, z))),
        fp_ratio(fp_mul(d(w, x), d(y, z)), fp_mul(d(w, y), d(x, z))),
    ), check=False)


class MoebiusStructure:
    """Map from admissible quadruples to extended log triples."""

    def __init__(self, points: Sequence, ratio_fn: Callable, provenance: str,
                 exact: bool, space=None):
        self.points = list(points)
        self._ratio_fn = ratio_fn
        self.provenance = provenance
        self.exact = exact
        self.space = space
        self._cache: Dict[tuple, RatioTriple] = {}

    def ratio(self, q) -> RatioTriple:
        q = tuple(q)
        hit = self._cache.get(q)
        if hit is None:
            hit = self._ratio_fn(q)
            self._cache[q] = hit
        return hit

    def evaluate(self, q) -> LogTriple:
        return psi(self.ratio(q))

    def crt(self, q) -> ProjTriple:
        return proj_from_ratio(self.ratio(q))

    def ratios_equal(self, a: RatioTriple, b: RatioTriple,
                     rel_tol: float = DEFAULT_REL_TOL) -> bool:
        if self.exact:
            return a.entries == b.entries
        return a.close_to(b, rel_tol)


def induced_structure(sp) -> MoebiusStructure:
    points = sp.labels if sp.is_finite else sp.sample_points()
    exact = sp.exact if sp.is_finite else False
    return MoebiusStructure(points, lambda q: ratio_of(sp, q),
                            provenance="induced", exact=exact, space=sp)


def table_structure(points: Sequence, entries: Dict[tuple, LogTriple]) -> MoebiusStructure:
    """Structure backed by an explicit table.

    Entries may cover only orbit representatives: missing quadruples are
    filled by the signed permutation action, and degenerate admissible
    quadruples default to the boundary value when no entry reaches them.
    """
    table = {tuple(q): phi(t) if isinstance(t, LogTriple) else RatioTriple(t)
             for q, t in entries.items()}

    def lookup(q):
        q = tuple(q)
        if not is_admissible(q):
            raise InadmissibleQuadruple(f"{q!r}")
        hit = table.get(q)
        if hit is not None:
            return hit
        for p in perms.all_perms(4):
            rep = perms.permute_tuple(p, q)
            hit = table.get(rep)
            if hit is not None:
                return perms.act_ratio(perms.inverse(p), hit)
        if not is_nondegenerate(q):
            return _degenerate_value(q)
        raise KeyError(f"no table entry covers quadruple {q!r}")

    return MoebiusStructure(points, lookup, provenance="table", exact=False)


def _degenerate_value(q) -> RatioTriple:
    dup = next(v for v in q if q.count(v) == 2)
    dup_slots = [i for i, v in enumerate(q) if v == dup]
    other_slots = [i for i in range(4) if i not in dup_slots]
    p = [0] * 4
    p[0], p[1] = dup_slots
    p[2], p[3] = other_slots
    return perms.act_ratio(tuple(p), RatioTriple(_RATIO_DEGENERATE, check=False))


def full_table(m: MoebiusStructure) -> Dict[tuple, LogTriple]:
    """Materialize the structure as an explicit quadruple table."""
    out = {}
    for q in _admissible(m.points):
        out[q] = m.evaluate(q)
    return out


def _admissible(points) -> Iterable[tuple]:
    for q in itertools.product(points, repeat=4):
        if is_admissible(q):
            yield q


def _sampled(points, repeat: int, budget: int, seed: int) -> Iterable[tuple]:
    """Deterministic uniform sample (without replacement) of admissible
    index tuples, decoded from mixed-radix integers."""
    n = len(points)
    total = n ** repeat
    rng = random.Random(seed)
    chosen = set()
    out = []
    attempts = 0
    while len(out) < budget and attempts < budget * 20:
        attempts += 1
        code = rng.randrange(total)
        if code in chosen:
            continue
        chosen.add(code)
        idx = []
        c = code
        for _ in range(repeat):
            c, r = divmod(c, n)
            idx.append(r)
        q = tuple(points[i] for i in idx)
        if is_admissible(q):
            out.append(q)
    return out


def lambda_exp_of(m: MoebiusStructure, x, y, w, a, b,
                  rel_tol: float = DEFAULT_REL_TOL) -> ExtScalar:
    """Multiplicative form of the cocycle defect: the value exp(lambda) with

        lambda = first(M(a,x,w,b)) + first(M(a,w,y,b)) - first(M(a,x,y,b))

    computed from the first components when x != b and y != a, and from the
    second components (inverted) when x != a and y != b; both must agree.
    """
    if not (a != w != b != a):
        raise IndeterminateSum("base points w, a, b must be pairwise distinct")
    quint = (x, y, w, a, b)
    if not is_admissible(quint + ()):  # admissibility of the 5-tuple
        raise InadmissibleQuadruple(f"{quint!r}")
    r1 = m.ratio((a, x, w, b))
    r2 = m.ratio((a, w, y, b))
    r3 = m.ratio((a, x, y, b))
    val_a = val_b = None
    if x != b and y != a:
        val_a = st_div(st_mul(r1.entries[0], r2.entries[0]), r3.entries[0])
    if x != a and y != b:
        val_b = st_div(r3.entries[1], st_mul(r1.entries[1], r2.entries[1]))
    if val_a is None and val_b is None:
        raise IndeterminateSum(
            f"neither component branch is well-defined for {quint!r}")
    if val_a is not None and val_b is not None:
        if not values_close(val_a, val_b, rel_tol):
            raise BranchDisagreement(
                f"branches give {val_a!r} vs {val_b!r} at {quint!r}")
    return val_a if val_a is not None else val_b


def lambda_of(m: MoebiusStructure, x, y, w, a, b,
              rel_tol: float = DEFAULT_REL_TOL) -> float:
    """The additive cocycle defect; -inf and +inf at the degeneracies."""
    return ext_ln(lambda_exp_of(m, x, y, w, a, b, rel_tol))


class DerivedSemiMetric:
    """Semi-metric induced by a base triple (w, a, b): w at infinity and
    distance one between a and b."""

    def __init__(self, m: MoebiusStructure, base, rel_tol: float = DEFAULT_REL_TOL):
        w, a, b = base
        if len({w, a, b}) != 3:
            raise ValueError("base triple must be non-degenerate")
        self.m = m
        self.base = (w, a, b)
        self.rel_tol = rel_tol

    def dist(self, x, y) -> ExtScalar:
        if x == y:
            return 0
        w, a, b = self.base
        return lambda_exp_of(self.m, x, y, w, a, b, self.rel_tol)

    def space(self) -> FiniteSpace:
        pts = list(self.m.points)
        matrix = [[self.dist(x, y) for y in pts] for x in pts]
        return FiniteSpace(pts, matrix, infinity=self.base[0])


def derive_dA(m: MoebiusStructure, base, rel_tol: float = DEFAULT_REL_TOL) -> DerivedSemiMetric:
    return DerivedSemiMetric(m, base, rel_tol)


def involute(sp: FiniteSpace, o) -> FiniteSpace:
    """New presentation with d_o(x,y) = d(x,y) / (d(x,o) d(o,y)); o moves to
    infinity, a previous point at infinity comes back at 1/d(o, .)."""
    if o not in sp.index:
        raise ValueError(f"unknown point {o!r}")
    if sp.infinity is not None and o == sp.infinity:
        raise ValueError("cannot involute at the point at infinity")
    pts = list(sp.labels)
    matrix = []
    for x in pts:
        row = []
        for y in pts:
            if x == y:
                row.append(0)
            else:
                num = FormalProduct(sp.dist(x, y))
                den = fp_mul(sp.dist(x, o), sp.dist(o, y))
                row.append(fp_ratio(num, den))
        matrix.append(row)
    return FiniteSpace(pts, matrix, infinity=o)


# -- axiom verification ------------------------------------------------------


def check_axioms(m: MoebiusStructure, rel_tol: float = DEFAULT_REL_TOL,
                 sample_budget: Optional[int] = None, seed: int = 0) -> dict:
    """Exhaustively verify the four structure axioms on a finite domain.

    Property 1 runs over admissible quadruples x all 24 slot permutations;
    properties 2-3 over admissible quadruples; property 4 (third component
    zero, first two components inverse to each other, well-definedness of
    the single-component branches) over admissible quintuples.  With a
    sample budget the scans run over a seeded uniform sample instead.
    """
    pts = m.points
    n = len(pts)
    violations = []
    perm_data = [(p, perms.phi_map(p), perms.sign(p)) for p in perms.all_perms(4)]

    if sample_budget is not None and n ** 4 > sample_budget:
        quads = list(_sampled(pts, 4, sample_budget, seed))
    else:
        quads = list(_admissible(pts))
    quad_count = 0
    for q in quads:
        quad_count += 1
        rq = m.ratio(q)
        # property 2: finite exactly off the degenerate locus
        if rq.is_boundary == is_nondegenerate(q):
            violations.append({"axiom": 2, "quad": [str(v) for v in q],
                               "value": repr(rq.entries)})
        # property 3: the doubled-first-slot pattern takes the fixed value
        if q[0] == q[1]:
            if rq.entries != _RATIO_DEGENERATE:
                violations.append({"axiom": 3, "quad": [str(v) for v in q],
                                   "value": repr(rq.entries)})
        # property 1 over the full slot action
        for p, _, _ in perm_data:
            expected = perms.act_ratio(p, rq)
            actual = m.ratio(perms.permute_tuple(p, q))
            if not m.ratios_equal(actual, expected, rel_tol):
                violations.append({"axiom": 1, "quad": [str(v) for v in q],
                                   "perm": perms.to_cycles(p),
                                   "expected": repr(expected.entries),
                                   "actual": repr(actual.entries)})
                break  # one witness per quadruple keeps reports readable

    if sample_budget is not None and n ** 5 > sample_budget:
        quints = _sampled(pts, 5, sample_budget, seed + 1)
    else:
        quints = (t for t in itertools.product(pts, repeat=5) if is_admissible(t))
    quint_count = 0
    for x, y, w, a, b in quints:
        if not (a != w != b != a):
            continue
        quint_count += 1
        full = x not in (a, b) and y not in (a, b)
        branch_a = x != b and y != a
        branch_b = x != a and y != b
        if not (branch_a or branch_b):
            continue
        r1 = m.ratio((a, x, w, b))
        r2 = m.ratio((a, w, y, b))
        r3 = m.ratio((a, x, y, b))
        quint_str = [str(v) for v in (x, y, w, a, b)]
        try:
            t1 = st_div(st_mul(r1.entries[0], r2.entries[0]), r3.entries[0]) if branch_a else None
            t2 = st_div(st_mul(r1.entries[1], r2.entries[1]), r3.entries[1]) if branch_b else None
        except IndeterminateSum as exc:
            violations.append({"axiom": 4, "quint": quint_str,
                               "error": f"ill-posed component: {exc}"})
            continue
        if full:
            try:
                t3 = st_div(st_mul(r1.entries[2], r2.entries[2]), r3.entries[2])
            except IndeterminateSum as exc:
                violations.append({"axiom": 4, "quint": quint_str,
                                   "error": f"ill-posed third component: {exc}"})
                continue
            if not values_close(t3, 1, rel_tol) if not m.exact else t3 != 1:
                violations.append({"axiom": 4, "quint": quint_str,
                                   "component": 3, "value": repr(t3)})
            if not _inverse_pair(t1, t2, m.exact, rel_tol):
                violations.append({"axiom": 4, "quint": quint_str,
                                   "lambda": [repr(t1), repr(t2)]})

    status = "pass" if not violations else "violations"
    return {
        "check": "axioms",
        "status": status,
        "counts": {"quadruples": quad_count, "quintuples": quint_count,
                   "violations": len(violations)},
        "violations": violations,
    }


def _inverse_pair(t1, t2, exact: bool, rel_tol: float) -> bool:
    if t1 == INF:
        return t2 == 0
    if t1 == 0:
        return t2 == INF
    if t2 in (0, INF):
        return False
    prod = t1 * t2
    return prod == 1 if exact else values_close(prod, 1, rel_tol)


def verify_dA_theorem(m: MoebiusStructure, base, b_point=None,
                      base_swapped=None, base_involuted=None,
                      rel_tol: float = DEFAULT_REL_TOL) -> dict:
    """Verify the five derived-semi-metric properties for a base triple:

    1. semi-metric axioms (symmetric, non-negative, zero exactly on the
       diagonal);
    2. infinite distance to the base point at infinity, unit distance
       between the two finite base points;
    3. swapping the finite base points changes nothing, and moving the
       second one to infinity relates by division through its distances;
    4. changing the last base point rescales by a single positive constant;
    5. the structure induced by the derived semi-metric is the original.
    """
    w, a, b = base
    da = derive_dA(m, base, rel_tol)
    pts = m.points
    eq = (lambda u, v: u == v) if m.exact else (lambda u, v: values_close(u, v, rel_tol))
    failures = []

    # property 1 + 2
    for x in pts:
        for y in pts:
            vxy = da.dist(x, y)
            if not eq(vxy, da.dist(y, x)):
                failures.append({"property": 1, "pair": [str(x), str(y)], "issue": "asymmetric"})
            if (vxy == 0) != (x == y):
                failures.append({"property": 1, "pair": [str(x), str(y)], "issue": "degenerate"})
        if x != w and da.dist(x, w) != INF:
            failures.append({"property": 2, "pair": [str(x), str(w)], "issue": "not infinite"})
    if not eq(da.dist(a, b), 1):
        failures.append({"property": 2, "pair": [str(a), str(b)],
                         "value": repr(da.dist(a, b))})

    # property 3
    swapped = derive_dA(m, base_swapped or (w, b, a), rel_tol)
    involved = derive_dA(m, base_involuted or (b, a, w), rel_tol)
    for x in pts:
        for y in pts:
            if not eq(da.dist(x, y), swapped.dist(x, y)):
                failures.append({"property": 3, "pair": [str(x), str(y)], "issue": "swap"})
            lhs = involved.dist(x, y)
            den = fp_mul(da.dist(x, b), da.dist(b, y))
            num = FormalProduct(da.dist(x, y))
            if x == y:
                continue
            rhs = fp_ratio(num, den)
            if not eq(lhs, rhs):
                failures.append({"property": 3, "pair": [str(x), str(y)],
                                 "issue": "involution identity",
                                 "lhs": repr(lhs), "rhs": repr(rhs)})

    # property 4: a single rescaling constant against base (w, a, b_point)
    bp = b_point
    if bp is None:
        bp = next((p for p in pts if p not in (w, a, b)), None)
    scale = None
    if bp is not None:
        other = derive_dA(m, (w, a, bp), rel_tol)
        for x in pts:
            for y in pts:
                if x == y or w in (x, y):
                    continue
                u, v = da.dist(x, y), other.dist(x, y)
                lam = st_div(u, v)
                if scale is None:
                    scale = lam
                elif not eq(lam, scale):
                    failures.append({"property": 4, "pair": [str(x), str(y)],
                                     "ratio": repr(lam), "expected": repr(scale)})
        if scale is not None and not scale > 0:
            failures.append({"property": 4, "issue": "non-positive constant",
                             "ratio": repr(scale)})

    # property 5: feeding the derived semi-metric back induces the same map
    induced = induced_structure(da.space())
    for q in _admissible(pts):
        if not m.ratios_equal(induced.ratio(q), m.ratio(q), rel_tol):
            failures.append({"property": 5, "quad": [str(v) for v in q]})
            break

    return {
        "check": "derived-semi-metric",
        "base": [str(v) for v in base],
        "rescale_point": None if bp is None else str(bp),
        "rescale_constant": None if scale is None else repr(scale),
        "status": "pass" if not failures else "violations",
        "violations": failures,
    }


def check_equivalence(m: MoebiusStructure, m2: MoebiusStructure, f: dict,
                      rel_tol: float = DEFAULT_REL_TOL,
                      base_budget: Optional[int] = None, seed: int = 0) -> dict:
    """Verify that the bijection f preserves the structure on all admissible
    quadruples, and the derived-metric identity
    d_A(x, y) = d_f(A)(f(x), f(y)) over base triples and point pairs."""
    if sorted(map(str, f.keys())) != sorted(map(str, m.points)) or \
            sorted(map(str, f.values())) != sorted(map(str, m2.points)):
        raise ValueError("f is not a bijection between the two point sets")
    exact = m.exact and m2.exact
    eq_ratio = (lambda u, v: u.entries == v.entries) if exact else \
        (lambda u, v: u.close_to(v, rel_tol))
    eq_val = (lambda u, v: u == v) if exact else (lambda u, v: values_close(u, v, rel_tol))
    violations = []
    for q in _admissible(m.points):
        fq = tuple(f[v] for v in q)
        if not eq_ratio(m.ratio(q), m2.ratio(fq)):
            violations.append({"identity": "structure", "quad": [str(v) for v in q]})
            if len(violations) > 16:
                break

    triples = [t for t in itertools.permutations(m.points, 3)]
    if base_budget is not None and len(triples) > base_budget:
        rng = random.Random(seed)
        triples = [triples[i] for i in sorted(rng.sample(range(len(triples)), base_budget))]
    for base in triples:
        da = derive_dA(m, base, rel_tol)
        db = derive_dA(m2, tuple(f[v] for v in base), rel_tol)
        bad = False
        for x in m.points:
            for y in m.points:
                if not eq_val(da.dist(x, y), db.dist(f[x], f[y])):
                    violations.append({"identity": "derived-metric",
                                       "base": [str(v) for v in base],
                                       "pair": [str(x), str(y)]})
                    bad = True
                    break
            if bad:
                break
        if len(violations) > 32:
            break

    return {
        "check": "equivalence",
        "status": "pass" if not violations else "violations",
        "violations": violations,
    }
