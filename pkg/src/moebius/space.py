"""Containers for semi-metric / quasi-metric spaces with at most one point at
infinity, plus quadruple admissibility and ingestion formats.

A finite presentation stores an explicit symmetric matrix over labels; a
procedural presentation exposes points lazily through a distance callback
plus a deterministic sample for scans.  Point labels are arbitrary hashable
values in memory; JSON/CSV round-trips stringify them.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np

from .extscalar import INF, ExtScalar, is_exact, parse_scalar, scalar_to_json

Quadruple = tuple


def is_admissible(q: Sequence) -> bool:
    """No point occurs three or more times."""
    return all(q.count(x) <= 2 for x in q)


def is_nondegenerate(q: Sequence) -> bool:
    """All points pairwise distinct."""
    return len(set(q)) == len(q)


class FiniteSpace:
    """Finite point set with a symmetric extended-distance matrix.

    ``infinity`` names the optional point at infinity; ``coords`` optionally
    carries fixture coordinates for tests and is never serialized.
    """

    is_finite = True

    def __init__(self, labels: Sequence, matrix: Sequence[Sequence[ExtScalar]],
                 infinity=None, coords=None):
        self.labels = list(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        n = len(self.labels)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError("matrix shape does not match labels")
        self.matrix = [list(row) for row in matrix]
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if infinity is not None and infinity not in self.index:
            raise ValueError(f"infinity point {infinity!r} not among labels")
        self.infinity = infinity
        self.coords = coords
        self._float_matrix = None

    def __len__(self):
        return len(self.labels)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for row in self.matrix for v in row)

    def dist(self, a, b) -> ExtScalar:
        return self.matrix[self.index[a]][self.index[b]]

    def d(self, i: int, j: int) -> ExtScalar:
        return self.matrix[i][j]

    def sample_points(self, budget: Optional[int] = None, seed: int = 0) -> list:
        if budget is None or budget >= len(self.labels):
            return list(self.labels)
        rng = random.Random(seed)
        idx = sorted(rng.sample(range(len(self.labels)), budget))
        return [self.labels[i] for i in idx]

    def finite_labels(self) -> list:
        """Labels without the point at infinity."""
        return [lab for lab in self.labels if lab != self.infinity]

    def to_float_matrix(self) -> np.ndarray:
        if self._float_matrix is None:
            self._float_matrix = np.array(
                [[float(v) for v in row] for row in self.matrix], dtype=np.float64)
        return self._float_matrix

    # -- ingestion / emission ------------------------------------------------

    @classmethod
    def from_json(cls, doc, exact: bool = True) -> "FiniteSpace":
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        labels = [str(p) for p in doc["points"]]
        matrix = [[parse_scalar(v, exact) for v in row] for row in doc["matrix"]]
        infinity = doc.get("infinity")
        if infinity is not None:
            infinity = str(infinity)
        return cls(labels, matrix, infinity=infinity)

    def to_json(self) -> dict:
        doc = {
            "points": [str(lab) for lab in self.labels],
            "matrix": [[scalar_to_json(v) for v in row] for row in self.matrix],
        }
        if self.infinity is not None:
            doc["infinity"] = str(self.infinity)
        return doc

    @classmethod
    def from_csv(cls, text: str, exact: bool = True) -> "FiniteSpace":
        """Square matrix with a header row of labels; 'inf' denotes infinity.

        A point at infinity is inferred from its all-infinite row.
        """
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        labels = [c.strip() for c in rows[0]]
        if len(rows) != len(labels) + 1:
            raise ValueError("CSV matrix is not square with a header row")
        matrix = [[parse_scalar(c.strip(), exact) for c in row] for row in rows[1:]]
        space = cls(labels, matrix)
        inf_rows = [lab for i, lab in enumerate(labels)
                    if all(matrix[i][j] == INF for j in range(len(labels)) if j != i)]
        if len(inf_rows) == 1 and len(labels) > 1:
            space.infinity = inf_rows[0]
        return space

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow([str(lab) for lab in self.labels])
        for row in self.matrix:
            writer.writerow([scalar_to_json(v) for v in row])
        return out.getvalue()


class ProceduralSpace:
    """Lazily presented point domain: a pure distance callback plus a
    deterministic sample used by scans and good-pair candidate searches."""

    is_finite = False

    def __init__(self, dist: Callable, sample: Sequence, infinity=None,
                 contains: Optional[Callable] = None, name: str = ""):
        self._dist = dist
        self._sample = list(sample)
        self.infinity = infinity
        self.contains = contains
        self.name = name

    def dist(self, a, b) -> ExtScalar:
        return self._dist(a, b)

    def sample_points(self, budget: Optional[int] = None, seed: int = 0) -> list:
        pts = list(self._sample)
        if budget is None or budget >= len(pts):
            return pts
        rng = random.Random(seed)
        idx = sorted(rng.sample(range(len(pts)), budget))
        return [pts[i] for i in idx]

    def materialize(self, budget: Optional[int] = None, seed: int = 0) -> FiniteSpace:
        pts = self.sample_points(budget, seed)
        matrix = [[self._dist(a, b) for b in pts] for a in pts]
        inf_label = self.infinity if self.infinity in pts else None
        return FiniteSpace(pts, matrix, infinity=inf_label)


def validate(sp: FiniteSpace) -> List[dict]:
    """Check symmetry, zero diagonal, non-negativity, non-degeneracy and the
    single-infinity structure.  Violations come back as data, not errors."""
    violations = []
    n = len(sp.labels)
    for i in range(n):
        if sp.matrix[i][i] != 0:
            violations.append({"check": "zero-diagonal", "at": [str(sp.labels[i])],
                               "value": scalar_to_json(sp.matrix[i][i])})
    for i in range(n):
        for j in range(i + 1, n):
            a, b = sp.matrix[i][j], sp.matrix[j][i]
            if a != b:
                violations.append({"check": "symmetry", "at": [str(sp.labels[i]), str(sp.labels[j])],
                                   "value": [scalar_to_json(a), scalar_to_json(b)]})
            if a < 0:
                violations.append({"check": "non-negative", "at": [str(sp.labels[i]), str(sp.labels[j])],
                                   "value": scalar_to_json(a)})
            if a == 0:
                violations.append({"check": "non-degenerate", "at": [str(sp.labels[i]), str(sp.labels[j])],
                                   "value": 0})
    omega = sp.infinity
    for i in range(n):
        for j in range(n):
            v = sp.matrix[i][j]
            expect_inf = omega is not None and i != j and omega in (sp.labels[i], sp.labels[j])
            if expect_inf and v != INF:
                violations.append({"check": "infinity-row", "at": [str(sp.labels[i]), str(sp.labels[j])],
                                   "value": scalar_to_json(v)})
            if not expect_inf and v == INF and i != j:
                violations.append({"check": "unexpected-infinity",
                                   "at": [str(sp.labels[i]), str(sp.labels[j])], "value": "inf"})
    return violations


def admissible_quadruples(sp: FiniteSpace) -> Iterable[Quadruple]:
    """All admissible quadruples of labels in lexicographic index order."""
    labs = sp.labels
    for q in itertools.product(labs, repeat=4):
        if is_admissible(q):
            yield q


def nondegenerate_quadruples(sp: FiniteSpace) -> Iterable[Quadruple]:
    labs = sp.labels
    for q in itertools.permutations(labs, 4):
        yield q


def count_nondegenerate(n: int) -> int:
    return n * (n - 1) * (n - 2) * (n - 3)
