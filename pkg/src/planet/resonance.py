"""Incidence matrices, affine blocks of Q = J^T J - E, and Orlik-Solomon H^1."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import NetError
from .field import CyclotomicField
from .geom import Line, Point, check_same_field, cross, incidence_table
from .net import Net, PointIndex, require_verified

EIG_TOL = 1e-9


def incidence_matrix(points: Sequence[Point], lines: Sequence[Line]) -> np.ndarray:
    """J[x, l] = 1 iff point x lies on line l."""
    if points and lines:
        check_same_field(*points, *lines)
    return incidence_table(list(points), list(lines)).astype(np.int64)


def q_matrix(J: np.ndarray) -> np.ndarray:
    J = np.asarray(J, dtype=np.int64)
    n = J.shape[1]
    return J.T @ J - np.ones((n, n), dtype=np.int64)


# ---------------------------------------------------------------------------
# positive semidefiniteness


def charpoly_int(Q: np.ndarray) -> list[Fraction]:
    """Coefficients of det(tI - Q), highest degree first (exact)."""
    A = [[Fraction(int(x)) for x in row] for row in np.asarray(Q)]
    n = len(A)
    coeffs = [Fraction(1)]
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
        M = [[AM[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def psd_exact(Q: np.ndarray) -> tuple[bool, int]:
    """(is positive semidefinite, nullity) of a symmetric integer matrix.

    All eigenvalues are real, so Q is PSD iff the coefficients of
    det(tI - Q) alternate in sign; the nullity is the number of trailing zeros.
    """
    coeffs = charpoly_int(Q)
    psd = all((-1) ** k * c >= 0 for k, c in enumerate(coeffs))
    nullity = 0
    for c in reversed(coeffs):
        if c != 0:
            break
        nullity += 1
    return psd, nullity


def psd_numeric(Q: np.ndarray, tol: float = EIG_TOL) -> tuple[bool, int]:
    Q = np.asarray(Q, dtype=float)
    scale = float(np.max(np.abs(Q))) or 1.0
    w = np.linalg.eigvalsh(Q / scale)
    return bool(np.all(w >= -tol)), int(np.sum(np.abs(w) <= tol))


@dataclass(frozen=True)
class Block:
    lines: tuple[int, ...]
    psd: bool
    nullity: int

    @property
    def affine(self) -> bool:
        return self.psd and self.nullity >= 1

    def to_json(self) -> dict:
        return {"lines": list(self.lines), "psd": self.psd, "nullity": self.nullity, "affine": self.affine}


@dataclass
class ResonanceData:
    J: np.ndarray
    Q: np.ndarray
    blocks: list[Block] = dc_field(default_factory=list)

    @property
    def affine_blocks(self) -> list[Block]:
        return [b for b in self.blocks if b.affine]

    @property
    def n_affine(self) -> int:
        return len(self.affine_blocks)

    def covers(self) -> bool:
        """Every point of X meets a line of every affine block."""
        aff = self.affine_blocks
        if not aff:
            return False
        return all(any(self.J[x, l] for l in b.lines) for x in range(self.J.shape[0]) for b in aff)

    def supports(self, k: int) -> bool:
        """At least k + 2 affine blocks, jointly covering X."""
        return self.n_affine >= k + 2 and self.covers()

    def to_json(self) -> dict:
        return {
            "J": self.J.tolist(),
            "Q": self.Q.tolist(),
            "blocks": [b.to_json() for b in self.blocks],
            "n_affine": self.n_affine,
            "covers_all_points": self.covers(),
            "max_k": self.n_affine - 2 if self.covers() else None,
        }


def _components(Q: np.ndarray) -> list[list[int]]:
    n = Q.shape[0]
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in np.nonzero(Q[i])[0]:
                if j != i and not seen[j]:
                    seen[j] = True
                    stack.append(int(j))
        out.append(sorted(comp))
    return out


def q_blocks(J: np.ndarray, exact: bool = True) -> ResonanceData:
    """Q = J^T J - E split into indecomposable blocks, each tested for affine type."""
    J = np.asarray(J, dtype=np.int64)
    if J.ndim != 2 or not np.isin(J, (0, 1)).all():
        raise ValueError("J must be a 0/1 matrix")
    Q = q_matrix(J)
    blocks = []
    for comp in _components(Q):
        sub = Q[np.ix_(comp, comp)]
        psd, nullity = psd_exact(sub) if exact else psd_numeric(sub)
        blocks.append(Block(tuple(comp), psd, nullity))
    return ResonanceData(J, Q, blocks)


def net_resonance(net: Net, exact: bool = True) -> ResonanceData:
    points = net.points if net.points is not None else None
    if points is None:
        from .net import compute_points

        points = compute_points(net)
    return q_blocks(incidence_matrix(points, net.lines), exact)


# ---------------------------------------------------------------------------
# the essential component


@dataclass(frozen=True)
class ComponentV:
    basis: list[list[int]]
    labels: list[int]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vector(self, weights: Sequence) -> list:
        """Class-constant vector with value weights[i] on class i (weights summing to 0)."""
        if len(weights) != self.dim + 1:
            raise ValueError(f"need {self.dim + 1} class weights")
        return [weights[c] for c in self.labels]

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": self.basis}


def essential_component(net: Net) -> ComponentV:
    """Sum-zero vectors constant on each class (lines in class order)."""
    require_verified(net)
    labels = net.labels()
    k = net.k
    basis = [[int(c == 0) - int(c == i) for c in labels] for i in range(1, k)]
    return ComponentV(basis, labels)


# ---------------------------------------------------------------------------
# Orlik-Solomon algebra


@dataclass(frozen=True)
class Flat:
    point: Point
    lines: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


class Arrangement:
    """Lines of P^2 together with their intersection lattice (rank-2 flats)."""

    def __init__(self, lines: Sequence[Line]):
        if len(lines) < 2:
            raise ValueError("an arrangement needs at least two lines")
        field = check_same_field(*lines)
        for i, j in combinations(range(len(lines)), 2):
            if lines[i] == lines[j]:
                raise NetError(f"lines #{i} and #{j} coincide")
        self.field = field
        self.lines = list(lines)
        index = PointIndex(field)
        for a, b in combinations(lines, 2):
            index.add(Point(field, cross(a.coords, b.coords)))
        table = incidence_table(index.points, self.lines)
        self.flats = [Flat(p, tuple(int(i) for i in np.nonzero(row)[0])) for p, row in zip(index.points, table)]

    @classmethod
    def from_net(cls, net: Net) -> "Arrangement":
        return cls(net.lines)

    @property
    def n(self) -> int:
        return len(self.lines)

    def a2_dimension(self) -> int:
        return sum(f.multiplicity - 1 for f in self.flats)

    def check_lattice(self) -> bool:
        """Every pair of lines lies in exactly one flat."""
        count: dict[tuple[int, int], int] = {}
        for f in self.flats:
            for pair in combinations(f.lines, 2):
                count[pair] = count.get(pair, 0) + 1
        return all(count.get(p, 0) == 1 for p in combinations(range(self.n), 2))


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(combinations(range(n), 2))}


def _wedge(idx, i, j):
    """(sign, basis index) of e_i ^ e_j, or None when i == j."""
    if i == j:
        return None
    return (1, idx[(i, j)]) if i < j else (-1, idx[(j, i)])


def os_relations(arr: Arrangement) -> list[dict[int, int]]:
    """Boundaries of e_i e_j e_k for concurrent triples, as sparse vectors in Lambda^2."""
    idx = _pair_index(arr.n)
    rels = []
    for f in arr.flats:
        for i, j, k in combinations(f.lines, 3):
            rels.append({idx[(j, k)]: 1, idx[(i, k)]: -1, idx[(i, j)]: 1})
    return rels


def _project_sum_zero(a: Sequence):
    n = len(a)
    if all(isinstance(x, Rational) for x in a):
        vals = [Fraction(x) for x in a]
        mean = sum(vals) / n
        return [x - mean for x in vals], True
    vals = np.asarray(a, dtype=complex)
    return list(vals - vals.mean()), False


def os_h1_dim(arr: Arrangement, a: Sequence) -> int:
    """dim H^1(A, a) for the Orlik-Solomon algebra of the arrangement.

    ``a`` is taken modulo the sum of all generators (it is projected onto
    the sum-zero hyperplane), so the n-dimensional degree-1 space is read
    projectively with n - 1 effective directions.  Rational input is handled
    exactly.
    """
    n = arr.n
    if len(a) != n:
        raise ValueError(f"vector has length {len(a)}, arrangement has {n} lines")
    a, exact = _project_sum_zero(a)
    if all(x == 0 for x in a) if exact else np.allclose(a, 0, atol=1e-12 * max(1.0, float(np.max(np.abs(a))))):
        raise ValueError("a must be nonzero modulo the sum of all generators")
    idx = _pair_index(n)
    dim2 = len(idx)
    rels = os_relations(arr)
    # columns: a ^ e_l for each l, then the relations
    cols = []
    for l in range(n):
        col = [0] * dim2
        for i in range(n):
            w = _wedge(idx, i, l)
            if w is not None and a[i] != 0:
                col[w[1]] += w[0] * a[i]
        cols.append(col)
    rel_cols = []
    for r in rels:
        col = [0] * dim2
        for k, v in r.items():
            col[k] = v
        rel_cols.append(col)
    rank_all = _rank(cols + rel_cols, exact)
    rank_rel = _rank(rel_cols, exact) if rel_cols else 0
    kernel = n - (rank_all - rank_rel)
    return kernel - 1


def _rank(vectors: list[list], exact: bool) -> int:
    if not vectors:
        return 0
    if exact:
        return CyclotomicField(1).rank([[Fraction(x) for x in v] for v in vectors])
    mat = np.asarray(vectors, dtype=complex)
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > 1e-9 * s[0]))
