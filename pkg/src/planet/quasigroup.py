"""Latin squares of 3-nets, loops, and abelian group identification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NetError, PlanetError
from .geom import cross, Point, incidence_table
from .net import Net, require_verified


class NotLatinError(PlanetError, ValueError):
    pass


def _check_latin(table: np.ndarray) -> None:
    m = table.shape[0]
    if table.shape != (m, m):
        raise NotLatinError("table must be square")
    full = np.arange(m)
    bad_rows = np.nonzero(~np.all(np.sort(table, axis=1) == full, axis=1))[0]
    if bad_rows.size:
        raise NotLatinError(f"row {bad_rows[0]} is not a permutation of 0..{m - 1}")
    bad_cols = np.nonzero(~np.all(np.sort(table, axis=0) == full[:, None], axis=0))[0]
    if bad_cols.size:
        raise NotLatinError(f"column {bad_cols[0]} is not a permutation of 0..{m - 1}")


@dataclass(frozen=True)
class LatinSquare:
    table: np.ndarray
    row_labels: tuple[int, ...] = ()
    col_labels: tuple[int, ...] = ()
    sym_labels: tuple[int, ...] = ()

    def __post_init__(self):
        t = np.asarray(self.table, dtype=int)
        _check_latin(t)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        m = t.shape[0]
        for name in ("row_labels", "col_labels", "sym_labels"):
            if not getattr(self, name):
                object.__setattr__(self, name, tuple(range(m)))

    @property
    def m(self) -> int:
        return self.table.shape[0]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "table": self.table.tolist(),
            "labels": {
                "rows": [int(x) for x in self.row_labels],
                "cols": [int(x) for x in self.col_labels],
                "symbols": [int(x) for x in self.sym_labels],
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LatinSquare":
        labels = obj.get("labels", {})
        ls = cls(
            np.array(obj["table"], dtype=int),
            tuple(labels.get("rows", ())),
            tuple(labels.get("cols", ())),
            tuple(labels.get("symbols", ())),
        )
        if "m" in obj and obj["m"] != ls.m:
            raise NotLatinError(f"declared m={obj['m']} but table has order {ls.m}")
        return ls


@dataclass(frozen=True)
class Loop:
    """A Latin square whose row 0 and column 0 are the identity permutation."""

    table: np.ndarray
    # loop element g <-> (row index, column index, symbol index) of the source square
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()
    syms: tuple[int, ...] = ()

    def __post_init__(self):
        t = np.asarray(self.table, dtype=int)
        _check_latin(t)
        ident = np.arange(t.shape[0])
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            raise NotLatinError("a loop table needs 0 as two-sided identity")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def m(self) -> int:
        return self.table.shape[0]

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])


@dataclass(frozen=True)
class GroupId:
    verdict: str  # "abelian-group" | "nonabelian-group" | "not-a-group"
    invariant_factors: tuple[int, ...] = ()

    @property
    def is_group(self) -> bool:
        return self.verdict != "not-a-group"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.verdict == "abelian-group":
            out["invariant_factors"] = list(self.invariant_factors)
        return out


# ---------------------------------------------------------------------------


def latin_from_net(net: Net, orders: Sequence[Sequence[int]] | None = None) -> LatinSquare:
    """Pairing of a 3-net: table[i][j] is the class-3 line through A1[i] meet A2[j].

    ``orders`` optionally permutes each class (lists of line indices).
    """
    require_verified(net, k=3)
    classes = net.classes
    if orders is None:
        orders = [list(range(len(c))) for c in classes]
    a1 = [classes[0][i] for i in orders[0]]
    a2 = [classes[1][i] for i in orders[1]]
    a3 = [classes[2][i] for i in orders[2]]
    m = len(a1)
    meets = [Point(net.field, cross(l.coords, n.coords)) for l in a1 for n in a2]
    inc = incidence_table(meets, a3)
    table = np.zeros((m, m), dtype=int)
    for idx, row in enumerate(inc):
        hits = np.nonzero(row)[0]
        if hits.size != 1:
            raise NetError(f"internal: {hits.size} third-class lines through a net point")
        table[idx // m, idx % m] = hits[0]
    return LatinSquare(table, tuple(orders[0]), tuple(orders[1]), tuple(orders[2]))


def normalize_to_loop(ls: LatinSquare, r0: int = 0, c0: int = 0) -> Loop:
    """Principal isotope with identity table[r0][c0], relabelled so it is 0.

    x o y = table[R(x)][C(y)] where R(x) is the row showing x in column c0 and
    C(y) the column showing y in row r0.

    One principal isotope is enough to decide group structure: any loop
    isotopic to a Latin square is isomorphic to one of its principal
    isotopes, and a loop isotopic to a group is isomorphic to that group.
    """
    t = ls.table
    m = ls.m
    row_of = np.empty(m, dtype=int)
    row_of[t[:, c0]] = np.arange(m)
    col_of = np.empty(m, dtype=int)
    col_of[t[r0, :]] = np.arange(m)
    e = int(t[r0, c0])
    # relabel symbols: e -> 0, the rest keep their relative order
    order = [e] + [s for s in range(m) if s != e]
    relabel = np.empty(m, dtype=int)
    relabel[order] = np.arange(m)
    sym = np.array(order)  # loop element g is symbol sym[g]
    new = relabel[t[np.ix_(row_of[sym], col_of[sym])]]
    return Loop(new, tuple(int(row_of[s]) for s in sym), tuple(int(col_of[s]) for s in sym), tuple(int(s) for s in sym))


def _is_associative(t: np.ndarray) -> bool:
    # (a b) c == a (b c) for all triples, vectorized over (b, c) per a
    for a in range(t.shape[0]):
        left = t[t[a]]  # row b of left is (a b) * c over c
        right = t[a][t]  # a (b c)
        if not np.array_equal(left, right):
            return False
    return True


def _element_orders(t: np.ndarray) -> list[int]:
    m = t.shape[0]
    orders = []
    for g in range(m):
        k, x = 1, g
        while x != 0:
            x = int(t[x, g])
            k += 1
            if k > m:
                raise ValueError("element order exceeds group order")
        orders.append(k)
    return orders


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors_from_orders(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a finite abelian group from its element orders.

    For each prime p the number of elements killed by p^j equals
    prod_i p^min(j, e_i), which determines the exponents e_i of the
    p-primary part.
    """
    n = len(orders)
    factors: dict[int, list[int]] = {}
    for p in sorted(set(_prime_factors(n))):
        counts = []
        j = 0
        while True:
            j += 1
            c = sum(1 for o in orders if (p**j) % o == 0)
            counts.append(c)
            if j > 1 and counts[-1] == counts[-2]:
                break
        logs = [0] + [_ilog(c, p) for c in counts]
        # number of cyclic p-factors with exponent >= j
        ge = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        exps = []
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            exps += [j + 1] * (ge[j] - nxt)
        factors[p] = sorted(exps, reverse=True)
    s = max((len(v) for v in factors.values()), default=0)
    out = []
    for i in range(s):
        d = 1
        for p, exps in factors.items():
            if i < len(exps):
                d *= p ** exps[i]
        out.append(d)
    return tuple(sorted(out))


def _ilog(c: int, p: int) -> int:
    k = 0
    while c % p == 0 and c > 1:
        c //= p
        k += 1
    if c != 1:
        raise ValueError("subgroup size is not a prime power")
    return k


def group_identify(loop: Loop) -> GroupId:
    """Associativity scan, commutativity, then invariant factors."""
    t = loop.table
    if not _is_associative(t):
        return GroupId("not-a-group")
    if not np.array_equal(t, t.T):
        return GroupId("nonabelian-group")
    if loop.m == 1:
        return GroupId("abelian-group", ())
    return GroupId("abelian-group", invariant_factors_from_orders(_element_orders(t)))


# ---------------------------------------------------------------------------


def _closed(loop: Loop, sub: Sequence[int]) -> bool:
    s = set(sub)
    return 0 in s and all(loop.op(a, b) in s for a in s for b in s)


def coset_subnets(net: Net, ls: LatinSquare, subgroup: Sequence[int]) -> list[Net]:
    """Split a group-realizing 3-net into the sub-3-nets of coset triples.

    ``subgroup`` lists elements of the loop obtained from ``ls`` at (0, 0).
    Class-1 lines of coset g.S and class-2 lines of coset S.h span a subnet
    whose third class is the coset g.S.h of class-3 lines.
    """
    loop = normalize_to_loop(ls, 0, 0)
    gid = group_identify(loop)
    if not gid.is_group:
        raise NetError("the net's loop is not a group; cosets are undefined")
    sub = sorted(set(int(s) for s in subgroup))
    if not sub or not _closed(loop, sub):
        raise NetError(f"{sub} is not closed under the loop operation")
    m = loop.m
    if m % len(sub):
        raise NetError("subgroup order does not divide the group order")
    t = loop.table
    for g in range(m):
        left = {int(t[g, s]) for s in sub}
        right = {int(t[s, g]) for s in sub}
        if left != right:
            raise NetError("subgroup is not normal; coset products are not cosets")

    def cosets():
        seen: set[int] = set()
        out = []
        for g in range(m):
            if g not in seen:
                c = sorted(int(t[g, s]) for s in sub)
                seen.update(c)
                out.append(c)
        return out

    classes = net.classes
    rows = [ls.row_labels[i] for i in loop.rows]
    cols = [ls.col_labels[i] for i in loop.cols]
    syms = [ls.sym_labels[i] for i in loop.syms]
    out = []
    for cg in cosets():
        for ch in cosets():
            image = sorted({int(t[a, b]) for a in cg for b in ch})
            if len(image) != len(sub):
                raise NetError("internal: coset product is not a coset")
            sub_classes = (
                [classes[0][rows[a]] for a in cg],
                [classes[1][cols[b]] for b in ch],
                [classes[2][syms[c]] for c in image],
            )
            out.append(Net(net.field, sub_classes))
    return out


def cayley_table_cyclic(m: int) -> np.ndarray:
    a = np.arange(m)
    return (a[:, None] + a[None, :]) % m


def cayley_table_product(*ns: int) -> np.ndarray:
    """Cayley table of Z_n1 + Z_n2 + ... with mixed-radix element encoding."""
    elems = np.array(np.meshgrid(*[np.arange(n) for n in ns], indexing="ij")).reshape(len(ns), -1).T
    radix = np.array([int(np.prod(ns[i + 1:])) for i in range(len(ns))])
    summed = (elems[:, None, :] + elems[None, :, :]) % np.array(ns)
    return summed @ radix


def element_order_histogram(loop: Loop) -> Counter:
    return Counter(_element_orders(loop.table))

