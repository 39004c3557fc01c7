"""Finite groups as explicit multiplication tables (identity at index 0)."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityExceeded, IndexOutOfRange, InvalidGroupTable, NotAbelian, NotNormal

MAX_ORDER = 512


@dataclass(frozen=True)
class GroupTable:
    """A finite group on the indices ``0..n-1``.

    Index order is the ambient total order; index 0 is the identity. The
    constructor checks the group axioms exhaustively.
    """

    mul: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = field(default=(), compare=False)
    inv: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        object.__setattr__(self, "mul", mul)
        n = len(mul)
        if n == 0:
            raise InvalidGroupTable("empty table")
        if n > MAX_ORDER:
            raise CapacityExceeded(f"group order {n} exceeds {MAX_ORDER}")
        arr = np.asarray(mul, dtype=np.int64)
        if arr.shape != (n, n) or arr.min() < 0 or arr.max() >= n:
            raise InvalidGroupTable("table must be n x n with entries in [0, n)")
        if not (np.array_equal(arr[0], np.arange(n)) and np.array_equal(arr[:, 0], np.arange(n))):
            raise InvalidGroupTable("index 0 must be the identity")
        # rows of a group table are permutations
        if not all(len(set(row)) == n for row in mul):
            raise InvalidGroupTable("table is not a Latin square")
        _check_associative(arr)
        inv = [0] * n
        for x in range(n):
            inv[x] = mul[x].index(0)
            if mul[inv[x]][x] != 0:
                raise InvalidGroupTable(f"element {x} has no two-sided inverse")
        object.__setattr__(self, "inv", tuple(inv))
        if not self.names:
            object.__setattr__(self, "names", tuple("1" if i == 0 else f"x{i}" for i in range(n)))
        elif len(self.names) != n:
            raise InvalidGroupTable("names must list one name per element")
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def n(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def __iter__(self):
        return iter(range(len(self.mul)))

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in self for b in range(a))

    def order_of(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            k += 1
        return k

    def order_profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.order_of(x) for x in self))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise IndexOutOfRange(f"no element named {name!r}") from None

    def name(self, x: int) -> str:
        return self.names[x]


def _check_associative(arr: np.ndarray, chunk: int = 32) -> None:
    n = arr.shape[0]
    for start in range(0, n, chunk):
        a = arr[start:start + chunk]            # rows a
        left = arr[a]                           # (ab)c  -> arr[arr[a,b], c]
        right = a[:, arr]                       # a(bc)  -> arr[a, arr[b,c]]
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise InvalidGroupTable(f"not associative at {(start + bad[0], bad[1], bad[2])}")


@dataclass(frozen=True)
class Subgroup:
    parent: GroupTable
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def table(self) -> GroupTable:
        """The subgroup as a standalone table, members in canonical order."""
        pos = {x: i for i, x in enumerate(self.members)}
        mul = [[pos[self.parent.mul[a][b]] for b in self.members] for a in self.members]
        return GroupTable(mul, tuple(self.parent.names[x] for x in self.members))


@dataclass(frozen=True)
class QuotientData:
    parent: GroupTable
    subgroup: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    transversal: tuple[int, ...]
    table: GroupTable
    coset_of: tuple[int, ...] = field(repr=False)

    def coset_index(self, g: int) -> int:
        return self.coset_of[g]


def build_cyclic_product(orders: Sequence[int]) -> GroupTable:
    """C_{n1} x ... x C_{nk}, elements in lexicographic order of exponent tuples."""
    orders = [int(o) for o in orders]
    if any(o < 1 for o in orders):
        raise ValueError("cyclic orders must be positive")
    n = prod(orders)
    if n > MAX_ORDER:
        raise CapacityExceeded(f"group order {n} exceeds {MAX_ORDER}")
    tuples = _exponent_tuples(orders)
    pos = {t: i for i, t in enumerate(tuples)}
    mul = [[pos[tuple((x + y) % o for x, y, o in zip(s, t, orders))] for t in tuples] for s in tuples]
    gens = ["g"] if len(orders) == 1 else [f"g{i + 1}" for i in range(len(orders))]
    return GroupTable(mul, tuple(_power_name(t, gens) for t in tuples))


def _exponent_tuples(orders):
    tuples = [()]
    for o in orders:
        tuples = [t + (e,) for t in tuples for e in range(o)]
    return tuples


def _power_name(exps, gens) -> str:
    parts = [g if e == 1 else f"{g}^{e}" for g, e in zip(gens, exps) if e]
    return "*".join(parts) or "1"


def subgroup_closure(G: GroupTable, gens: Iterable[int]) -> Subgroup:
    gens = list(gens)
    for x in gens:
        if not 0 <= x < G.n:
            raise IndexOutOfRange(f"element {x} not in [0, {G.n})")
    members = {0}
    frontier = [0]
    while frontier:
        y = frontier.pop()
        for x in gens:
            z = G.mul[y][x]
            if z not in members:
                members.add(z)
                frontier.append(z)
    return Subgroup(G, tuple(members))


def is_normal(G: GroupTable, H: Subgroup) -> bool:
    hs = set(H.members)
    return all(G.mul[G.mul[g][h]][G.inv[g]] in hs for g in G for h in H.members)


def quotient(G: GroupTable, H: Subgroup) -> QuotientData:
    if not is_normal(G, H):
        raise NotNormal("quotient needs a normal subgroup")
    coset_of = [-1] * G.n
    cosets, reps = [], []
    for g in G:                                 # ascending, so reps are minimal
        if coset_of[g] >= 0:
            continue
        c = tuple(sorted(G.mul[g][h] for h in H.members))
        for x in c:
            coset_of[x] = len(cosets)
        cosets.append(c)
        reps.append(g)
    if len(cosets) * len(H) != G.n:
        raise InvalidGroupTable("Lagrange check failed")
    mul = [[coset_of[G.mul[a][b]] for b in reps] for a in reps]
    names = tuple("H" if r == 0 else f"{G.names[r]}H" for r in reps)
    return QuotientData(G, H, tuple(cosets), tuple(reps), GroupTable(mul, names), tuple(coset_of))


def direct_product(G: GroupTable, K: GroupTable) -> GroupTable:
    """Componentwise product; (a, b) sits at index a*|K| + b."""
    n = G.n * K.n
    if n > MAX_ORDER:
        raise CapacityExceeded(f"group order {n} exceeds {MAX_ORDER}")
    m = K.n
    mul = [[G.mul[x // m][y // m] * m + K.mul[x % m][y % m] for y in range(n)] for x in range(n)]
    names = tuple(f"({G.names[x // m]},{K.names[x % m]})" for x in range(n))
    return GroupTable(mul, names)


def antidiagonal(G: GroupTable) -> Subgroup:
    """{(g, g^-1)} inside G x G."""
    if not G.is_abelian():
        raise NotAbelian("the antidiagonal is only a subgroup for abelian groups")
    GG = direct_product(G, G)
    return Subgroup(GG, tuple(g * G.n + G.inv[g] for g in G))


def diagonal(G: GroupTable) -> Subgroup:
    GG = direct_product(G, G)
    return Subgroup(GG, tuple(g * G.n + g for g in G))


def all_subgroups(G: GroupTable) -> list[Subgroup]:
    """Every subgroup, by closing under single-element extension (brute force)."""
    seen = {(0,): Subgroup(G, (0,))}
    frontier = [(0,)]
    while frontier:
        key = frontier.pop()
        for x in G:
            if x in key:
                continue
            S = subgroup_closure(G, key + (x,))
            if S.members not in seen:
                seen[S.members] = S
                frontier.append(S.members)
    return sorted(seen.values(), key=lambda S: (len(S), S.members))


def normal_subgroups(G: GroupTable) -> list[Subgroup]:
    return [H for H in all_subgroups(G) if is_normal(G, H)]


def subgroup_by_names(G: GroupTable, names: Iterable[str]) -> Subgroup:
    return subgroup_closure(G, [G.index(s.strip()) for s in names if s.strip()])

