"""Partial actions of finite groups on split algebras S = (+)_x R e_x.

An action is stored at the level of the idempotent basis: ``sigma[g][x]`` is
the image of e_x under alpha_g, or -1 when e_x lies outside S_{g^-1}. The
ideal S_g is spanned by the images of sigma[g].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import NotGlobal, PargalError, TransferFailed
from .group import GroupTable, Subgroup
from .ring import QQ, BaseRing

UNDEF = -1


@dataclass(frozen=True)
class SetPartialAction:
    group: GroupTable
    sigma: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        sigma = tuple(tuple(int(y) for y in row) for row in self.sigma)
        object.__setattr__(self, "sigma", sigma)
        if len(sigma) != self.group.n:
            raise PargalError(f"need one map per group element ({self.group.n}), got {len(sigma)}")
        npts = len(sigma[0])
        if any(len(row) != npts for row in sigma):
            raise PargalError("all maps must be given on the same point set")
        if any(not (y == UNDEF or 0 <= y < npts) for row in sigma for y in row):
            raise PargalError("map values must be points or -1")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(npts)))
        elif len(self.labels) != npts:
            raise PargalError("one label per point")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_maps(cls, group: GroupTable, n_points: int, maps: Mapping[int, Mapping[int, int]],
                  labels: Sequence[str] = ()) -> "SetPartialAction":
        """Build from ``{g: {x: y}}``; a missing identity defaults to id, other missing g to the empty map."""
        rows = []
        for g in group:
            row = [UNDEF] * n_points
            if g in maps:
                for x, y in maps[g].items():
                    row[int(x)] = int(y)
            elif g == 0:
                row = list(range(n_points))
            rows.append(tuple(row))
        return cls(group, tuple(rows), tuple(labels))

    @property
    def n_points(self) -> int:
        return len(self.sigma[0])

    def apply(self, g: int, x: int) -> int | None:
        y = self.sigma[g][x]
        return None if y == UNDEF else y

    def ideal(self, g: int) -> frozenset[int]:
        """X_g, the support of the ideal S_g."""
        return frozenset(y for y in self.sigma[g] if y != UNDEF)

    def domain(self, g: int) -> frozenset[int]:
        """Domain of sigma_g, which is X_{g^-1} for a valid action."""
        return frozenset(x for x, y in enumerate(self.sigma[g]) if y != UNDEF)

    def is_global(self) -> bool:
        return all(y != UNDEF for row in self.sigma for y in row)

    def signature(self, x: int) -> tuple[bool, ...]:
        return tuple(row[x] != UNDEF for row in self.sigma)

    def relabel(self, perm: Sequence[int]) -> "SetPartialAction":
        """Move point x to perm[x]."""
        n = self.n_points
        rows = []
        for row in self.sigma:
            new = [UNDEF] * n
            for x, y in enumerate(row):
                if y != UNDEF:
                    new[perm[x]] = perm[y]
            rows.append(tuple(new))
        labels = [""] * n
        for x in range(n):
            labels[perm[x]] = self.labels[x]
        return SetPartialAction(self.group, tuple(rows), tuple(labels))

    def with_labels(self, labels: Sequence[str]) -> "SetPartialAction":
        return SetPartialAction(self.group, self.sigma, tuple(labels))


@dataclass(frozen=True)
class Violation:
    axiom: str
    g: int
    h: int | None
    x: int | None
    detail: str = ""

    def __str__(self):
        return f"{self.axiom} fails at g={self.g} h={self.h} x={self.x}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def __str__(self):
        if self.ok:
            return "valid partial action"
        return "\n".join(str(v) for v in self.violations)


def validate(a: SetPartialAction) -> ValidationReport:
    G = a.group
    out = []
    dom = [a.domain(g) for g in G]
    img = [a.ideal(g) for g in G]
    for g in G:
        row = a.sigma[g]
        if len(img[g]) != len(dom[g]):
            x = next(x for x in dom[g] if sum(1 for z in dom[g] if row[z] == row[x]) > 1)
            out.append(Violation("P1", g, None, x, "map is not injective"))
        if dom[g] != img[G.inv[g]]:
            x = min(dom[g] ^ img[G.inv[g]])
            out.append(Violation("P1", g, G.inv[g], x, "domain of alpha_g differs from S_{g^-1}"))
    if a.sigma[0] != tuple(range(a.n_points)):
        x = next(x for x in range(a.n_points) if a.sigma[0][x] != x)
        out.append(Violation("P2", 0, None, x, "alpha_1 is not the identity on S"))
    for g in G:
        row = a.sigma[g]
        for h in G:
            gh = G.mul[g][h]
            lhs = {row[x] for x in dom[g] & img[h]}
            rhs = img[g] & img[gh]
            if lhs != rhs:
                x = min(lhs ^ rhs)
                out.append(Violation("P3", g, h, x, "alpha_g(S_{g^-1} n S_h) != S_g n S_gh"))
            for x in dom[h]:
                y = a.sigma[h][x]
                if y in dom[g]:
                    z = a.sigma[gh][x]
                    if z != row[y]:
                        out.append(Violation("P4", g, h, x, "alpha_g alpha_h != alpha_gh"))
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class AlgElement:
    """Dense coefficient vector in the idempotent basis; products are componentwise."""

    coeffs: tuple
    ring: BaseRing = QQ

    @classmethod
    def indicator(cls, n: int, subset: Iterable[int], ring: BaseRing = QQ) -> "AlgElement":
        s = set(subset)
        return cls(tuple(ring.one if i in s else ring.zero for i in range(n)), ring)

    @classmethod
    def basis(cls, n: int, i: int, ring: BaseRing = QQ) -> "AlgElement":
        return cls.indicator(n, (i,), ring)

    @classmethod
    def one(cls, n: int, ring: BaseRing = QQ) -> "AlgElement":
        return cls.indicator(n, range(n), ring)

    @classmethod
    def zero(cls, n: int, ring: BaseRing = QQ) -> "AlgElement":
        return cls.indicator(n, (), ring)

    @classmethod
    def of(cls, values: Iterable, ring: BaseRing = QQ) -> "AlgElement":
        return cls(tuple(ring(v) for v in values), ring)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other: "AlgElement"):
        if len(other.coeffs) != len(self.coeffs) or other.ring != self.ring:
            raise PargalError("elements live in different algebras")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.ring)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.ring)

    def __neg__(self) -> "AlgElement":
        return AlgElement(tuple(-a for a in self.coeffs), self.ring)

    def __mul__(self, other) -> "AlgElement":
        if isinstance(other, AlgElement):
            self._check(other)
            return AlgElement(tuple(a * b for a, b in zip(self.coeffs, other.coeffs)), self.ring)
        c = self.ring(other)
        return AlgElement(tuple(a * c for a in self.coeffs), self.ring)

    __rmul__ = __mul__

    def support(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.coeffs) if a != 0)

    def is_zero(self) -> bool:
        return not self.support()

    def is_idempotent(self) -> bool:
        return self * self == self

    def as_subset(self) -> frozenset[int]:
        """Support of an idempotent; raises if the element is not 0/1-valued."""
        if not self.is_idempotent():
            raise PargalError("element is not an idempotent")
        return self.support()


def one_g(a: SetPartialAction, g: int, ring: BaseRing = QQ) -> AlgElement:
    """The unit 1_g of the ideal S_g."""
    return AlgElement.indicator(a.n_points, a.ideal(g), ring)


def act(a: SetPartialAction, g: int, s: AlgElement) -> AlgElement:
    """alpha_g(s 1_{g^-1}); supported on X_g."""
    out = [s.ring.zero] * a.n_points
    for x, y in enumerate(a.sigma[g]):
        if y != UNDEF:
            out[y] = s.coeffs[x]
    return AlgElement(tuple(out), s.ring)


def is_invariant(a: SetPartialAction, s: AlgElement, H: Iterable[int] | None = None) -> bool:
    elems = a.group if H is None else H
    return all(act(a, g, s) == s * one_g(a, g, s.ring) for g in elems)


def trace(a: SetPartialAction, s: AlgElement) -> AlgElement:
    t = AlgElement.zero(a.n_points, s.ring)
    for g in a.group:
        t = t + act(a, g, s)
    if not is_invariant(a, t):
        raise TransferFailed("trace", "trace left the invariant subalgebra")
    return t


def restrict_to_subgroup(a: SetPartialAction, H: Subgroup) -> SetPartialAction:
    """The partial action of H (as its own table, members in canonical order)."""
    if H.parent != a.group:
        raise PargalError("subgroup of a different group")
    return SetPartialAction(H.table(), tuple(a.sigma[h] for h in H.members), a.labels)


def induce_from_global(b: SetPartialAction, subset: Iterable[int]) -> SetPartialAction:
    """Restrict a global action to the ideal spanned by ``subset`` (points renumbered in order)."""
    if not b.is_global():
        raise NotGlobal("induction needs a global action")
    pts = sorted(set(subset))
    pos = {y: i for i, y in enumerate(pts)}
    rows = []
    for g in b.group:
        rows.append(tuple(pos.get(b.sigma[g][y], UNDEF) for y in pts))
    return SetPartialAction(b.group, tuple(rows), tuple(b.labels[y] for y in pts))


class ExtensionRecord:
    """A partial action over a chosen base field, with lazily cached derived data."""

    def __init__(self, action: SetPartialAction, ring: BaseRing = QQ):
        if action.n_points == 0:
            raise PargalError("an extension needs a nonzero algebra (1_S != 0)")
        self.action = action
        self.ring = ring
        self._blocks: dict[tuple[int, ...], tuple] = {}

    def __repr__(self):
        return f"ExtensionRecord(points={self.action.n_points}, |G|={self.action.group.n}, ring={self.ring})"

    def __eq__(self, other):
        return isinstance(other, ExtensionRecord) and (self.action, self.ring) == (other.action, other.ring)

    def __hash__(self):
        return hash((self.action, self.ring))

    @cached_property
    def globalization(self):
        from .envelope import globalize
        return globalize(self.action)

    @cached_property
    def certificate(self):
        from .galois import galois_check
        return galois_check(self.action, self.ring)

    def invariant_blocks(self, H: Subgroup):
        from .quotient import invariants
        if H.members not in self._blocks:
            self._blocks[H.members] = invariants(self.action, H).blocks
        return self._blocks[H.members]
