"""The enveloping (global) action of a partial action and the maps built on it.

The globalization is the quotient of G x X by (g, x) ~ (h, y) iff
x lies in X_{g^-1 h} and sigma_{h^-1 g}(x) = y; the class of (1, x) is the
embedded copy of x, and beta_g moves the class of (h, x) to that of (gh, x).
Embedded points come first, so embed(x) = x.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import NotGlobal, NotNormal, TransferFailed, ValidationFailed
from .group import QuotientData, Subgroup, is_normal, quotient
from .paction import UNDEF, AlgElement, SetPartialAction, act, induce_from_global, validate


@dataclass(frozen=True)
class Globalization:
    action: SetPartialAction
    T: SetPartialAction
    embed: tuple[int, ...]
    reps: tuple[tuple[int, int], ...]   # minimal (h, x) in each class of Y

    @property
    def size(self) -> int:
        return self.T.n_points

    @property
    def one_S(self) -> frozenset[int]:
        return frozenset(self.embed)

    def beta(self, g: int, subset: Iterable[int]) -> frozenset[int]:
        row = self.T.sigma[g]
        return frozenset(row[y] for y in subset)


def _extra_labels(a: SetPartialAction, reps) -> list[str]:
    n = a.n_points
    default = all(re.fullmatch(rf"e{i + 1}", lab) for i, lab in enumerate(a.labels))
    out = []
    for k, (h, x) in enumerate(reps[n:]):
        out.append(f"e{n + k + 1}" if default else f"{a.group.name(h)}.{a.labels[x]}")
    return out


def globalize(a: SetPartialAction) -> Globalization:
    report = validate(a)
    if not report.ok:
        raise ValidationFailed(report)
    G = a.group
    N = a.n_points
    cls_of: dict[tuple[int, int], int] = {}
    reps: list[tuple[int, int]] = []
    order = [(0, x) for x in range(N)] + [(g, x) for g in range(1, G.n) for x in range(N)]
    for g, x in order:
        if (g, x) in cls_of:
            continue
        k = len(reps)
        reps.append((g, x))
        # the class of (g, x) is {(h, sigma_{h^-1 g}(x))}
        for h in G:
            y = a.sigma[G.mul[G.inv[h]][g]][x]
            if y != UNDEF:
                cls_of[(h, y)] = k
    rows = tuple(tuple(cls_of[(G.mul[g][h], x)] for h, x in reps) for g in G)
    labels = list(a.labels) + _extra_labels(a, reps)
    T = SetPartialAction(G, rows, tuple(labels))
    gl = Globalization(a, T, tuple(range(N)), tuple(reps))
    problems = verify_globalization(gl)
    if problems:
        raise TransferFailed("globalization", "; ".join(problems))
    return gl


def verify_globalization(gl: Globalization) -> list[str]:
    """Check (G1)-(G4); returns the list of failures, empty when all hold."""
    a, T, G = gl.action, gl.T, gl.action.group
    out = []
    if not T.is_global() or not validate(T).ok:
        out.append("T is not a global action")
        return out
    E = gl.one_S
    if len(set(gl.embed)) != a.n_points or not E <= set(range(T.n_points)):
        out.append("G1: embedding is not injective into Y")
    for g in G:
        if frozenset(gl.embed[x] for x in a.ideal(g)) != E & gl.beta(g, E):
            out.append(f"G2 fails at g={g}")
        for x, y in enumerate(a.sigma[g]):
            if y != UNDEF and T.sigma[g][gl.embed[x]] != gl.embed[y]:
                out.append(f"G3 fails at g={g}, x={x}")
    cover = frozenset().union(*(gl.beta(g, E) for g in G))
    if len(cover) != T.n_points:
        out.append("G4: translates of S do not cover Y")
    return out


def is_globalization_of(T: SetPartialAction, embed: tuple[int, ...], a: SetPartialAction) -> bool:
    return not verify_globalization(Globalization(a, T, tuple(embed), ()))


@dataclass(frozen=True)
class PsiData:
    H: Subgroup
    e_list: tuple[frozenset[int], ...]
    eH: frozenset[int]


def _e_list(gl: Globalization, H: Subgroup) -> tuple[frozenset[int], ...]:
    """e_1 = 1_S, e_i = (1_T - 1_S) prod_{2<=j<i} (1_T - beta_{h_j}(1_S)) beta_{h_i}(1_S)."""
    Y = frozenset(range(gl.size))
    E = gl.one_S
    out = [E]
    outside = Y - E
    for h in H.members[1:]:
        img = gl.beta(h, E)
        out.append(outside & img)
        outside = outside - img
    return tuple(out)


def compute_eH(gl: Globalization, H: Subgroup) -> PsiData:
    es = _e_list(gl, H)
    for i, e in enumerate(es):
        for f in es[i + 1:]:
            if e & f:
                raise TransferFailed("psi", "the e_i are not orthogonal")
    eH = frozenset().union(*es)
    if eH != eH_product(gl, H):
        raise TransferFailed("psi", "e_H disagrees with the product formula")
    return PsiData(H, es, eH)


def eH_product(gl: Globalization, H: Subgroup) -> frozenset[int]:
    """1_T - prod_{h in H} (1_T - beta_h(1_S)), independent of how H is enumerated."""
    rest = frozenset(range(gl.size))
    for h in H.members:
        rest = rest - gl.beta(h, gl.one_S)
    return frozenset(range(gl.size)) - rest


def psi_map(gl: Globalization, H: Subgroup, t: AlgElement, data: PsiData | None = None) -> AlgElement:
    """psi_H(t) = sum_i beta_{h_i}(t) e_i with h_1 = 1 and H in index order."""
    data = data or compute_eH(gl, H)
    out = AlgElement.zero(gl.size, t.ring)
    for h, e in zip(H.members, data.e_list):
        out = out + act(gl.T, h, t) * AlgElement.indicator(gl.size, e, t.ring)
    return out


def orbit_blocks(a: SetPartialAction, elems: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Connected components of x ~ sigma_h(x) over h in ``elems``, sorted by least member."""
    parent = list(range(a.n_points))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in elems:
        for x, y in enumerate(a.sigma[h]):
            if y != UNDEF:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(a.n_points):
        groups.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(v) for v in groups.values()))


def beta_invariants(gl: Globalization, H: Subgroup) -> tuple[tuple[int, ...], ...]:
    return orbit_blocks(gl.T, H.members)


def block_label(labels, block) -> str:
    return "+".join(labels[x] for x in block)


@dataclass(frozen=True)
class BlockAction:
    """A (partial) action of G/H on a family of blocks, with the cosets it is indexed by."""

    quotient: QuotientData
    blocks: tuple[tuple[int, ...], ...]
    action: SetPartialAction


def _global_block_action(T: SetPartialAction, H: Subgroup) -> BlockAction:
    if not T.is_global():
        raise NotGlobal("block action of a partial action")
    if not is_normal(T.group, H):
        raise NotNormal("quotient needs a normal subgroup")
    Q = quotient(T.group, H)
    blocks = orbit_blocks(T, H.members)
    where = {x: i for i, b in enumerate(blocks) for x in b}
    rows = []
    for g in Q.transversal:
        rows.append(tuple(where[T.sigma[g][b[0]]] for b in blocks))
    labels = tuple(block_label(T.labels, b) for b in blocks)
    return BlockAction(Q, blocks, SetPartialAction(Q.table, tuple(rows), labels))


def quotient_global_action(gl: Globalization, H: Subgroup) -> BlockAction:
    """beta_{G/H} on the beta_H-orbits of Y."""
    return _global_block_action(gl.T, H)


def gamma_restricted(gl: Globalization, H: Subgroup) -> BlockAction:
    """The partial action gamma_{G/H} on the blocks inside e_H."""
    full = quotient_global_action(gl, H)
    eH = compute_eH(gl, H).eH
    inside = [i for i, b in enumerate(full.blocks) if set(b) <= eH]
    if any(set(b) & eH and not set(b) <= eH for b in full.blocks):
        raise TransferFailed("gamma", "e_H is not a union of beta_H-orbits")
    act_on = induce_from_global(full.action, inside)
    return BlockAction(full.quotient, tuple(full.blocks[i] for i in inside), act_on)


def e_gH(gl: Globalization, H: Subgroup, g: int) -> frozenset[int]:
    """e_H beta_g(e_H)."""
    eH = compute_eH(gl, H).eH
    return eH & gl.beta(g, eH)
