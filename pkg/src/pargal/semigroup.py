"""The semigroup of partial abelian Galois extensions under the star product.

Everything runs over split algebras, so a class is represented by a
SetPartialAction and compared through ``galois.canonical_form``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .envelope import globalize, orbit_blocks
from .errors import GroupMismatch, NotAbelian, NotGlobal, PargalError, RingMismatch, TransferFailed
from .galois import as_action, canonical_form, galois_check, partial_iso
from .group import (
    GroupTable, Subgroup, antidiagonal, build_cyclic_product, diagonal, direct_product,
)
from .paction import UNDEF, ExtensionRecord, SetPartialAction
from .quotient import quotient_partial_action, quotient_partial_action_direct
from .ring import QQ, BaseRing

DELTAS = ("antidiagonal", "diagonal")
DEFAULT_BUDGET = 64


@dataclass(frozen=True)
class SemigroupNode:
    action: SetPartialAction
    key: tuple = field(repr=False)
    flags: tuple[tuple[str, bool], ...] = field(default=(), compare=False)

    @classmethod
    def of(cls, a, **flags) -> "SemigroupNode":
        a = as_action(a)
        return cls(a, canonical_form(a), tuple(sorted(flags.items())))

    def flag(self, name: str) -> bool | None:
        return dict(self.flags).get(name)


def _ring(obj) -> BaseRing | None:
    return obj.ring if isinstance(obj, ExtensionRecord) else None


def _pair_label(la: str, lb: str, short: bool) -> str:
    return f"e{la[1:]}{lb[1:]}" if short else f"{la}*{lb}"


def _short_e(labels) -> bool:
    return all(re.fullmatch(r"e[1-9]", lab) for lab in labels)


def tensor(a, b) -> SetPartialAction:
    """alpha (x) alpha' of G x G' on X x X'; the pair (x, y) sits at index x*|X'| + y."""
    ra, rb = _ring(a), _ring(b)
    if ra is not None and rb is not None and ra != rb:
        raise RingMismatch(f"{ra} vs {rb}")
    a, b = as_action(a), as_action(b)
    G, K = a.group, b.group
    if not (G.is_abelian() and K.is_abelian()):
        raise NotAbelian("tensor products are taken in the abelian setting")
    GK = direct_product(G, K)
    M, N = a.n_points, b.n_points
    rows = []
    for gk in GK:
        g, k = divmod(gk, K.n)
        row = []
        for p in range(M * N):
            x, y = divmod(p, N)
            u, v = a.sigma[g][x], b.sigma[k][y]
            row.append(UNDEF if u == UNDEF or v == UNDEF else u * N + v)
        rows.append(tuple(row))
    short = _short_e(a.labels) and _short_e(b.labels)
    labels = tuple(_pair_label(la, lb, short) for la in a.labels for lb in b.labels)
    return SetPartialAction(GK, tuple(rows), labels)


def delta_subgroup(G: GroupTable, delta: str = "antidiagonal") -> Subgroup:
    if delta == "antidiagonal":
        return antidiagonal(G)
    if delta == "diagonal":
        return diagonal(G)
    raise ValueError(f"unknown delta convention {delta!r}")


def transport_from_product(qa, G: GroupTable) -> SetPartialAction:
    """Move an action of (G x G)/delta to G along g -> (g, 1) delta."""
    rows = tuple(qa.action.sigma[qa.quotient.coset_of[g * G.n]] for g in G)
    return SetPartialAction(G, rows, qa.action.labels)


def star_action(a, b, delta: str = "antidiagonal", direct: bool = False) -> SetPartialAction:
    a, b = as_action(a), as_action(b)
    if a.group != b.group:
        raise GroupMismatch("star product needs a common group")
    t = tensor(a, b)
    D = delta_subgroup(a.group, delta)
    qa = quotient_partial_action_direct(t, D) if direct else quotient_partial_action(t, D)
    return transport_from_product(qa, a.group)


def star_par(a, b, delta: str = "antidiagonal", certify: bool = True) -> SemigroupNode:
    out = star_action(a, b, delta)
    if certify and not galois_check(out):
        raise TransferFailed("star", "product is not partial Galois")
    return SemigroupNode.of(out)


def iso(a, b) -> bool:
    a, b = as_action(a), as_action(b)
    return canonical_form(a) == canonical_form(b)


def inverse_action(a, verify: bool = False, delta: str = "antidiagonal") -> SemigroupNode:
    """sigma*_g = sigma_{g^-1}; with ``verify`` the regularity identities are recorded as flags."""
    a = as_action(a)
    G = a.group
    if not G.is_abelian():
        raise NotAbelian("inverses are defined for abelian groups")
    inv = SetPartialAction(G, tuple(a.sigma[G.inv[g]] for g in G), a.labels)
    if not verify:
        return SemigroupNode.of(inv)
    left = star_action(star_action(a, inv, delta), a, delta)
    right = star_action(star_action(inv, a, delta), inv, delta)
    return SemigroupNode.of(inv, regular=iso(left, a), regular_star=iso(right, inv))


def hat_action(a) -> SetPartialAction:
    """gamma of G x G on the points (g, x), x in X_g, of the product of the ideals."""
    a = as_action(a)
    G = a.group
    GG = direct_product(G, G)
    pts = [(g, x) for g in G for x in sorted(a.ideal(g))]
    pos = {p: i for i, p in enumerate(pts)}
    ideal = [a.ideal(g) for g in G]
    rows = []
    for hl in GG:
        h, l = divmod(hl, G.n)
        row = [UNDEF] * len(pts)
        for i, (g, x) in enumerate(pts):
            # (g, x) is in the domain when x lies in X_{h^-1} and X_{lg}
            if x in ideal[G.inv[h]] and x in ideal[G.mul[l][g]]:
                row[i] = pos[(G.mul[G.mul[h][l]][g], a.sigma[h][x])]
        rows.append(tuple(row))
    labels = tuple(f"{G.name(g)}:{a.labels[x]}" for g, x in pts)
    return SetPartialAction(GG, tuple(rows), labels)


def hat_iso_witness(a):
    """The hat action is partially (G x G)-isomorphic to alpha (x) alpha*."""
    a = as_action(a)
    return partial_iso(tensor(a, inverse_action(a).action), hat_action(a))


@dataclass(frozen=True)
class IdempotentResult:
    node: SemigroupNode
    route_a: SetPartialAction
    route_b: SetPartialAction | None
    routes_agree: bool | None
    is_idempotent: bool


def idempotent_of(a, route: str = "both", delta: str = "antidiagonal") -> IdempotentResult:
    """E(S, alpha) = a* * a (route a) and the delta-invariants of the hat action (route b)."""
    a = as_action(a)
    if not a.group.is_abelian():
        raise NotAbelian("idempotents are computed for abelian groups")
    inv = inverse_action(a).action
    ra = star_action(inv, a, delta) if route in ("a", "both") else None
    rb = None
    if route in ("b", "both"):
        hat = hat_action(a)
        qa = quotient_partial_action_direct(hat, delta_subgroup(a.group, delta))
        rb = transport_from_product(qa, a.group)
    agree = None
    if ra is not None and rb is not None:
        agree = iso(ra, rb)
        if not agree:
            raise TransferFailed("idempotent routes", "route a and route b disagree")
    main = ra if ra is not None else rb
    idem = iso(star_action(main, main, delta), main)
    return IdempotentResult(SemigroupNode.of(main, idempotent=idem), main, rb, agree, idem)


def harrison_identity(G: GroupTable, ring: BaseRing = QQ) -> ExtensionRecord:
    """E_G: G acting on itself by left translation."""
    rows = tuple(tuple(G.mul[g][h] for h in G) for g in G)
    return ExtensionRecord(SetPartialAction(G, rows, tuple(f"e_{G.name(h)}" for h in G)), ring)


def harrison_product(b, c, delta: str = "antidiagonal") -> ExtensionRecord:
    """(B (x) B')^{delta G} with G acting through the first factor (classical global construction)."""
    ring = _ring(b) or _ring(c) or QQ
    b, c = as_action(b), as_action(c)
    if not (b.is_global() and c.is_global()):
        raise NotGlobal("the Harrison product is defined for global actions")
    if b.group != c.group:
        raise GroupMismatch("Harrison product needs a common group")
    G = b.group
    N = c.n_points
    D = delta_subgroup(G, delta).members
    pairs = [(x, y) for x in range(b.n_points) for y in range(N)]

    def move(gk, p):
        g, k = divmod(gk, G.n)
        x, y = p
        return b.sigma[g][x], c.sigma[k][y]

    orbit_of: dict[tuple[int, int], int] = {}
    orbits: list[tuple] = []
    for p in pairs:
        if p in orbit_of:
            continue
        orb = sorted({move(d, p) for d in D})
        for q in orb:
            orbit_of[q] = len(orbits)
        orbits.append(tuple(orb))
    rows = tuple(tuple(orbit_of[move(g * G.n, o[0])] for o in orbits) for g in G)
    labels = tuple("+".join(f"{b.labels[x]}{c.labels[y]}" for x, y in o) for o in orbits)
    return ExtensionRecord(SetPartialAction(G, rows, labels), ring)


def pi_image(a, ring: BaseRing = QQ) -> ExtensionRecord:
    """The globalization, viewed as a global extension of its invariants."""
    gl = globalize(as_action(a))
    return ExtensionRecord(gl.T, _ring(a) or ring)


@dataclass(frozen=True)
class PiReport:
    invariant_rings_agree: bool
    images_iso: bool

    @property
    def ok(self) -> bool:
        return self.invariant_rings_agree and self.images_iso


def pi_homomorphism_check(a, b, delta: str = "antidiagonal") -> PiReport:
    left = pi_image(star_action(a, b, delta)).action
    right = harrison_product(pi_image(a), pi_image(b), delta).action
    n_inv = lambda t: len(orbit_blocks(t, range(t.group.n)))
    rings = n_inv(left) == n_inv(right)
    if not rings:
        raise TransferFailed("pi", "invariant rings of the two sides differ")
    return PiReport(rings, partial_iso(left, right) is not None)


def _factor_index(orders: Sequence[int], i: int, k: int) -> int:
    """Index in the cyclic product of the element with exponent k at factor i and 0 elsewhere."""
    idx = 0
    for j, o in enumerate(orders):
        idx = idx * o + (k if j == i else 0)
    return idx


def cyclic_reduce(a, orders: Sequence[int]) -> list[SetPartialAction]:
    """Pieces S_i = S^{alpha_{H_i}}, H_i the kernel of the projection to the i-th factor."""
    a = as_action(a)
    orders = list(orders)
    G = a.group
    if not G.is_abelian():
        raise NotAbelian("cyclic reduction needs an abelian group")
    if build_cyclic_product(orders) != G:
        raise GroupMismatch("orders do not describe the action's group")
    if not orders:
        return []
    pieces = []
    for i, n in enumerate(orders):
        members = [g for g in G if _exponents(orders, g)[i] == 0]
        H = Subgroup(G, tuple(members))
        qa = quotient_partial_action(a, H)
        Ci = build_cyclic_product([n])
        rows = tuple(qa.action.sigma[qa.quotient.coset_of[_factor_index(orders, i, k)]] for k in range(n))
        pieces.append(SetPartialAction(Ci, rows, qa.action.labels))
    return pieces


def _exponents(orders: Sequence[int], g: int) -> tuple[int, ...]:
    out = []
    for o in reversed(orders):
        g, r = divmod(g, o)
        out.append(r)
    return tuple(reversed(out))


def recompose(pieces: Sequence[SetPartialAction]) -> SetPartialAction:
    """Tensor of the pieces; the group is the cyclic product in the same factor order."""
    if not pieces:
        G = build_cyclic_product([])
        return SetPartialAction(G, ((0,),), ("e1",))
    out = pieces[0]
    for p in pieces[1:]:
        out = tensor(out, p)
    orders = [p.group.n for p in pieces]
    G = build_cyclic_product(orders)
    return SetPartialAction(G, out.sigma, out.labels)


def cyclic_round_trip(a, orders: Sequence[int]) -> bool:
    a = as_action(a)
    return partial_iso(recompose(cyclic_reduce(a, orders)), a) is not None


@dataclass(frozen=True)
class ProFimReport:
    hypothesis_met: bool
    idempotent_global: bool

    @property
    def consistent(self) -> bool:
        return self.idempotent_global or not self.hypothesis_met


def pro_fim_check(a) -> ProFimReport:
    """When every 1_g is nonzero, the idempotent E(S, alpha) should be a global action."""
    a = as_action(a)
    hyp = all(a.ideal(g) for g in a.group)
    E = idempotent_of(a).route_a
    return ProFimReport(hyp, E.is_global())


@dataclass
class CliffordReport:
    nodes: list[SemigroupNode]
    idempotents: list[int]                 # indices into nodes
    edges: list[tuple[int, int]]           # e <= f
    component_of: dict[int, int]           # node -> its idempotent
    membership_agrees: bool
    anomalies: list[str]
    budget_exceeded: bool


def clifford_decompose(seeds: Iterable, budget: int = DEFAULT_BUDGET,
                       delta: str = "antidiagonal") -> CliffordReport:
    """Close the seeds under star and inverse, then sort the result by idempotent."""
    nodes: list[SemigroupNode] = []
    index: dict[tuple, int] = {}
    exceeded = False

    def add(a) -> int | None:
        nonlocal exceeded
        node = SemigroupNode.of(a)
        if node.key in index:
            return index[node.key]
        if len(nodes) >= budget:
            exceeded = True
            return None
        index[node.key] = len(nodes)
        nodes.append(node)
        return index[node.key]

    seeds = [as_action(s) for s in seeds]
    if seeds and any(s.group != seeds[0].group for s in seeds):
        raise GroupMismatch("seeds must share a group")
    for s in seeds:
        if not galois_check(s):
            raise PargalError("clifford seeds must be partial Galois")
        add(s)
    star_cache: dict[tuple[int, int], int | None] = {}
    done = 0
    while done < len(nodes):
        i = done
        done += 1
        add(inverse_action(nodes[i].action).action)
        for j in range(i + 1):
            if (j, i) not in star_cache:
                star_cache[(j, i)] = add(star_action(nodes[j].action, nodes[i].action, delta))
    n = len(nodes)

    def prod(i, j):
        key = (min(i, j), max(i, j))
        if key not in star_cache:
            star_cache[key] = index.get(canonical_form(star_action(nodes[i].action, nodes[j].action, delta)))
        return star_cache[key]

    idem = [i for i in range(n) if prod(i, i) == i]
    edges = [(e, f) for e in idem for f in idem if e != f and prod(e, f) == e]
    anomalies = []
    component_of = {}
    for i in range(n):
        inv = index.get(canonical_form(inverse_action(nodes[i].action).action))
        e = prod(inv, i) if inv is not None else None
        if e is None:
            continue
        component_of[i] = e
        if e not in idem:
            anomalies.append(f"node {i}: a* * a is not idempotent")
        if prod(e, i) != i:
            anomalies.append(f"node {i}: a * a* * a is not a")
    for e in idem:
        for f in idem:
            if prod(e, f) != prod(f, e):
                anomalies.append(f"idempotents {e}, {f} do not commute")
    # membership: a node lies over e iff its idempotent is partially isomorphic to e
    agrees = True
    for i, e in component_of.items():
        for f in idem:
            by_iso = partial_iso(nodes[e].action, nodes[f].action) is not None
            if by_iso != (e == f):
                agrees = False
    return CliffordReport(nodes, idem, edges, component_of, agrees, anomalies, exceeded)
