"""Invariant subalgebras and the induced partial action of G/H on S^{alpha_H}.

Two independent constructions of the quotient action are provided: one goes
through the globalization (psi_H, gamma_{G/H}, then multiplication by 1_S);
the other evaluates the closed formulas for the idempotents and maps using
only the partial-action data. Both emit the action on the same block labels
so they can be compared literally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .envelope import (
    Globalization, compute_eH, gamma_restricted, globalize, orbit_blocks, psi_map,
    quotient_global_action, block_label,
)
from .errors import NotNormal, TransferFailed
from .group import QuotientData, Subgroup, is_normal, quotient
from .paction import UNDEF, AlgElement, SetPartialAction, act, one_g
from .ring import QQ, BaseRing, kernel_basis


@dataclass(frozen=True)
class InvariantAlgebra:
    action: SetPartialAction
    H: Subgroup
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.blocks)

    def indicator(self, block_ids, ring: BaseRing = QQ) -> AlgElement:
        pts = [x for i in block_ids for x in self.blocks[i]]
        return AlgElement.indicator(self.action.n_points, pts, ring)

    def to_blocks(self, subset) -> frozenset[int]:
        """Block ids of a union of blocks; raises when ``subset`` cuts a block."""
        s = set(subset)
        ids = frozenset(self.block_of[x] for x in s)
        if sum(len(self.blocks[i]) for i in ids) != len(s):
            raise TransferFailed("blocks", "subset is not a union of invariant blocks")
        return ids

    def labels(self) -> tuple[str, ...]:
        return tuple(block_label(self.action.labels, b) for b in self.blocks)


def _invariance_rows(a: SetPartialAction, H: Subgroup, ring: BaseRing) -> list[list]:
    """One equation s_{sigma_h(x)} - s_x = 0 per h in H and x in the domain of sigma_h."""
    n = a.n_points
    rows = []
    for h in H.members:
        for x, y in enumerate(a.sigma[h]):
            if y != UNDEF and y != x:
                r = [ring.zero] * n
                r[y] = ring.one
                r[x] = -ring.one
                rows.append(r)
    return rows


def invariants(a: SetPartialAction, H: Subgroup, ring: BaseRing = QQ) -> InvariantAlgebra:
    blocks = orbit_blocks(a, H.members)
    block_of = [0] * a.n_points
    for i, b in enumerate(blocks):
        for x in b:
            block_of[x] = i
    inv = InvariantAlgebra(a, H, blocks, tuple(block_of))
    kb = kernel_basis(_invariance_rows(a, H, ring), ring, cols=a.n_points)
    if len(kb) != len(blocks):
        raise TransferFailed("invariants", "kernel dimension differs from the block count")
    # the free column of each component is its largest member, so the RREF kernel basis
    # is exactly the set of block indicators
    if sorted(tuple(v) for v in kb) != sorted(tuple(inv.indicator([i], ring).coeffs) for i in range(len(blocks))):
        raise TransferFailed("invariants", "kernel basis disagrees with the orbit blocks")
    return inv


@dataclass(frozen=True)
class QuotientAction:
    base: InvariantAlgebra
    quotient: QuotientData
    action: SetPartialAction
    tilde: tuple[frozenset[int], ...]   # per coset, the block ids in the support of 1~_{gH}

    def coset_of(self, g: int) -> int:
        return self.quotient.coset_of[g]

    def same_as(self, other: "QuotientAction") -> bool:
        return (self.base.blocks, self.action.sigma, self.tilde) == (other.base.blocks, other.action.sigma, other.tilde)


def _require_normal(a: SetPartialAction, H: Subgroup) -> QuotientData:
    if not is_normal(a.group, H):
        raise NotNormal("quotient needs a normal subgroup")
    return quotient(a.group, H)


def _assemble(a: SetPartialAction, base: InvariantAlgebra, Q: QuotientData,
              maps: list[dict[int, int]], tilde: list[frozenset[int]]) -> QuotientAction:
    rows = []
    for c in range(len(Q.cosets)):
        row = [UNDEF] * base.dim
        for b, b2 in maps[c].items():
            row[b] = b2
        rows.append(tuple(row))
    act_q = SetPartialAction(Q.table, tuple(rows), base.labels())
    return QuotientAction(base, Q, act_q, tuple(tilde))


def _as_block(base: InvariantAlgebra, e: AlgElement, what: str) -> int | None:
    """The block id whose indicator is ``e`` (None for zero)."""
    if e.is_zero():
        return None
    ids = base.to_blocks(e.as_subset())
    if len(ids) != 1:
        raise TransferFailed(what, "image is not a single primitive idempotent")
    return next(iter(ids))


def quotient_partial_action(a: SetPartialAction, H: Subgroup, gl: Globalization | None = None,
                            ring: BaseRing = QQ) -> QuotientAction:
    """alpha_{G/H} via the globalization: alpha_{gH} = m_{1_S} o gamma_{gH} o psi_H."""
    Q = _require_normal(a, H)
    gl = gl or globalize(a)
    base = invariants(a, H, ring)
    data = compute_eH(gl, H)
    gamma = gamma_restricted(gl, H)
    Y = gl.size
    one_S = AlgElement.indicator(Y, gl.one_S, ring)
    eH = AlgElement.indicator(Y, data.eH, ring)
    inside = {x for b in gamma.blocks for x in b}
    if inside != set(data.eH):
        raise TransferFailed("quotient", "gamma_{G/H} does not live on T^{beta_H} e_H")
    maps, tilde = [], []
    for c, g in enumerate(Q.transversal):
        t1 = act(gl.T, g, eH) * one_S                     # 1~_{gH} = beta_g(e_H) 1_S
        tilde.append(base.to_blocks(gl.embed.index(y) for y in t1.as_subset()))
        ginv = Q.transversal[Q.table.inv[c]]
        dom = act(gl.T, ginv, eH) * one_S                 # 1~_{g^-1 H}
        dom_blocks = base.to_blocks(gl.embed.index(y) for y in dom.as_subset())
        m = {}
        for b in dom_blocks:
            f = AlgElement.indicator(Y, [gl.embed[x] for x in base.blocks[b]], ring)
            p = psi_map(gl, H, f, data)
            if p * eH != p:
                raise TransferFailed("quotient", "psi_H left T e_H")
            img = act(gl.T, g, p) * one_S
            pulled = AlgElement.of((img[gl.embed[x]] for x in range(a.n_points)), ring)
            b2 = _as_block(base, pulled, "quotient")
            if b2 is None or b2 not in tilde[c]:
                raise TransferFailed("quotient", "alpha_{gH} does not land in D~_{gH}")
            m[b] = b2
        maps.append(m)
    return _assemble(a, base, Q, maps, tilde)


def tilde_idempotent(a: SetPartialAction, H: Subgroup, g: int, ring: BaseRing = QQ) -> AlgElement:
    """1_g + sum_{i>=2} prod_{j=2}^{i} (1_S - 1_{g h_{j-1}}) 1_{g h_i}."""
    G, n = a.group, a.n_points
    one = AlgElement.one(n, ring)
    hs = H.members
    out = one_g(a, g, ring)
    for i in range(1, len(hs)):
        term = one_g(a, G.mul[g][hs[i]], ring)
        for j in range(1, i + 1):
            term = term * (one - one_g(a, G.mul[g][hs[j - 1]], ring))
        out = out + term
    return out


def direct_map(a: SetPartialAction, H: Subgroup, g: int, x: AlgElement) -> AlgElement:
    """alpha_g(x 1_{g^-1}) + sum_{i>=2} prod_{j<i} (1_S - 1_{g h_j}) alpha_{g h_i}(x 1_{(g h_i)^-1})."""
    G, n = a.group, a.n_points
    one = AlgElement.one(n, x.ring)
    hs = H.members
    out = act(a, g, x)
    for i in range(1, len(hs)):
        gi = G.mul[g][hs[i]]
        term = act(a, gi, x)
        for j in range(i):
            term = term * (one - one_g(a, G.mul[g][hs[j]], x.ring))
        out = out + term
    return out


def quotient_partial_action_direct(a: SetPartialAction, H: Subgroup, ring: BaseRing = QQ) -> QuotientAction:
    """alpha_{G/H} from the closed formulas, without building a globalization."""
    Q = _require_normal(a, H)
    base = invariants(a, H, ring)
    maps, tilde = [], []
    for c, g in enumerate(Q.transversal):
        t = tilde_idempotent(a, H, g, ring)
        tilde.append(base.to_blocks(t.as_subset()))
        ginv = Q.transversal[Q.table.inv[c]]
        dom = base.to_blocks(tilde_idempotent(a, H, ginv, ring).as_subset())
        m = {}
        for b in dom:
            img = direct_map(a, H, g, base.indicator([b], ring))
            b2 = _as_block(base, img, "direct quotient")
            if b2 is None or b2 not in tilde[c]:
                raise TransferFailed("direct quotient", "alpha_{gH} does not land in D~_{gH}")
            m[b] = b2
        maps.append(m)
    return _assemble(a, base, Q, maps, tilde)


@dataclass(frozen=True)
class GlobalityReport:
    annihilator: bool      # beta_{g_i}(1_S)(1_T - e_H) = 0 for every transversal element
    tilde_test: bool       # 1~_{gH} = 1 for every coset
    witness: int | None    # first coset breaking the annihilator test

    @property
    def agree(self) -> bool:
        return self.annihilator == self.tilde_test

    @property
    def is_global(self) -> bool:
        return self.annihilator


def is_quotient_global(a: SetPartialAction, H: Subgroup, gl: Globalization | None = None) -> GlobalityReport:
    Q = _require_normal(a, H)
    gl = gl or globalize(a)
    eH = compute_eH(gl, H).eH
    witness = next((c for c, g in enumerate(Q.transversal) if not gl.beta(g, gl.one_S) <= eH), None)
    full = frozenset(range(a.n_points))
    tilde_ok = all(frozenset(tilde_idempotent(a, H, g).support()) == full for g in Q.transversal)
    return GlobalityReport(witness is None, tilde_ok, witness)


def lift_blocks(qa: QuotientAction, blocks) -> tuple[tuple[int, ...], ...]:
    """Blocks of blocks of S^{alpha_H}, flattened back to point sets of S."""
    return tuple(sorted(tuple(sorted(x for b in bb for x in qa.base.blocks[b])) for bb in blocks))


def invariants_transfer(a: SetPartialAction, qa: QuotientAction) -> bool:
    """(S^{alpha_H})^{alpha_{G/H}} = S^{alpha_G}, compared as block partitions of X."""
    top = orbit_blocks(qa.action, range(qa.quotient.table.n))
    whole = orbit_blocks(a, range(a.group.n))
    return lift_blocks(qa, top) == whole


@dataclass(frozen=True)
class TransferReport:
    quotient: QuotientAction
    certificate: object
    invariants_match: bool

    @property
    def ok(self) -> bool:
        return bool(self.certificate.is_galois) and self.invariants_match


def galois_transfer_check(a: SetPartialAction, H: Subgroup, ring: BaseRing = QQ) -> TransferReport:
    """Quotient of a partial Galois extension is again partial Galois over the same invariants."""
    from .galois import galois_check
    cert = galois_check(a, ring)
    if not cert.is_galois:
        raise TransferFailed("precondition", f"input is not partial Galois: {cert.reason}")
    qa = quotient_partial_action(a, H, ring=ring)
    qcert = galois_check(qa.action, ring)
    if not qcert.is_galois:
        raise TransferFailed("quotient Galois", qcert.reason)
    match = invariants_transfer(a, qa)
    if not match:
        raise TransferFailed("invariants", "(S^H)^{G/H} differs from S^G")
    return TransferReport(qa, qcert, match)


def quotient_globalization_matches(a: SetPartialAction, H: Subgroup) -> bool:
    """The globalization of alpha_{G/H} is G/H-isomorphic to beta_{G/H} on T^{beta_H}."""
    from .galois import global_pair_iso
    gl = globalize(a)
    qa = quotient_partial_action(a, H, gl)
    ours = globalize(qa.action)
    ref = quotient_global_action(gl, H)
    # blocks of S^{alpha_H} sit inside T^{beta_H} as blocks meeting 1_S
    where = {x: i for i, b in enumerate(ref.blocks) for x in b}
    sub = frozenset(where[gl.embed[b[0]]] for b in qa.base.blocks)
    return global_pair_iso((ours.T, ours.one_S), (ref.action, sub)) is not None


def gamma_invariants_match(a: SetPartialAction, H: Subgroup) -> bool:
    """T^{beta_G} e_H = (T^{beta_H} e_H)^{gamma_{G/H}}, compared as point partitions of e_H."""
    gl = globalize(a)
    eH = compute_eH(gl, H).eH
    lhs = tuple(sorted(tuple(x for x in b if x in eH) for b in orbit_blocks(gl.T, range(a.group.n))
                       if set(b) & eH))
    gamma = gamma_restricted(gl, H)
    top = orbit_blocks(gamma.action, range(gamma.quotient.table.n))
    rhs = tuple(sorted(tuple(sorted(x for i in bb for x in gamma.blocks[i])) for bb in top))
    return lhs == rhs
