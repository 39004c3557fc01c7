"""Partial Galois certification and the isomorphism relations between partial actions."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .envelope import Globalization, globalize, orbit_blocks
from .errors import GroupMismatch, Indeterminate, PargalError, RingMismatch, ValidationFailed
from .group import normal_subgroups
from .paction import UNDEF, AlgElement, ExtensionRecord, SetPartialAction, act, validate
from .ring import QQ, BaseRing, is_bijective, solve

DEFAULT_TIMEOUT = 10.0


@dataclass(frozen=True)
class GaloisCertificate:
    is_galois: bool
    coords: tuple[tuple[AlgElement, AlgElement], ...] = ()
    reason: str = ""

    def __bool__(self):
        return self.is_galois


def phi_matrix(a: SetPartialAction, ring: BaseRing = QQ) -> tuple[list[list], list[tuple[int, int]]]:
    """Matrix of x (x) y -> (x alpha_g(y 1_{g^-1}))_g; columns (x, y), rows (g, z) with z in X_g."""
    N = a.n_points
    rows_idx = [(g, z) for g in a.group for z in sorted(a.ideal(g))]
    pos = {r: i for i, r in enumerate(rows_idx)}
    M = [[ring.zero] * (N * N) for _ in rows_idx]
    for x in range(N):
        for y in range(N):
            for g in a.group:
                if a.sigma[g][y] == x:
                    M[pos[(g, x)]][x * N + y] = ring.one
    return M, rows_idx


def verify_coordinates(a: SetPartialAction, coords, ring: BaseRing = QQ) -> bool:
    """sum_i x_i alpha_g(y_i 1_{g^-1}) = delta_{1,g} 1_S for every g."""
    n = a.n_points
    for g in a.group:
        total = AlgElement.zero(n, ring)
        for x, y in coords:
            total = total + x * act(a, g, y)
        target = AlgElement.one(n, ring) if g == 0 else AlgElement.zero(n, ring)
        if total != target:
            return False
    return True


def galois_check(a: SetPartialAction, ring: BaseRing = QQ) -> GaloisCertificate:
    a = as_action(a)
    report = validate(a)
    if not report.ok:
        raise ValidationFailed(report)
    N = a.n_points
    if N == 0:
        return GaloisCertificate(False, reason="zero algebra")
    if len(orbit_blocks(a, range(a.group.n))) != 1:
        return GaloisCertificate(False, reason="invariants are larger than R")
    M, rows_idx = phi_matrix(a, ring)
    rhs = [ring.one if g == 0 else ring.zero for g, _ in rows_idx]
    v = solve(M, rhs, ring)
    if v is None:
        return GaloisCertificate(False, reason="no partial Galois coordinates")
    if not is_bijective(M, ring):
        return GaloisCertificate(False, reason="phi is not bijective")
    coords = []
    for x in range(N):
        for y in range(N):
            c = v[x * N + y]
            if c != 0:
                coords.append((AlgElement.basis(N, x, ring) * c, AlgElement.basis(N, y, ring)))
    coords = tuple(coords)
    if not verify_coordinates(a, coords, ring):
        raise PargalError("solver returned coordinates that fail verification")
    return GaloisCertificate(True, coords)


def as_action(obj) -> SetPartialAction:
    return obj if isinstance(obj, SetPartialAction) else obj.action


def _ring_of(obj) -> BaseRing | None:
    return obj.ring if isinstance(obj, ExtensionRecord) else None


@dataclass(frozen=True)
class IsoWitness:
    """A bijection f of idempotent bases, f[x] in the target for x in the source."""

    mapping: tuple[int, ...]
    source: SetPartialAction
    target: SetPartialAction

    def inverse(self) -> "IsoWitness":
        inv = [0] * len(self.mapping)
        for x, y in enumerate(self.mapping):
            inv[y] = x
        return IsoWitness(tuple(inv), self.target, self.source)

    def compose(self, other: "IsoWitness") -> "IsoWitness":
        """``other`` after ``self``."""
        return IsoWitness(tuple(other.mapping[y] for y in self.mapping), self.source, other.target)

    def verify(self) -> bool:
        return _is_iso(self.source, self.target, self.mapping)


def _is_iso(a: SetPartialAction, b: SetPartialAction, f: Sequence[int]) -> bool:
    if sorted(f) != list(range(b.n_points)) or a.n_points != b.n_points:
        return False
    for g in a.group:
        if frozenset(f[x] for x in a.ideal(g)) != b.ideal(g):
            return False
        for x, y in enumerate(a.sigma[g]):
            if y != UNDEF and b.sigma[g][f[x]] != f[y]:
                return False
    return True


def _search(a: SetPartialAction, b: SetPartialAction, colors_a=None, colors_b=None,
            timeout: float = DEFAULT_TIMEOUT) -> tuple[int, ...] | None:
    """Backtracking over component roots; an assignment of one root fixes its whole component."""
    if a.n_points != b.n_points:
        return None
    N = a.n_points
    sig_a = [(a.signature(x), colors_a[x] if colors_a else 0) for x in range(N)]
    sig_b = [(b.signature(x), colors_b[x] if colors_b else 0) for x in range(N)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    comps = orbit_blocks(a, range(a.group.n))
    comps = sorted(comps, key=len, reverse=True)
    deadline = time.monotonic() + timeout
    f = [UNDEF] * N
    used = [False] * N

    def place(root, image):
        """Propagate f(root) = image through the component; returns the assigned points or None."""
        assigned = []
        stack = [(root, image)]
        ok = True
        while stack:
            x, y = stack.pop()
            if f[x] != UNDEF:
                if f[x] != y:
                    ok = False
                    break
                continue
            if used[y] or sig_a[x] != sig_b[y]:
                ok = False
                break
            f[x] = y
            used[y] = True
            assigned.append(x)
            for g in a.group:
                x2 = a.sigma[g][x]
                if x2 != UNDEF:
                    stack.append((x2, b.sigma[g][y]))
        if not ok:
            for x in assigned:
                used[f[x]] = False
                f[x] = UNDEF
            return None
        return assigned

    def rec(k):
        if time.monotonic() > deadline:
            raise Indeterminate(f"isomorphism search exceeded {timeout} s")
        if k == len(comps):
            return True
        root = comps[k][0]
        for y in range(N):
            if used[y] or sig_a[root] != sig_b[y]:
                continue
            assigned = place(root, y)
            if assigned is None:
                continue
            if rec(k + 1):
                return True
            for x in assigned:
                used[f[x]] = False
                f[x] = UNDEF
        return False

    if not rec(0):
        return None
    return tuple(f)


def _check_pair(a, b):
    ra, rb = _ring_of(a), _ring_of(b)
    if ra is not None and rb is not None and ra != rb:
        raise RingMismatch(f"{ra} vs {rb}")
    a, b = as_action(a), as_action(b)
    if a.group != b.group:
        raise GroupMismatch("actions of different groups")
    return a, b


def partial_iso(a, b, timeout: float = DEFAULT_TIMEOUT) -> IsoWitness | None:
    """A basis bijection f with f(X_g) = X'_g and f sigma_g = sigma'_g f, if one exists."""
    a, b = _check_pair(a, b)
    f = _search(a, b, timeout=timeout)
    if f is None:
        return None
    w = IsoWitness(f, a, b)
    if not w.verify():
        raise PargalError("search produced an invalid witness")
    return w


GlobalPair = tuple[SetPartialAction, frozenset]


def _as_pair(p) -> GlobalPair:
    if isinstance(p, Globalization):
        return p.T, p.one_S
    T, E = p
    return T, frozenset(E)


def global_pair_iso(p, q, timeout: float = DEFAULT_TIMEOUT) -> IsoWitness | None:
    """A G-isomorphism of global actions carrying the marked ideal of ``p`` onto that of ``q``."""
    (T1, E1), (T2, E2) = _as_pair(p), _as_pair(q)
    if T1.group != T2.group:
        raise GroupMismatch("actions of different groups")
    if not (T1.is_global() and T2.is_global()):
        raise PargalError("global_pair_iso needs global actions")
    c1 = [int(y in E1) for y in range(T1.n_points)]
    c2 = [int(y in E2) for y in range(T2.n_points)]
    f = _search(T1, T2, c1, c2, timeout=timeout)
    if f is None:
        return None
    return IsoWitness(f, T1, T2)


def _component_code(a: SetPartialAction, comp: Sequence[int]) -> tuple:
    best = None
    for r in comp:
        first: dict[int, int] = {}
        for g in a.group:
            y = a.sigma[g][r]
            if y != UNDEF and y not in first:
                first[y] = g
        order = sorted(comp, key=lambda y: first[y])
        lab = {y: i for i, y in enumerate(order)}
        code = tuple(tuple(lab[a.sigma[g][y]] if a.sigma[g][y] != UNDEF else UNDEF for y in order)
                     for g in a.group)
        if best is None or code < best:
            best = code
    return (len(comp), best)


def canonical_form(a) -> tuple:
    """A complete invariant for partial isomorphism within a fixed group."""
    a = as_action(a)
    comps = orbit_blocks(a, range(a.group.n))
    return (a.group.n, a.n_points, tuple(sorted(_component_code(a, c) for c in comps)))


def canonical_relabel(a) -> SetPartialAction:
    """Relabel points into the order used by the canonical form."""
    a = as_action(a)
    comps = orbit_blocks(a, range(a.group.n))
    keyed = []
    for c in comps:
        code = _component_code(a, c)
        for r in c:
            first: dict[int, int] = {}
            for g in a.group:
                y = a.sigma[g][r]
                if y != UNDEF and y not in first:
                    first[y] = g
            order = sorted(c, key=lambda y: first[y])
            lab = {y: i for i, y in enumerate(order)}
            rc = tuple(tuple(lab[a.sigma[g][y]] if a.sigma[g][y] != UNDEF else UNDEF for y in order)
                       for g in a.group)
            if rc == code[1]:
                keyed.append((code, order))
                break
    keyed.sort(key=lambda t: t[0])
    perm = [0] * a.n_points
    k = 0
    for _, order in keyed:
        for y in order:
            perm[y] = k
            k += 1
    return a.relabel(perm)


@dataclass(frozen=True)
class Pro10Report:
    global_pairs: bool
    quotients: bool
    partial: bool
    per_subgroup: tuple[tuple[tuple[int, ...], bool], ...]

    @property
    def agree(self) -> bool:
        return self.global_pairs == self.quotients == self.partial

    @property
    def value(self) -> bool:
        return self.partial


def theorem_pro10_check(a, b, timeout: float = DEFAULT_TIMEOUT) -> Pro10Report:
    """Compare globalization pairs, quotients by every normal subgroup, and the actions themselves."""
    from .quotient import quotient_partial_action
    a, b = _check_pair(a, b)
    i_global = global_pair_iso(globalize(a), globalize(b), timeout) is not None
    i_partial = partial_iso(a, b, timeout) is not None
    per = []
    for H in normal_subgroups(a.group):
        qa = quotient_partial_action(a, H).action
        qb = quotient_partial_action(b, H).action
        per.append((H.members, partial_iso(qa, qb, timeout) is not None))
    return Pro10Report(i_global, all(v for _, v in per), i_partial, tuple(per))
