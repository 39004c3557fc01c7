"""Recompute the quantities displayed in the three worked examples and diff them against golden values.

Golden values are stored in e-notation. Sums are compared term by term, so
``ae3+be1`` and ``be1+ae3`` are the same value.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import notation
from .envelope import Globalization, compute_eH, globalize, psi_map
from .fixtures import ec6r, ec6r_global, ex0, ex0_global, theta
from .galois import galois_check, global_pair_iso, verify_coordinates
from .group import subgroup_by_names
from .paction import AlgElement, SetPartialAction
from .quotient import invariants, is_quotient_global, quotient_partial_action, quotient_partial_action_direct
from .semigroup import delta_subgroup, inverse_action, tensor, transport_from_product

GOLDEN: dict[str, dict[str, str]] = {
    "ex0": {
        "S_g": "Re1⊕Re2",
        "S_g^2": "Re1⊕Re3",
        "S_g^3": "Re2⊕Re3",
        "alpha_g": "ae2+be3 -> ae1+be2",
        "alpha_g^2": "ae1+be3 -> ae3+be1",
        "alpha_g^3": "ae1+be2 -> ae2+be3",
        "S^H": "R(e1+e3)⊕Re2",
        "beta_g": "e1->e4, e2->e1, e3->e2, e4->e3",
        "psi_H": "ae1+b(e2+e4)+ce3",
        "e_H": "e1+e2+e3+e4",
        "e_H is 1_T": "true",
        "1~_gH": "e1+e2+e3",
        "D~_gH": "R(e1+e3)⊕Re2",
        "alpha_gH": "a(e1+e3)+be2 -> b(e1+e3)+ae2",
        "quotient is global": "true",
    },
    "ec6r": {
        "S_g": "Re1",
        "S_g^2": "Re3",
        "S_g^3": "Re3⊕Re6",
        "S_g^4": "Re1",
        "S_g^5": "Re6",
        "S^H": "Re1⊕R(e3+e6)",
        "psi_H": "a1(e1+e4)+a3e3+a6e6",
        "e_H": "e1+e3+e4+e6",
        "1~_H": "e1+e3+e6",
        "1~_gH": "e1",
        "1~_g^2H": "e3+e6",
        "D~_H": "Re1⊕R(e3+e6)",
        "D~_gH": "Re1",
        "D~_g^2H": "R(e3+e6)",
        "alpha_gH": "a(e3+e6) -> ae1",
        "alpha_g^2H": "ae1 -> a(e3+e6)",
        "quotient is global": "false",
    },
    "sec52": {
        "S_g": "Re2",
        "S_g^2": "0",
        "S_g^3": "Re1",
        "invariants are R": "true",
        "coordinates e1(x)e1 + e2(x)e2": "true",
        "S~": "R(e11+e22)⊕Re12⊕Re21",
        "1~_(1,1)": "e11+e12+e21+e22",
        "1~_(g,1)": "e11+e12+e22",
        "1~_(g^2,1)": "e12+e21",
        "1~_(g^3,1)": "e11+e21+e22",
        "D~_(g,1)": "R(e11+e22)⊕Re12",
        "D~_(g^2,1)": "Re12⊕Re21",
        "D~_(g^3,1)": "R(e11+e22)⊕Re21",
        "theta~_g": "r(e11+e22)+se21 -> r(e11+e22)+se12",
        "theta~_g^2": "re12+se21 -> se12+re21",
        "theta~_g^3": "r(e11+e22)+se12 -> r(e11+e22)+se21",
    },
}


def _split_top(expr: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in expr:
        if ch == "+" and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    out.append(cur)
    return out


def normalize(value: str) -> str:
    """Order-insensitive form of sums, spans and maps."""
    if " -> " in value:
        return " -> ".join(normalize(side) for side in value.split(" -> "))
    if "⊕" in value:
        return "⊕".join(sorted(value.split("⊕")))
    if ", " in value:
        return ", ".join(sorted(value.split(", ")))
    return "+".join(sorted(_split_top(value)))


@dataclass(frozen=True)
class Mismatch:
    field: str
    expected: str
    got: str


def diff(computed: dict[str, str], golden: dict[str, str]) -> list[Mismatch]:
    out = []
    for key, want in golden.items():
        got = computed.get(key, "<missing>")
        if normalize(got) != normalize(want):
            out.append(Mismatch(key, want, got))
    return out


def ambient_labels(gl: Globalization, ambient: SetPartialAction, subset) -> tuple[str, ...]:
    """Labels of Y transported from an ambient global action that the globalization must match."""
    w = global_pair_iso(gl, (ambient, frozenset(subset)))
    if w is None:
        raise AssertionError("globalization does not match the ambient action")
    return tuple(ambient.labels[w.mapping[y]] for y in range(gl.size))


def _ideals(a: SetPartialAction, out: dict[str, str]):
    for g in range(1, a.group.n):
        out[f"S_{a.group.name(g)}"] = notation.span(a.labels[x] for x in sorted(a.ideal(g)))


def _psi_render(gl, H, labels, ambient_order, coeff) -> str:
    images = []
    coeffs = []
    for y in ambient_order:
        img = psi_map(gl, H, AlgElement.basis(gl.size, y)).support()
        images.append(notation.idem(img, labels, key=ambient_order.index) if img else None)
        coeffs.append(coeff(y))
    return notation.linear(images, coeffs)


def _quotient_fields(a, H, qa, prefix_names, out, coeffs):
    labels = qa.base.labels()
    out["S^H"] = notation.span(labels)
    for c, g in enumerate(qa.quotient.transversal):
        cname = prefix_names[c]
        pts = [x for b in sorted(qa.tilde[c]) for x in qa.base.blocks[b]]
        out[f"1~_{cname}"] = notation.idem(pts, a.labels)
        out[f"D~_{cname}"] = notation.span(labels[b] for b in sorted(qa.tilde[c]))
        if c:
            out[f"alpha_{cname}"] = notation.block_map(qa.action, c, coeffs)


def compute_ex0() -> dict[str, str]:
    a = ex0()
    out: dict[str, str] = {}
    _ideals(a, out)
    for g in range(1, 4):
        out[f"alpha_{a.group.name(g)}"] = notation.block_map(a, g, "ab")
    gl = globalize(a)
    labels = ambient_labels(gl, ex0_global(), [0, 1, 2])
    T = gl.T.with_labels(labels)
    out["beta_g"] = notation.point_map(T, 1)
    H = subgroup_by_names(a.group, ["g^2"])
    order = sorted(range(gl.size), key=lambda y: int(labels[y][1:]))
    out["psi_H"] = _psi_render(gl, H, labels, order, lambda y: "abcd"[order.index(y)])
    eH = compute_eH(gl, H).eH
    out["e_H"] = notation.idem(eH, labels, key=order.index)
    out["e_H is 1_T"] = str(len(eH) == gl.size).lower()
    qa = quotient_partial_action(a, H, gl)
    _quotient_fields(a, H, qa, ["H", "gH"], out, "ab")
    out["quotient is global"] = str(is_quotient_global(a, H, gl).is_global).lower()
    return out


def compute_ec6r() -> dict[str, str]:
    a = ec6r()
    out: dict[str, str] = {}
    _ideals(a, out)
    gl = globalize(a)
    labels = ambient_labels(gl, ec6r_global(), [0, 2, 5])
    H = subgroup_by_names(a.group, ["g^3"])
    order = sorted(range(gl.size), key=lambda y: int(labels[y][1:]))
    out["psi_H"] = _psi_render(gl, H, labels, order, lambda y: f"a{labels[y][1:]}")
    eH = compute_eH(gl, H).eH
    out["e_H"] = notation.idem(eH, labels, key=order.index)
    qa = quotient_partial_action(a, H, gl)
    _quotient_fields(a, H, qa, ["H", "gH", "g^2H"], out, "a")
    out["quotient is global"] = str(is_quotient_global(a, H, gl).is_global).lower()
    return out


def theta_star_quotient():
    """The star product theta* * theta before transport, as a quotient of the tensor action."""
    t = theta()
    ten = tensor(inverse_action(t).action, t)
    return ten, quotient_partial_action(ten, delta_subgroup(t.group))


def compute_theta_idempotent() -> dict[str, str]:
    t = theta()
    out: dict[str, str] = {}
    _ideals(t, out)
    cert = galois_check(t)
    out["invariants are R"] = str(len(invariants(t, subgroup_by_names(t.group, ["g"])).blocks) == 1).lower()
    coords = [(AlgElement.basis(2, 0), AlgElement.basis(2, 0)), (AlgElement.basis(2, 1), AlgElement.basis(2, 1))]
    out["coordinates e1(x)e1 + e2(x)e2"] = str(cert.is_galois and verify_coordinates(t, coords)).lower()
    ten, qa = theta_star_quotient()
    direct = quotient_partial_action_direct(ten, qa.base.H)
    if not direct.same_as(qa):
        raise AssertionError("the two quotient constructions disagree")
    labels = qa.base.labels()
    out["S~"] = notation.span(labels)
    n = t.group.n
    for l in range(n):
        c = qa.quotient.coset_of[l * n]
        name = "1" if l == 0 else t.group.name(l)
        pts = [x for b in sorted(qa.tilde[c]) for x in qa.base.blocks[b]]
        out[f"1~_({name},1)"] = notation.idem(pts, ten.labels)
        if l:
            out[f"D~_({name},1)"] = notation.span(labels[b] for b in sorted(qa.tilde[c]))
    star = transport_from_product(qa, t.group)
    for g in range(1, n):
        out[f"theta~_{t.group.name(g)}"] = notation.block_map(star, g, "rs")
    return out


COMPUTE = {"ex0": compute_ex0, "ec6r": compute_ec6r, "sec52": compute_theta_idempotent}


def reproduce(name: str) -> tuple[dict[str, str], list[Mismatch]]:
    computed = COMPUTE[name]()
    return computed, diff(computed, GOLDEN[name])
