"""Command-line front end: ``pargal <command> ...``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import notation
from .envelope import compute_eH, globalize
from .errors import Indeterminate, ParseError, PargalError, ValidationFailed
from .galois import galois_check, global_pair_iso, partial_iso
from .group import Subgroup, subgroup_by_names
from .jsonio import action_to_json, dumps, load_action
from .paction import SetPartialAction, validate
from .quotient import (
    invariants, is_quotient_global, quotient_partial_action, quotient_partial_action_direct,
)
from .reproduce import GOLDEN, reproduce
from .ring import BaseRing
from .semigroup import (
    DEFAULT_BUDGET, DELTAS, clifford_decompose, idempotent_of, pi_image, star_par,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
REPORT_OPS = ("globalize", "invariants", "quotient", "galois", "star", "idem", "pi", "clifford")


@dataclass(frozen=True)
class RunConfig:
    ring: BaseRing
    delta: str
    timeout: float
    budget: int
    out: str | None


def _timeout(text: str) -> float:
    text = text.strip().lower()
    return float(text[:-1] if text.endswith("s") else text)


def _config(args) -> RunConfig:
    try:
        ring = BaseRing.parse(args.ring)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return RunConfig(ring, args.delta, _timeout(args.timeout), args.budget, args.out)


def _subgroup(a: SetPartialAction, spec: str | None) -> Subgroup:
    if spec is None:
        return Subgroup(a.group, tuple(a.group))
    try:
        return subgroup_by_names(a.group, spec.split(","))
    except PargalError as exc:
        raise ParseError(str(exc)) from exc


def _emit(cfg: RunConfig, data: dict, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(dumps(data))
    print(text)


def _globalize_data(a: SetPartialAction):
    gl = globalize(a)
    data = {
        "Y": gl.size,
        "labels": list(gl.T.labels),
        "embed": list(gl.embed),
        "beta": {a.group.name(g): list(gl.T.sigma[g]) for g in a.group},
    }
    text = f"globalization on {gl.size} points\n" + notation.action_table(gl.T)
    return data, text


def _invariants_data(a, H):
    inv = invariants(a, H)
    data = {"subgroup": [a.group.name(h) for h in H], "blocks": [list(b) for b in inv.blocks]}
    return data, f"S^H = {notation.span(inv.labels())}"


def _quotient_data(a, H, route="definitional"):
    qa = quotient_partial_action(a, H)
    if route in ("direct", "both"):
        qd = quotient_partial_action_direct(a, H)
        if route == "direct":
            qa = qd
        elif not qa.same_as(qd):
            raise PargalError("quotient routes disagree")
    lines = [f"S^H = {notation.span(qa.base.labels())}"]
    cosets = {}
    names = qa.quotient.table.names
    for c in range(len(qa.quotient.cosets)):
        pts = [x for b in sorted(qa.tilde[c]) for x in qa.base.blocks[b]]
        lines.append(f"{names[c]:>6}: 1~ = {notation.idem(pts, a.labels)}   "
                     f"D~ = {notation.span(qa.base.labels()[b] for b in sorted(qa.tilde[c]))}   "
                     f"alpha: {notation.block_map(qa.action, c, 'abcdefghijklmnop')}")
        cosets[names[c]] = {"tilde": sorted(qa.tilde[c]), "sigma": list(qa.action.sigma[c])}
    glob = is_quotient_global(a, H)
    lines.append(f"global: {str(glob.is_global).lower()}")
    data = {"blocks": [list(b) for b in qa.base.blocks], "cosets": cosets,
            "global": glob.is_global, "action": action_to_json(qa.action)}
    return qa, data, "\n".join(lines)


def _galois_data(a, cfg):
    cert = galois_check(a, cfg.ring)
    data = {"galois": cert.is_galois, "reason": cert.reason,
            "coords": [[[str(v) for v in x.coeffs], [str(v) for v in y.coeffs]] for x, y in cert.coords]}
    if cert.is_galois:
        text = "partial Galois; coordinates: " + " + ".join(
            f"{notation.term(x.support(), a.labels)}(x){notation.term(y.support(), a.labels)}" for x, y in cert.coords)
    else:
        text = f"not partial Galois: {cert.reason}"
    return cert, data, text


def _node_text(title, a):
    return f"{title} ({a.n_points} points)\n" + notation.action_table(a)


def cmd_validate(args, cfg):
    a = load_action(args.action)
    report = validate(a)
    data = {"valid": report.ok, "violations": [str(v) for v in report.violations]}
    _emit(cfg, data, str(report))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_globalize(args, cfg):
    data, text = _globalize_data(load_action(args.action))
    _emit(cfg, data, text)
    return EXIT_OK


def cmd_invariants(args, cfg):
    a = load_action(args.action)
    data, text = _invariants_data(a, _subgroup(a, args.subgroup))
    _emit(cfg, data, text)
    return EXIT_OK


def cmd_quotient(args, cfg):
    a = load_action(args.action)
    _, data, text = _quotient_data(a, _subgroup(a, args.subgroup), args.route)
    _emit(cfg, data, text)
    return EXIT_OK


def cmd_galois(args, cfg):
    a = load_action(args.action)
    cert, data, text = _galois_data(a, cfg)
    _emit(cfg, data, text)
    return EXIT_OK if cert.is_galois else EXIT_FAIL


def cmd_iso(args, cfg):
    a, b = load_action(args.a), load_action(args.b)
    try:
        if args.global_pair:
            w = global_pair_iso(globalize(a), globalize(b), cfg.timeout)
        else:
            w = partial_iso(a, b, cfg.timeout)
    except Indeterminate as exc:
        _emit(cfg, {"iso": None, "indeterminate": True}, f"indeterminate: {exc}")
        return EXIT_FAIL
    data = {"iso": w is not None, "mapping": list(w.mapping) if w else None}
    _emit(cfg, data, f"isomorphic: {'yes ' + str(list(w.mapping)) if w else 'no'}")
    return EXIT_OK if w else EXIT_FAIL


def cmd_star(args, cfg):
    node = star_par(load_action(args.a), load_action(args.b), cfg.delta)
    _emit(cfg, action_to_json(node.action), _node_text("star product", node.action))
    return EXIT_OK


def cmd_idem(args, cfg):
    res = idempotent_of(load_action(args.action), args.route, cfg.delta)
    data = {"action": action_to_json(res.node.action), "routes_agree": res.routes_agree,
            "is_idempotent": res.is_idempotent}
    text = _node_text("idempotent", res.node.action)
    text += f"\nroutes agree: {res.routes_agree}\nE * E = E: {res.is_idempotent}"
    _emit(cfg, data, text)
    return EXIT_OK


def cmd_pi(args, cfg):
    rec = pi_image(load_action(args.action), cfg.ring)
    _emit(cfg, action_to_json(rec.action), _node_text("globalization (global extension)", rec.action))
    return EXIT_OK


def _clifford_data(seeds, cfg):
    rep = clifford_decompose(seeds, cfg.budget, cfg.delta)
    data = {
        "nodes": [action_to_json(n.action) for n in rep.nodes],
        "idempotents": rep.idempotents,
        "semilattice": [list(e) for e in rep.edges],
        "components": {str(k): v for k, v in sorted(rep.component_of.items())},
        "membership_agrees": rep.membership_agrees,
        "anomalies": rep.anomalies,
        "budget_exceeded": rep.budget_exceeded,
    }
    text = (f"{len(rep.nodes)} classes, {len(rep.idempotents)} idempotents, "
            f"budget exceeded: {rep.budget_exceeded}\n"
            f"semilattice edges: {rep.edges}\nanomalies: {len(rep.anomalies)}")
    for line in rep.anomalies:
        text += f"\n  {line}"
    return data, text


def cmd_clifford(args, cfg):
    data, text = _clifford_data([load_action(p) for p in args.seeds], cfg)
    _emit(cfg, data, text)
    return EXIT_OK


def cmd_reproduce(args, cfg):
    computed, mismatches = reproduce(args.example)
    lines = [f"{k} = {v}" for k, v in computed.items()]
    for m in mismatches:
        lines.append(f"MISMATCH {m.field}: expected {m.expected!r}, got {m.got!r}")
    lines.append(f"{len(GOLDEN[args.example]) - len(mismatches)}/{len(GOLDEN[args.example])} golden values match")
    data = {"computed": computed, "mismatches": [m.__dict__ for m in mismatches]}
    _emit(cfg, data, "\n".join(lines))
    return EXIT_FAIL if mismatches else EXIT_OK


def cmd_report(args, cfg):
    unknown = [op for op in args.ops if op not in REPORT_OPS]
    if unknown:
        print(f"unknown op {unknown[0]!r}; choose from {', '.join(REPORT_OPS)}", file=sys.stderr)
        return EXIT_USAGE
    a = load_action(args.action)
    sections = [("input", action_to_json(a), _node_text("input", a))]
    for op in args.ops:
        if op == "globalize":
            data, text = _globalize_data(a)
        elif op == "invariants":
            data, text = _invariants_data(a, _subgroup(a, args.subgroup))
        elif op == "quotient":
            qa, data, text = _quotient_data(a, _subgroup(a, args.subgroup))
            a = qa.action
        elif op == "galois":
            _, data, text = _galois_data(a, cfg)
        elif op == "star":
            a = star_par(a, a, cfg.delta, certify=False).action
            data, text = action_to_json(a), _node_text("a * a", a)
        elif op == "idem":
            a = idempotent_of(a, "a", cfg.delta).route_a
            data, text = action_to_json(a), _node_text("idempotent", a)
        elif op == "pi":
            a = pi_image(a).action
            data, text = action_to_json(a), _node_text("globalization", a)
        else:
            data, text = _clifford_data([a], cfg)
        sections.append((op, data, text))
    payload = {"ops": list(args.ops), "sections": [{"op": op, "data": d} for op, d, _ in sections]}
    _emit(cfg, payload, "\n\n".join(f"== {op} ==\n{t}" for op, _, t in sections))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="q", help="base field: q or fp:<p> (default q)")
    common.add_argument("--delta", default="antidiagonal", choices=DELTAS)
    common.add_argument("--timeout", default="10s", help="isomorphism search deadline (default 10s)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="closure budget (default 64)")
    common.add_argument("--out", default=None, help="also write the JSON report here")

    p = argparse.ArgumentParser(prog="pargal", description="Partial Galois extensions of split algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check the partial-action axioms").add_argument("action")
    add("globalize", cmd_globalize, "build the enveloping action").add_argument("action")
    sp = add("invariants", cmd_invariants, "invariant subalgebra under a subgroup")
    sp.add_argument("action")
    sp.add_argument("--subgroup", help="comma-separated generator names, e.g. g^2")
    sp = add("quotient", cmd_quotient, "induced partial action of G/H")
    sp.add_argument("action")
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--route", choices=("definitional", "direct", "both"), default="both")
    add("galois", cmd_galois, "partial Galois certificate").add_argument("action")
    sp = add("iso", cmd_iso, "partial (or global pair) isomorphism")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--global-pair", action="store_true")
    sp = add("star", cmd_star, "star product of two classes")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("idem", cmd_idem, "idempotent a* * a")
    sp.add_argument("action")
    sp.add_argument("--route", choices=("a", "b", "both"), default="both")
    add("pi", cmd_pi, "image in the Harrison group").add_argument("action")
    sp = add("clifford", cmd_clifford, "closure of seeds and its idempotent semilattice")
    sp.add_argument("seeds", nargs="+")
    add("reproduce", cmd_reproduce, "recompute a worked example").add_argument(
        "example", choices=sorted(GOLDEN))
    sp = add("report", cmd_report, "run a pipeline of operations")
    sp.add_argument("action")
    sp.add_argument("ops", nargs="*")
    sp.add_argument("--subgroup")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.fn(args, cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationFailed as exc:
        print(f"validation failed:\n{exc.report}", file=sys.stderr)
        return EXIT_FAIL
    except PargalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
