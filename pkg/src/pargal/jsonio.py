"""JSON descriptors for groups and partial actions.

Group: ``{"cyclic_product": [2, 3]}`` or ``{"table": [[...]], "names": [...]}``.
Action: ``{"group": ..., "points": N, "labels": [...], "dom": {"g": [x, ...]},
"sigma": {"g": {"x": y}}}``. Keys of ``dom``/``sigma`` are element names; a
key that is not a name is read as an element index (so ``"1"`` is always the
identity of a cyclic group). ``dom[g]`` is the domain of sigma_g. An omitted element has
the empty map, except the identity, which defaults to id.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import ParseError, PargalError
from .group import GroupTable, build_cyclic_product
from .paction import UNDEF, SetPartialAction


def parse_group(desc: Any) -> GroupTable:
    if not isinstance(desc, dict):
        raise ParseError("group descriptor must be an object")
    try:
        if "cyclic_product" in desc:
            return build_cyclic_product([int(o) for o in desc["cyclic_product"]])
        if "table" in desc:
            return GroupTable(desc["table"], tuple(desc.get("names", ())))
    except PargalError as exc:
        raise ParseError(f"bad group: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad group: {exc}") from exc
    raise ParseError("group descriptor needs 'cyclic_product' or 'table'")


def _element(G: GroupTable, key: str) -> int:
    if key in G.names:
        return G.index(key)
    try:
        g = int(key)
    except ValueError:
        raise ParseError(f"unknown group element {key!r}") from None
    if not 0 <= g < G.n:
        raise ParseError(f"group element {g} out of range")
    return g


def _point(n: int, v) -> int:
    try:
        x = int(v)
    except (TypeError, ValueError):
        raise ParseError(f"bad point {v!r}") from None
    if not 0 <= x < n:
        raise ParseError(f"point {x} out of range [0, {n})")
    return x


def parse_action(desc: Any) -> SetPartialAction:
    if not isinstance(desc, dict):
        raise ParseError("action descriptor must be an object")
    for key in ("group", "points"):
        if key not in desc:
            raise ParseError(f"missing field {key!r}")
    G = parse_group(desc["group"])
    n = desc["points"]
    if not isinstance(n, int) or n < 0:
        raise ParseError("'points' must be a non-negative integer")
    labels = tuple(desc.get("labels", ()))
    if labels and len(labels) != n:
        raise ParseError("'labels' must have one entry per point")
    maps: dict[int, dict[int, int]] = {}
    for key, m in desc.get("sigma", {}).items():
        if not isinstance(m, dict):
            raise ParseError(f"sigma[{key}] must be an object")
        g = _element(G, key)
        maps[g] = {_point(n, x): _point(n, y) for x, y in m.items()}
    for key, pts in desc.get("dom", {}).items():
        g = _element(G, key)
        given = {_point(n, x) for x in pts}
        if given != set(maps.get(g, {} if g else dict.fromkeys(range(n))).keys()):
            raise ParseError(f"dom[{key}] disagrees with the keys of sigma[{key}]")
    try:
        return SetPartialAction.from_maps(G, n, maps, labels)
    except PargalError as exc:
        raise ParseError(str(exc)) from exc


def load_action(path: str | Path) -> SetPartialAction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        desc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON ({exc})") from exc
    return parse_action(desc)


def group_to_json(G: GroupTable) -> dict:
    if G == build_cyclic_product([G.n]) and G.names == build_cyclic_product([G.n]).names:
        return {"cyclic_product": [G.n]}
    return {"table": [list(r) for r in G.mul], "names": list(G.names)}


def action_to_json(a: SetPartialAction) -> dict:
    dom, sigma = {}, {}
    for g in a.group:
        row = a.sigma[g]
        pts = [x for x in range(a.n_points) if row[x] != UNDEF]
        if pts or g == 0:
            dom[a.group.name(g)] = pts
            sigma[a.group.name(g)] = {str(x): row[x] for x in pts}
    return {
        "group": group_to_json(a.group),
        "points": a.n_points,
        "labels": list(a.labels),
        "dom": dom,
        "sigma": sigma,
    }


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
