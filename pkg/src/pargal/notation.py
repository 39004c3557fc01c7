"""Rendering of idempotents, spans and maps in e-notation, e.g. ``a(e1+e3)+be2``."""

from __future__ import annotations

from typing import Iterable, Sequence

from .paction import UNDEF, SetPartialAction


def idem(points: Iterable[int], labels: Sequence[str], key=None) -> str:
    pts = sorted(points, key=key)
    return "+".join(labels[x] for x in pts) if pts else "0"


def _wrap(term: str) -> str:
    return f"({term})" if "+" in term else term


def term(points: Iterable[int], labels: Sequence[str]) -> str:
    """An idempotent as a factor, parenthesized when it is a sum."""
    return _wrap(idem(points, labels))


def span(blocks: Iterable[str]) -> str:
    """R(e1+e3)⊕Re2 for blocks given by their labels."""
    parts = [f"R{_wrap(b)}" for b in blocks]
    return "⊕".join(parts) if parts else "0"


def linear(images: Sequence[str | None], coeffs: Sequence[str]) -> str:
    """sum_i c_i * image_i, skipping zero images."""
    terms = [f"{c}{_wrap(img)}" for c, img in zip(coeffs, images) if img]
    return "+".join(terms) if terms else "0"


def block_map(action: SetPartialAction, g: int, coeffs: Sequence[str]) -> str:
    """alpha_g on a generic element of its domain: ``a(e3+e6) -> ae1``."""
    row = action.sigma[g]
    dom = [x for x in range(action.n_points) if row[x] != UNDEF]
    if not dom:
        return "0 -> 0"
    names = dict(zip(dom, coeffs))
    src = "+".join(f"{names[x]}{_wrap(action.labels[x])}" for x in dom)
    dst = "+".join(f"{names[x]}{_wrap(action.labels[row[x]])}" for x in sorted(dom, key=lambda x: row[x]))
    return f"{src} -> {dst}"


def point_map(action: SetPartialAction, g: int) -> str:
    row = action.sigma[g]
    pairs = [f"{_wrap(action.labels[x])}->{_wrap(action.labels[y])}" for x, y in enumerate(row) if y != UNDEF]
    return ", ".join(pairs) if pairs else "(empty)"


def action_table(action: SetPartialAction) -> str:
    """One line per group element: its ideal and its point map."""
    lines = []
    for g in action.group:
        lines.append(f"  {action.group.name(g):>8}  S_g = {span(action.labels[x] for x in sorted(action.ideal(g)))}"
                     f"   {point_map(action, g)}")
    return "\n".join(lines)
