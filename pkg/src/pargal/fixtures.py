"""Standard example actions, fixture pools and seeded random generators."""

from __future__ import annotations

import os
import random
from typing import Iterator

from .group import GroupTable, Subgroup, all_subgroups, build_cyclic_product, normal_subgroups
from .paction import SetPartialAction, induce_from_global

SEED_ENV = "PARGAL_SEED"


def cyclic(n: int) -> GroupTable:
    return build_cyclic_product([n])


def shift_action(n: int, step: int = 1) -> SetPartialAction:
    """C_n on e_1..e_n with g^k sending e_j to e_{j + step*k} (indices mod n)."""
    G = cyclic(n)
    rows = tuple(tuple((j + step * k) % n for j in range(n)) for k in range(n))
    return SetPartialAction(G, rows)


def regular_on_subset(G: GroupTable, subset) -> SetPartialAction:
    """The regular (left translation) action of G restricted to the span of ``subset``."""
    rows = tuple(tuple(G.mul[g][h] for h in G) for g in G)
    reg = SetPartialAction(G, rows, tuple(f"e_{G.name(h)}" for h in G))
    return induce_from_global(reg, subset)


def ex0() -> SetPartialAction:
    """C4 on Re1+Re2+Re3, induced from the cyclic shift e_j -> e_{j-1} on four points."""
    return induce_from_global(shift_action(4, -1), [0, 1, 2])


def ex0_global() -> SetPartialAction:
    return shift_action(4, -1)


def ec6r_global() -> SetPartialAction:
    return shift_action(6, 1)


def ec6r() -> SetPartialAction:
    """C6 on Re1+Re3+Re6, induced from the shift e_i -> e_{i+1} on six points."""
    return induce_from_global(ec6r_global(), [0, 2, 5])


def theta() -> SetPartialAction:
    """C4 on Re1+Re2 with theta_g(e1) = e2, theta_{g^3}(e2) = e1 and S_{g^2} = 0."""
    G = cyclic(4)
    return SetPartialAction.from_maps(G, 2, {1: {0: 1}, 3: {1: 0}})


def theta_tilde() -> SetPartialAction:
    """The idempotent a* * a of ``theta`` on the blocks e11+e22, e12, e21.

    The map for g sends e21 to e11+e22 and e11+e22 to e12; g^2 swaps e12 and e21.
    """
    G = cyclic(4)
    return SetPartialAction.from_maps(
        G, 3, {1: {2: 0, 0: 1}, 2: {1: 2, 2: 1}, 3: {0: 2, 1: 0}},
        labels=("e11+e22", "e12", "e21"),
    )


def theta_tilde_published() -> SetPartialAction:
    """The maps exactly as printed next to the worked example (g fixes e11+e22).

    Built without validation checks downstream; it violates the composition axioms.
    """
    G = cyclic(4)
    return SetPartialAction.from_maps(
        G, 3, {1: {0: 0, 2: 1}, 2: {1: 2, 2: 1}, 3: {0: 0, 1: 2}},
        labels=("e11+e22", "e12", "e21"),
    )


def harrison_regular(n: int) -> SetPartialAction:
    return regular_on_subset(cyclic(n), range(n))


def c2xc3() -> GroupTable:
    return build_cyclic_product([2, 3])


def transport_c6_to_c2xc3(a: SetPartialAction) -> SetPartialAction:
    """Move a C6 action along g^k -> (k mod 2, k mod 3)."""
    G = c2xc3()
    rows = [None] * 6
    for k in range(6):
        rows[(k % 2) * 3 + (k % 3)] = a.sigma[k]
    return SetPartialAction(G, tuple(rows), a.labels)


def c2xc3_fixtures() -> dict[str, SetPartialAction]:
    return {
        "E_C6": transport_c6_to_c2xc3(harrison_regular(6)),
        "ec6r": transport_c6_to_c2xc3(ec6r()),
        "C6{0,3}": transport_c6_to_c2xc3(regular_on_subset(cyclic(6), [0, 3])),
        "C6{0,2,4}": transport_c6_to_c2xc3(regular_on_subset(cyclic(6), [0, 2, 4])),
    }


def galois_pool() -> dict[str, SetPartialAction]:
    """Partial Galois fixtures over C2 and C4."""
    return {
        "ex0": ex0(),
        "theta": theta(),
        "E_C4": harrison_regular(4),
        "C4{0,2}": regular_on_subset(cyclic(4), [0, 2]),
        "C4{0}": regular_on_subset(cyclic(4), [0]),
        "E_C2": harrison_regular(2),
        "C2{0}": regular_on_subset(cyclic(2), [0]),
    }


def pool_by_group() -> dict[int, list[tuple[str, SetPartialAction]]]:
    out: dict[int, list] = {}
    for name, a in galois_pool().items():
        out.setdefault(a.group.n, []).append((name, a))
    return out


def seed_from_env(default: int = 20240917) -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw not in (None, "") else default


def random_global_action(G: GroupTable, rng: random.Random, max_orbits: int = 3) -> SetPartialAction:
    """Disjoint union of coset actions G/K for random subgroups K."""
    subs = all_subgroups(G)
    rows = [[] for _ in G]
    offset = 0
    for _ in range(rng.randint(1, max_orbits)):
        K = rng.choice(subs)
        cosets, where = [], {}
        for g in G:
            if g in where:
                continue
            c = tuple(sorted(G.mul[g][k] for k in K.members))
            for x in c:
                where[x] = len(cosets)
            cosets.append(c)
        for g in G:
            rows[g].extend(offset + where[G.mul[g][c[0]]] for c in cosets)
        offset += len(cosets)
    return SetPartialAction(G, tuple(tuple(r) for r in rows))


def random_partial_action(G: GroupTable, rng: random.Random) -> SetPartialAction:
    """Restriction of a random global action to a random nonempty subset."""
    b = random_global_action(G, rng)
    n = b.n_points
    k = rng.randint(1, n)
    return induce_from_global(b, rng.sample(range(n), k))


def random_galois_action(G: GroupTable, rng: random.Random) -> SetPartialAction:
    """The regular action restricted to a random nonempty subset of G."""
    k = rng.randint(1, G.n)
    return regular_on_subset(G, rng.sample(range(G.n), k))


def random_groups() -> list[GroupTable]:
    return [cyclic(2), cyclic(3), cyclic(4), build_cyclic_product([2, 2]), cyclic(6), s3_table()]


def s3_table() -> GroupTable:
    """S3 as permutations of {0,1,2}, identity first."""
    from itertools import permutations
    perms = list(permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    mul = [[pos[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    names = ("1", "(12)", "(01)", "(012)", "(021)", "(02)")
    return GroupTable(mul, names)


def random_cases(count: int, seed: int | None = None, galois: bool = False
                 ) -> Iterator[tuple[SetPartialAction, Subgroup]]:
    """Seeded (action, normal subgroup) pairs over a small zoo of groups."""
    rng = random.Random(seed_from_env() if seed is None else seed)
    groups = random_groups()
    normals = {id(G): normal_subgroups(G) for G in groups}
    for _ in range(count):
        G = rng.choice(groups)
        a = random_galois_action(G, rng) if galois else random_partial_action(G, rng)
        yield a, rng.choice(normals[id(G)])
