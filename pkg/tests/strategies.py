"""Hypothesis strategies built on the seeded fixture generators."""

import random

from hypothesis import strategies as st

from pargal.fixtures import random_galois_action, random_groups, random_partial_action
from pargal.group import normal_subgroups

GROUPS = random_groups()
ABELIAN = [G for G in GROUPS if G.is_abelian()]


@st.composite
def partial_actions(draw, groups=GROUPS):
    G = draw(st.sampled_from(groups))
    return random_partial_action(G, random.Random(draw(st.integers(0, 2**32))))


@st.composite
def galois_actions(draw, groups=GROUPS):
    G = draw(st.sampled_from(groups))
    return random_galois_action(G, random.Random(draw(st.integers(0, 2**32))))


@st.composite
def with_normal_subgroup(draw, actions):
    a = draw(actions)
    return a, draw(st.sampled_from(normal_subgroups(a.group)))


@st.composite
def relabelings(draw, a):
    return draw(st.permutations(range(a.n_points)))
