"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from nilspec.group import GroupElement, TwoStepGroup


@st.composite
def groups(draw, max_n=4, max_m=3, lo=-3, hi=3, normalized=False):
    n = draw(st.integers(2, max_n))
    pairs = list(combinations(range(n), 2))
    m = draw(st.integers(1, min(max_m, len(pairs))))
    comm = []
    for p in pairs:
        c = tuple(draw(st.integers(lo, hi)) for _ in range(m))
        comm.append((p, c))
    G = TwoStepGroup(n, m, tuple(comm))
    if normalized and not G.is_normalized():
        # force rank m by putting an identity block on the first m pairs
        comm = [(p, tuple(1 if k == t else 0 for k in range(m)) if t < m else c)
                for t, (p, c) in enumerate(comm)]
        G = TwoStepGroup(n, m, tuple(comm))
    return G


def elements(G: TwoStepGroup, lo=-5, hi=5):
    vec = lambda k: st.tuples(*[st.integers(lo, hi) for _ in range(k)]) if k else st.just(())
    return st.builds(GroupElement, vec(G.n), vec(G.m))


@st.composite
def group_with_elements(draw, count=3, **kw):
    G = draw(groups(**kw))
    return (G,) + tuple(draw(elements(G)) for _ in range(count))
