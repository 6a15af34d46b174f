"""Shared hypothesis strategies for random shapes, diagrams and cocones.

Shapes are drawn from the fixed zoo of constructors; none of those has
composable non-identity arrows, so a diagram is just a choice of sets
and functions.  Sizes are fixed up so every arrow has somewhere to go
(a nonempty source never maps into an empty target).
"""

from hypothesis import strategies as st

from vkspan.catkit import (
    FINSET, Diagram, empty_shape, point_shape, discrete_shape,
    arrow_shape, span_shape, parallel_pair_shape,
)
from vkspan.finset import canonical_set

SHAPES = [empty_shape(), point_shape(), discrete_shape(2), arrow_shape(),
          span_shape(), parallel_pair_shape()]

shapes = st.sampled_from(SHAPES)


@st.composite
def finset_diagrams(draw, shape=None, max_size=3):
    if shape is None:
        shape = draw(shapes)
    ns = {o: draw(st.integers(min_value=0, max_value=max_size))
          for o in shape.objects}
    for u in shape.nonidentity:
        a, b = shape.src(u), shape.tgt(u)
        if ns[a] > 0 and ns[b] == 0:
            ns[b] = 1
    on_objects = {o: canonical_set(ns[o], prefix="x" + o)
                  for o in shape.objects}
    on_morphisms = {}
    for u in shape.nonidentity:
        a, b = shape.src(u), shape.tgt(u)
        on_morphisms[u] = draw(st.sampled_from(
            [f for f in _functions(on_objects[a], on_objects[b])]))
    return Diagram(shape, FINSET, on_objects, on_morphisms)


def _functions(dom, cod):
    from vkspan.finset import all_functions
    return list(all_functions(dom, cod))


@st.composite
def finset_spans(draw, src=None, tgt=None, max_size=2):
    """A random span between finite sets, optionally with pinned ends."""
    from vkspan.span import Span
    if src is None:
        src = canonical_set(draw(st.integers(0, max_size)), prefix="s")
    if tgt is None:
        tgt = canonical_set(draw(st.integers(0, max_size)), prefix="t")
    hi = max_size if len(src) > 0 and len(tgt) > 0 else 0
    carrier = canonical_set(draw(st.integers(0, hi)), prefix="c")
    left = draw(st.sampled_from(_functions(carrier, src)))
    right = draw(st.sampled_from(_functions(carrier, tgt)))
    return Span(FINSET, left, right)


@st.composite
def composable_spans(draw, n=2, max_size=2):
    """A chain of n composable spans (listed first-to-last)."""
    from vkspan.span import Span
    ends = [canonical_set(draw(st.integers(1, max_size)), prefix="e%d" % i)
            for i in range(n + 1)]
    chain = []
    for i in range(n):
        carrier = canonical_set(draw(st.integers(0, max_size)),
                                prefix="c%d" % i)
        left = draw(st.sampled_from(_functions(carrier, ends[i])))
        right = draw(st.sampled_from(_functions(carrier, ends[i + 1])))
        chain.append(Span(FINSET, left, right))
    return chain
