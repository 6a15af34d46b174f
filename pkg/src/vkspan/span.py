"""Spans and their 2-cells over a base with chosen pullbacks.

A span from C to D is a pair of morphisms out of a shared carrier,
and a 2-cell between parallel spans is a carrier morphism commuting
with both legs.  Composition pulls back the inner legs along the
base's chosen pullback.  Because that choice sends a pullback along
an identity to the other leg unchanged, identity spans are strict
units and graphs compose on the nose; see `graph` below.

Spans are never quotiented here.  Equality of abstract spans (the
ordinary category of spans up to carrier isomorphism) is always
established explicitly through `abstract_equal`, which produces the
witnessing bijection or reports that none exists.  Keeping the
witnesses around is the whole point: two spans can be abstractly
equal through several different isomorphisms, and downstream checks
care which one is in play.
"""

from __future__ import annotations


class Span:
    """A pair of base morphisms ``left: carrier -> src`` and
    ``right: carrier -> tgt`` out of a shared carrier."""

    def __init__(self, base, left, right):
        assert left.dom == right.dom, "span legs must share their carrier"
        self.base = base
        self.left = left
        self.right = right

    @property
    def carrier(self):
        return self.left.dom

    @property
    def src(self):
        return self.left.cod

    @property
    def tgt(self):
        return self.right.cod

    def __eq__(self, other):
        return (isinstance(other, Span) and self.base == other.base
                and self.left == other.left and self.right == other.right)

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return "Span({!r} <- {!r} -> {!r})".format(self.src, self.carrier, self.tgt)


class TwoCell:
    """A morphism of spans: ``witness`` maps the source carrier to the
    target carrier and commutes with both pairs of legs."""

    def __init__(self, src, tgt, witness):
        assert src.base == tgt.base
        base = src.base
        assert src.src == tgt.src and src.tgt == tgt.tgt, \
            "2-cells require parallel spans"
        assert witness.dom == src.carrier and witness.cod == tgt.carrier
        assert base.compose(tgt.left, witness) == src.left, \
            "witness does not commute with the left legs"
        assert base.compose(tgt.right, witness) == src.right, \
            "witness does not commute with the right legs"
        self.src = src
        self.tgt = tgt
        self.witness = witness

    @property
    def base(self):
        return self.src.base

    def is_invertible(self):
        return self.base.is_iso(self.witness)

    def __eq__(self, other):
        return (isinstance(other, TwoCell) and self.src == other.src
                and self.tgt == other.tgt and self.witness == other.witness)

    def __hash__(self):
        return hash(self.witness)

    def __repr__(self):
        return "TwoCell({!r} => {!r})".format(self.src, self.tgt)


def identity_span(base, obj):
    i = base.identity(obj)
    return Span(base, i, i)


def graph(base, f):
    """The graph span ``<id, f>`` of a base morphism.

    Graphing is a strict homomorphism into spans: identities go to
    identity spans, and graph(g . f) equals compose_spans(graph(g),
    graph(f)) as a literal structure, because the chosen pullback of
    f against the identity leg of graph(g) is the domain of f itself.
    """
    return Span(base, base.identity(f.dom), f)


def compose_spans(s2, s1):
    """Composite span of ``s1: C -> D`` followed by ``s2: D -> E``."""
    assert s1.base == s2.base
    assert s1.tgt == s2.src, "spans are not composable"
    base = s1.base
    apex, p1, p2 = base.chosen_pullback(s1.right, s2.left)
    return Span(base, base.compose(s1.left, p1), base.compose(s2.right, p2))


def identity_two_cell(s):
    return TwoCell(s, s, s.base.identity(s.carrier))


def vertical_compose(b, a):
    """Paste ``a`` then ``b`` along a shared middle span."""
    assert a.tgt == b.src, "2-cells are not vertically composable"
    return TwoCell(a.src, b.tgt, a.base.compose(b.witness, a.witness))


def two_cell_inverse(c):
    assert c.is_invertible(), "2-cell witness is not invertible"
    return TwoCell(c.tgt, c.src, c.base.inverse(c.witness))


def horizontal_compose(d, c):
    """Composite 2-cell between composite spans.

    ``c`` runs between spans C -> D and ``d`` between spans D -> E;
    the result runs compose_spans(d.src, c.src) to
    compose_spans(d.tgt, c.tgt), with witness induced into the chosen
    pullback of the target pair.
    """
    assert c.base == d.base
    assert c.src.tgt == d.src.src, "2-cells are not horizontally composable"
    base = c.base
    _, p1, p2 = base.chosen_pullback(c.src.right, d.src.left)
    _, q1, q2 = base.chosen_pullback(c.tgt.right, d.tgt.left)
    witness = base.pullback_mediator(
        q1, q2,
        base.compose(c.witness, p1),
        base.compose(d.witness, p2))
    return TwoCell(compose_spans(d.src, c.src),
                   compose_spans(d.tgt, c.tgt), witness)


def associator(f, g, h):
    """The invertible 2-cell  h.(g.f) -> (h.g).f  between the two ways
    of iterating chosen pullbacks.

    Both carriers classify the same cones over the zig-zag of inner
    legs, so the comparison built from pullback mediators is a
    bijection; the identity-preserving pullback choice makes it the
    literal identity whenever the middle span is an identity span or
    all three are graphs.
    """
    assert f.base == g.base == h.base
    assert f.tgt == g.src and g.tgt == h.src, "spans are not composable"
    base = f.base

    apex_gf, pf, pg = base.chosen_pullback(f.right, g.left)
    gf_right = base.compose(g.right, pg)
    _, p_gf, ph = base.chosen_pullback(gf_right, h.left)

    _, qg, qh = base.chosen_pullback(g.right, h.left)
    hg_left = base.compose(g.left, qg)
    _, qf, q_hg = base.chosen_pullback(f.right, hg_left)

    to_hg = base.pullback_mediator(qg, qh,
                                   base.compose(pg, p_gf), ph)
    witness = base.pullback_mediator(qf, q_hg,
                                     base.compose(pf, p_gf), to_hg)

    lhs = compose_spans(h, compose_spans(g, f))
    rhs = compose_spans(compose_spans(h, g), f)
    cell = TwoCell(lhs, rhs, witness)
    assert cell.is_invertible()
    return cell


def two_cells_between(s, s2):
    """All 2-cells from one span to a parallel one, by sweeping base
    morphisms between the carriers and keeping those that commute."""
    assert s.base == s2.base
    assert s.src == s2.src and s.tgt == s2.tgt, "spans are not parallel"
    base = s.base
    cells = []
    for w in base.all_morphisms(s.carrier, s2.carrier):
        if (base.compose(s2.left, w) == s.left
                and base.compose(s2.right, w) == s.right):
            cells.append(TwoCell(s, s2, w))
    return cells


def abstract_equalities(s, s2):
    """Every carrier isomorphism identifying two parallel spans."""
    assert s.base == s2.base
    assert s.src == s2.src and s.tgt == s2.tgt, "spans are not parallel"
    base = s.base
    found = []
    for phi in base.all_isos(s.carrier, s2.carrier):
        if (base.compose(s2.left, phi) == s.left
                and base.compose(s2.right, phi) == s.right):
            found.append(phi)
    return found


def abstract_equal(s, s2):
    """A carrier isomorphism commuting with both legs, if any exists.

    This is equality in the category of abstract spans.  Returns None
    when the spans are genuinely distinct.  When a witness exists it
    need not be unique; `abstract_equalities` lists them all.
    """
    for phi in abstract_equalities(s, s2):
        return phi
    return None
