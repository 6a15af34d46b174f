"""Transformations from diagrams into spans, and their modifications.

A diagram F in the base embeds into spans by graphing every transport.
A lax transformation between two embedded diagrams assigns each shape
object a span between the corresponding values and each shape arrow a
coherence 2-cell; when all coherence cells are invertible the
transformation is strong.  The central translation implemented here
swaps such a transformation for a plain pair of natural
transformations out of a shared carrier diagram:

    components  <->  (carrier diagram H, phi: H -> F, psi: H -> G)

with the coherence cells recovered as pullback-induced comparison
maps.  Both directions are exact inverses at the level of structural
equality, and strongness of the transformation corresponds exactly to
phi being cartesian.

A pseudo-cocone is the special case where the target diagram is
constant: it is stored in the pair normal form (carrier diagram,
cartesian leg phi, ordinary cocone psi) and its lax form is derived
on demand.  Modifications compare parallel transformations
component-wise, subject to a compatibility equation with the
coherence cells that the constructor checks eagerly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catkit import (
    Diagram, NatTrans, compose_nat, constant_diagram, identity_nat,
    is_cartesian,
)
from .span import (
    Span, TwoCell, associator, compose_spans, graph, horizontal_compose,
    identity_two_cell, two_cell_inverse, two_cells_between, vertical_compose,
)


def _composable_pairs(shape):
    for u in shape.nonidentity:
        for v in shape.nonidentity:
            if shape.tgt(u) == shape.src(v):
                yield u, v, shape.compose(v, u)


class LaxTransformation:
    """Spans between the values of two same-shape diagrams, with a
    coherence 2-cell for every shape arrow.

    For u: a -> b the cell runs

        graph(G u) . kappa_a  ->  kappa_b . graph(F u)

    and identity arrows implicitly carry identity cells.  Composable
    shape arrows must satisfy the pasting equation; both pasted sides
    are evaluated concretely (associators included) and compared as
    witnesses, which is what validation does here.
    """

    def __init__(self, src, tgt, components, twocells):
        assert src.shape == tgt.shape and src.base == tgt.base
        self.src = src
        self.tgt = tgt
        shape, base = src.shape, src.base
        assert set(components) == set(shape.objects)
        assert set(twocells) == set(shape.nonidentity)
        for j in shape.objects:
            c = components[j]
            assert c.base == base
            assert c.src == src.ob(j) and c.tgt == tgt.ob(j), \
                "component span at {} has wrong boundary".format(j)
        self.components = dict(components)
        self.twocells = dict(twocells)
        for u in shape.nonidentity:
            a, b = shape.src(u), shape.tgt(u)
            cell = self.twocells[u]
            assert cell.src == compose_spans(graph(base, tgt.mor(u)),
                                             components[a]), \
                "coherence cell at {} has wrong source".format(u)
            assert cell.tgt == compose_spans(components[b],
                                             graph(base, src.mor(u))), \
                "coherence cell at {} has wrong target".format(u)
        for u, v, w in _composable_pairs(shape):
            c = shape.tgt(v)
            gu = graph(base, src.mor(u))
            gv = graph(base, src.mor(v))
            lhs = vertical_compose(associator(gu, gv, components[c]),
                                   self.cell_at(w))
            step1 = horizontal_compose(
                identity_two_cell(graph(base, tgt.mor(v))), self.cell_at(u))
            step2 = associator(gu, components[shape.tgt(u)],
                               graph(base, tgt.mor(v)))
            step3 = horizontal_compose(self.cell_at(v), identity_two_cell(gu))
            rhs = vertical_compose(step3, vertical_compose(step2, step1))
            assert lhs == rhs, \
                "pasting equation fails at {} then {}".format(u, v)

    @property
    def shape(self):
        return self.src.shape

    @property
    def base(self):
        return self.src.base

    def at(self, j):
        return self.components[j]

    def cell_at(self, u):
        if self.shape.is_id(u):
            return identity_two_cell(self.components[self.shape.src(u)])
        return self.twocells[u]

    def is_strong(self):
        return all(c.is_invertible() for c in self.twocells.values())

    def __eq__(self, other):
        return (isinstance(other, LaxTransformation)
                and self.src == other.src and self.tgt == other.tgt
                and self.components == other.components
                and self.twocells == other.twocells)

    def __repr__(self):
        return "LaxTransformation({} -> {})".format(self.src, self.tgt)


def span_of_nats_to_lax(phi, psi):
    """Package a pair of natural transformations sharing a source as a
    lax transformation with component spans ``<phi_j, psi_j>``.

    The coherence cell at u: a -> b is the unique map into the chosen
    pullback whose projections are phi_a and the carrier transport
    H(u); the result is always a valid transformation, strong exactly
    when phi is cartesian.
    """
    assert phi.src == psi.src, "legs must share their carrier diagram"
    carrier, target_f, target_g = phi.src, phi.tgt, psi.tgt
    base, shape = target_f.base, target_f.shape
    components = {j: Span(base, phi.at(j), psi.at(j))
                  for j in shape.objects}
    twocells = {}
    for u in shape.nonidentity:
        a, b = shape.src(u), shape.tgt(u)
        _, p1, p2 = base.chosen_pullback(target_f.mor(u), phi.at(b))
        witness = base.pullback_mediator(p1, p2, phi.at(a), carrier.mor(u))
        twocells[u] = TwoCell(
            compose_spans(graph(base, target_g.mor(u)), components[a]),
            compose_spans(components[b], graph(base, target_f.mor(u))),
            witness)
    return LaxTransformation(target_f, target_g, components, twocells)


def lax_to_span_of_nats(t):
    """Recover the carrier diagram and leg transformations of a lax
    transformation: objects are the component carriers, transports are
    the second projections of the coherence witnesses.

    Mutually inverse with span_of_nats_to_lax up to structural
    equality, in both directions.
    """
    base, shape = t.base, t.shape
    on_objects = {j: t.components[j].carrier for j in shape.objects}
    on_morphisms = {}
    for u in shape.nonidentity:
        b = shape.tgt(u)
        _, _, p2 = base.chosen_pullback(t.src.mor(u), t.components[b].left)
        on_morphisms[u] = base.compose(p2, t.twocells[u].witness)
    carrier = Diagram(shape, base, on_objects, on_morphisms)
    phi = NatTrans(carrier, t.src,
                   {j: t.components[j].left for j in shape.objects})
    psi = NatTrans(carrier, t.tgt,
                   {j: t.components[j].right for j in shape.objects})
    return carrier, phi, psi


class PseudoCocone:
    """A cocone-up-to-spans under a diagram, stored in pair normal
    form: a carrier diagram, a natural transformation ``phi`` back to
    the diagram, and an ordinary cocone ``psi`` over the apex.

    Construction checks structure only (shapes, naturality, cocone
    laws, via the component constructors); whether phi is cartesian,
    equivalently whether the derived lax form is strong, is decided by
    `pseudo_cocone_check` so that failing inputs can be reported
    rather than rejected.
    """

    def __init__(self, diagram, apex, carrier_diagram, phi, psi):
        assert phi.src == carrier_diagram and phi.tgt == diagram
        assert psi.diagram == carrier_diagram and psi.apex == apex
        self.diagram = diagram
        self.apex = apex
        self.carrier_diagram = carrier_diagram
        self.phi = phi
        self.psi = psi

    def as_lax(self):
        return span_of_nats_to_lax(self.phi, self.psi.as_nat_trans())

    def __eq__(self, other):
        return (isinstance(other, PseudoCocone)
                and self.diagram == other.diagram and self.apex == other.apex
                and self.carrier_diagram == other.carrier_diagram
                and self.phi == other.phi and self.psi == other.psi)

    def __repr__(self):
        return "PseudoCocone({} => {})".format(self.diagram, self.apex)


def gamma_cocone(k):
    """The graphed image of an ordinary cocone: carrier the diagram
    itself, identity phi, and the cocone as psi."""
    return PseudoCocone(k.diagram, k.apex, k.diagram,
                        identity_nat(k.diagram), k)


def pseudo_cocone_check(pc):
    """Decide whether a pseudo-cocone is strong: phi cartesian, or
    equivalently every derived coherence cell invertible.  The two
    readings are computed independently and asserted to agree."""
    cart = is_cartesian(pc.phi)
    strong = pc.as_lax().is_strong()
    assert cart == strong, \
        "cartesian phi and invertible coherence cells must coincide"
    return cart


def _modification_law_holds(src, tgt, cell_a, cell_b, u):
    """The compatibility equation at one shape arrow, for candidate
    component cells at its two ends."""
    base = src.base
    gf = graph(base, src.src.mor(u))
    gg = graph(base, src.tgt.mor(u))
    lhs = vertical_compose(
        tgt.cell_at(u),
        horizontal_compose(identity_two_cell(gg), cell_a))
    rhs = vertical_compose(
        horizontal_compose(cell_b, identity_two_cell(gf)),
        src.cell_at(u))
    return lhs == rhs


class Modification:
    """A component-wise comparison of parallel lax transformations:
    one 2-cell per shape object, compatible with both coherence
    families.  The compatibility equation is evaluated concretely for
    every shape arrow at construction."""

    def __init__(self, src, tgt, components):
        assert src.src == tgt.src and src.tgt == tgt.tgt, \
            "modifications need transformations with equal boundaries"
        self.src = src
        self.tgt = tgt
        shape, base = src.shape, src.base
        assert set(components) == set(shape.objects)
        for j in shape.objects:
            cell = components[j]
            assert cell.src == src.components[j] \
                and cell.tgt == tgt.components[j], \
                "component at {} has wrong boundary".format(j)
        self.components = dict(components)
        for u in shape.nonidentity:
            a, b = shape.src(u), shape.tgt(u)
            assert _modification_law_holds(src, tgt, components[a],
                                           components[b], u), \
                "modification equation fails at {}".format(u)

    def at(self, j):
        return self.components[j]

    def is_invertible(self):
        return all(c.is_invertible() for c in self.components.values())

    def __eq__(self, other):
        return (isinstance(other, Modification)
                and self.src == other.src and self.tgt == other.tgt
                and self.components == other.components)

    def __repr__(self):
        return "Modification({} => {})".format(self.src, self.tgt)


def identity_modification(t):
    return Modification(t, t, {j: identity_two_cell(t.components[j])
                               for j in t.shape.objects})


def modification_compose(m2, m1):
    assert m1.tgt == m2.src
    return Modification(m1.src, m2.tgt,
                        {j: vertical_compose(m2.components[j],
                                             m1.components[j])
                         for j in m1.components})


def modification_inverse(m):
    assert m.is_invertible(), "modification components are not invertible"
    return Modification(m.tgt, m.src,
                        {j: two_cell_inverse(c)
                         for j, c in m.components.items()})


def enumerate_modifications(t, t2):
    """All modifications between two parallel lax transformations.

    Backtracks over shape objects, testing each arrow's compatibility
    equation as soon as both of its end components are chosen; the
    early pruning matters once component pools grow past a handful.
    """
    shape = t.shape
    objs = list(shape.objects)
    stage = {j: i for i, j in enumerate(objs)}
    pools = {j: two_cells_between(t.components[j], t2.components[j])
             for j in objs}
    arrows_at = {i: [] for i in range(len(objs))}
    for u in shape.nonidentity:
        arrows_at[max(stage[shape.src(u)], stage[shape.tgt(u)])].append(u)
    found = []
    chosen = {}

    def extend(i):
        if i == len(objs):
            found.append(Modification(t, t2, dict(chosen)))
            return
        j = objs[i]
        for cell in pools[j]:
            chosen[j] = cell
            if all(_modification_law_holds(t, t2,
                                           chosen[shape.src(u)],
                                           chosen[shape.tgt(u)], u)
                   for u in arrows_at[i]):
                extend(i + 1)
        chosen.pop(j, None)

    extend(0)
    return found


def postcompose_cocone(k, s):
    """The lax transformation obtained by following a graphed cocone
    with a span out of its apex: components are the composites
    s . graph(leg), coherence cells are associators.

    This is the target shape for whiskering and for mediating-cell
    comparisons; its pasting validation exercises associator coherence
    whenever the shape has composable arrows.
    """
    assert s.src == k.apex, "span must start at the cocone apex"
    base = s.base
    f_diag = k.diagram
    shape = f_diag.shape
    g_diag = constant_diagram(shape, base, s.tgt)
    components = {j: compose_spans(s, graph(base, k.legs[j]))
                  for j in shape.objects}
    twocells = {u: associator(graph(base, f_diag.mor(u)),
                              graph(base, k.legs[shape.tgt(u)]), s)
                for u in shape.nonidentity}
    return LaxTransformation(f_diag, g_diag, components, twocells)


def whisker(xi, k):
    """Spread a span 2-cell over a graphed cocone: the modification
    between the two postcomposed transformations whose component at j
    is the pullback-functoriality map induced by xi."""
    assert xi.src.src == k.apex, "2-cell must start at the cocone apex"
    base = xi.base
    components = {j: horizontal_compose(
        xi, identity_two_cell(graph(base, k.legs[j])))
        for j in k.diagram.shape.objects}
    return Modification(postcompose_cocone(k, xi.src),
                        postcompose_cocone(k, xi.tgt), components)


def modification_to_cartesian_data(m):
    """Strip a modification down to the natural transformation of
    carrier diagrams formed by its component witnesses.

    For modifications between postcomposed cocones this is the
    comparison of the two pullback diagrams; it commutes with both
    recovered legs (checked here), which for those boundaries are the
    first projections and the composites through the span right legs.
    """
    carrier, phi, psi = lax_to_span_of_nats(m.src)
    carrier2, phi2, psi2 = lax_to_span_of_nats(m.tgt)
    xi = NatTrans(carrier, carrier2,
                  {j: m.components[j].witness for j in m.components})
    assert compose_nat(phi2, xi) == phi
    assert compose_nat(psi2, xi) == psi
    return xi


@dataclass
class MediatingCell:
    """A span out of a cocone apex together with the comparison
    modification from a pseudo-cocone to the postcomposed cocone.
    ``failed_at`` names a shape object whose comparison component is
    not invertible, when there is one."""

    span: Span
    theta: Modification
    failed_at: object = None

    @property
    def invertible(self):
        return self.theta.is_invertible()
