"""Finite shape categories, diagrams, and bounded categorical search.

The checkers upstream quantify over "all morphisms into X", "all
cocones over D", "all cartesian transformations into D".  This module
makes those quantifiers finite.  A BaseCat packages a category whose
morphisms can be enumerated up to a size bound, and the functions here
build diagrams, colimits and cartesian transformations over any such
base.  Two bases ship: finite sets, and categories of diagrams over a
finite inner shape (the arrow category in particular), with all of
their structure computed pointwise.

Morphisms of any base expose .dom and .cod; objects compare
structurally, so two runs of the same construction produce equal
values.
"""

import functools
import itertools

from . import finset
from .finset import FinSet, FinFn, canonical_set, pair_label


class FinCat:
    """A finite category with an explicit composition table.

    morphisms maps each label to its (src, tgt) pair; composition maps
    (g, f) to the label of g-after-f and must be defined on exactly the
    composable pairs.  Unit and associativity laws are checked
    exhaustively on construction, which is affordable because shapes
    stay tiny.
    """

    _interned = {}

    def __new__(cls, objects, morphisms, identities, composition):
        key = (tuple(objects), tuple(sorted(dict(morphisms).items())),
               tuple(sorted(dict(identities).items())),
               tuple(sorted(dict(composition).items())))
        self = cls._interned.get(key)
        if self is not None:
            return self
        self = super().__new__(cls)
        self._build(*key)
        cls._interned[key] = self
        return self

    def _build(self, objects, morphisms, identities, composition):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.composition = dict(composition)
        assert len(set(self.objects)) == len(self.objects)
        for m, (a, b) in self.morphisms.items():
            assert a in self.objects and b in self.objects, m
        assert set(self.identities) == set(self.objects)
        for o, i in self.identities.items():
            assert self.morphisms.get(i) == (o, o), "bad identity on " + o
        composable = {(g, f) for f, (_, ft) in self.morphisms.items()
                      for g, (gs, _) in self.morphisms.items() if ft == gs}
        assert set(self.composition) == composable, (
            "composition table must cover exactly the composable pairs")
        for (g, f), h in self.composition.items():
            assert self.morphisms[h] == (self.src(f), self.tgt(g)), (g, f)
        for m, (a, b) in self.morphisms.items():
            assert self.composition[(m, self.identities[a])] == m
            assert self.composition[(self.identities[b], m)] == m
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt(f) != self.src(g):
                    continue
                for h in self.morphisms:
                    if self.tgt(g) != self.src(h):
                        continue
                    assert (self.composition[(h, self.composition[(g, f)])]
                            == self.composition[(self.composition[(h, g)], f)])
        self._identity_labels = frozenset(self.identities.values())
        self._nonidentity = tuple(
            m for m in self.morphisms if m not in self._identity_labels)

    def src(self, m):
        return self.morphisms[m][0]

    def tgt(self, m):
        return self.morphisms[m][1]

    def is_id(self, m):
        return m in self._identity_labels

    def compose(self, g, f):
        return self.composition[(g, f)]

    @property
    def nonidentity(self):
        return self._nonidentity

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, FinCat)
                and self.objects == other.objects
                and self.morphisms == other.morphisms
                and self.identities == other.identities
                and self.composition == other.composition)

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = self._hash = hash(
                (self.objects, tuple(sorted(self.morphisms.items())),
                 tuple(sorted(self.composition.items()))))
        return h

    def __repr__(self):
        return "FinCat({}, {} morphisms)".format(
            list(self.objects), len(self.morphisms))


def fincat_from_arrows(objects, arrows, composites=None):
    """A finite category presented by arrows and explicit composites.

    arrows maps labels to (src, tgt) pairs of non-identity morphisms;
    composites maps composable arrow pairs (g, f) to the label of their
    composite and may be omitted when no two arrows compose.  Identity
    labels are generated as "id_<object>".
    """
    objects = tuple(objects)
    identities = {o: "id_" + o for o in objects}
    assert not set(arrows) & set(identities.values())
    morphisms = {identities[o]: (o, o) for o in objects}
    morphisms.update(arrows)
    composites = dict(composites or {})
    composition = {}
    for f, (_, ft) in morphisms.items():
        for g, (gs, _) in morphisms.items():
            if ft != gs:
                continue
            if f in identities.values():
                composition[(g, f)] = g
            elif g in identities.values():
                composition[(g, f)] = f
            else:
                assert (g, f) in composites, (
                    "missing composite for {} . {}".format(g, f))
                composition[(g, f)] = composites[(g, f)]
    return FinCat(objects, morphisms, identities, composition)


def empty_shape():
    return fincat_from_arrows((), {})


def point_shape():
    return fincat_from_arrows(("a",), {})


def discrete_shape(n):
    return fincat_from_arrows(tuple(str(i) for i in range(n)), {})


def arrow_shape():
    return fincat_from_arrows(("a", "b"), {"u": ("a", "b")})


def span_shape():
    """The shape l <-- m --> r indexing spans and pushout diagrams."""
    return fincat_from_arrows(("l", "m", "r"),
                              {"f": ("m", "l"), "g": ("m", "r")})


def parallel_pair_shape():
    return fincat_from_arrows(("a", "b"), {"u": ("a", "b"), "v": ("a", "b")})


def triangle_shape():
    """Two composable arrows and their composite; the smallest shape
    whose diagrams exercise composition constraints."""
    return fincat_from_arrows(
        ("a", "b", "c"),
        {"u": ("a", "b"), "v": ("b", "c"), "w": ("a", "c")},
        {("v", "u"): "w"})


class BaseCat:
    """A category with chosen structure and bounded enumeration.

    Concrete bases provide identity/compose, the chosen pullback with
    its mediators, finite colimits (coproduct, coequalizer, pushout)
    with a mediator out of jointly epimorphic legs, pullback-square
    verification, and enumeration of objects and morphisms up to a size
    bound.  Chosen pullbacks must preserve identities.
    """

    name = "abstract"

    def identity(self, obj):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def is_identity(self, f):
        raise NotImplementedError

    def is_mono(self, f):
        raise NotImplementedError

    def is_iso(self, f):
        raise NotImplementedError

    def inverse(self, f):
        raise NotImplementedError

    def chosen_pullback(self, f, g):
        raise NotImplementedError

    def pullback_mediator(self, p1, p2, c1, c2):
        """The unique map into the chosen-pullback apex of (p1, p2)
        through which the cone (c1, c2) factors."""
        raise NotImplementedError

    def is_pullback_square(self, f, g, leg1, leg2):
        raise NotImplementedError

    def coproduct(self, objs):
        raise NotImplementedError

    def coequalizer(self, f, g):
        raise NotImplementedError

    def pushout(self, f, g):
        raise NotImplementedError

    def mediator(self, src, legs0, tgt, legs):
        """The unique h: src -> tgt with h . legs0[i] = legs[i], where
        legs0 are jointly epimorphic out of src."""
        raise NotImplementedError

    def initial(self):
        return self.coproduct([])[0]

    def objects_upto(self, bound):
        raise NotImplementedError

    def all_morphisms(self, a, b):
        raise NotImplementedError

    def all_isos(self, a, b):
        raise NotImplementedError

    def iso_search(self, a, b):
        return next(iter(self.all_isos(a, b)), None)


class FinSetCat(BaseCat):
    """Finite sets and functions, delegating to the finset module."""

    name = "finset"

    def identity(self, obj):
        return finset.identity(obj)

    def compose(self, g, f):
        return finset.compose(g, f)

    def is_identity(self, f):
        return finset.is_identity(f)

    def is_mono(self, f):
        return finset.is_mono(f)

    def is_iso(self, f):
        return finset.is_iso(f)

    def inverse(self, f):
        return finset.inverse(f)

    def chosen_pullback(self, f, g):
        return finset.chosen_pullback(f, g)

    def pullback_mediator(self, p1, p2, c1, c2):
        return finset.pullback_mediator(p1, p2, c1, c2)

    def is_pullback_square(self, f, g, leg1, leg2):
        return finset.pullback_square_holds(f, g, leg1, leg2)

    def coproduct(self, objs):
        return finset.coproduct(objs)

    def coequalizer(self, f, g):
        return finset.coequalizer(f, g)

    def pushout(self, f, g):
        return finset.pushout(f, g)

    def mediator(self, src, legs0, tgt, legs):
        return finset.mediator(src, legs0, tgt, legs)

    def objects_upto(self, bound):
        return [canonical_set(n) for n in range(bound + 1)]

    def all_morphisms(self, a, b):
        return finset.all_functions(a, b)

    def all_isos(self, a, b):
        return finset.all_bijections(a, b)

    def __eq__(self, other):
        return isinstance(other, FinSetCat)

    def __hash__(self):
        return hash("FinSetCat")

    def __repr__(self):
        return "FinSetCat()"


FINSET = FinSetCat()


class Diagram:
    """A functor from a finite shape into a base category.

    on_morphisms may omit identities; they are filled in.  Boundaries
    and the full composition table are validated on construction.
    """

    _interned = {}

    def __new__(cls, shape, base, on_objects, on_morphisms=None):
        assert isinstance(shape, FinCat)
        on_objects = dict(on_objects)
        supplied = dict(on_morphisms or {})
        key = (shape, base, tuple(sorted(on_objects.items())),
               tuple(sorted((m, f) for m, f in supplied.items()
                            if not shape.is_id(m))))
        self = cls._interned.get(key)
        if self is not None:
            for m, f in supplied.items():
                if shape.is_id(m):
                    assert f == self.on_morphisms[m], (
                        "identity of {} mapped to a "
                        "non-identity".format(shape.src(m)))
            return self
        self = super().__new__(cls)
        self._build(shape, base, on_objects, supplied)
        cls._interned[key] = self
        return self

    def _build(self, shape, base, on_objects, on_morphisms):
        self.shape, self.base = shape, base
        self.on_objects = on_objects
        assert set(self.on_objects) == set(shape.objects)
        for o in shape.objects:
            lid = shape.identities[o]
            filled = on_morphisms.setdefault(lid, base.identity(self.on_objects[o]))
            assert filled == base.identity(self.on_objects[o]), (
                "identity of {} mapped to a non-identity".format(o))
        assert set(on_morphisms) == set(shape.morphisms)
        for m, (a, b) in shape.morphisms.items():
            assert on_morphisms[m].dom == self.on_objects[a], m
            assert on_morphisms[m].cod == self.on_objects[b], m
        for (g, f), h in shape.composition.items():
            assert base.compose(on_morphisms[g], on_morphisms[f]) == on_morphisms[h], (
                "composition table violated at {} . {}".format(g, f))
        self.on_morphisms = on_morphisms

    def ob(self, j):
        return self.on_objects[j]

    def mor(self, u):
        return self.on_morphisms[u]

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Diagram)
                and self.shape == other.shape and self.base == other.base
                and self.on_objects == other.on_objects
                and self.on_morphisms == other.on_morphisms)

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = self._hash = hash(
                (self.shape, tuple(sorted(self.on_objects.items())),
                 tuple(sorted(self.on_morphisms.items()))))
        return h

    def __repr__(self):
        return "Diagram({}, {}, {})".format(
            self.shape, self.base, self.on_objects)


def constant_diagram(shape, base, obj):
    return Diagram(shape, base, {o: obj for o in shape.objects},
                   {m: base.identity(obj) for m in shape.morphisms})


class NatTrans:
    """A natural transformation between diagrams of the same shape.

    Doubles as a morphism of a diagram category: .dom and .cod are the
    source and target diagrams, so generic base-category code treats
    NatTrans values like any other morphism.
    """

    _interned = {}

    def __new__(cls, src, tgt, components):
        components = dict(components)
        key = (src, tgt, tuple(sorted(components.items())))
        self = cls._interned.get(key)
        if self is not None:
            return self
        self = super().__new__(cls)
        self._build(src, tgt, components)
        cls._interned[key] = self
        return self

    def _build(self, src, tgt, components):
        assert isinstance(src, Diagram) and isinstance(tgt, Diagram)
        assert src.shape == tgt.shape and src.base == tgt.base
        self.src, self.tgt = src, tgt
        self.components = components
        base, shape = src.base, src.shape
        assert set(self.components) == set(shape.objects)
        for o in shape.objects:
            assert self.components[o].dom == src.on_objects[o], o
            assert self.components[o].cod == tgt.on_objects[o], o
        for u in shape.nonidentity:
            a, b = shape.src(u), shape.tgt(u)
            assert (base.compose(tgt.on_morphisms[u], self.components[a])
                    == base.compose(self.components[b], src.on_morphisms[u])), (
                "naturality fails at " + u)

    @property
    def dom(self):
        return self.src

    @property
    def cod(self):
        return self.tgt

    def at(self, o):
        return self.components[o]

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, NatTrans) and self.src == other.src
                and self.tgt == other.tgt
                and self.components == other.components)

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = self._hash = hash(
                (self.src, self.tgt,
                 tuple(sorted(self.components.items()))))
        return h

    def __repr__(self):
        return "NatTrans({} -> {})".format(self.src, self.tgt)


def identity_nat(d):
    return NatTrans(d, d, {o: d.base.identity(d.on_objects[o])
                           for o in d.shape.objects})


def compose_nat(g, f):
    assert f.tgt == g.src, "natural transformations do not compose"
    return NatTrans(f.src, g.tgt,
                    {o: f.src.base.compose(g.components[o], f.components[o])
                     for o in f.src.shape.objects})


class Cocone:
    """Legs from a diagram's values into an apex, commuting with every
    transport of the diagram."""

    def __init__(self, diagram, apex, legs):
        self.diagram, self.apex = diagram, apex
        self.legs = dict(legs)
        base, shape = diagram.base, diagram.shape
        assert set(self.legs) == set(shape.objects)
        for o in shape.objects:
            assert self.legs[o].dom == diagram.on_objects[o], o
            assert self.legs[o].cod == apex, o
        for u in shape.nonidentity:
            a, b = shape.src(u), shape.tgt(u)
            assert (base.compose(self.legs[b], diagram.on_morphisms[u])
                    == self.legs[a]), "legs do not commute over " + u

    def as_nat_trans(self):
        return NatTrans(self.diagram,
                        constant_diagram(self.diagram.shape,
                                         self.diagram.base, self.apex),
                        dict(self.legs))

    def __eq__(self, other):
        return (isinstance(other, Cocone) and self.diagram == other.diagram
                and self.apex == other.apex and self.legs == other.legs)

    def __repr__(self):
        return "Cocone({} over {})".format(self.diagram, self.apex)


def colimit(d):
    """The canonical colimit cocone of a diagram.

    Coproduct of the values, coequalized against one relation per
    non-identity transport.  Works over any base with coproducts,
    coequalizers and mediators; the empty shape yields the initial
    object with no legs.
    """
    base = d.base
    objs = [d.on_objects[j] for j in d.shape.objects]
    total, injections = base.coproduct(objs)
    inj = dict(zip(d.shape.objects, injections))
    edges = list(d.shape.nonidentity)
    if not edges:
        return Cocone(d, total, inj)
    srcs = [d.on_objects[d.shape.src(u)] for u in edges]
    rel, rel_inj = base.coproduct(srcs)
    r1 = base.mediator(rel, rel_inj, total,
                       [inj[d.shape.src(u)] for u in edges])
    r2 = base.mediator(rel, rel_inj, total,
                       [base.compose(inj[d.shape.tgt(u)], d.on_morphisms[u])
                        for u in edges])
    obj, q = base.coequalizer(r1, r2)
    return Cocone(d, obj, {j: base.compose(q, inj[j])
                           for j in d.shape.objects})


def cocone_mediator(k0, k):
    """The unique morphism from a colimit cocone's apex to another
    cocone's apex, commuting with all legs."""
    assert k0.diagram == k.diagram
    base = k0.diagram.base
    order = k0.diagram.shape.objects
    return base.mediator(k0.apex, [k0.legs[j] for j in order],
                         k.apex, [k.legs[j] for j in order])


def is_colimit(k):
    """Whether a cocone is a colimit: the comparison morphism from the
    canonical colimit must be an isomorphism."""
    k0 = colimit(k.diagram)
    try:
        m = cocone_mediator(k0, k)
    except AssertionError:
        return False
    return k.diagram.base.is_iso(m)


def _search_assignments(keys, options, consistent):
    """Depth-first enumeration of total assignments key -> candidate.

    options[k] lists the candidates for k; consistent(partial, k) is
    called right after k is set and may assume all keys earlier in
    `keys` are present.  Yields plain dicts, deterministically.
    """
    keys = list(keys)

    def rec(i, partial):
        if i == len(keys):
            yield dict(partial)
            return
        k = keys[i]
        for candidate in options[k]:
            partial[k] = candidate
            if consistent(partial, k):
                yield from rec(i + 1, partial)
            del partial[k]

    yield from rec(0, {})


def enumerate_cocones(d, size_bound):
    """All cocones of d with apex enumerated up to size_bound."""
    base = d.base
    shape = d.shape

    def consistent(partial, j):
        for u in shape.nonidentity:
            a, b = shape.src(u), shape.tgt(u)
            if a in partial and b in partial:
                if base.compose(partial[b], d.on_morphisms[u]) != partial[a]:
                    return False
        return True

    for apex in base.objects_upto(size_bound):
        options = {j: list(base.all_morphisms(d.on_objects[j], apex))
                   for j in shape.objects}
        for legs in _search_assignments(shape.objects, options, consistent):
            yield Cocone(d, apex, legs)


def colimit_oracle(k, size_bound=2):
    """Decide colimit-ness straight from the universal property.

    Sweeps candidate cocones with apexes up to size_bound and demands
    exactly one mediating morphism for each; the canonical colimit
    cocone and k itself are always included as candidates, which makes
    the verdict exact rather than bounded: a non-colimit either fails
    to mediate to the canonical cocone (it merged two of its classes)
    or mediates to itself in more than one way (it has a junk point).
    """
    base = k.diagram.base
    order = k.diagram.shape.objects
    candidates = [colimit(k.diagram), k]
    candidates += list(enumerate_cocones(k.diagram, size_bound))
    for c in candidates:
        count = sum(
            1 for m in base.all_morphisms(k.apex, c.apex)
            if all(base.compose(m, k.legs[j]) == c.legs[j] for j in order))
        if count != 1:
            return False
    return True


def is_cartesian(t):
    """Whether every naturality square of a transformation is a
    pullback square."""
    base = t.src.base
    shape = t.src.shape
    for u in shape.nonidentity:
        a, b = shape.src(u), shape.tgt(u)
        if not base.is_pullback_square(t.components[b], t.tgt.on_morphisms[u],
                                       t.src.on_morphisms[u], t.components[a]):
            return False
    return True


def pullback_cocone(k, x):
    """Pull a cocone back along a morphism into its apex.

    Returns (E, tau, beta): E the fiber diagram, tau: E -> D cartesian,
    beta the cocone of E over dom(x).  Pulling back along an identity
    returns the original diagram and cocone unchanged, thanks to the
    identity-preserving pullback choice.
    """
    d = k.diagram
    base = d.base
    assert x.cod == k.apex, "not a morphism into the apex"
    apexes, betas, taus = {}, {}, {}
    for j in d.shape.objects:
        apexes[j], betas[j], taus[j] = base.chosen_pullback(x, k.legs[j])
    transports = {}
    for u in d.shape.nonidentity:
        a, b = d.shape.src(u), d.shape.tgt(u)
        transports[u] = base.pullback_mediator(
            betas[b], taus[b],
            betas[a], base.compose(d.on_morphisms[u], taus[a]))
    e = Diagram(d.shape, base, apexes, transports)
    tau = NatTrans(e, d, taus)
    beta = Cocone(e, x.dom, betas)
    assert is_cartesian(tau)
    return e, tau, beta


def kappa_star(k, x):
    """The cartesian part of pulling k back along x."""
    e, tau, _ = pullback_cocone(k, x)
    return e, tau


def diagram_iso_search(a, b):
    """A natural isomorphism a -> b if one exists, else None."""
    if a.shape != b.shape or a.base != b.base:
        return None
    base, shape = a.base, a.shape

    def consistent(partial, j):
        for u in shape.nonidentity:
            s, t = shape.src(u), shape.tgt(u)
            if s in partial and t in partial:
                if (base.compose(b.on_morphisms[u], partial[s])
                        != base.compose(partial[t], a.on_morphisms[u])):
                    return False
        return True

    options = {j: list(base.all_isos(a.on_objects[j], b.on_objects[j]))
               for j in shape.objects}
    for components in _search_assignments(shape.objects, options, consistent):
        return NatTrans(a, b, components)
    return None


def pair_iso_search(tau, tau2):
    """An isomorphism between cartesian pairs: a natural iso
    i: src(tau) -> src(tau2) with tau2 . i = tau, if one exists."""
    if tau.tgt != tau2.tgt or tau.src.shape != tau2.src.shape:
        return None
    a, b = tau.src, tau2.src
    base, shape = a.base, a.shape

    def consistent(partial, j):
        if (base.compose(tau2.components[j], partial[j])
                != tau.components[j]):
            return False
        for u in shape.nonidentity:
            s, t = shape.src(u), shape.tgt(u)
            if s in partial and t in partial:
                if (base.compose(b.on_morphisms[u], partial[s])
                        != base.compose(partial[t], a.on_morphisms[u])):
                    return False
        return True

    options = {j: list(base.all_isos(a.on_objects[j], b.on_objects[j]))
               for j in shape.objects}
    for components in _search_assignments(shape.objects, options, consistent):
        return NatTrans(a, b, components)
    return None


def morphisms_into_upto_iso(base, target, size_bound):
    """Representatives of morphisms into target, one per orbit under
    precomposition with an isomorphism of the source."""
    for source in base.objects_upto(size_bound):
        automorphisms = list(base.all_isos(source, source))
        kept = []
        for x in base.all_morphisms(source, target):
            if any(base.compose(x, s) == y for s in automorphisms
                   for y in kept):
                continue
            kept.append(x)
            yield x


# ---------------------------------------------------------------------------
# diagram categories as bases


class FunctorCat(BaseCat):
    """Diagrams over a fixed finite inner shape, with finite sets at the
    points.  All structure is pointwise: limits, colimits and their
    mediators are computed at each inner object, with transports
    induced by the universal properties.  Because the pointwise chosen
    pullback special-cases identities, identity preservation holds here
    as well, component by component.
    """

    _MISS = object()

    def __init__(self, inner):
        assert isinstance(inner, FinCat)
        self.inner = inner
        self.name = "diagrams over {}".format(list(inner.objects))
        self._cache = {}

    def _memo(self, key, build):
        """Pointwise constructions redo a lot of validation; results
        are value objects, so repeat calls are served from a cache
        keyed by the (hashable) arguments."""
        hit = self._cache.get(key, self._MISS)
        if hit is self._MISS:
            hit = self._cache[key] = build()
        return hit

    # -- plumbing

    def identity(self, obj):
        return self._memo(("id", obj), lambda: identity_nat(obj))

    def compose(self, g, f):
        return self._memo(("compose", g, f), lambda: compose_nat(g, f))

    def is_identity(self, f):
        return f.src == f.tgt and all(
            finset.is_identity(c) for c in f.components.values())

    def is_mono(self, f):
        return all(finset.is_mono(c) for c in f.components.values())

    def is_iso(self, f):
        return all(finset.is_iso(c) for c in f.components.values())

    def inverse(self, f):
        return NatTrans(f.tgt, f.src,
                        {o: finset.inverse(c) for o, c in f.components.items()})

    def _transported(self, on_objects, transport_of):
        """Assemble a Diagram over the inner shape from pointwise data
        plus a callback producing the transport for each inner arrow."""
        return Diagram(self.inner, FINSET, on_objects,
                       {m: transport_of(m) for m in self.inner.nonidentity})

    # -- chosen pullback, pointwise

    def chosen_pullback(self, f, g):
        return self._memo(("pullback", f, g),
                          lambda: self._pullback_pointwise(f, g))

    def _pullback_pointwise(self, f, g):
        apexes, p1s, p2s = {}, {}, {}
        for s in self.inner.objects:
            apexes[s], p1s[s], p2s[s] = finset.chosen_pullback(
                f.components[s], g.components[s])

        def transport(m):
            a, b = self.inner.src(m), self.inner.tgt(m)
            return finset.pullback_mediator(
                p1s[b], p2s[b],
                finset.compose(f.src.on_morphisms[m], p1s[a]),
                finset.compose(g.src.on_morphisms[m], p2s[a]))

        apex = self._transported(apexes, transport)
        return apex, NatTrans(apex, f.src, p1s), NatTrans(apex, g.src, p2s)

    def pullback_mediator(self, p1, p2, c1, c2):
        def build():
            components = {s: finset.pullback_mediator(
                p1.components[s], p2.components[s],
                c1.components[s], c2.components[s])
                for s in self.inner.objects}
            return NatTrans(c1.src, p1.src, components)

        return self._memo(("pb-mediator", p1, p2, c1, c2), build)

    def is_pullback_square(self, f, g, leg1, leg2):
        return all(
            finset.pullback_square_holds(
                f.components[s], g.components[s],
                leg1.components[s], leg2.components[s])
            for s in self.inner.objects)

    # -- colimits, pointwise

    def coproduct(self, objs):
        objs = tuple(objs)
        return self._memo(("coproduct", objs),
                          lambda: self._coproduct_pointwise(objs))

    def _coproduct_pointwise(self, objs):
        totals, injections = {}, {}
        for s in self.inner.objects:
            totals[s], injections[s] = finset.coproduct(
                [o.on_objects[s] for o in objs])

        def transport(m):
            a, b = self.inner.src(m), self.inner.tgt(m)
            return finset.mediator(
                totals[a], injections[a], totals[b],
                [finset.compose(injections[b][i], o.on_morphisms[m])
                 for i, o in enumerate(objs)])

        total = self._transported(totals, transport)
        nat_injections = tuple(
            NatTrans(o, total, {s: injections[s][i]
                                for s in self.inner.objects})
            for i, o in enumerate(objs))
        return total, nat_injections

    def coequalizer(self, f, g):
        return self._memo(("coequalizer", f, g),
                          lambda: self._coequalizer_pointwise(f, g))

    def _coequalizer_pointwise(self, f, g):
        objs, qs = {}, {}
        for s in self.inner.objects:
            objs[s], qs[s] = finset.coequalizer(
                f.components[s], g.components[s])

        def transport(m):
            a, b = self.inner.src(m), self.inner.tgt(m)
            return finset.mediator(
                objs[a], [qs[a]], objs[b],
                [finset.compose(qs[b], f.tgt.on_morphisms[m])])

        obj = self._transported(objs, transport)
        return obj, NatTrans(f.tgt, obj, qs)

    def pushout(self, f, g):
        return self._memo(("pushout", f, g),
                          lambda: self._pushout_pointwise(f, g))

    def _pushout_pointwise(self, f, g):
        objs, in1s, in2s = {}, {}, {}
        for s in self.inner.objects:
            objs[s], in1s[s], in2s[s] = finset.pushout(
                f.components[s], g.components[s])

        def transport(m):
            a, b = self.inner.src(m), self.inner.tgt(m)
            return finset.mediator(
                objs[a], [in1s[a], in2s[a]], objs[b],
                [finset.compose(in1s[b], f.tgt.on_morphisms[m]),
                 finset.compose(in2s[b], g.tgt.on_morphisms[m])])

        obj = self._transported(objs, transport)
        return (obj, NatTrans(f.tgt, obj, in1s), NatTrans(g.tgt, obj, in2s))

    def mediator(self, src, legs0, tgt, legs):
        def build():
            components = {s: finset.mediator(
                src.on_objects[s], [l.components[s] for l in legs0],
                tgt.on_objects[s], [l.components[s] for l in legs])
                for s in self.inner.objects}
            return NatTrans(src, tgt, components)

        return self._memo(
            ("mediator", src, tuple(legs0), tgt, tuple(legs)), build)

    # -- bounded enumeration

    def objects_upto(self, bound):
        return self._memo(("objects", bound),
                          lambda: self._objects_upto(bound))

    def _objects_upto(self, bound):
        result = []
        inner = self.inner
        for ns in itertools.product(range(bound + 1),
                                    repeat=len(inner.objects)):
            on_objects = dict(zip(inner.objects,
                                  (canonical_set(n) for n in ns)))
            arrow_options = [
                list(finset.all_functions(on_objects[inner.src(m)],
                                          on_objects[inner.tgt(m)]))
                for m in inner.nonidentity]
            for choice in itertools.product(*arrow_options):
                mor = dict(zip(inner.nonidentity, choice))
                if self._functorial(on_objects, mor):
                    result.append(Diagram(inner, FINSET, on_objects, mor))
        return result

    def _functorial(self, on_objects, mor):
        inner = self.inner

        def value(m):
            if inner.is_id(m):
                return finset.identity(on_objects[inner.src(m)])
            return mor[m]

        return all(
            finset.compose(value(g), value(f)) == value(h)
            for (g, f), h in inner.composition.items()
            if not (inner.is_id(g) or inner.is_id(f)))

    def _nat_search(self, a, b, per_object):
        inner = self.inner

        def consistent(partial, _):
            for m in inner.nonidentity:
                s, t = inner.src(m), inner.tgt(m)
                if s in partial and t in partial:
                    if (finset.compose(b.on_morphisms[m], partial[s])
                            != finset.compose(partial[t],
                                              a.on_morphisms[m])):
                        return False
            return True

        options = {s: list(per_object(a.on_objects[s], b.on_objects[s]))
                   for s in inner.objects}
        for components in _search_assignments(inner.objects, options,
                                              consistent):
            yield NatTrans(a, b, components)

    def all_morphisms(self, a, b):
        return self._memo(
            ("homs", a, b),
            lambda: list(self._nat_search(a, b, finset.all_functions)))

    def all_isos(self, a, b):
        return self._memo(
            ("isos", a, b),
            lambda: list(self._nat_search(a, b, finset.all_bijections)))

    def __eq__(self, other):
        return isinstance(other, FunctorCat) and self.inner == other.inner

    def __hash__(self):
        return hash(("FunctorCat", self.inner))

    def __repr__(self):
        return "FunctorCat({})".format(self.inner)


def functor_category(shape):
    return FunctorCat(shape)


def arrow_category():
    """Diagrams over the single-arrow shape: the category of finite
    functions."""
    return FunctorCat(arrow_shape())


def arrow_object(f):
    """Package a finite function as an object of the arrow category."""
    return Diagram(arrow_shape(), FINSET, {"a": f.dom, "b": f.cod},
                   {"u": f})


def arrow_morphism(src, tgt, h0, h1):
    """A morphism of the arrow category from its two components."""
    return NatTrans(src, tgt, {"a": h0, "b": h1})


# ---------------------------------------------------------------------------
# enumeration of cartesian transformations


def _perm_compose(p, q):
    return tuple(p[i] for i in q)


def _perm_conjugate(sigma, p):
    inv = [0] * len(sigma)
    for i, v in enumerate(sigma):
        inv[v] = i
    return tuple(sigma[p[inv[i]]] for i in range(len(sigma)))


@functools.lru_cache(maxsize=None)
def _finset_cartesian_into(d, fiber_bound):
    """All cartesian transformations into a finite-set diagram, up to
    isomorphism of the pair (E, tau), with fibers of size <= bound.

    Cartesianness forces the fiber over an element to transport
    bijectively along every edge of the diagram, so a transformation is
    a choice of fiber size per connected component of the element graph
    plus a permutation per edge, subject to the diagram's composition
    relations.  Relabelling fibers along a spanning forest pins the
    forest's permutations to the identity; the leftover redundancy is
    exactly simultaneous conjugation per component, which is removed by
    a canonical-form key, so the output has one representative per
    isomorphism class with nothing missed.
    """
    assert d.base == FINSET
    shape = d.shape
    nodes = [(j, x) for j in shape.objects for x in d.on_objects[j]]
    edges = []
    for u in shape.nonidentity:
        a, b = shape.src(u), shape.tgt(u)
        for x in d.on_objects[a]:
            edges.append(((u, x), (a, x), (b, d.on_morphisms[u](x))))

    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for _, na, nb in edges:
        parent[find(na)] = find(nb)
    roots = sorted({find(n) for n in nodes})
    comp_of = {n: roots.index(find(n)) for n in nodes}

    tree_parent = {n: n for n in nodes}

    def tree_find(n):
        while tree_parent[n] != n:
            tree_parent[n] = tree_parent[tree_parent[n]]
            n = tree_parent[n]
        return n

    tree, free = set(), []
    for key, na, nb in edges:
        if tree_find(na) != tree_find(nb):
            tree_parent[tree_find(na)] = tree_find(nb)
            tree.add(key)
        else:
            free.append(key)
    free_by_comp = {}
    for key in free:
        free_by_comp.setdefault(comp_of[(shape.src(key[0]), key[1])],
                                []).append(key)

    # composition relations between edge transports
    relations = []
    for (g, f), h in shape.composition.items():
        if shape.is_id(g) or shape.is_id(f):
            continue
        for x in d.on_objects[shape.src(f)]:
            u_key = (f, x)
            v_key = (g, d.on_morphisms[f](x))
            w_key = None if shape.is_id(h) else (h, x)
            relations.append((w_key, v_key, u_key))

    results = []
    seen_keys = set()
    n_comps = len(roots)
    for comp_sizes in itertools.product(range(fiber_bound + 1),
                                        repeat=n_comps):

        def size_at(node):
            return comp_sizes[comp_of[node]]

        free_options = []
        for key in free:
            s = comp_sizes[comp_of[(shape.src(key[0]), key[1])]]
            free_options.append(list(itertools.permutations(range(s))))
        for choice in itertools.product(*free_options):
            perm = dict(zip(free, choice))
            for key, na, nb in edges:
                if key in tree:
                    perm[key] = tuple(range(size_at(na)))

            def rel_holds(w_key, v_key, u_key):
                lhs = _perm_compose(perm[v_key], perm[u_key])
                rhs = (tuple(range(len(lhs))) if w_key is None
                       else perm[w_key])
                return lhs == rhs

            if not all(rel_holds(*r) for r in relations):
                continue

            canon = []
            for c in range(n_comps):
                s = comp_sizes[c]
                comp_free = free_by_comp.get(c, [])
                tuples = [perm[k] for k in comp_free]
                best = min(
                    (tuple(_perm_conjugate(sigma, p) for p in tuples)
                     for sigma in itertools.permutations(range(s))),
                    default=())
                canon.append((s, best))
            key = tuple(canon)
            if key in seen_keys:
                continue
            seen_keys.add(key)

            on_objects = {
                j: FinSet(pair_label(x, str(i))
                          for x in d.on_objects[j]
                          for i in range(size_at((j, x))))
                for j in shape.objects}
            on_morphisms = {}
            for u in shape.nonidentity:
                a, b = shape.src(u), shape.tgt(u)
                mapping = {}
                for x in d.on_objects[a]:
                    y = d.on_morphisms[u](x)
                    p = perm[(u, x)]
                    for i in range(size_at((a, x))):
                        mapping[pair_label(x, str(i))] = pair_label(
                            y, str(p[i]))
                on_morphisms[u] = FinFn(on_objects[a], on_objects[b],
                                        mapping)
            e = Diagram(shape, FINSET, on_objects, on_morphisms)
            components = {
                j: FinFn(on_objects[j], d.on_objects[j],
                         {pair_label(x, str(i)): x
                          for x in d.on_objects[j]
                          for i in range(size_at((j, x)))})
                for j in shape.objects}
            tau = NatTrans(e, d, components)
            # cartesian by construction: every naturality square is a
            # bijective relabelling of fibers over a genuine square
            results.append((e, tau))
    return results


def _slice_diagram(d, s):
    """Restrict a diagram valued in an inner diagram category to the
    component at one inner object."""
    return Diagram(d.shape, FINSET,
                   {j: d.on_objects[j].on_objects[s]
                    for j in d.shape.objects},
                   {u: d.on_morphisms[u].components[s]
                    for u in d.shape.nonidentity})


@functools.lru_cache(maxsize=None)
def _fiber_signature(f):
    counts = {y: 0 for y in f.cod}
    for x in f.dom:
        counts[f(x)] += 1
    return tuple(sorted(counts.items()))


@functools.lru_cache(maxsize=None)
def _slice_signature(nt):
    """Invariants of one leg of a candidate pair: fiber sizes over the
    fixed target pointwise, plus, for every inner transport and every
    target point, the shape of the transport restricted to the fiber
    there (preimage-size multiset).  An isomorphism of pairs fixes the
    target, so it preserves all of this.  Cached because gluing
    recombines the same slice legs over and over."""
    e, d = nt.src, nt.tgt
    shape = e.shape
    fibers = {}
    for s in shape.objects:
        comp = nt.components[s]
        per = {x: [] for x in comp.cod}
        for p in comp.dom:
            per[comp(p)].append(p)
        fibers[s] = per
    restricted = []
    for u in shape.nonidentity:
        s = shape.src(u)
        t_e = e.on_morphisms[u]
        for x in sorted(d.on_objects[s]):
            counts = {}
            for p in fibers[s][x]:
                q = t_e(p)
                counts[q] = counts.get(q, 0) + 1
            restricted.append((u, x, tuple(sorted(counts.values()))))
    return (tuple(sorted((s, _fiber_signature(c))
                         for s, c in nt.components.items())),
            tuple(restricted))


def _pair_signature(tau):
    """Per shape object, the slice invariants of the leg there; all
    invariant under isomorphism of the pair.  Used to bucket candidates
    so the iso search only runs between plausible duplicates."""
    return tuple((j, _slice_signature(tau.components[j]))
                 for j in sorted(tau.src.shape.objects))


def _functorcat_cartesian_into(d, fiber_bound):
    """Cartesian transformations into a diagram of inner diagrams.

    A transformation is cartesian here exactly when each of its slices
    at an inner object is cartesian over finite sets, because pullback
    squares in the inner diagram category are pointwise.  So: enumerate
    slice candidates independently, then enumerate families of inner
    transports gluing the slices together (fiber-compatible, natural
    over the outer shape, and respecting the inner composition table),
    and finally deduplicate, since distinct gluings can still be
    isomorphic as pairs.
    """
    base = d.base
    inner = base.inner
    shape = d.shape
    slice_candidates = {
        s: _finset_cartesian_into(_slice_diagram(d, s), fiber_bound)
        for s in inner.objects}

    results = []
    for pick in itertools.product(
            *(slice_candidates[s] for s in inner.objects)):
        chosen = dict(zip(inner.objects, pick))
        # an isomorphism of glued pairs restricts to a slice-pair
        # isomorphism at each inner object, and the slice lists hold
        # one representative per class, so duplicates can only arise
        # within a single pick
        buckets = {}

        def gluings(m):
            a, b = inner.src(m), inner.tgt(m)
            e_a, tau_a = chosen[a]
            e_b, tau_b = chosen[b]

            def options_at(j):
                inner_transport = d.on_objects[j].on_morphisms[m]
                return [h for h in finset.all_functions(
                    e_a.on_objects[j], e_b.on_objects[j])
                    if finset.compose(tau_b.components[j], h)
                    == finset.compose(inner_transport,
                                      tau_a.components[j])]

            def consistent(partial, _):
                for u in shape.nonidentity:
                    j1, j2 = shape.src(u), shape.tgt(u)
                    if j1 in partial and j2 in partial:
                        if (finset.compose(e_b.on_morphisms[u], partial[j1])
                                != finset.compose(partial[j2],
                                                  e_a.on_morphisms[u])):
                            return False
                return True

            options = {j: options_at(j) for j in shape.objects}
            return list(_search_assignments(shape.objects, options,
                                            consistent))

        arrow_families = {m: gluings(m) for m in inner.nonidentity}
        for family_pick in itertools.product(
                *(arrow_families[m] for m in inner.nonidentity)):
            family = dict(zip(inner.nonidentity, family_pick))
            if not _inner_functorial(inner, shape, chosen, family):
                continue
            e_objects = {}
            taus = {}
            for j in shape.objects:
                e_objects[j] = Diagram(
                    inner, FINSET,
                    {s: chosen[s][0].on_objects[j] for s in inner.objects},
                    {m: family[m][j] for m in inner.nonidentity})
                taus[j] = NatTrans(
                    e_objects[j], d.on_objects[j],
                    {s: chosen[s][1].components[j] for s in inner.objects})
            transports = {}
            for u in shape.nonidentity:
                j1, j2 = shape.src(u), shape.tgt(u)
                transports[u] = NatTrans(
                    e_objects[j1], e_objects[j2],
                    {s: chosen[s][0].on_morphisms[u]
                     for s in inner.objects})
            e = Diagram(shape, base, e_objects, transports)
            tau = NatTrans(e, d, taus)
            # cartesian because its slices are and pullbacks here are
            # pointwise; re-checked by the enumeration tests
            kept = buckets.setdefault(_pair_signature(tau), [])
            if not any(pair_iso_search(tau, old) for old in kept):
                kept.append(tau)
                results.append((e, tau))
    return results


def _inner_functorial(inner, shape, chosen, family):
    def value(m, j):
        if inner.is_id(m):
            obj = chosen[inner.src(m)][0].on_objects[j]
            return finset.identity(obj)
        return family[m][j]

    for (g, f), h in inner.composition.items():
        if inner.is_id(g) or inner.is_id(f):
            continue
        for j in shape.objects:
            if finset.compose(value(g, j), value(f, j)) != value(h, j):
                return False
    return True


def enumerate_cartesian_into(d, fiber_bound):
    """All cartesian transformations into d up to isomorphism of the
    pair (E, tau), with fibers over each element of size <= bound."""
    assert fiber_bound >= 0
    if isinstance(d.base, FinSetCat):
        return _finset_cartesian_into(d, fiber_bound)
    if isinstance(d.base, FunctorCat):
        return _functorcat_cartesian_into(d, fiber_bound)
    raise NotImplementedError(
        "no cartesian enumeration over {}".format(d.base))
