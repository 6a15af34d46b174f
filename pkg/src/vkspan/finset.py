"""Finite sets and functions, with chosen limits, colimits and oracles.

Everything in this package ultimately reduces to concrete computation
with finite sets: elements are string labels, functions are dicts, and
every construction (pullback, pushout, coproduct, coequalizer) derives
its output labels deterministically from its input labels, so repeated
runs produce literally equal objects.

Two points deserve a warning up front.

* ``chosen_pullback`` special-cases identities: pulling back along an
  identity returns the other morphism unchanged instead of a set of
  pairs.  Unit laws for span composition, and exact functoriality of
  the graphing embedding, depend on this choice (see the span module).

* The ``*_oracle`` functions quantify over candidate (co)cones and
  count mediating morphisms.  They are slow and exist to keep the fast
  constructions and the ``verify_*`` comparison-map checks honest.
"""

import functools
import itertools


class FinSet:
    """A finite set of distinct string labels, kept in sorted order.

    >>> FinSet(["b", "a"]) == FinSet(["a", "b"])
    True
    """

    _interned = {}

    def __new__(cls, elements=()):
        elements = tuple(sorted(elements))
        self = cls._interned.get(elements)
        if self is not None:
            return self
        self = super().__new__(cls)
        assert all(isinstance(x, str) for x in elements), elements
        assert len(set(elements)) == len(elements), (
            "duplicate labels: {}".format(elements))
        self.elements = elements
        cls._interned[elements] = self
        return self

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label):
        return label in self.elements

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FinSet) and self.elements == other.elements

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = self._hash = hash(self.elements)
        return h

    def __repr__(self):
        return "FinSet({})".format(list(self.elements))


class FinFn:
    """A total function between finite sets, as an explicit mapping."""

    _interned = {}

    def __new__(cls, dom, cod, mapping):
        assert isinstance(dom, FinSet) and isinstance(cod, FinSet)
        items = tuple(sorted(dict(mapping).items()))
        key = (dom, cod, items)
        self = cls._interned.get(key)
        if self is not None:
            return self
        self = super().__new__(cls)
        mapping = dict(items)
        assert set(mapping) == set(dom.elements), (
            "mapping not total on domain: {} vs {}".format(
                sorted(mapping), list(dom)))
        for x, y in mapping.items():
            assert y in cod, "image {!r} of {!r} not in codomain".format(y, x)
        self.dom, self.cod, self.mapping = dom, cod, mapping
        cls._interned[key] = self
        return self

    def __call__(self, label):
        return self.mapping[label]

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, FinFn) and self.dom == other.dom
                and self.cod == other.cod and self.mapping == other.mapping)

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = self._hash = hash(
                (self.dom, self.cod, tuple(self.mapping.items())))
        return h

    def __repr__(self):
        return "FinFn({}, {}, {})".format(self.dom, self.cod, self.mapping)


@functools.lru_cache(maxsize=None)
def identity(obj):
    return FinFn(obj, obj, {x: x for x in obj})


@functools.lru_cache(maxsize=None)
def compose(g, f):
    """The composite g after f.

    Cached: the sweeps upstream recompute the same small composites
    many times over, and FinFn values are immutable.

    >>> A = canonical_set(2)
    >>> compose(identity(A), identity(A)) == identity(A)
    True
    """
    assert isinstance(f, FinFn) and isinstance(g, FinFn)
    assert f.cod == g.dom, "composition boundary mismatch: {} vs {}".format(
        f.cod, g.dom)
    return FinFn(f.dom, g.cod, {x: g(f(x)) for x in f.dom})


def is_identity(f):
    return f.dom == f.cod and all(f(x) == x for x in f.dom)


def is_mono(f):
    values = list(f.mapping.values())
    return len(set(values)) == len(values)


def is_epi(f):
    return set(f.mapping.values()) == set(f.cod.elements)


def is_iso(f):
    return len(f.dom) == len(f.cod) and is_mono(f)


def inverse(f):
    assert is_iso(f), "not invertible: {}".format(f)
    return FinFn(f.cod, f.dom, {y: x for x, y in f.mapping.items()})


def canonical_set(n, prefix="x"):
    """The n-element set {prefix0, ..., prefix(n-1)}.

    >>> canonical_set(3).elements
    ('x0', 'x1', 'x2')
    """
    assert n >= 0
    return FinSet("{}{}".format(prefix, i) for i in range(n))


def all_functions(dom, cod):
    """All functions dom -> cod, in a deterministic order."""
    for images in itertools.product(cod.elements, repeat=len(dom)):
        yield FinFn(dom, cod, dict(zip(dom.elements, images)))


def all_bijections(dom, cod):
    if len(dom) != len(cod):
        return
    for images in itertools.permutations(cod.elements):
        yield FinFn(dom, cod, dict(zip(dom.elements, images)))


def _esc(label):
    out = []
    for ch in label:
        if ch in "\\,()":
            out.append("\\")
        out.append(ch)
    return "".join(out)


def pair_label(x, y):
    """Deterministic injective label for a pair of labels.

    Commas, parentheses and backslashes inside the components are
    escaped, so distinct pairs never collide:

    >>> pair_label("a,b", "c") == pair_label("a", "b,c")
    False
    """
    return "({},{})".format(_esc(x), _esc(y))


@functools.lru_cache(maxsize=None)
def chosen_pullback(f, g):
    """The chosen pullback of the cospan  dom(f) --f--> Z <--g-- dom(g).

    Returns (apex, p1, p2) with p1 landing in dom(f) and p2 in dom(g).
    The apex is the set of matched pairs, except that pulling back along
    an identity returns the other morphism unchanged:

        chosen_pullback(identity(Z), g) == (dom(g), g, identity(dom(g)))

    and symmetrically.  Identity-ness is decided by structural equality
    with identity(dom), so the special case fires exactly when a caller
    could have written the identity themselves.
    """
    assert f.cod == g.cod, "pullback boundary mismatch: {} vs {}".format(
        f.cod, g.cod)
    if is_identity(f):
        return g.dom, g, identity(g.dom)
    if is_identity(g):
        return f.dom, identity(f.dom), f
    pairs = [(x, y) for x in f.dom for y in g.dom if f(x) == g(y)]
    apex = FinSet(pair_label(x, y) for x, y in pairs)
    p1 = FinFn(apex, f.dom, {pair_label(x, y): x for x, y in pairs})
    p2 = FinFn(apex, g.dom, {pair_label(x, y): y for x, y in pairs})
    return apex, p1, p2


def coproduct(objs):
    """Tagged disjoint union of finitely many sets, with its injections.

    >>> obj, (i0, i1) = coproduct([canonical_set(1), canonical_set(1)])
    >>> len(obj)
    2
    """
    return _coproduct_cached(tuple(objs))


@functools.lru_cache(maxsize=None)
def _coproduct_cached(objs):
    total = FinSet(pair_label(str(i), x) for i, obj in enumerate(objs)
                   for x in obj)
    injections = tuple(
        FinFn(obj, total, {x: pair_label(str(i), x) for x in obj})
        for i, obj in enumerate(objs))
    return total, injections


def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _union(parent, x, y):
    parent[_find(parent, x)] = _find(parent, y)


@functools.lru_cache(maxsize=None)
def coequalizer(f, g):
    """Coequalizer of a parallel pair: a quotient of the codomain.

    Identifies f(a) with g(a) for every a of the shared domain, closes
    under the generated equivalence with a union-find pass, and names
    each class by its smallest member.
    """
    assert f.dom == g.dom and f.cod == g.cod, (
        "not a parallel pair: {} vs {}".format(f, g))
    parent = {y: y for y in f.cod}
    for a in f.dom:
        _union(parent, f(a), g(a))
    classes = {}
    for y in f.cod:
        classes.setdefault(_find(parent, y), []).append(y)
    rep = {root: min(members) for root, members in classes.items()}
    obj = FinSet(rep.values())
    q = FinFn(f.cod, obj, {y: rep[_find(parent, y)] for y in f.cod})
    return obj, q


@functools.lru_cache(maxsize=None)
def pushout(f, g):
    """Pushout of the span  cod(f) <--f-- A --g--> cod(g).

    Returns (obj, in1, in2) with in1 from cod(f) and in2 from cod(g).
    Generically this is the quotient of the tagged disjoint union
    cod(f) + cod(g) by the equivalence generated by f(a) ~ g(a).
    Pushouts along identities mirror the chosen pullback and return the
    other morphism unchanged:

        pushout(f, identity(A)) == (cod(f), identity(cod(f)), f)
    """
    assert f.dom == g.dom, "pushout boundary mismatch: {} vs {}".format(
        f.dom, g.dom)
    if is_identity(g):
        return f.cod, identity(f.cod), f
    if is_identity(f):
        return g.cod, g, identity(g.cod)
    total, (inl, inr) = coproduct([f.cod, g.cod])
    obj, q = coequalizer(compose(inl, f), compose(inr, g))
    return obj, compose(q, inl), compose(q, inr)


@functools.lru_cache(maxsize=None)
def pullback_mediator(p1, p2, c1, c2):
    """The unique map into a pullback apex through which a cone factors.

    (p1, p2) must be jointly monic legs of a genuine pullback square and
    (c1, c2) a commuting cone over the same cospan; returns the m with
    p1 . m = c1 and p2 . m = c2.
    """
    assert p1.dom == p2.dom and c1.dom == c2.dom
    assert p1.cod == c1.cod and p2.cod == c2.cod
    index = {}
    for p in p1.dom:
        key = (p1(p), p2(p))
        assert key not in index, "legs are not jointly monic"
        index[key] = p
    mapping = {}
    for t in c1.dom:
        key = (c1(t), c2(t))
        assert key in index, "cone does not factor through the apex"
        mapping[t] = index[key]
    return FinFn(c1.dom, p1.dom, mapping)


def mediator(src, legs0, tgt, legs):
    """The unique map m: src -> tgt with m . legs0[i] = legs[i].

    legs0 must be jointly epimorphic onto src, so m is forced pointwise;
    inconsistent data is a caller bug and trips an assertion.  With no
    legs at all this is the unique map out of an empty src.
    """
    return _mediator_cached(src, tuple(legs0), tgt, tuple(legs))


@functools.lru_cache(maxsize=None)
def _mediator_cached(src, legs0, tgt, legs):
    assert len(legs0) == len(legs)
    forced = {}
    for l0, l in zip(legs0, legs):
        assert l0.cod == src and l.cod == tgt and l0.dom == l.dom
        for d in l0.dom:
            assert forced.setdefault(l0(d), l(d)) == l(d), (
                "no mediating morphism exists")
    assert set(forced) == set(src.elements), (
        "legs are not jointly epimorphic")
    return FinFn(src, tgt, forced)


class SquareWitness:
    """A commuting square tagged with the universal property it claims.

    For kind "pullback" the data is a cospan (f, g) with common codomain
    and legs (leg1, leg2) out of a shared apex into dom(f) and dom(g):

        apex --leg2--> dom(g)
         |leg1            |g
        dom(f) ---f---> cod(f)

    The claim is that (apex, leg1, leg2) is a pullback of (f, g).  For
    kind "pushout" all arrows reverse: (f, g) is a span with common
    domain and the legs go from cod(f) and cod(g) into a shared object.
    Construction only checks that the square commutes; deciding the
    claim is verify_pullback_square / verify_pushout_square's job.
    """

    def __init__(self, kind, f, g, leg1, leg2):
        assert kind in ("pullback", "pushout"), kind
        for h in (f, g, leg1, leg2):
            assert isinstance(h, FinFn), h
        if kind == "pullback":
            assert f.cod == g.cod, "cospan feet disagree"
            assert leg1.dom == leg2.dom, "legs must share an apex"
            assert leg1.cod == f.dom and leg2.cod == g.dom, "legs misplaced"
            assert compose(f, leg1) == compose(g, leg2), (
                "square does not commute")
        else:
            assert f.dom == g.dom, "span feet disagree"
            assert leg1.cod == leg2.cod, "legs must share a target"
            assert leg1.dom == f.cod and leg2.dom == g.cod, "legs misplaced"
            assert compose(leg1, f) == compose(leg2, g), (
                "square does not commute")
        self.kind, self.f, self.g = kind, f, g
        self.leg1, self.leg2 = leg1, leg2

    @property
    def apex(self):
        return self.leg1.dom if self.kind == "pullback" else self.leg1.cod

    def __repr__(self):
        return "SquareWitness({!r}, {}, {}, {}, {})".format(
            self.kind, self.f, self.g, self.leg1, self.leg2)


def verify_pullback_square(w):
    """Decide whether a commuting square is a pullback.

    The square is a pullback exactly when the canonical comparison map
    into the chosen pullback apex is a bijection; that map is computed
    pointwise.  pullback_square_oracle decides the same question the
    slow way, straight from the universal property.
    """
    assert w.kind == "pullback"
    _, q1, q2 = chosen_pullback(w.f, w.g)
    index = {(q1(p), q2(p)): p for p in q1.dom}
    seen = set()
    for u in w.apex:
        p = index[(w.leg1(u), w.leg2(u))]
        if p in seen:
            return False
        seen.add(p)
    return len(seen) == len(index)


@functools.lru_cache(maxsize=None)
def pullback_square_holds(f, g, leg1, leg2):
    """Cached entry point for the pullback decision; the witness class
    re-runs its commutation assertions on every construction, which the
    bounded sweeps upstream cannot afford."""
    return verify_pullback_square(SquareWitness("pullback", f, g, leg1, leg2))


def verify_pushout_square(w):
    """Decide whether a commuting square is a pushout.

    Dual of verify_pullback_square: builds the mediating map out of the
    chosen pushout (forced pointwise on every quotient class) and checks
    it is a bijection.
    """
    assert w.kind == "pushout"
    obj0, j1, j2 = pushout(w.f, w.g)
    value = {}
    for b in w.f.cod:
        value[j1(b)] = w.leg1(b)
    for c in w.g.cod:
        # a genuine pushout never conflicts here because w commutes
        assert value.setdefault(j2(c), w.leg2(c)) == w.leg2(c)
    assert set(value) == set(obj0.elements)
    return (len(obj0) == len(w.apex)
            and len(set(value.values())) == len(obj0))


# ---------------------------------------------------------------------------
# Brute-force universal-property oracles.
#
# Each oracle quantifies over candidate (co)cones with a canonical vertex
# of size 0, 1 and 2 and demands exactly one mediating morphism.  Over
# finite sets this sweep is exact, not a truncation: a square that fails
# to be a pullback fails against a one-element cone (a matched pair that
# is missed, or hit twice), and a cocone that fails to be a colimit
# fails against a two-element target (two classes wrongly merged, or a
# junk point mapping freely) or against the empty target (junk under an
# empty diagram).  Larger vertices are swept only as a sanity margin.
# Mediator counting is pointwise: a morphism satisfying the composition
# constraints is a choice of image per element subject to independent
# per-element conditions.

_ORACLE_SIZES = (0, 1, 2)


def pullback_square_oracle(w):
    """Check the pullback universal property by enumeration."""
    assert w.kind == "pullback"
    for size in _ORACLE_SIZES:
        vertex = canonical_set(size, prefix="t")
        for a in all_functions(vertex, w.f.dom):
            for b in all_functions(vertex, w.g.dom):
                if any(w.f(a(t)) != w.g(b(t)) for t in vertex):
                    continue
                count = 1
                for t in vertex:
                    count *= sum(1 for p in w.apex
                                 if w.leg1(p) == a(t) and w.leg2(p) == b(t))
                if count != 1:
                    return False
    return True


def _mediators_from(obj, legs_out, legs_in, target):
    """Count maps m: obj -> target with m . legs_out[i] = legs_in[i]."""
    forced = {}
    for leg_out, leg_in in zip(legs_out, legs_in):
        for d in leg_out.dom:
            if forced.setdefault(leg_out(d), leg_in(d)) != leg_in(d):
                return 0
    return len(target) ** (len(obj) - len(forced))


def pushout_square_oracle(w):
    """Check the pushout universal property by enumeration."""
    assert w.kind == "pushout"
    for size in _ORACLE_SIZES:
        target = canonical_set(size, prefix="t")
        for u in all_functions(w.f.cod, target):
            for v in all_functions(w.g.cod, target):
                if compose(u, w.f) != compose(v, w.g):
                    continue
                if _mediators_from(w.apex, (w.leg1, w.leg2), (u, v),
                                   target) != 1:
                    return False
    return True


def coproduct_oracle(objs, obj, injections):
    """Check the coproduct universal property by enumeration."""
    objs = list(objs)
    assert len(objs) == len(injections)
    for size in _ORACLE_SIZES:
        target = canonical_set(size, prefix="t")
        for legs in itertools.product(
                *(list(all_functions(o, target)) for o in objs)):
            if _mediators_from(obj, injections, legs, target) != 1:
                return False
    return True


def coequalizer_oracle(f, g, obj, q):
    """Check the coequalizer universal property by enumeration."""
    assert compose(q, f) == compose(q, g), "q does not coequalize"
    for size in _ORACLE_SIZES:
        target = canonical_set(size, prefix="t")
        for u in all_functions(f.cod, target):
            if compose(u, f) != compose(u, g):
                continue
            if _mediators_from(obj, (q,), (u,), target) != 1:
                return False
    return True
