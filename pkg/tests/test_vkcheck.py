import pytest
from hypothesis import given, settings, strategies as st

from vkspan import finset
from vkspan.catkit import (
    FINSET, Cocone, Diagram, arrow_category, arrow_morphism, arrow_object,
    colimit, cocone_mediator, discrete_shape, enumerate_cartesian_into,
    identity_nat,
)
from vkspan.vkcheck import (
    VkInstance, barr_kock_check, converse_universality_check,
    extensivity_check, gamma_preserves_coproduct_check, is_vk_bounded,
    pushout_cocone, universality_check, vk_instance_check, vk_square_check,
)

from strategies import finset_diagrams


def coproduct_cocone(a, b):
    d = Diagram(discrete_shape(2), FINSET, {"0": a, "1": b})
    return colimit(d)


def collapse_pushout():
    """The pushout of 1 <- 2 -> 1, the smallest non-VK square."""
    two = finset.canonical_set(2)
    one = finset.canonical_set(1)
    bang = finset.FinFn(two, one, {x: "x0" for x in two})
    _, q1, q2 = finset.pushout(bang, bang)
    return pushout_cocone(FINSET, bang, bang, q1, q2)


def test_vk_instance_validates_faces():
    k = coproduct_cocone(finset.canonical_set(2), finset.canonical_set(1))
    d = k.diagram
    tau = identity_nat(d)
    x = FINSET.identity(k.apex)
    inst = VkInstance(k, tau, x, k)
    assert vk_instance_check(inst) == (True, True)
    # breaking a face must be rejected outright
    bad_legs = dict(k.legs)
    bad_legs["0"] = finset.FinFn(d.ob("0"), k.apex,
                                 {e: "(1,x0)" for e in d.ob("0")})
    bad = Cocone(d, k.apex, bad_legs)
    with pytest.raises(AssertionError):
        VkInstance(k, tau, x, bad)


def test_vk_instance_rejects_non_cartesian():
    from vkspan.catkit import NatTrans, arrow_shape
    one = finset.canonical_set(1)
    two = finset.canonical_set(2)
    shape = arrow_shape()
    bang = finset.FinFn(two, one, {x: "x0" for x in two})
    d = Diagram(shape, FINSET, {"a": two, "b": one}, {"u": bang})
    k = colimit(d)
    # an honest morphism of diagrams whose naturality square is not a
    # pullback: the source arrow is an identity on one point
    e = Diagram(shape, FINSET, {"a": one, "b": one},
                {"u": finset.identity(one)})
    tau = NatTrans(e, d, {"a": finset.FinFn(one, two, {"x0": "x0"}),
                          "b": finset.identity(one)})
    beta = colimit(e)
    x = cocone_mediator(beta, Cocone(e, k.apex,
                                     {j: FINSET.compose(k.legs[j], tau.at(j))
                                      for j in shape.objects}))
    with pytest.raises(AssertionError):
        VkInstance(k, tau, x, beta)


def test_vk_instance_check_sees_non_colimit():
    a, b = finset.canonical_set(1), finset.canonical_set(1)
    k = coproduct_cocone(a, b)
    d = k.diagram
    bigger, (j1, j2) = finset.coproduct([k.apex, finset.canonical_set(1)])
    beta = Cocone(d, bigger, {"0": finset.compose(j1, k.legs["0"]),
                              "1": finset.compose(j1, k.legs["1"])})
    x = finset.mediator(bigger, (j1, j2), k.apex,
                        [finset.identity(k.apex),
                         finset.FinFn(finset.canonical_set(1), k.apex,
                                      {"x0": "(0,x0)"})])
    inst = VkInstance(k, identity_nat(d), x, beta)
    i_holds, ii_holds = vk_instance_check(inst)
    assert not i_holds
    assert not ii_holds


def test_coproduct_is_vk():
    k = coproduct_cocone(finset.canonical_set(2), finset.canonical_set(2))
    v = is_vk_bounded(k, size_bound=2, fiber_bound=2)
    assert v.ok and v.status == "pass-up-to-bound"


def test_universality_passes_on_collapse_pushout():
    # quotients are universal here; only the converse direction fails
    assert universality_check(collapse_pushout(), size_bound=2).ok


def test_converse_fails_on_collapse_pushout_with_twisted_witness():
    k = collapse_pushout()
    v = converse_universality_check(k, fiber_bound=2)
    assert not v.ok
    w = v.witness
    assert [len(w.tau.src.ob(j)) for j in ("l", "m", "r")] == [2, 4, 2]
    # one transport is straight, the other swaps the fiber over x1
    f_map = dict(w.tau.src.mor("f").mapping)
    g_map = dict(w.tau.src.mor("g").mapping)
    assert f_map["(x1,0)"] != g_map["(x1,0)"] or \
        f_map["(x1,1)"] != g_map["(x1,1)"]
    # and the witness re-validates by itself: colimit yes, faces no
    assert vk_instance_check(w) == (True, False)


def test_collapse_pushout_failing_instance_counts():
    k = collapse_pushout()
    seen, bad = 0, 0
    for e, tau in enumerate_cartesian_into(k.diagram, 2):
        seen += 1
        beta = colimit(e)
        x = cocone_mediator(
            beta, Cocone(e, k.apex,
                         {j: FINSET.compose(k.legs[j], tau.at(j))
                          for j in e.shape.objects}))
        if not vk_instance_check(VkInstance(k, tau, x, beta))[1]:
            bad += 1
    assert seen == 4
    assert bad == 1


def test_vk_square_check_rejects_non_pushout():
    two = finset.canonical_set(2)
    one = finset.canonical_set(1)
    bang = finset.FinFn(two, one, {x: "x0" for x in two})
    # legs into a two-point apex that misses x1: commutes, no pushout
    skew = finset.FinFn(one, two, {"x0": "x0"})
    with pytest.raises(ValueError):
        vk_square_check(FINSET, bang, bang, skew, skew)


def test_mono_pushout_passes_finset():
    one = finset.canonical_set(1)
    two = finset.canonical_set(2)
    inc = finset.FinFn(one, two, {"x0": "x0"})
    idone = finset.identity(one)
    _, r1, r2 = finset.pushout(inc, idone)
    assert vk_square_check(FINSET, inc, idone, r1, r2, fiber_bound=2).ok


def test_mono_pushout_passes_arrow_category():
    AC = arrow_category()
    one = finset.canonical_set(1)
    two = finset.canonical_set(2)
    X = arrow_object(finset.identity(one))
    Y = arrow_object(finset.FinFn(two, one, {x: "x0" for x in two}))
    m = arrow_morphism(X, Y, finset.FinFn(one, two, {"x0": "x0"}),
                       finset.identity(one))
    idX = AC.identity(X)
    _, r1, r2 = AC.pushout(m, idX)
    assert vk_square_check(AC, m, idX, r1, r2, fiber_bound=2).ok


def test_epi_pushout_fails_arrow_category():
    AC = arrow_category()
    one = finset.canonical_set(1)
    two = finset.canonical_set(2)
    X = arrow_object(finset.identity(one))
    Y = arrow_object(finset.FinFn(two, one, {x: "x0" for x in two}))
    bang = arrow_morphism(Y, X, finset.FinFn(two, one,
                                             {x: "x0" for x in two}),
                          finset.identity(one))
    _, s1, s2 = AC.pushout(bang, bang)
    v = vk_square_check(AC, bang, bang, s1, s2, fiber_bound=2)
    assert not v.ok
    assert vk_instance_check(v.witness) == (True, False)


def test_instance_filter_skips_everything():
    # with a filter that rejects every instance even the non-VK square
    # passes vacuously; callers own the meaning of their filters
    k = collapse_pushout()
    v = is_vk_bounded(k, size_bound=2, fiber_bound=2,
                      instance_filter=lambda e, tau: False)
    assert v.ok


@settings(deadline=None, max_examples=20)
@given(na=st.integers(0, 2), nb=st.integers(0, 2))
def test_extensivity_and_gamma_and_vk_agree(na, nb):
    a, b = finset.canonical_set(na), finset.canonical_set(nb)
    v1 = extensivity_check(FINSET, a, b, bound=2)
    v2 = gamma_preserves_coproduct_check(a, b, bound=2)
    v3 = is_vk_bounded(coproduct_cocone(a, b), size_bound=2, fiber_bound=2)
    assert v1.ok and v2.ok and v3.ok


def test_extensivity_arrow_category():
    AC = arrow_category()
    one = finset.canonical_set(1)
    two = finset.canonical_set(2)
    X = arrow_object(finset.identity(one))
    Y = arrow_object(finset.FinFn(two, one, {x: "x0" for x in two}))
    assert extensivity_check(AC, X, Y, bound=2).ok


def test_barr_kock_small_surjections():
    one = finset.canonical_set(1)
    two = finset.canonical_set(2)
    three = finset.canonical_set(3)
    cases = [
        finset.FinFn(two, one, {x: "x0" for x in two}),
        finset.FinFn(three, two, {"x0": "x0", "x1": "x0", "x2": "x1"}),
        finset.identity(two),
    ]
    for p in cases:
        assert barr_kock_check(p, fiber_bound=2).ok


def test_barr_kock_rejects_non_surjection():
    one = finset.canonical_set(1)
    two = finset.canonical_set(2)
    inc = finset.FinFn(one, two, {"x0": "x0"})
    with pytest.raises(AssertionError):
        barr_kock_check(inc)


@settings(deadline=None, max_examples=15)
@given(d=finset_diagrams(shape=discrete_shape(2), max_size=2))
def test_random_coproducts_are_vk(d):
    k = colimit(d)
    assert is_vk_bounded(k, size_bound=2, fiber_bound=2).ok


@settings(deadline=None, max_examples=10)
@given(data=st.data())
def test_random_surjections_satisfy_descent(data):
    n = data.draw(st.integers(1, 3), label="dom size")
    m = data.draw(st.integers(1, n), label="cod size")
    dom, cod = finset.canonical_set(n), finset.canonical_set(m)
    elems = list(cod)
    mapping = {}
    for i, x in enumerate(dom):
        if i < m:
            mapping[x] = elems[i]
        else:
            mapping[x] = data.draw(st.sampled_from(elems), label=x)
    p = finset.FinFn(dom, cod, mapping)
    assert barr_kock_check(p, fiber_bound=2).ok


def test_verdict_ok():
    from vkspan.vkcheck import Verdict
    assert Verdict("pass").ok
    assert Verdict("pass-up-to-bound", bound=3).ok
    assert not Verdict("fail", witness=None).ok
