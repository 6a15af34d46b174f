import pytest

from vkspan import finset
from vkspan.bicolim import verify_bicolimit_bounded
from vkspan.gallery import (
    GALLERY, run_counterexample_sp, run_extensive_coproduct,
    run_kernel_pair, run_non_vk_pushout, run_strict_initial,
)
from vkspan.span import abstract_equal, abstract_equalities, compose_spans, graph
from vkspan.vkcheck import is_vk_bounded, vk_instance_check


@pytest.fixture(scope="module")
def counterexample():
    return run_counterexample_sp()


def test_counterexample_summary_line_is_exact(counterexample):
    r = counterexample
    assert r.summary == ("VK square in C: pass; pushout in Sp(C): fail "
                         "(≥ 2 distinct mediators); "
                         "bicolimit in Span: pass")
    assert r.as_expected
    assert "2 mediating spans" in r.to_text()


def test_counterexample_mediators_revalidate(counterexample):
    r = counterexample
    k = r.artifacts["cocone"]
    leg = r.artifacts["leg"]
    base = k.diagram.base
    h1, h2 = r.artifacts["mediators"]
    for h in (h1, h2):
        assert abstract_equal(compose_spans(h, graph(base, k.legs["l"])),
                              leg) is not None
        assert abstract_equal(compose_spans(h, graph(base, k.legs["r"])),
                              leg) is not None
    assert abstract_equal(h1, h2) is None
    # the independent sweep agrees there are exactly two classes
    assert len(r.artifacts["search"]) == 2


def test_counterexample_diagonal_has_nontrivial_symmetry(counterexample):
    r = counterexample
    leg = r.artifacts["leg"]
    k = r.artifacts["cocone"]
    base = k.diagram.base
    diagonal = compose_spans(leg, graph(base, k.diagram.mor("f")))
    assert len(abstract_equalities(diagonal, diagonal)) == 2


def test_counterexample_verdicts_come_from_fresh_runs(counterexample):
    k = counterexample.artifacts["cocone"]
    assert is_vk_bounded(k, size_bound=2, fiber_bound=2).ok
    assert verify_bicolimit_bounded(k, size_bound=2, fiber_bound=2).ok


def test_strict_initial():
    r = run_strict_initial()
    assert r.as_expected
    assert len(r.artifacts["cocone"].apex) == 0


def test_extensive_coproduct_default_and_empty():
    assert run_extensive_coproduct().as_expected
    e = finset.canonical_set(0)
    assert run_extensive_coproduct(e, e).as_expected


def test_kernel_pair_accepts_surjections_only():
    r = run_kernel_pair()
    assert r.as_expected
    ident = finset.identity(finset.canonical_set(2))
    assert run_kernel_pair(ident).as_expected
    not_epi = finset.FinFn(finset.canonical_set(1), finset.canonical_set(2),
                           {"x0": "x0"})
    with pytest.raises(ValueError):
        run_kernel_pair(not_epi)


def test_non_vk_pushout_witness_asymmetry():
    r = run_non_vk_pushout()
    assert r.as_expected
    vk = r.artifacts["vk"]
    assert not vk.ok
    assert vk_instance_check(vk.witness) == (True, False)
    assert not r.artifacts["bicolim"].ok


def test_every_report_serializes_and_matches_expectations(counterexample):
    for name, run in GALLERY.items():
        r = counterexample if name == "counterexample" else run()
        assert r.as_expected, name
        d = r.to_dict()
        assert d["name"] == name
        assert d["as_expected"] is True
        assert "artifacts" not in d
        text = r.to_text()
        assert text.startswith("== {} ==".format(name))
        assert r.summary in text
