"""Worked examples as runnable reports.

Each operation here builds a small, fully explicit instance, runs the
public checkers on it, and packages the outcome together with the
expected verdicts, so a deviation anywhere in the stack turns into a
visible mismatch rather than a silently wrong claim.  The centrepiece
is the two-mediator construction over the arrow category: a pushout
square that is Van Kampen, whose graphed image nonetheless fails to be
a pushout of spans, while the bicolimit property still holds.
"""

from dataclasses import dataclass, field

from . import finset
from .bicolim import verify_bicolimit_bounded
from .catkit import (
    FINSET, Cocone, Diagram, arrow_category, arrow_morphism, arrow_object,
    colimit, discrete_shape, empty_shape, enumerate_cartesian_into,
)
from .span import (
    Span, abstract_equal, abstract_equalities, compose_spans, graph,
)
from .vkcheck import (
    barr_kock_check, extensivity_check, gamma_preserves_coproduct_check,
    is_vk_bounded, pushout_cocone, universality_check, vk_instance_check,
    vk_square_check,
)


@dataclass
class ExampleReport:
    """Outcome of one worked example.

    ``verdicts`` maps check labels to "pass"/"fail" strings and
    ``expected`` holds what each of them should be, so consumers can
    flag deviations without knowing the example.  ``artifacts`` keeps
    the constructed values (spans, witnesses, cocones) for re-running
    checks; it is deliberately absent from the serialized form.
    """

    name: str
    summary: str
    objects: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    details: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    @property
    def as_expected(self):
        return self.verdicts == self.expected

    def to_dict(self):
        return {
            "name": self.name,
            "summary": self.summary,
            "objects": dict(self.objects),
            "verdicts": dict(self.verdicts),
            "expected": dict(self.expected),
            "as_expected": self.as_expected,
            "details": list(self.details),
        }

    def to_text(self):
        lines = ["== {} ==".format(self.name)]
        if self.objects:
            lines.append("objects:")
            for label, desc in self.objects.items():
                lines.append("  {}: {}".format(label, desc))
        lines.append("verdicts:")
        for label, value in self.verdicts.items():
            want = self.expected.get(label, value)
            suffix = "" if value == want else "  (expected {})".format(want)
            lines.append("  {}: {}{}".format(label, value, suffix))
        for d in self.details:
            lines.append("  - {}".format(d))
        lines.append(self.summary)
        return "\n".join(lines)


def _word(v):
    return "pass" if v else "fail"


def _show(obj):
    """One-line rendering of a finite set or an arrow-category object."""
    if isinstance(obj, Diagram):
        f = obj.mor("u")
        pairs = ", ".join("{}|->{}".format(x, f(x)) for x in sorted(f.dom))
        return "{} -> {}{}".format(
            sorted(obj.ob("a")), sorted(obj.ob("b")),
            " [{}]".format(pairs) if pairs else "")
    return str(sorted(obj))


def run_counterexample_sp():
    """The flagship counterexample: a Van Kampen pushout in the arrow
    category whose graphed image admits two abstract-distinct
    mediating spans to one cocone, so it is not a pushout of spans,
    while the bicolimit property still holds.

    The element labels are a fixed choice; any relabelling giving the
    same shapes tells the same story.
    """
    base = arrow_category()
    nothing = finset.canonical_set(0)
    star = finset.FinSet(["s0"])
    two_star = finset.FinSet(["s0", "s1"])
    circle = finset.FinSet(["c0"])

    src = arrow_object(finset.FinFn(nothing, star, {}))
    foot = arrow_object(finset.FinFn(circle, star, {"c0": "s0"}))
    target = foot
    into_foot = arrow_morphism(src, foot,
                               finset.FinFn(nothing, circle, {}),
                               finset.identity(star))
    apex, left_inj, right_inj = base.pushout(into_foot, into_foot)
    square = vk_square_check(base, into_foot, into_foot, left_inj, right_inj,
                             fiber_bound=2, size_bound=2)

    # the cocone of spans: each foot maps to the target through a
    # carrier with a doubled star, both stars collapsing on each side
    doubled = arrow_object(finset.FinFn(circle, two_star, {"c0": "s0"}))
    collapse = finset.FinFn(two_star, star, {"s0": "s0", "s1": "s0"})
    down = arrow_morphism(doubled, foot, finset.identity(circle), collapse)
    leg = Span(base, down, down)

    # both feet carry the same leg, so the two composites around the
    # square are one and the same span; the equality witnesses are its
    # automorphisms, and there are two of them
    composite = compose_spans(leg, graph(base, into_foot))
    witnesses = abstract_equalities(composite, composite)

    # one mediating span per witness: glue the two composite carriers
    # through the witness, push out, and induce both legs
    _, _, to_carrier = base.chosen_pullback(graph(base, into_foot).right,
                                            leg.left)
    mediators = []
    for phi in witnesses:
        glued, u1, u2 = base.pushout(to_carrier, base.compose(to_carrier, phi))
        into_apex = base.mediator(
            glued, [u1, u2], apex,
            [base.compose(left_inj, leg.left),
             base.compose(right_inj, leg.left)])
        into_target = base.mediator(glued, [u1, u2], target,
                                    [leg.right, leg.right])
        mediators.append(Span(base, into_apex, into_target))

    revalidated = all(
        abstract_equal(compose_spans(h, graph(base, left_inj)), leg)
        is not None
        and abstract_equal(compose_spans(h, graph(base, right_inj)), leg)
        is not None
        for h in mediators)
    distinct = abstract_equal(mediators[0], mediators[1]) is None

    # independent cross-check: sweep every span from the apex to the
    # target with small carriers and count the abstract classes that
    # satisfy both cocone equations
    found = []
    for carrier in base.objects_upto(2):
        for into_a in base.all_morphisms(carrier, apex):
            for into_t in base.all_morphisms(carrier, target):
                h = Span(base, into_a, into_t)
                if abstract_equal(compose_spans(h, graph(base, left_inj)),
                                  leg) is None:
                    continue
                if abstract_equal(compose_spans(h, graph(base, right_inj)),
                                  leg) is None:
                    continue
                if any(abstract_equal(h, h2) is not None for h2 in found):
                    continue
                found.append(h)

    k = pushout_cocone(base, into_foot, into_foot, left_inj, right_inj)
    bicolim = verify_bicolimit_bounded(k, size_bound=2, fiber_bound=2)

    span_pushout_fails = (revalidated and distinct and len(found) >= 2)
    report = ExampleReport(
        name="counterexample",
        summary="VK square in C: pass; pushout in Sp(C): fail "
                "(≥ 2 distinct mediators); bicolimit in Span: pass",
        objects={
            "shared corner": _show(src),
            "feet": _show(foot),
            "pushout apex": _show(apex),
            "cocone target": _show(target),
            "leg carrier": _show(doubled),
        },
        verdicts={
            "vk-square": _word(square.ok),
            "span-pushout": _word(not span_pushout_fails),
            "bicolimit": _word(bicolim.ok),
        },
        expected={"vk-square": "pass", "span-pushout": "fail",
                  "bicolimit": "pass"},
        details=[
            "cocone of spans commutes with {} abstract-equality "
            "witnesses".format(len(witnesses)),
            "diagonal composite has a non-identity automorphism: "
            "{}".format(len(witnesses) > 1),
            "constructed 2 mediating spans, one per witness; both "
            "re-validate against the cocone; abstract-distinct: "
            "{}".format(distinct),
            "exhaustive sweep over carriers of size at most 2 finds "
            "{} abstract classes of mediators".format(len(found)),
        ],
        artifacts={"cocone": k, "leg": leg, "mediators": mediators,
                   "witnesses": witnesses, "search": found,
                   "square": square, "bicolim": bicolim},
    )
    return report


def run_strict_initial():
    """The empty diagram over finite sets: its colimit is the empty
    set, and the cocone is Van Kampen because pulling the unique map
    out of it back along anything yields the empty set again."""
    d = Diagram(empty_shape(), FINSET, {})
    k = colimit(d)
    v = is_vk_bounded(k, size_bound=3, fiber_bound=3)

    probe = finset.canonical_set(3)
    unique = finset.FinFn(k.apex, probe, {})
    walk = finset.FinFn(finset.canonical_set(2, prefix="w"), probe,
                        {"w0": "x1", "w1": "x2"})
    pulled, _, _ = finset.chosen_pullback(unique, walk)
    classes = list(enumerate_cartesian_into(d, 3))

    return ExampleReport(
        name="strict-initial",
        summary="empty-diagram colimit: Van Kampen at bound 3",
        objects={"apex": _show(k.apex)},
        verdicts={"vk": _word(v.ok),
                  "pullback-of-unique-map-empty": _word(len(pulled) == 0),
                  "only-empty-cartesian-inputs": _word(len(classes) == 1)},
        expected={"vk": "pass", "pullback-of-unique-map-empty": "pass",
                  "only-empty-cartesian-inputs": "pass"},
        details=["converse sweep saw {} cartesian class(es)".format(
            len(classes))],
        artifacts={"cocone": k, "verdict": v},
    )


def run_extensive_coproduct(a=None, b=None):
    """A binary coproduct of finite sets, checked three ways: the
    Van Kampen sweeps, the two-square extensivity criterion, and
    preservation of the coproduct by graphing into spans."""
    if a is None:
        a = finset.canonical_set(1, prefix="a")
    if b is None:
        b = finset.canonical_set(1, prefix="b")
    d = Diagram(discrete_shape(2), FINSET, {"0": a, "1": b})
    k = colimit(d)
    vk = is_vk_bounded(k, size_bound=3, fiber_bound=3)
    ext = extensivity_check(FINSET, a, b, bound=3)
    gam = gamma_preserves_coproduct_check(a, b, bound=3)
    return ExampleReport(
        name="extensive-coproduct",
        summary="coproduct {} + {}: extensive and Van Kampen".format(
            sorted(a), sorted(b)),
        objects={"left": _show(a), "right": _show(b), "sum": _show(k.apex)},
        verdicts={"vk": _word(vk.ok), "extensivity": _word(ext.ok),
                  "gamma-preserves-coproduct": _word(gam.ok)},
        expected={"vk": "pass", "extensivity": "pass",
                  "gamma-preserves-coproduct": "pass"},
        artifacts={"cocone": k, "verdicts": (vk, ext, gam)},
    )


def run_kernel_pair(p=None):
    """Descent along a surjection: the kernel-pair cocone is Van
    Kampen on kernel-pair-shaped cartesian inputs."""
    if p is None:
        p = finset.FinFn(finset.canonical_set(4), finset.canonical_set(2),
                         {"x0": "x0", "x1": "x0", "x2": "x1", "x3": "x1"})
    if not finset.is_epi(p):
        raise ValueError("kernel-pair example needs a surjection, got "
                         "{}".format(p))
    v = barr_kock_check(p)
    return ExampleReport(
        name="kernel-pair",
        summary="kernel pair of {} -> {}: descent holds".format(
            sorted(p.dom), sorted(p.cod)),
        objects={"map": "{} -> {}".format(sorted(p.dom), sorted(p.cod))},
        verdicts={"barr-kock": _word(v.ok)},
        expected={"barr-kock": "pass"},
        artifacts={"verdict": v, "map": p},
    )


def run_non_vk_pushout():
    """The smallest failure: the pushout of 1 <- 2 -> 1 in finite
    sets.  Universality holds, the converse sweep finds the twisted
    double cover, and the bicolimit check fails in agreement."""
    one = finset.canonical_set(1)
    two = finset.canonical_set(2)
    bang = finset.FinFn(two, one, {x: "x0" for x in two})
    _, q1, q2 = finset.pushout(bang, bang)
    k = pushout_cocone(FINSET, bang, bang, q1, q2)

    vk = is_vk_bounded(k, size_bound=2, fiber_bound=2)
    uni = universality_check(k, size_bound=2)
    top_is_pushout, fronts_pull_back = (
        vk_instance_check(vk.witness) if not vk.ok else (None, None))
    bicolim = verify_bicolimit_bounded(k, size_bound=2, fiber_bound=2)

    return ExampleReport(
        name="non-vk-pushout",
        summary="pushout of 1 <- 2 -> 1: not Van Kampen, and not a "
                "bicolimit of spans",
        objects={"span": "{} <- {} -> {}".format(
            sorted(one), sorted(two), sorted(one)),
            "apex": _show(k.apex)},
        verdicts={
            "vk": _word(vk.ok),
            "universality-alone": _word(uni.ok),
            "witness-asymmetry": _word(
                top_is_pushout is True and fronts_pull_back is False),
            "bicolimit": _word(bicolim.ok),
        },
        expected={"vk": "fail", "universality-alone": "pass",
                  "witness-asymmetry": "pass", "bicolimit": "fail"},
        details=["witness cube: top face is a pushout ({}), front faces "
                 "pull back ({})".format(top_is_pushout, fronts_pull_back)],
        artifacts={"cocone": k, "vk": vk, "bicolim": bicolim},
    )


GALLERY = {
    "counterexample": run_counterexample_sp,
    "strict-initial": run_strict_initial,
    "extensive-coproduct": run_extensive_coproduct,
    "kernel-pair": run_kernel_pair,
    "non-vk-pushout": run_non_vk_pushout,
}
