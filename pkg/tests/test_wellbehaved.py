from llfp.predicates import PredicateQuery
from llfp.predicates.wellbehaved import (
    Sample,
    closed_sampler,
    generated_sampler,
    light_sampler,
    sqrt_sampler,
    well_behaved_suite,
)
from llfp.surface import parse_context, parse_family, parse_object
from llfp.syntax import Mode
from support import corpus_signature

EAL = corpus_signature("eal/signature.llfp")
SQRT = corpus_signature("sqrt/signature.llfp")


def _assert_clean(report):
    assert report.ok, "\n".join(map(str, report.counterexamples[:5] + report.ill_typed[:5]))
    assert report.skipped == 0
    for item in ("1a", "1b", "2"):
        assert report.checked[item] > 0, item


def test_true_is_well_behaved_on_generated_judgements():
    for mode in Mode:
        _assert_clean(well_behaved_suite("True", generated_sampler(40, seed=3, mode=mode)))


def test_light_is_well_behaved():
    _assert_clean(well_behaved_suite("Light", light_sampler(EAL, 120, seed=1)))


def test_closed_is_well_behaved():
    _assert_clean(well_behaved_suite("Closed", closed_sampler(EAL, 120, seed=2)))


def test_sqrt_is_well_behaved():
    _assert_clean(well_behaved_suite("SQRT", sqrt_sampler(SQRT, 80, seed=4)))


def test_even_context_is_caught_by_weakening():
    report = well_behaved_suite("EvenContext", generated_sampler(40, seed=5))
    assert "1b" in report.failed_items()
    assert not report.ok
    assert report.ill_typed == []


def test_suite_reports_each_case():
    report = well_behaved_suite("False", generated_sampler(3))
    assert report.samples == 3 and report.skipped == 3
    assert sum(report.checked.values()) == 0
    assert "3 sample(s), 3 skipped" in str(report)


def test_light_outside_adequacy_format_is_not_closed_under_substitution():
    # substituting a duplicating function for a function-typed hypothesis
    ctx = parse_context("A : o, g : T A -> T A")
    sc = set(ctx.names())
    subject = parse_object("\\u : T A . g u", scope=sc)
    q = PredicateQuery("Light", EAL, ctx, subject, parse_family("T A -> T A", scope=sc))
    dup = parse_object("\\w : T A . c_appl A A w (c_appl A (lolli A A) w f)", scope=sc | {"f"})
    ctx_f = parse_context("A : o, f : T (lolli A (lolli A A)), g : T A -> T A")
    q = q.replace(ctx=ctx_f)
    report = well_behaved_suite("Light", [Sample(q, substitutions=(("g", dup),))])
    assert report.failed_items() == {"2"}
