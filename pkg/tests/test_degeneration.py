from dataclasses import replace

import pytest

from iso4d.data.degeneration_rules import RULES
from iso4d.errors import PreconditionError, UnknownSystemError
from iso4d.models.symexpr import sym

SIMPLE_RULE = "Gar:(1)(1),11,11,11 -> Gar:(1)(1),(1)(1),11"


def test_rule_counts(degeneration_service):
    assert len(degeneration_service.list_rules()) == 40
    with_data = degeneration_service.list_rules(include_no_data=False)
    assert len(with_data) == 35
    counts = {f: len(degeneration_service.list_rules(False, f)) for f in ("Garnier", "FS", "Sasano", "Matrix")}
    assert counts == {"Garnier": 9, "FS": 9, "Sasano": 7, "Matrix": 10}


def test_rule_ids_are_unique():
    ids = [r.rule_id for r in RULES]
    assert len(ids) == len(set(ids))


def test_graph_consistency(degeneration_service):
    report = degeneration_service.graph_consistency()
    assert report.consistent, report.to_dict()
    assert report.rules == 35 and report.no_data == 5


def test_get_rule_by_system_ids(degeneration_service):
    rule = degeneration_service.get_rule("Gar:4+1", "Gar:5")
    assert rule.rule_id == "Gar:(((1)))(((1))),11 -> Gar:((((1))))((((1))))"
    assert degeneration_service.get_rule(rule.rule_id) is rule


def test_unknown_rule(degeneration_service):
    with pytest.raises(UnknownSystemError):
        degeneration_service.get_rule("Gar:5", "Gar:4+1")
    with pytest.raises(UnknownSystemError):
        degeneration_service.get_rule("no arrow here")


def test_rule_without_data_cannot_be_verified(degeneration_service):
    rule = next(r for r in degeneration_service.list_rules(family="FS") if not r.has_data)
    with pytest.raises(PreconditionError):
        degeneration_service.verify_limit(rule)


def test_rule_to_dict(degeneration_service):
    data = degeneration_service.get_rule(SIMPLE_RULE).to_dict()
    assert data["family"] == "Garnier"
    assert data["epsilon"] == "eps"
    assert set(data["variables"]) == {"q2", "p2"}
    assert data["coefficients"] == [["1", "0"], ["0", "(1)/(eps)"]]


def test_simple_rule_limit(degeneration_service):
    verdict = degeneration_service.verify_limit(SIMPLE_RULE, samples=1, seed=3)
    assert verdict.passed, verdict.to_dict()
    assert verdict.mode == "sampled"


def test_simple_rule_is_canonical(degeneration_service):
    report = degeneration_service.canonicity_check(SIMPLE_RULE)
    assert report.symplectic and report.scale_constant
    assert report.exact_match
    assert report.passed


def test_perturbed_rule_fails(degeneration_service):
    rule = degeneration_service.get_rule(SIMPLE_RULE)
    p2 = sym("p2")
    broken = replace(rule, variables={**rule.variables, p2: rule.variables[p2] + 1})
    verdict = degeneration_service.verify_limit(broken, samples=1, seed=3)
    assert not verdict.passed
    assert verdict.to_dict()["failures"]


def test_matrix_rule_text(degeneration_service):
    rule = degeneration_service.list_rules(family="Matrix")[0]
    assert rule.is_matrix
    assert set(rule.matrix_text()) >= {"Q", "P"}


REPRESENTATIVES = [
    "Gar:((1))((1)),11,11 -> Gar:((1))((1)),(1)(1)",
    "FS:21,21,111,111 -> FS:(2)(1),111,111",
    "FS:(2)(1),(1)(1)(1) -> FS:(((1)(1)))(((1)))",
    "Ss:(111)(1),22,22 -> Ss:(2)(2),(111)(1)",
    "Mat:(2)(2),22,211 -> Mat:(2)(2),(2)(11)",
]


@pytest.mark.parametrize("rule_id", REPRESENTATIVES)
def test_representative_rule_limits(degeneration_service, rule_id):
    verdict = degeneration_service.verify_limit(rule_id, samples=1, seed=7)
    assert verdict.passed, verdict.to_dict()


def test_time_dependent_map_needs_remainder(degeneration_service):
    rule = degeneration_service.get_rule(REPRESENTATIVES[0])
    assert rule.notes
    verdict = degeneration_service.verify_limit(replace(rule, remainder=(0, 0)), samples=1, seed=7)
    assert not verdict.passed
    # 缺少的余项是 O(1) 的 −q1p1/t1，不产生极点
    assert verdict.max_pole_order == 0


def test_canonical_denominator_constants_are_stripped(degeneration_service):
    # q2 的代换把典则变量带进分母，ε⁻⁶ 阶只剩常数
    verdict = degeneration_service.verify_limit("Gar:4+1 -> Gar:5", samples=1, seed=7)
    assert verdict.passed, verdict.to_dict()


def test_apply_rule_orders_by_target_times(degeneration_service):
    candidates = degeneration_service.apply_rule(SIMPLE_RULE)
    assert len(candidates) == 2
    assert sym("eps") in candidates[1].free_symbols


@pytest.mark.slow
@pytest.mark.parametrize("rule_id", [r.rule_id for r in RULES if r.has_data])
def test_every_rule_limit(degeneration_service, rule_id):
    verdict = degeneration_service.verify_limit(rule_id, samples=2, seed=7)
    assert verdict.passed, verdict.to_dict()


@pytest.mark.slow
@pytest.mark.parametrize("rule_id", [r.rule_id for r in RULES if r.has_data and r.family == "Garnier"])
def test_garnier_rules_symbolic(degeneration_service, rule_id):
    verdict = degeneration_service.verify_limit(rule_id, symbolic=True)
    assert verdict.passed, verdict.to_dict()
