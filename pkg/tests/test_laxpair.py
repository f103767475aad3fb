import pytest
import sympy as sp

from iso4d.errors import PreconditionError, UnknownSystemError
from iso4d.models.symexpr import sym

GAR_5 = "Gar:((((1))))((((1))))"
q1, p1 = sym("q1"), sym("p1")


def test_registry(lax_service):
    ids = lax_service.list_linear_problems()
    assert len(ids) == 29
    assert len(set(ids)) == len(ids)
    for alias, target in lax_service.aliases().items():
        assert alias.endswith("-lin")
        assert target in ids


def test_resolve_id(lax_service):
    assert lax_service.resolve_id(GAR_5) == GAR_5
    assert lax_service.resolve_id("Gar:5-lin") == GAR_5
    assert lax_service.resolve_id("Gar:5") == GAR_5
    assert lax_service.resolve_id("NY:A4") == "FS:((11))((1)),111"
    with pytest.raises(UnknownSystemError):
        lax_service.resolve_id("Gar:6")


def test_build_lax_shape(lax_service):
    problem = lax_service.build_lax("Gar:5")
    assert problem.size == 2
    assert [s.name for s in problem.times] == ["t1", "t2"]
    points = problem.singular_points()
    assert [(pt.label, pt.order) for pt in points] == [("∞", 5)]
    assert points[0].poincare_rank == 4


def test_matrix_problem_size(lax_service):
    assert lax_service.build_lax("Mat:VI").size == 4
    assert lax_service.build_lax("FS:A5").size == 3


def test_compatibility_gar5(lax_service):
    reports = lax_service.check_compatibility("Gar:5", samples=2, seed=1)
    assert len(reports) == 4
    assert all(r.zero for r in reports), [r.to_dict() for r in reports if not r.zero]


def test_cross_compatibility_gar5(lax_service):
    reports = lax_service.check_cross("Gar:5", samples=1, seed=1)
    assert all(r.zero for r in reports)


def test_cross_needs_two_times(lax_service):
    with pytest.raises(PreconditionError):
        lax_service.cross_compatibility("FS:A5")


def test_perturbed_hamiltonian_breaks_compatibility(lax_service):
    report = lax_service.isomonodromy_residual("Gar:5", "t1", perturbation=q1, seed=3)
    assert not report.zero
    assert report.offending


def test_residual_is_seed_deterministic(lax_service):
    a = lax_service.isomonodromy_residual("Gar:5", 1, seed=11)
    b = lax_service.isomonodromy_residual("Gar:5", 1, seed=11)
    assert a.sample == b.sample and a.zero == b.zero


def test_explicit_sample_must_be_complete(lax_service):
    with pytest.raises(PreconditionError):
        lax_service.isomonodromy_residual("Gar:5", sample={"q1": 1})


def test_unknown_time(lax_service):
    with pytest.raises(PreconditionError):
        lax_service.isomonodromy_residual("Gar:5", "t3")
    with pytest.raises(PreconditionError):
        lax_service.isomonodromy_residual("Gar:5", 2)


def test_symbolic_residual_gar5(lax_service):
    for time in ("t1", "t2"):
        report = lax_service.symbolic_residual("Gar:5", time)
        assert report.zero, report.offending


def test_symbolic_mode_is_for_two_by_two(lax_service):
    with pytest.raises(PreconditionError):
        lax_service.symbolic_residual("FS:A5")


def test_gauge_covariance(lax_service):
    assert lax_service.gauge_covariance_check("Gar:5", seed=5)
    assert lax_service.gauge_covariance_check("Gar:5", perturbation=q1 * p1, seed=5)


def test_residue_exponents_gar5(lax_service):
    report = lax_service.residue_exponents_check("Gar:5", samples=1, seed=2)
    assert report.passed, report.failures


def test_fuchs_solution_eliminates_parameter(lax_service):
    problem = lax_service.build_lax("Gar:5")
    assert sp.expand(problem.fuchs.xreplace({problem.eliminate: problem.fuchs_solution})) == 0


@pytest.mark.slow
@pytest.mark.parametrize("problem_id", [
    "Gar:11,11,11,11,11", "Gar:(1)(1),11,11,11", "Gar:((1))((1)),11,11", "Gar:(1)(1),(1)(1),11",
    "Gar:((1))((1)),(1)(1)", "Gar:(((1)))(((1))),11", GAR_5,
    "FS:21,21,111,111", "FS:(2)(1),111,111", "FS:(11)(1),21,111", "FS:(1)(1)(1),21,21",
    "FS:((11))((1)),111", "FS:((1)(1))((1)),21", "FS:(11)(1),(11)(1)", "FS:(2)(1),(1)(1)(1)",
    "FS:(((1)(1)))(((1)))",
    "Ss:31,22,22,1111", "Ss:(2)(2),31,1111", "Ss:(11)(11),31,22", "Ss:(111)(1),22,22",
    "Ss:((11))((11)),31", "Ss:(2)(2),(111)(1)",
    "Mat:22,22,22,211", "Mat:(2)(2),22,211", "Mat:(2)(11),22,22", "Mat:((2))((2)),211",
    "Mat:((2))((11)),22", "Mat:(2)(2),(2)(11)", "Mat:(((2)))(((11)))",
])
def test_compatibility_matrix(lax_service, problem_id):
    reports = lax_service.check_compatibility(problem_id, samples=2, seed=7)
    assert all(r.zero for r in reports), [r.to_dict() for r in reports if not r.zero]
    exponents = lax_service.residue_exponents_check(problem_id, samples=1, seed=7)
    assert exponents.passed, exponents.failures


def test_residue_exponents_fuchsian_garnier(lax_service):
    # 留数特征值与图式逐点相等时必须判为通过
    report = lax_service.residue_exponents_check("Gar:11,11,11,11,11", samples=1, seed=7)
    assert report.passed, report.failures


@pytest.mark.parametrize("problem_id", [
    "Gar:(1)(1),11,11,11", "FS:21,21,111,111", "Ss:(2)(2),(111)(1)", "Mat:(2)(2),22,211",
])
def test_compatibility_per_family(lax_service, problem_id):
    reports = lax_service.check_compatibility(problem_id, samples=1, seed=7)
    assert all(r.zero for r in reports), [r.to_dict() for r in reports if not r.zero]
    exponents = lax_service.residue_exponents_check(problem_id, samples=1, seed=7)
    assert exponents.passed, exponents.failures
