import numpy as np
import pytest
import sympy as sp
from numpy.testing import assert_allclose

from iso4d.data.laplace_data import CORRESPONDENCES
from iso4d.errors import PreconditionError, RamifiedTypeError, UnknownSystemError, UnresolvedClusteringError
from iso4d.models.analysis_models import OkuboData
from iso4d.models.symexpr import X


def _okubo_sample():
    return OkuboData(
        T=np.diag([0.0, 1.0]).astype(complex),
        Q=np.eye(2, dtype=complex),
        P=np.diag([1.0, 2.0]).astype(complex),
        S0=np.diag([3.0, -1.0]).astype(complex),
        label="sample",
    )


# ---------- 局部约化 ----------

def test_fuchsian_matrix(spectral, analysis):
    A = sp.Matrix([[1 / X, 0], [0, 2 / (X - 1)]])
    result = analysis.analyze_matrix(A)
    assert result.spectral.eq_multiset(spectral.parse_spectral("11,11,11"))
    assert abs(result.fuchs_sum) < 1e-9


def test_irregular_point_at_infinity(spectral, analysis):
    A = sp.Matrix([[1 + 1 / X, 0], [0, -1 + 2 / X]])
    result = analysis.analyze_matrix(A)
    assert result.spectral.eq_multiset(spectral.parse_spectral("(1)(1),11"))
    at_infinity = result.local_at("∞")
    assert at_infinity.poincare_rank == 1
    assert sorted(round(row[0].real, 9) for row in at_infinity.rows) == [-1.0, 1.0]


def test_laurent_expand_at_infinity(analysis):
    A = sp.Matrix([[1 + 1 / X, 0], [0, -1 + 2 / X]])
    series = analysis.laurent_expand(A, "∞")
    assert series.pole_order == 2
    assert_allclose(series.coefficients[0], np.diag([-1, 1]))
    assert_allclose(series.coefficients[1], np.diag([-1, -2]))


def test_regular_point(analysis):
    A = sp.Matrix([[1 / X, 0], [0, 2 / (X - 1)]])
    assert analysis.laurent_expand(A, 5).regular


def test_no_singular_points(analysis):
    with pytest.raises(PreconditionError):
        analysis.analyze_matrix(sp.zeros(2, 2))


def test_unassigned_symbol(analysis):
    a = sp.Symbol("a")
    with pytest.raises(PreconditionError):
        analysis.analyze_matrix(sp.Matrix([[a / X, 0], [0, 1 / X]]))


def test_ramified_leading_term(analysis):
    with pytest.raises(RamifiedTypeError):
        analysis.analyze_matrix(sp.Matrix([[0, 1], [X, 0]]))


def test_numeric_point_is_deterministic(analysis):
    a = analysis.numeric_point("Gar:5", seed=4)
    b = analysis.numeric_point("Gar:5", seed=4)
    assert a == b


def test_check_problem_quick(analysis):
    report = analysis.check_problem("Gar:11,11,11,11,11", draws=1, seed=3)
    assert report.passed, report.to_dict()
    assert report.spectral == ["11,11,11,11,11"]


@pytest.mark.parametrize("problem_id", ["FS:21,21,111,111", "Ss:31,22,22,1111", "Mat:22,22,22,211"])
def test_check_problem_per_family(analysis, problem_id):
    report = analysis.check_problem(problem_id, draws=1, seed=7)
    assert report.passed, report.to_dict()


def test_ambiguous_clustering_draws_again(analysis, monkeypatch):
    real = analysis.spectral_type_of
    seen = []

    def flaky(problem, params=None, tol=None, seed=None):
        seen.append(params)
        if len(seen) == 1:
            raise UnresolvedClusteringError("间隙落在灰区")
        return real(problem, params, tol, seed)

    monkeypatch.setattr(analysis, "spectral_type_of", flaky)
    report = analysis.check_problem("Gar:11,11,11,11,11", draws=1, seed=3)
    assert report.passed, report.to_dict()
    assert len(seen) == 2
    assert seen[0] != seen[1]


def test_ambiguous_clustering_exhausts_draws(analysis, monkeypatch):
    def always(problem, params=None, tol=None, seed=None):
        raise UnresolvedClusteringError("间隙落在灰区")

    monkeypatch.setattr(analysis, "spectral_type_of", always)
    monkeypatch.setattr(analysis.sampling, "max_resample", 2)
    report = analysis.check_problem("Gar:11,11,11,11,11", draws=1, seed=3)
    assert not report.passed
    assert "连续 3 次取样失败" in report.failures[0]


@pytest.mark.slow
@pytest.mark.parametrize("problem_id", [
    "Gar:(1)(1),11,11,11", "Gar:((1))((1)),11,11", "Gar:((((1))))((((1))))",
    "FS:21,21,111,111", "FS:(2)(1),111,111", "FS:((11))((1)),111",
    "Ss:31,22,22,1111", "Ss:(2)(2),31,1111", "Mat:22,22,22,211", "Mat:(2)(2),22,211",
])
def test_check_problem(analysis, problem_id):
    report = analysis.check_problem(problem_id, draws=2, seed=7)
    assert report.passed, report.to_dict()


# ---------- Okubo 型与 Laplace 变换 ----------

def test_okubo_spectral_type(spectral, analysis):
    result = analysis.okubo_spectral(_okubo_sample())
    assert result.spectral.eq_multiset(spectral.parse_spectral("(1)(1),11,11"))


def test_laplace_rank1_twice_reflects(analysis):
    d = _okubo_sample()
    twice = analysis.laplace_rank1(analysis.laplace_rank1(d))
    assert_allclose(twice.T, -d.T)
    assert_allclose(twice.Q, -d.Q)
    assert_allclose(twice.P, -d.P)
    assert_allclose(twice.S0, -d.S0)


def test_laplace_dual_spectral_type(analysis):
    ok, seen = analysis.check_dual(_okubo_sample(), "(1)(1),11,11")
    assert ok, seen


def test_laplace_dual_keeps_irregular_point_with_large_poles(spectral, analysis):
    # 对偶在 ∞ 处的展开含 25^k 量级的高阶系数，首项 diag(0, 1, 2) 不能被当成零
    d = OkuboData(
        T=np.diag([0.0, 1.0, 2.0]).astype(complex),
        Q=np.array([[1, 1, 1], [1, 2, 3]], dtype=complex),
        P=np.array([[1, 0], [0, 1], [1, 1]], dtype=complex),
        S0=np.diag([25.0, -1.0]).astype(complex),
        label="wide",
    )
    result = analysis.okubo_spectral(analysis.laplace_rank1(d))
    assert result.spectral.eq_multiset(spectral.parse_spectral("(1)(1)(1),21,21")), result.spectral_text
    assert result.local_at("∞").poincare_rank == 1


def test_laplace_rank2_requires_normal_form(analysis):
    d = _okubo_sample()
    with pytest.raises(PreconditionError):
        analysis.laplace_rank2(d)
    d2 = OkuboData(T=d.T, Q=d.Q, P=d.P, S0=d.S0, S1=np.array([[1, 1], [0, 2]], dtype=complex))
    with pytest.raises(PreconditionError):
        analysis.laplace_rank2(d2)
    with pytest.raises(PreconditionError):
        analysis.laplace_rank1(d2)


def test_rank2_shifts(analysis):
    d = _okubo_sample()
    d2 = OkuboData(T=d.T, Q=d.Q, P=d.P, S0=d.S0, S1=np.diag([2.0, 5.0]).astype(complex))
    shifts = sorted(z.real for z in analysis.rank2_shifts(d2))
    assert shifts == pytest.approx([2.0, 5.0])
    normalized = analysis.normalize_rank2(d2, 2.0)
    assert_allclose(np.sort(np.diag(normalized.S1).real), [0.0, 3.0], atol=1e-12)


def test_okubo_shape_validation():
    with pytest.raises(PreconditionError):
        OkuboData(T=np.eye(2), Q=np.eye(3), P=np.eye(2), S0=np.eye(3))


# ---------- 对应表 ----------

def test_correspondence_lookup(analysis):
    c = analysis.get_correspondence("L1")
    assert analysis.get_correspondence(f"{c.left_text} <-> {c.right_text}") is c
    assert analysis.get_correspondence(f"{c.left} ↔ {c.right}") is c
    with pytest.raises(UnknownSystemError):
        analysis.get_correspondence("L99")


def test_laplace_tables(analysis):
    tables = analysis.laplace_tables()
    assert len(tables["correspondences"]) == len(CORRESPONDENCES) == 7
    assert {"correspondences", "remarks", "oshima"} <= set(tables)


def test_correspondence_garnier_quick(analysis):
    verdict = analysis.verify_correspondence("L1", seed=7)
    assert verdict.passed, verdict.to_dict()
    assert set(verdict.computed) == {
        "Gar:(1)(1),11,11,11", "L[Gar:(1)(1),11,11,11]", "FS:(1)(1)(1),21,21", "L[FS:(1)(1)(1),21,21]",
    }


@pytest.mark.slow
@pytest.mark.parametrize("pair_id", [c.pair_id for c in CORRESPONDENCES])
def test_correspondences(analysis, pair_id):
    verdict = analysis.verify_correspondence(pair_id, seed=7)
    assert verdict.passed, verdict.to_dict()
