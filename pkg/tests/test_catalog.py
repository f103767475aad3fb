from dataclasses import replace

import pytest
import sympy as sp

from iso4d.data import hamiltonians as ham
from iso4d.errors import ArityError, PreconditionError, UnknownSystemError
from iso4d.models.symexpr import RationalExpr, differentiate, sym, total_derivative
from iso4d.services.catalog_service import RESTRICTED_ID

q, p, t = ham.q, ham.p, ham.t
alpha = ham.alpha

TWO_TIME = [
    "Gar:1+1+1+1+1", "Gar:2+1+1+1", "Gar:3+1+1", "Gar:2+2+1", "Gar:3+2",
    "Gar:4+1", "Gar:5", "Gar:3/2+1+1+1", "Gar:5/2+1+1",
]


def _second_derivative(H):
    rates = {q: differentiate(H, p), p: -differentiate(H, q)}
    qdot = rates[q]
    return total_derivative(qdot, t, rates)


# ---------- 经典哈密顿量 ----------

def test_painleve_one_equation(catalog):
    H = catalog.classical_hamiltonian("I", [], t, q, p)
    # q'' = 6q² + 2t
    assert (_second_derivative(H) - RationalExpr.of(6 * q**2 + 2 * t)).is_zero()


def test_painleve_two_equation(catalog):
    H = catalog.classical_hamiltonian("II", [alpha], t, q, p)
    assert (_second_derivative(H) - RationalExpr.of(2 * q**3 + 2 * t * q + 2 * alpha - 1)).is_zero()


def test_classical_hamiltonian_errors(catalog):
    with pytest.raises(UnknownSystemError):
        catalog.classical_hamiltonian("VII", [], t, q, p)
    with pytest.raises(ArityError):
        catalog.classical_hamiltonian("VI", [alpha], t, q, p)


def test_tilde_v_chart_is_canonical(catalog):
    result = catalog.tilde_v_map()
    assert result["canonical"]
    assert set(result["map"]) == {"q", "p"}


# ---------- 目录 ----------

def test_list_systems(catalog):
    ids = catalog.list_systems()
    assert len(ids) == 22
    assert RESTRICTED_ID not in ids
    assert catalog.list_systems(include_auxiliary=True)[-1] == RESTRICTED_ID


def test_unknown_system(catalog):
    with pytest.raises(UnknownSystemError):
        catalog.get_system("Gar:6")


def test_system_record(catalog):
    s = catalog.get_system("Gar:5")
    assert s.two_time
    assert s.family == "Garnier"
    assert s.pairs == [(ham.q1, ham.p1), (ham.q2, ham.p2)]
    data = s.to_dict()
    assert set(data["hamiltonians"]) == {"t1", "t2"}
    assert data["linear_problem"] == "Gar:((((1))))((((1))))"
    assert catalog.get_system("Gar:5") is s


def test_one_time_system(catalog):
    s = catalog.get_system("FS:A5")
    assert not s.two_time
    assert s.pattern_text == "1+1+1+1"
    with pytest.raises(PreconditionError):
        catalog.vector_field(s, time_index=1)
    with pytest.raises(PreconditionError):
        catalog.integrability_identity(s)


def test_vector_field_is_hamiltonian(catalog):
    s = catalog.get_system("Gar:5")
    field = catalog.vector_field(s)
    H = s.hamiltonians[0]
    assert field[ham.q1] == differentiate(H, ham.p1)
    assert field[ham.p2] == -differentiate(H, ham.q2)


def test_restricted_system(catalog):
    s = catalog.get_system(RESTRICTED_ID)
    assert s.linear_problem is None
    assert s.spectral_text == "(1)(1)(1),21,21"
    assert catalog.fs_restriction_hamiltonian() == s.hamiltonians[0]


# ---------- 典则性与可积性 ----------

def test_chart_canonicity_examples(catalog):
    pairs = [(q, p)]
    assert catalog.chart_canonicity({q: p, p: -q}, pairs)
    assert not catalog.chart_canonicity({q: 2 * q}, pairs)
    assert catalog.chart_canonicity({q: 1 / q, p: -q**2 * p}, pairs)


def test_integrability_identity_quick(catalog):
    report = catalog.integrability_identity("Gar:5")
    assert report.holds, report.to_dict()


@pytest.mark.slow
@pytest.mark.parametrize("system_id", TWO_TIME)
def test_integrability_identity(catalog, system_id):
    report = catalog.integrability_identity(system_id)
    assert report.holds, report.to_dict()


def test_integrability_detects_broken_hamiltonian(catalog):
    s = catalog.get_system("Gar:5")
    broken = replace(s, hamiltonians=(s.hamiltonians[0] + RationalExpr.of(ham.q1 * ham.p2), s.hamiltonians[1]))
    report = catalog.integrability_identity(broken)
    assert not report.holds


# ---------- 希腊字母形式 ----------

def test_greek_consistency_quick(catalog):
    assert catalog.greek_consistency("Gar:5").passed


@pytest.mark.parametrize("system_id", ["Gar:1+1+1+1+1", "Ss:D6"])
def test_greek_consistency_corrected_forms(catalog, system_id):
    check = catalog.greek_consistency(system_id)
    assert check.matches and all(check.matches), check.to_dict()


def test_greek_hamiltonian_parameters(catalog):
    (H,) = catalog.greek_hamiltonian("Ss:D6")
    assert {ham.alpha, ham.gamma, ham.zeta} <= H.free_symbols
    assert len(catalog.greek_hamiltonian("Gar:1+1+1+1+1")) == 2
    with pytest.raises(UnknownSystemError):
        catalog.greek_hamiltonian("Gar:6")


@pytest.mark.slow
@pytest.mark.parametrize("system_id", ham.GREEK_SYSTEMS)
def test_greek_consistency(catalog, system_id):
    check = catalog.greek_consistency(system_id)
    assert check.passed, check.to_dict()


@pytest.mark.slow
@pytest.mark.parametrize("system_id", ham.GREEK_SYSTEMS)
def test_fuchs_relation_matches_scheme(catalog, system_id):
    assert catalog.fuchs_check(system_id)


# ---------- 矩阵 Painlevé ----------

def test_matrix_chart_commutator(catalog):
    chart = catalog.matrix_chart("Mat:VI")
    assert chart.commutator_defect().is_zero_matrix


def test_matrix_chart_rejects_scalar_system(catalog):
    with pytest.raises(PreconditionError):
        catalog.matrix_chart("Gar:5")
    with pytest.raises(PreconditionError):
        catalog.matrix_expand("FS:A5")


def test_matrix_expand_is_canonical_polynomial(catalog):
    H = catalog.matrix_expand("Mat:II")
    assert {ham.q1, ham.p1, ham.q2, ham.p2} <= H.free_symbols


# ---------- 对称形式 ----------

def test_ny_map(catalog):
    f = [sym(f"f_{i}") for i in range(5)]
    nymap = catalog.ny_map(f, "A4")
    assert nymap.variables[ham.q1] == -f[1]
    assert nymap.variables[ham.q2] == -f[1] - f[3]
    assert nymap.variables[ham.p2] == f[4]
    assert nymap.parameters[ham.alpha] == -sym("alpha_1")


def test_ny_map_arity(catalog):
    with pytest.raises(ArityError):
        catalog.ny_map([sym("f_0")], "A5")
    with pytest.raises(UnknownSystemError):
        catalog.ny_map([], "A6")


def test_ny_equations_sum(catalog):
    f = [sym(f"f_{i}") for i in range(5)]
    a = [sym(f"alpha_{i}") for i in range(5)]
    # Σf' = Σα
    total = sp.expand(sum(catalog.ny_equations("A4", f, a)))
    assert sp.expand(total - sum(a)) == 0
