import io

import numpy as np
import pytest

from iso4d.errors import InvalidInitialPointError, PreconditionError, StepUnderflowError, UnknownSystemError
from iso4d.models.flow_models import COMPLETED, POLE_DETECTED, STEP_UNDERFLOW, FlowSpec, FlowTolerances
from iso4d.models.symexpr import sym


def _p2_spec(**kw):
    return FlowSpec("P:II", (0.5, 0.2), (0.0, 1.0), {"alpha": 0.7}, **kw)


def test_integrate_classical(flows):
    traj = flows.integrate(_p2_spec())
    assert traj.reason == COMPLETED
    assert traj.times[0] == 0.0 and traj.times[-1] == pytest.approx(1.0)
    assert traj.header() == ["t", "q", "p", "H"]
    assert np.all(np.diff(traj.times) > 0)


def test_tighter_tolerance_agrees(flows):
    assert flows.reference_check(_p2_spec()) < 1e-7


def test_empty_span(flows):
    spec = FlowSpec("P:I", (0.1, 0.2), (0.5, 0.5))
    traj = flows.integrate(spec)
    assert traj.completed and len(traj.times) == 1
    np.testing.assert_array_equal(traj.final_state, [0.1, 0.2])


def test_energy_drift_frozen_time(flows):
    result = flows.energy_drift(_p2_spec(), tol=1e-6)
    assert result.passed, result.to_dict()


def test_pole_is_detected(flows):
    spec = FlowSpec("P:I", (1.0, 0.0), (0.0, 2.0))
    traj = flows.integrate(spec, rhs=lambda t, y: np.array([y[0] ** 2, 0.0]))
    assert traj.reason == POLE_DETECTED
    assert 0.99 < traj.times[-1] <= 1.0 + 1e-6
    with pytest.raises(PreconditionError):
        flows.require_completed(traj)


def test_step_floor_stops_integration(flows):
    traj = flows.integrate(_p2_spec(tolerances=FlowTolerances(min_step=0.5)))
    assert traj.reason == STEP_UNDERFLOW
    assert len(traj.times) == 2
    with pytest.raises(StepUnderflowError):
        flows.require_completed(traj)


def test_final_clipped_step_is_not_a_collapse(flows):
    # 末步被终点截短，不算步长下溢
    assert flows._step_collapse(np.array([0.0, 0.4, 0.8, 0.8 + 1e-16]), True, 1e-14) is None
    assert flows._step_collapse(np.array([0.0, 1e-16, 0.8]), True, 1e-14) == 0


def test_initial_point_on_denominator_zero(flows):
    with pytest.raises(InvalidInitialPointError):
        flows.integrate(FlowSpec("P:III_D8", (0.0, 0.5), (1.0, 2.0)))


def test_bad_inputs(flows):
    with pytest.raises(UnknownSystemError):
        flows.flow_system("P:VIII")
    with pytest.raises(PreconditionError):
        flows.integrate(FlowSpec("P:I", (0.1,), (0.0, 1.0)))
    with pytest.raises(PreconditionError):
        flows.integrate(FlowSpec("P:II", (0.1, 0.1), (0.0, 1.0)))


def test_symplectic_flow_map(flows):
    assert flows.symplectic_check(_p2_spec(), 1e-2) < 1e-4


def test_contracting_flow_is_not_symplectic(flows):
    defect = flows.symplectic_check(_p2_spec(), 0.1, rhs=lambda t, y: -y)
    assert defect == pytest.approx(1 - np.exp(-0.2), rel=1e-3)


def test_csv_export(flows, tmp_path):
    traj = flows.integrate(_p2_spec())
    buf = io.StringIO()
    flows.write_csv(traj, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t,q,p,H"
    assert len(lines) == len(traj.times) + 1
    path = flows.export_csv(traj, tmp_path / "out" / "p2.csv")
    assert path.read_text(encoding="utf-8").splitlines()[0] == "t,q,p,H"


# ---------- 四维系统 ----------

def test_standard_spec(flows):
    spec = flows.standard_spec("Gar:5", seed=1)
    assert spec.span == pytest.approx((0.3, 1.3))
    assert spec.params["t2"] == 0.6
    assert "theta_inf_2" not in spec.params
    assert len(spec.initial) == 4
    assert flows.standard_spec("Gar:5", seed=1) == spec


def test_garnier_flows_commute(flows):
    spec = flows.standard_spec("Gar:5", seed=1)
    params = {k: v for k, v in spec.params.items() if k not in ("t1", "t2")}
    result = flows.commutativity_check("Gar:5", params, spec.initial, (0.3, 0.6, 0.1, 0.1))
    assert result.passed, result.to_dict()


def test_perturbed_flows_do_not_commute(flows):
    spec = flows.standard_spec("Gar:5", seed=1)
    params = {k: v for k, v in spec.params.items() if k not in ("t1", "t2")}
    bump = {0: sym("q1") * sym("p2")}
    result = flows.commutativity_check("Gar:5", params, spec.initial, (0.3, 0.6, 0.1, 0.1), perturbation=bump)
    assert not result.inconclusive
    assert not result.passed


def test_commutativity_needs_two_times(flows):
    with pytest.raises(PreconditionError):
        flows.commutativity_check("FS:A5", {}, (0.1, 0.1, 0.1, 0.1), (0.3, 0.6, 0.1, 0.1))


def test_missing_parameter_is_solved_from_fuchs_relation(flows):
    spec = flows.standard_spec("FS:A5", seed=2)
    traj = flows.integrate(spec.with_span(spec.span[0], spec.span[0] + 0.05))
    assert traj.completed


@pytest.mark.slow
@pytest.mark.parametrize("system_id", ["Gar:1+1+1+1+1", "Gar:2+1+1+1", "Gar:3+2", "Gar:4+1"])
def test_commutativity_matrix(flows, system_id):
    spec = flows.standard_spec(system_id)
    params = {k: v for k, v in spec.params.items() if k not in ("t1", "t2")}
    result = flows.commutativity_check(system_id, params, spec.initial, (0.3, 0.6, 0.1, 0.1))
    assert result.passed or result.inconclusive, result.to_dict()


def test_perturbation_key_is_cached_separately(flows):
    spec = flows.standard_spec("Gar:5", seed=1)
    plain = flows.integrate(spec.with_span(0.3, 0.35))
    bumped = flows.integrate(spec.with_span(0.3, 0.35), extra=sym("q1"))
    assert not np.allclose(plain.final_state, bumped.final_state)
