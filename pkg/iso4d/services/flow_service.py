"""
哈密顿系统的数值积分与动力学性质检验

积分器为 scipy 的 Dormand–Prince 5(4) 嵌入式 Runge–Kutta（RK45），
状态范数越过 pole_norm 时作为可动极点终止。
"""
import csv
import logging
import random
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
import sympy as sp
from scipy.integrate import solve_ivp

from ..config.toolkit_config import ToolkitConfig
from ..data import hamiltonians as ham
from ..errors import InvalidInitialPointError, PreconditionError, StepUnderflowError, UnknownSystemError
from ..models.flow_models import (
    COMPLETED,
    POLE_DETECTED,
    STEP_UNDERFLOW,
    CommutativityResult,
    DriftResult,
    FlowSpec,
    FlowTolerances,
    Trajectory,
)
from ..models.symexpr import RationalExpr, differentiate
from .catalog_service import CatalogService, get_catalog_service
from .sampling import task_seed

CLASSICAL_PREFIX = "P:"

Rhs = Callable[[float, np.ndarray], np.ndarray]


@dataclass
class _FlowSystem:
    """积分所需的符号数据（四维系统或经典 Painlevé 方程）"""
    system_id: str
    times: Tuple[sp.Symbol, ...]
    canonical: Tuple[sp.Symbol, ...]
    hamiltonians: Tuple[RationalExpr, ...]
    fuchs_relation: Optional[sp.Expr]
    params: Tuple[sp.Symbol, ...] = ()


@dataclass
class _Compiled:
    """某个时间方向上 lambdify 后的向量场"""
    time: sp.Symbol
    symbols: Tuple[sp.Symbol, ...]
    field: Callable
    energy: Callable
    denominators: Callable


def _omega(n: int) -> np.ndarray:
    """(q1, p1, q2, p2, …) 顺序下的辛矩阵"""
    out = np.zeros((n, n))
    for k in range(0, n, 2):
        out[k, k + 1] = 1.0
        out[k + 1, k] = -1.0
    return out


class FlowService:
    """数值积分与交换性、辛性、能量守恒检验"""

    def __init__(self, catalog: Optional[CatalogService] = None, tolerances: Optional[FlowTolerances] = None):
        self.logger = logging.getLogger(__name__)
        self.catalog = catalog or get_catalog_service()
        self.tolerances = tolerances or ToolkitConfig.get_flow_config()
        self._compiled: Dict[Tuple[str, int, str], _Compiled] = {}
        self._lock = threading.Lock()

    # ---------- 符号数据 ----------

    def flow_system(self, system_id: str) -> _FlowSystem:
        """P:<kind> 指经典 Painlevé 哈密顿量，其余编号取自目录"""
        if system_id.startswith(CLASSICAL_PREFIX):
            kind = system_id[len(CLASSICAL_PREFIX):]
            if kind not in ham.CLASSICAL:
                raise UnknownSystemError(system_id, kind="经典哈密顿量")
            H = self.catalog.classical_hamiltonian(kind, ham.CLASSICAL_PARAMS[kind], ham.t, ham.q, ham.p)
            return _FlowSystem(system_id, (ham.t,), (ham.q, ham.p), (H,), None, tuple(ham.CLASSICAL_PARAMS[kind]))
        system = self.catalog.get_system(system_id)
        return _FlowSystem(system.system_id, system.times, system.canonical, system.hamiltonians,
                           system.params.fuchs_relation, tuple(system.params.names))

    def _compile(self, system_id: str, time_index: int, extra: Optional[sp.Expr] = None) -> _Compiled:
        key = (system_id, time_index, sp.srepr(extra) if extra is not None else "")
        with self._lock:
            cached = self._compiled.get(key)
        if cached is not None:
            return cached
        s = self.flow_system(system_id)
        if not 0 <= time_index < len(s.times):
            raise PreconditionError(f"{system_id} 只有 {len(s.times)} 个时间变量")
        H = s.hamiltonians[time_index]
        if extra is not None:
            H = H + extra
        field = []
        for k in range(0, len(s.canonical), 2):
            q, p = s.canonical[k], s.canonical[k + 1]
            field += [differentiate(H, p), -differentiate(H, q)]
        time = s.times[time_index]
        free = set(H.free_symbols)
        for f in field:
            free |= f.free_symbols
        symbols = tuple(sorted(free - set(s.canonical) - {time}, key=lambda x: x.name))
        args = (time, *s.canonical, *symbols)
        compiled = _Compiled(
            time=time,
            symbols=symbols,
            field=sp.lambdify(args, [f.expr for f in field], modules="numpy"),
            energy=sp.lambdify(args, H.expr, modules="numpy"),
            denominators=sp.lambdify(args, [f.den for f in field] + [H.den], modules="numpy"),
        )
        with self._lock:
            self._compiled.setdefault(key, compiled)
        self.logger.debug(f"编译 {system_id} 第 {time_index} 个时间方向的向量场")
        return compiled

    def _parameter_values(self, system_id: str, compiled: _Compiled, params: Dict[str, float]) -> List[float]:
        values = {k: float(v) for k, v in params.items()}
        missing = [s for s in compiled.symbols if s.name not in values]
        relation = self.flow_system(system_id).fuchs_relation
        if len(missing) == 1 and relation is not None and missing[0] in relation.free_symbols:
            solved = sp.solve(sp.Eq(relation, 0), missing[0])
            if solved:
                subs = {s: values[s.name] for s in relation.free_symbols if s.name in values}
                values[missing[0].name] = float(sp.sympify(solved[0]).xreplace(subs))
                missing = []
        if missing:
            raise PreconditionError(f"{system_id} 缺少参数取值: {', '.join(s.name for s in missing)}")
        return [values[s.name] for s in compiled.symbols]

    def standard_spec(
        self,
        system_id: str,
        seed: Optional[int] = None,
        span_length: float = 1.0,
        time_index: int = 0,
    ) -> FlowSpec:
        """
        固定的一般位置设定：时间取 0.3（第二个时间 0.6），参数在 [0.5, 1.5] 内按种子抽取，
        Fuchs 关系消去的参数留给积分时求解
        """
        s = self.flow_system(system_id)
        base = ToolkitConfig.SEED if seed is None else seed
        rng = random.Random(task_seed(base, system_id, "flow"))
        starts = (0.3, 0.6)
        params: Dict[str, float] = {}
        skipped = None
        if s.fuchs_relation is not None:
            related = [p for p in s.params if p in s.fuchs_relation.free_symbols]
            skipped = related[-1] if related else None
        for p in s.params:
            if p != skipped:
                params[p.name] = round(rng.uniform(0.5, 1.5), 4)
        for k, time in enumerate(s.times):
            if k != time_index:
                params[time.name] = starts[k]
        base_point = (0.45, 0.25, 0.75, 0.35)
        initial = tuple(round(base_point[k] + rng.uniform(-0.05, 0.05), 4) for k in range(len(s.canonical)))
        t0 = starts[time_index]
        return FlowSpec(system_id, initial, (t0, t0 + span_length), params, time_index, self.tolerances)

    # ---------- 积分 ----------

    def _check_initial(self, spec: FlowSpec, compiled: _Compiled, values: List[float]) -> None:
        y0 = np.asarray(spec.initial, dtype=float)
        dens = np.asarray(compiled.denominators(spec.span[0], *y0, *values), dtype=float)
        scale = max(1.0, float(np.max(np.abs(y0))) if y0.size else 1.0)
        if np.any(~np.isfinite(dens)) or np.any(np.abs(dens) <= 1e-14 * scale):
            raise InvalidInitialPointError(f"{spec.system_id} 的初始点 {tuple(spec.initial)} 落在向量场分母零点上")

    def _rhs(self, spec: FlowSpec, compiled: _Compiled, values: List[float]) -> Rhs:
        t_frozen = spec.span[0]

        def rhs(t, y):
            tt = t_frozen if spec.frozen else t
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                return np.asarray(compiled.field(tt, *y, *values), dtype=float)

        return rhs

    def integrate(
        self,
        spec: FlowSpec,
        extra: Optional[sp.Expr] = None,
        rhs: Optional[Rhs] = None,
    ) -> Trajectory:
        """
        自适应 RK45 积分。终止原因：completed、pole-detected（状态范数越界或向量场发散）、
        step-underflow（已接受的步长低于 min_step·max(1, |t0|, |t1|) 而状态仍有限）
        """
        s = self.flow_system(spec.system_id)
        n = len(s.canonical)
        if len(spec.initial) != n:
            raise PreconditionError(f"{spec.system_id} 的初始点应有 {n} 个分量，实际 {len(spec.initial)} 个")
        compiled = self._compile(spec.system_id, spec.time_index, extra)
        values = self._parameter_values(spec.system_id, compiled, spec.params)
        if rhs is None:
            self._check_initial(spec, compiled, values)
            rhs = self._rhs(spec, compiled, values)
        tol = spec.tolerances
        t0, t1 = float(spec.span[0]), float(spec.span[1])
        y0 = np.asarray(spec.initial, dtype=float)
        names = tuple(v.name for v in s.canonical)

        def energy(t, y):
            tt = t0 if spec.frozen else t
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                return float(compiled.energy(tt, *y, *values))

        if t0 == t1:
            return Trajectory(spec.system_id, names, np.array([t0]), y0[None, :], np.array([energy(t0, y0)]))

        def pole_event(t, y):
            return tol.pole_norm - float(np.linalg.norm(y))

        pole_event.terminal = True
        pole_event.direction = -1

        sol = solve_ivp(rhs, (t0, t1), y0, method="RK45", rtol=tol.rtol, atol=tol.atol, events=pole_event)
        states = sol.y.T
        finite = np.all(np.isfinite(states), axis=1)
        if not np.all(finite):
            cut = int(np.argmin(finite))
            states, times = states[:cut], sol.t[:cut]
        else:
            times = sol.t
        reached = sol.status == 0 and bool(np.all(finite))
        collapse = self._step_collapse(times, reached, tol.min_step * max(1.0, abs(t0), abs(t1)))
        if collapse is not None:
            times, states = times[: collapse + 2], states[: collapse + 2]
        reason = COMPLETED
        if sol.status == 1:
            reason = POLE_DETECTED
        elif sol.status == -1 or not np.all(finite) or collapse is not None:
            last = float(np.linalg.norm(states[-1])) if len(states) else np.inf
            reason = POLE_DETECTED if (not np.all(finite) or last > np.sqrt(tol.pole_norm)) else STEP_UNDERFLOW
        traj = Trajectory(
            system_id=spec.system_id,
            variables=names,
            times=times,
            states=states,
            energies=np.array([energy(t, y) for t, y in zip(times, states)]),
            reason=reason,
            nfev=int(sol.nfev),
            message=str(sol.message),
        )
        if reason == COMPLETED:
            self.logger.debug(f"✅ {spec.system_id} 积分完成：{len(times) - 1} 步，{sol.nfev} 次求值")
        else:
            self.logger.warning(f"⚠️ {spec.system_id} 在 t={times[-1]:.6g} 处终止：{reason}")
        return traj

    @staticmethod
    def _step_collapse(times: np.ndarray, reached: bool, floor: float) -> Optional[int]:
        """第一个低于 floor 的已接受步的下标；走完全程时末步可以被终点截短，不计入"""
        steps = np.abs(np.diff(times))
        if reached:
            steps = steps[:-1]
        below = np.flatnonzero(steps < floor)
        return int(below[0]) if len(below) else None

    def require_completed(self, traj: Trajectory) -> np.ndarray:
        """积分必须走完全程；步长下溢抛出 StepUnderflowError"""
        if traj.reason == STEP_UNDERFLOW:
            raise StepUnderflowError(f"{traj.system_id} 在 t={traj.times[-1]:.6g} 处步长低于 {self.tolerances.min_step}")
        if traj.reason != COMPLETED:
            raise PreconditionError(f"{traj.system_id} 在 t={traj.times[-1]:.6g} 处遇到极点")
        return traj.final_state

    def reference_check(self, spec: FlowSpec, factor: float = 0.01) -> float:
        """与容差缩小 factor 倍的参考解比较终点"""
        coarse = self.require_completed(self.integrate(spec))
        fine_spec = FlowSpec(spec.system_id, spec.initial, spec.span, dict(spec.params), spec.time_index,
                             spec.tolerances.scaled(factor), spec.frozen)
        fine = self.require_completed(self.integrate(fine_spec))
        return float(np.max(np.abs(coarse - fine)))

    # ---------- 动力学性质 ----------

    def energy_drift(self, spec: FlowSpec, tol: Optional[float] = None) -> DriftResult:
        """冻结时间后的自治系统：|H(终点) − H(起点)| 及单位时间漂移"""
        frozen = FlowSpec(spec.system_id, spec.initial, spec.span, dict(spec.params), spec.time_index,
                          spec.tolerances, frozen=True)
        traj = self.integrate(frozen)
        drift = float(abs(traj.energies[-1] - traj.energies[0]))
        length = abs(traj.times[-1] - traj.times[0]) or 1.0
        return DriftResult(spec.system_id, drift, drift / length, traj.reason, tol)

    def commutativity_check(
        self,
        system_id: str,
        params: Dict[str, float],
        initial: Sequence[float],
        rectangle: Tuple[float, float, float, float],
        tol: float = 1e-6,
        tolerances: Optional[FlowTolerances] = None,
        perturbation: Optional[Dict[int, sp.Expr]] = None,
    ) -> CommutativityResult:
        """
        rectangle = (t1_0, t2_0, Δt1, Δt2)。先走 t1 再走 t2，与先走 t2 再走 t1 的终点之差；
        任一路径遇到极点时结论为无法判定
        """
        s = self.flow_system(system_id)
        if len(s.times) != 2:
            raise PreconditionError(f"{system_id} 不是两时间变量系统")
        a, b, da, db = rectangle
        names = [v.name for v in s.times]
        tolerances = tolerances or self.tolerances
        extra = perturbation or {}

        def advance(state, index, start, end, fixed):
            if start == end:
                return np.asarray(state, dtype=float)
            p = dict(params)
            p.update(fixed)
            spec = FlowSpec(system_id, tuple(state), (start, end), p, index, tolerances)
            return self.require_completed(self.integrate(spec, extra=extra.get(index)))

        try:
            mid = advance(initial, 0, a, a + da, {names[1]: b})
            first = advance(mid, 1, b, b + db, {names[0]: a + da})
            mid = advance(initial, 1, b, b + db, {names[0]: a})
            second = advance(mid, 0, a, a + da, {names[1]: b + db})
        except (PreconditionError, StepUnderflowError) as e:
            self.logger.warning(f"⚠️ {system_id} 交换性检验无法判定: {e}")
            return CommutativityResult(system_id, tuple(rectangle), float("nan"), tol, True, str(e))
        deviation = float(np.max(np.abs(first - second)))
        result = CommutativityResult(system_id, tuple(rectangle), deviation, tol)
        if result.passed:
            self.logger.info(f"✅ {system_id} 两条路径终点之差 {deviation:.3g}")
        else:
            self.logger.error(f"❌ {system_id} 两条路径终点之差 {deviation:.3g} 超过 {tol}")
        return result

    def flow_map(self, spec: FlowSpec, h: float, rhs: Optional[Rhs] = None) -> Callable[[np.ndarray], np.ndarray]:
        t0 = spec.span[0]

        def phi(z: np.ndarray) -> np.ndarray:
            if h == 0:
                return np.asarray(z, dtype=float)
            moved = FlowSpec(spec.system_id, tuple(z), (t0, t0 + h), dict(spec.params), spec.time_index,
                             spec.tolerances, spec.frozen)
            return self.require_completed(self.integrate(moved, rhs=rhs))

        return phi

    def symplectic_check(self, spec: FlowSpec, h: float, delta: float = 1e-6, rhs: Optional[Rhs] = None) -> float:
        """时间 h 流映射的中心差分 Jacobian：‖JᵀΩJ − Ω‖_max"""
        phi = self.flow_map(spec, h, rhs)
        z = np.asarray(spec.initial, dtype=float)
        n = z.size
        J = np.zeros((n, n))
        for j in range(n):
            e = np.zeros(n)
            e[j] = delta
            J[:, j] = (phi(z + e) - phi(z - e)) / (2 * delta)
        omega = _omega(n)
        return float(np.max(np.abs(J.T @ omega @ J - omega)))

    # ---------- 导出 ----------

    def write_csv(self, traj: Trajectory, stream: TextIO) -> None:
        writer = csv.writer(stream)
        writer.writerow(traj.header())
        for row in traj.rows():
            writer.writerow([repr(v) for v in row])

    def export_csv(self, traj: Trajectory, path: Union[str, Path]) -> Path:
        """列为 t, q1, p1, q2, p2, H"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as f:
            self.write_csv(traj, f)
        self.logger.info(f"✅ 轨道已写入 {path}")
        return path


_flow_service: Optional[FlowService] = None


def get_flow_service() -> FlowService:
    """获取积分服务单例"""
    global _flow_service
    if _flow_service is None:
        _flow_service = FlowService()
    return _flow_service
