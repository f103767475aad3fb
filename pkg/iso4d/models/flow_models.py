"""
哈密顿流数值积分的数据模型
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

COMPLETED = "completed"
POLE_DETECTED = "pole-detected"
STEP_UNDERFLOW = "step-underflow"


@dataclass
class FlowTolerances:
    """积分容差与极点判据"""
    rtol: float = 1e-10
    atol: float = 1e-12
    pole_norm: float = 1e8
    min_step: float = 1e-14

    def scaled(self, factor: float) -> "FlowTolerances":
        return FlowTolerances(self.rtol * factor, self.atol * factor, self.pole_norm, self.min_step)


@dataclass
class FlowSpec:
    """
    一次积分的设定。params 给出参数与其余时间变量的取值（按符号名）；
    Fuchs 关系消去的参数可以省略。frozen=True 时把时间冻结在起点，得到自治系统。
    """
    system_id: str
    initial: Tuple[float, ...]
    span: Tuple[float, float]
    params: Dict[str, float] = field(default_factory=dict)
    time_index: int = 0
    tolerances: FlowTolerances = field(default_factory=FlowTolerances)
    frozen: bool = False

    def with_span(self, start: float, end: float) -> "FlowSpec":
        return FlowSpec(self.system_id, self.initial, (start, end), dict(self.params),
                        self.time_index, self.tolerances, self.frozen)

    def to_dict(self) -> Dict:
        return {
            "system": self.system_id,
            "time_index": self.time_index,
            "initial": list(self.initial),
            "span": list(self.span),
            "params": dict(self.params),
            "rtol": self.tolerances.rtol,
            "atol": self.tolerances.atol,
            "frozen": self.frozen,
        }


@dataclass
class Trajectory:
    """积分结果：时间单调的采样、状态与终止原因"""
    system_id: str
    variables: Tuple[str, ...]
    times: np.ndarray
    states: np.ndarray
    energies: np.ndarray
    reason: str = COMPLETED
    nfev: int = 0
    message: str = ""

    @property
    def completed(self) -> bool:
        return self.reason == COMPLETED

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    @property
    def min_step(self) -> float:
        if len(self.times) < 2:
            return 0.0
        return float(np.min(np.abs(np.diff(self.times))))

    def rows(self) -> List[List[float]]:
        return [[float(t), *map(float, y), float(h)] for t, y, h in zip(self.times, self.states, self.energies)]

    def header(self) -> List[str]:
        return ["t", *self.variables, "H"]

    def to_dict(self) -> Dict:
        return {
            "system": self.system_id,
            "reason": self.reason,
            "steps": len(self.times) - 1,
            "nfev": self.nfev,
            "start": float(self.times[0]),
            "end": float(self.times[-1]),
            "final_state": [float(v) for v in self.final_state],
            "message": self.message,
        }


@dataclass
class CommutativityResult:
    """沿矩形两条边路径积分后终点状态之差"""
    system_id: str
    rectangle: Tuple[float, float, float, float]
    deviation: float
    tol: float
    inconclusive: bool = False
    reason: str = ""

    @property
    def passed(self) -> bool:
        return not self.inconclusive and self.deviation < self.tol

    def to_dict(self) -> Dict:
        return {
            "system": self.system_id,
            "rectangle": list(self.rectangle),
            "deviation": self.deviation,
            "tol": self.tol,
            "inconclusive": self.inconclusive,
            "reason": self.reason,
            "passed": self.passed,
        }


@dataclass
class DriftResult:
    """冻结时间后的能量漂移"""
    system_id: str
    drift: float
    per_unit_time: float
    reason: str = COMPLETED
    tol: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.reason == COMPLETED and (self.tol is None or self.per_unit_time < self.tol)

    def to_dict(self) -> Dict:
        return {
            "system": self.system_id,
            "drift": self.drift,
            "per_unit_time": self.per_unit_time,
            "reason": self.reason,
            "passed": self.passed,
        }
