"""
线性问题（Lax 对）与相容性残差的数据模型
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import sympy as sp

from .symexpr import X, to_text


@dataclass(frozen=True)
class PoleTerm:
    """A(x) 的一项：有限点为 coefficient/(x-location)^power，∞ 处为 coefficient·x^power"""
    location: Optional[sp.Expr]
    power: int
    coefficient: sp.Matrix

    def expr(self) -> sp.Matrix:
        if self.location is None:
            return self.coefficient * X**self.power
        return self.coefficient / (X - self.location)**self.power


@dataclass(frozen=True)
class AnchoredRate:
    """隐式规范方程 dg/dt = g·(D_t anchor + extra)/anchor，D_t 沿哈密顿流取全导数"""
    anchor: sp.Expr
    extra: sp.Expr


GaugeLaw = Union[sp.Expr, AnchoredRate]


@dataclass(frozen=True)
class SingularPoint:
    label: str
    location: Optional[sp.Expr]
    order: int

    @property
    def poincare_rank(self) -> int:
        if self.location is None:
            return max(self.order - 1, 0)
        return self.order - 1


@dataclass(frozen=True)
class SchemeEntry:
    """Riemann 图式的一列：行 = 特征方向，列 = T_0 … T_r"""
    label: str
    location: Optional[sp.Expr]
    rows: Tuple[Tuple[sp.Expr, ...], ...]

    @property
    def residues(self) -> Tuple[sp.Expr, ...]:
        return tuple(r[-1] for r in self.rows)

    def to_dict(self) -> Dict:
        return {"location": self.label, "rows": [[to_text(e) for e in r] for r in self.rows]}


@dataclass
class LinearProblem:
    """∂Y/∂x = A Y, ∂Y/∂t_i = B_i Y 及其伴随数据"""
    problem_id: str
    system_id: str
    family: str
    spectral_text: str
    size: int
    chart: str
    canonical: Tuple[sp.Symbol, ...]
    times: Tuple[sp.Symbol, ...]
    params: Tuple[sp.Symbol, ...]
    fuchs: sp.Expr
    eliminate: sp.Symbol
    hamiltonians: Tuple[sp.Expr, ...]
    terms: Tuple[PoleTerm, ...]
    B: Tuple[sp.Matrix, ...]
    gauge_laws: Tuple[Dict[sp.Symbol, GaugeLaw], ...]
    scheme: Tuple[SchemeEntry, ...]
    chart_map: Dict[sp.Symbol, sp.Expr] = field(default_factory=dict)
    greek: Optional[Tuple[sp.Expr, ...]] = None
    kappa: Optional[sp.Expr] = None
    notes: str = ""

    def __post_init__(self):
        if not (len(self.times) == len(self.hamiltonians) == len(self.B) == len(self.gauge_laws)):
            raise ValueError(f"{self.problem_id}: 时间、哈密顿量、B、规范方程个数不一致")

    @property
    def A(self) -> sp.Matrix:
        out = sp.zeros(self.size, self.size)
        for term in self.terms:
            out += term.expr()
        return out

    @property
    def gauges(self) -> Tuple[sp.Symbol, ...]:
        seen: List[sp.Symbol] = []
        for laws in self.gauge_laws:
            for g in laws:
                if g not in seen:
                    seen.append(g)
        return tuple(sorted(seen, key=str))

    @property
    def fuchs_solution(self) -> sp.Expr:
        """Fuchs 关系解出的被消去参数"""
        sol = sp.solve(sp.Eq(self.fuchs, 0), self.eliminate)
        return sol[0]

    def singular_points(self) -> List[SingularPoint]:
        points: Dict[str, SingularPoint] = {}
        for term in self.terms:
            if term.location is None:
                label, order = "∞", term.power + 2
            else:
                label, order = str(term.location), term.power
            prev = points.get(label)
            if prev is None or order > prev.order:
                points[label] = SingularPoint(label, term.location, order)
        if "∞" not in points:
            points["∞"] = SingularPoint("∞", None, 1)
        return list(points.values())

    def time_index(self, time: sp.Symbol) -> int:
        if time not in self.times:
            raise KeyError(f"{self.problem_id} 没有时间变量 {time}")
        return self.times.index(time)

    def to_dict(self) -> Dict:
        return {
            "id": self.problem_id,
            "system": self.system_id,
            "family": self.family,
            "spectral": self.spectral_text,
            "size": self.size,
            "chart": self.chart,
            "canonical": [str(s) for s in self.canonical],
            "times": [str(s) for s in self.times],
            "params": [str(s) for s in self.params],
            "fuchs": to_text(self.fuchs),
            "hamiltonians": [to_text(h) for h in self.hamiltonians],
            "singular_points": [
                {"location": p.label, "order": p.order} for p in self.singular_points()
            ],
            "scheme": [s.to_dict() for s in self.scheme],
            "gauges": [str(g) for g in self.gauges],
            "kappa": None if self.kappa is None else to_text(self.kappa),
            "notes": self.notes,
        }


@dataclass
class ResidualReport:
    """一次相容性残差检验的结果"""
    problem_id: str
    time: str
    sample: Dict[str, str]
    zero: bool
    offending: List[Tuple[int, int, str]] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "problem": self.problem_id,
            "time": self.time,
            "sample": self.sample,
            "zero": self.zero,
            "offending": [{"entry": [i, j], "value": v} for i, j, v in self.offending],
        }


@dataclass
class ExponentCheckReport:
    """Riemann 图式与系数矩阵的指数对照结果"""
    problem_id: str
    samples: int
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict:
        return {
            "problem": self.problem_id,
            "samples": self.samples,
            "passed": self.passed,
            "failures": list(self.failures),
        }
