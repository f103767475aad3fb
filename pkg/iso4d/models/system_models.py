"""
哈密顿系统目录的数据模型
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import sympy as sp

from .symexpr import RationalExpr, to_text

K = sp.diag(1, -1)


@dataclass
class ParameterSet:
    """参数表与 Fuchs(-Hukuhara) 关系（= 0）"""
    names: Tuple[sp.Symbol, ...]
    fuchs_relation: Optional[sp.Expr] = None

    def to_dict(self) -> Dict:
        return {
            "names": [s.name for s in self.names],
            "fuchs_relation": None if self.fuchs_relation is None else f"{to_text(self.fuchs_relation)} = 0",
        }


@dataclass
class MatrixChart:
    """矩阵 Painlevé 系的 2×2 参数化"""
    Q: sp.Matrix
    P: sp.Matrix
    theta: sp.Matrix
    kappa: sp.Expr

    def commutator_defect(self) -> sp.Matrix:
        """[P, Q] − κK，恒为零"""
        return (self.P * self.Q - self.Q * self.P - self.kappa * K).applyfunc(sp.expand)

    def to_dict(self) -> Dict:
        def grid(M):
            return [[to_text(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
        return {"Q": grid(self.Q), "P": grid(self.P), "Theta": grid(self.theta), "kappa": to_text(self.kappa)}


@dataclass
class HamiltonianSystem:
    """一个四维 Painlevé 型系统的完整记录"""
    system_id: str
    family: str
    pattern_text: str
    spectral_text: str
    linear_problem: Optional[str]
    times: Tuple[sp.Symbol, ...]
    canonical: Tuple[sp.Symbol, ...]
    hamiltonians: Tuple[RationalExpr, ...]
    params: ParameterSet
    greek_params: Tuple[sp.Symbol, ...] = ()
    greek_hamiltonians: Tuple[RationalExpr, ...] = ()
    greek_map: Dict[sp.Symbol, sp.Expr] = field(default_factory=dict)
    gauge_odes: Tuple[Dict[str, str], ...] = ()
    charts: Dict[str, Dict[sp.Symbol, sp.Expr]] = field(default_factory=dict)
    matrix_chart: Optional[MatrixChart] = None
    notes: str = ""

    def __post_init__(self):
        if len(self.times) != len(self.hamiltonians):
            raise ValueError(f"{self.system_id}: 哈密顿量个数与时间变量个数不一致")

    @property
    def pairs(self) -> List[Tuple[sp.Symbol, sp.Symbol]]:
        c = self.canonical
        return [(c[k], c[k + 1]) for k in range(0, len(c), 2)]

    @property
    def two_time(self) -> bool:
        return len(self.times) == 2

    def to_dict(self) -> Dict:
        return {
            "id": self.system_id,
            "family": self.family,
            "pattern": self.pattern_text,
            "spectral": self.spectral_text,
            "linear_problem": self.linear_problem,
            "times": [s.name for s in self.times],
            "canonical": [s.name for s in self.canonical],
            "hamiltonians": {s.name: to_text(h) for s, h in zip(self.times, self.hamiltonians)},
            "params": self.params.to_dict(),
            "greek": {
                "params": [s.name for s in self.greek_params],
                "map": {s.name: to_text(v) for s, v in self.greek_map.items()},
                "hamiltonians": [to_text(h) for h in self.greek_hamiltonians],
            },
            "gauge_odes": list(self.gauge_odes),
            "charts": {
                name: {s.name: to_text(v) for s, v in chart.items()} for name, chart in self.charts.items()
            },
            "matrix_chart": self.matrix_chart.to_dict() if self.matrix_chart else None,
            "notes": self.notes,
        }


@dataclass
class SignatureCheck:
    """希腊字母形式与 θ 形式哈密顿量的比对"""
    problem_id: str
    system_id: str
    matches: List[bool] = field(default_factory=list)
    residuals: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.matches) and all(self.matches)

    def to_dict(self) -> Dict:
        return {
            "problem": self.problem_id,
            "system": self.system_id,
            "passed": self.passed,
            "residuals": self.residuals,
        }


@dataclass
class IntegrabilityReport:
    """∂_{t2}H_{t1} − ∂_{t1}H_{t2} + {H_{t1}, H_{t2}} 及其对典则变量的依赖"""
    system_id: str
    expression: RationalExpr
    depends_on: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.depends_on

    def to_dict(self) -> Dict:
        return {
            "system": self.system_id,
            "expression": to_text(self.expression),
            "depends_on": self.depends_on,
            "holds": self.holds,
        }


@dataclass
class NoumiYamadaMap:
    """对称形式变量 f_i 到 (q, p) 的代换及参数对应"""
    level: str
    variables: Dict[sp.Symbol, sp.Expr]
    parameters: Dict[sp.Symbol, sp.Expr]
