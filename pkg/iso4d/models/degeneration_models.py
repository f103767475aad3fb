"""
退化规则（ε 依赖的典则变换）及其检验结果的数据模型
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import sympy as sp

from .symexpr import EPS, to_text

# (Q, P, I) -> (Q_源, P_源) 或 -> 标量余项；同一函数既作用于显式 2×2 矩阵，也作用于 MatrixSymbol
MatrixMap = Callable[[object, object, object], Tuple[object, object]]
MatrixRemainder = Callable[[object, object, object], object]


def _matrix_symbols():
    return sp.MatrixSymbol("Q", 2, 2), sp.MatrixSymbol("P", 2, 2), sp.Identity(2)


@dataclass(frozen=True)
class DegenerationRule:
    """
    源线性问题到目标线性问题的一条退化规则。

    代换方向与表中一致：左边为源符号，右边为目标符号（同名不加波浪号）的表达式，
    所有代换同时进行。哈密顿量关系为 H_源 = C·H_目标 + R。
    """
    source_id: str
    target_id: str
    family: str
    params: Dict[sp.Symbol, sp.Expr] = field(default_factory=dict)
    times: Dict[sp.Symbol, sp.Expr] = field(default_factory=dict)
    variables: Dict[sp.Symbol, sp.Expr] = field(default_factory=dict)
    coefficients: Tuple[Tuple[sp.Expr, ...], ...] = ()
    remainder: Tuple[sp.Expr, ...] = ()
    matrix_map: Optional[MatrixMap] = None
    matrix_remainder: Optional[MatrixRemainder] = None
    has_data: bool = True
    notes: str = ""

    @property
    def rule_id(self) -> str:
        return f"{self.source_id} -> {self.target_id}"

    @property
    def is_matrix(self) -> bool:
        return self.matrix_map is not None

    @property
    def substitution(self) -> Dict[sp.Symbol, sp.Expr]:
        """参数、时间与典则变量的合并代换"""
        out: Dict[sp.Symbol, sp.Expr] = {}
        out.update(self.params)
        out.update(self.times)
        out.update(self.variables)
        return out

    def matrix_text(self) -> Dict[str, str]:
        if self.matrix_map is None:
            return {}
        Q, P, I = _matrix_symbols()
        Qs, Ps = self.matrix_map(Q, P, I)
        out = {"Q": sp.sstr(Qs), "P": sp.sstr(Ps)}
        if self.matrix_remainder is not None:
            out["R"] = sp.sstr(self.matrix_remainder(Q, P, I))
        return out

    def to_dict(self) -> Dict:
        return {
            "id": self.rule_id,
            "source": self.source_id,
            "target": self.target_id,
            "family": self.family,
            "has_data": self.has_data,
            "params": {s.name: to_text(v) for s, v in self.params.items()},
            "times": {s.name: to_text(v) for s, v in self.times.items()},
            "variables": {s.name: to_text(v) for s, v in self.variables.items()},
            "matrix": self.matrix_text(),
            "coefficients": [[to_text(c) for c in row] for row in self.coefficients],
            "remainder": [to_text(r) for r in self.remainder],
            "epsilon": EPS.name,
            "notes": self.notes,
        }


@dataclass
class LimitCheck:
    """一个源时间变量上 ε→0 的极限检验"""
    time: str
    passed: bool
    pole_order: int = 0
    offending: List[str] = field(default_factory=list)
    delta_at_zero: str = "0"

    def to_dict(self) -> Dict:
        return {
            "time": self.time,
            "passed": self.passed,
            "pole_order": self.pole_order,
            "offending": self.offending,
            "delta_at_zero": self.delta_at_zero,
        }


@dataclass
class LimitVerdict:
    """verify_limit 的结论（若干取值点或符号检验）"""
    rule_id: str
    mode: str
    samples: int
    checks: List[LimitCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def max_pole_order(self) -> int:
        return max((c.pole_order for c in self.checks), default=0)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict:
        failed = [c.to_dict() for c in self.checks if not c.passed]
        return {
            "rule": self.rule_id,
            "mode": self.mode,
            "samples": self.samples,
            "passed": self.passed,
            "max_pole_order": self.max_pole_order,
            "failures": failed[:5],
        }


@dataclass
class CanonicityReport:
    """代换后的 Poisson 括号：{z_a, z_b} = s·Ω，且 C 与 s·(J^T)^{-1} 的首项一致"""
    rule_id: str
    scale: str
    symplectic: bool
    scale_constant: bool
    exact_match: bool
    leading_match: bool
    expected: List[List[str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.symplectic and self.scale_constant and self.leading_match

    def to_dict(self) -> Dict:
        return {
            "rule": self.rule_id,
            "scale": self.scale,
            "symplectic": self.symplectic,
            "scale_constant": self.scale_constant,
            "exact_match": self.exact_match,
            "leading_match": self.leading_match,
            "expected_coefficients": self.expected,
            "passed": self.passed,
        }


@dataclass
class GraphConsistency:
    """规则表（含无数据边）与退化图边集的对照"""
    missing: List[Tuple[str, str]] = field(default_factory=list)
    extra: List[Tuple[str, str]] = field(default_factory=list)
    rules: int = 0
    no_data: int = 0

    @property
    def consistent(self) -> bool:
        return not self.missing and not self.extra

    def to_dict(self) -> Dict:
        return {
            "consistent": self.consistent,
            "rules": self.rules,
            "no_data": self.no_data,
            "missing": [list(e) for e in self.missing],
            "extra": [list(e) for e in self.extra],
        }
