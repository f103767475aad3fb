"""
局部形式约化与 Laplace 变换的数据模型（数值）
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import PreconditionError
from .spectral_models import RefiningSequence, SpectralType


def _cnum(z: complex, digits: int = 10) -> str:
    z = complex(z)
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
        return f"{z.real:.{digits}g}"
    return f"{z.real:.{digits}g}{z.imag:+.{digits}g}j"


@dataclass
class AnalysisConfig:
    """数值局部分析设置"""
    cluster_tol: float = 1e-6
    exponent_tol: float = 1e-8
    series_margin: int = 5
    draws: int = 5
    # 间隙落在 (tol, ambiguity_factor·tol] 内视为无法判定
    ambiguity_factor: float = 100.0


@dataclass
class LocalSeries:
    """
    A 在某点处的 Laurent 展开（局部变量 s = x − ξ，或 ∞ 处 s = 1/x 并乘以 −s^{-2}）：

        A(s) = s^{-(r+1)} (A_0 + A_1 s + A_2 s² + …)
    """
    location: str
    pole_order: int
    coefficients: List[np.ndarray]

    def __post_init__(self):
        if not self.coefficients:
            raise PreconditionError(f"{self.location} 处展开没有系数")
        if self.pole_order > 0 and not np.any(self.coefficients[0]):
            raise PreconditionError(f"{self.location} 处首项系数为零，极点阶 {self.pole_order} 不成立")

    @property
    def size(self) -> int:
        return self.coefficients[0].shape[0]

    @property
    def regular(self) -> bool:
        return self.pole_order == 0

    @property
    def poincare_rank(self) -> int:
        return max(self.pole_order - 1, 0)

    def to_dict(self) -> Dict:
        return {
            "location": self.location,
            "pole_order": self.pole_order,
            "coefficients": [[[_cnum(v) for v in row] for row in C] for C in self.coefficients],
        }


@dataclass
class LocalData:
    """局部典则形式：加细序列与各特征方向的指数行 (T_0, …, T_r)"""
    location: str
    refining: RefiningSequence
    rows: List[Tuple[complex, ...]]
    local_text: str = ""

    @property
    def poincare_rank(self) -> int:
        return self.refining.depth

    @property
    def columns(self) -> List[List[complex]]:
        """T_0 … T_r 的对角元"""
        depth = self.refining.depth + 1
        return [[row[k] for row in self.rows] for k in range(depth)]

    @property
    def formal_monodromy_trace(self) -> complex:
        return complex(sum(row[-1] for row in self.rows))

    def to_dict(self) -> Dict:
        return {
            "location": self.location,
            "local": self.local_text,
            "refining": self.refining.as_lists(),
            "rows": [[_cnum(v) for v in row] for row in self.rows],
        }


@dataclass
class SpectralAnalysis:
    """全部奇点的局部数据、谱型与 Fuchs-Hukuhara 和"""
    source: str
    locals: List[LocalData]
    spectral: SpectralType
    spectral_text: str
    fuchs_sum: complex
    sample: Dict[str, str] = field(default_factory=dict)

    def local_at(self, location: str) -> LocalData:
        for data in self.locals:
            if data.location == location:
                return data
        raise KeyError(location)

    def to_dict(self) -> Dict:
        return {
            "source": self.source,
            "spectral": self.spectral_text,
            "fuchs_sum": _cnum(self.fuchs_sum),
            "sample": self.sample,
            "locals": [d.to_dict() for d in self.locals],
        }


@dataclass
class OkuboData:
    """
    dY/dx = [Q (x I_l − T)^{-1} P + S_0 + S_1 x] Y

    秩 1 形式取 S_1 = None。T 的特征值为有限奇点，每个奇点的留数为 Q E_τ P。
    """
    T: np.ndarray
    Q: np.ndarray
    P: np.ndarray
    S0: np.ndarray
    S1: Optional[np.ndarray] = None
    label: str = ""

    def __post_init__(self):
        l, m = self.T.shape[0], self.S0.shape[0]
        if self.T.shape != (l, l) or self.S0.shape != (m, m):
            raise PreconditionError(f"{self.label}: T、S_0 必须为方阵")
        if self.Q.shape != (m, l) or self.P.shape != (l, m):
            raise PreconditionError(
                f"{self.label}: Q 应为 {m}×{l}，P 应为 {l}×{m}，实际 {self.Q.shape}、{self.P.shape}"
            )
        if self.S1 is not None and self.S1.shape != (m, m):
            raise PreconditionError(f"{self.label}: S_1 必须为 {m}×{m}")

    @property
    def m(self) -> int:
        return self.S0.shape[0]

    @property
    def l(self) -> int:
        return self.T.shape[0]

    @property
    def rank(self) -> int:
        """∞ 处的 Poincaré 秩"""
        return 1 if self.S1 is None or not np.any(self.S1) else 2

    @property
    def k(self) -> int:
        """S_1 的非零对角元个数"""
        if self.S1 is None:
            return 0
        return int(np.count_nonzero(np.abs(np.diag(self.S1)) > 0))

    def to_dict(self) -> Dict:
        def grid(M):
            return [[_cnum(v) for v in row] for row in M]
        out = {"label": self.label, "rank": self.rank, "m": self.m, "l": self.l,
               "T": grid(self.T), "Q": grid(self.Q), "P": grid(self.P), "S0": grid(self.S0)}
        if self.S1 is not None:
            out["S1"] = grid(self.S1)
        return out


@dataclass(frozen=True)
class LaplaceCorrespondence:
    """Laplace 变换联系的一对线性问题"""
    pair_id: str
    rank: int
    left: str
    right: str
    left_text: str
    right_text: str
    printed: str = ""

    def to_dict(self) -> Dict:
        return {
            "id": self.pair_id,
            "rank": self.rank,
            "left": self.left,
            "right": self.right,
            "left_spectral": self.left_text,
            "right_spectral": self.right_text,
            "printed": self.printed or f"{self.left_text} ↔ {self.right_text}",
        }


@dataclass(frozen=True)
class LaplaceRemark:
    """只作记录、不做检验的幂零构造（目标为分歧型）"""
    remark_id: str
    source_text: str
    target: str
    setting: Dict[str, str]
    description: str

    def to_dict(self) -> Dict:
        return {
            "id": self.remark_id,
            "source": self.source_text,
            "target": self.target,
            "setting": dict(self.setting),
            "description": self.description,
        }


@dataclass
class CorrespondenceVerdict:
    """一对 Laplace 对应的数值检验结论"""
    pair_id: str
    computed: Dict[str, str] = field(default_factory=dict)
    expected: Dict[str, str] = field(default_factory=dict)
    mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.computed) and not self.mismatches

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict:
        return {
            "pair": self.pair_id,
            "passed": self.passed,
            "computed": self.computed,
            "expected": self.expected,
            "mismatches": list(self.mismatches),
        }


@dataclass
class LocalFormReport:
    """线性问题在若干随机取值点上的谱型与 Riemann 图式复现"""
    problem_id: str
    draws: int
    spectral: List[str] = field(default_factory=list)
    max_deviation: float = 0.0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict:
        return {
            "problem": self.problem_id,
            "draws": self.draws,
            "spectral": sorted(set(self.spectral)),
            "max_deviation": self.max_deviation,
            "passed": self.passed,
            "failures": list(self.failures),
        }
