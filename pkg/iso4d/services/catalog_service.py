"""
哈密顿系统目录服务

θ 形式取自各系统主线性问题的哈密顿量，希腊字母形式取自经典记法，
两者之间的线性参数对应随线性问题一起存放。
"""
import logging
import threading
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp

from ..data import hamiltonians as ham
from ..data.lax_matrix import THETA
from ..data.spectral_corpus import GRAPH_NODES
from ..errors import ArityError, PreconditionError, UnknownSystemError
from ..models.lax_models import AnchoredRate, LinearProblem
from ..models.symexpr import (
    RationalExpr,
    depends_on,
    differentiate,
    poisson_bracket,
    strip_canonical_free,
    substitute,
    sym,
    to_text,
)
from ..models.system_models import (
    HamiltonianSystem,
    IntegrabilityReport,
    MatrixChart,
    NoumiYamadaMap,
    ParameterSet,
    SignatureCheck,
)
from .laxpair_service import LaxPairService, get_laxpair_service

# Fuji–Suzuki 型线性问题冻结不规则数据 η1, η2 后得到的一时间系统
RESTRICTED_ID = "FS:restriction"

FAMILY_BY_PREFIX = {
    "Gar": "Garnier",
    "FS": "Fuji-Suzuki",
    "NY": "Noumi-Yamada",
    "Ss": "Sasano",
    "Mat": "Matrix",
}

NY_SIZES = {"A4": 5, "A5": 6}

SystemLike = Union[str, HamiltonianSystem]


def _node_pattern(problem_id: str) -> Optional[str]:
    for nodes in GRAPH_NODES.values():
        for node_id, pattern, *_ in nodes:
            if node_id == problem_id:
                return pattern
    return None


def _law_text(g: sp.Symbol, law) -> str:
    if isinstance(law, AnchoredRate):
        return f"{g}*(D_t({to_text(law.anchor)}) + {to_text(law.extra)})/({to_text(law.anchor)})"
    return to_text(law)


class CatalogService:
    """22 个四维系统及经典 Painlevé 哈密顿量的符号目录"""

    def __init__(self, lax_service: Optional[LaxPairService] = None):
        self.logger = logging.getLogger(__name__)
        self.lax = lax_service or get_laxpair_service()
        self._systems: Dict[str, HamiltonianSystem] = {}
        self._lock = threading.Lock()

    # ---------- 经典哈密顿量 ----------

    def classical_hamiltonian(self, kind: str, params: Sequence, t, q, p) -> RationalExpr:
        """经典 Painlevé 哈密顿量 H 本身（前因子 t(t-1)、t 已除去）"""
        if kind not in ham.CLASSICAL:
            raise UnknownSystemError(kind, kind="经典哈密顿量")
        fn, arity = ham.CLASSICAL[kind]
        if len(params) != arity:
            raise ArityError(f"H_{kind} 需要 {arity} 个参数，实际给出 {len(params)} 个")
        return RationalExpr.of(fn(*params, t, q, p))

    def tilde_v_map(self) -> Dict:
        """q → 1−1/q, p → q(pq−γ) 把另一种第五哈密顿量变为 H_V 加上与 (q,p) 无关的项"""
        a, b, c = ham.CLASSICAL_PARAMS["V~"]
        moved = substitute(ham.H_V_tilde(a, b, c, ham.t, ham.q, ham.p), ham.TILDE_V_MAP)
        difference = moved - RationalExpr.of(ham.TILDE_V_TARGET)
        canonical = self.chart_canonicity(ham.TILDE_V_MAP, [(ham.q, ham.p)])
        result = {
            "map": {s.name: to_text(v) for s, v in ham.TILDE_V_MAP.items()},
            "canonical": canonical,
            "identity": difference.is_zero(),
            "difference": to_text(difference),
        }
        if not result["identity"]:
            self.logger.warning(f"⚠️ 第五哈密顿量换元后与目标差 {result['difference']}")
        return result

    # ---------- 系统记录 ----------

    def list_systems(self, include_auxiliary: bool = False) -> List[str]:
        ids = list(ham.GREEK_SYSTEMS)
        if include_auxiliary:
            ids.append(RESTRICTED_ID)
        return ids

    def get_system(self, system_id: str) -> HamiltonianSystem:
        with self._lock:
            cached = self._systems.get(system_id)
        if cached is not None:
            return cached
        if system_id == RESTRICTED_ID:
            system = self._restricted_system()
        elif system_id in ham.GREEK_SYSTEMS:
            system = self._build_system(system_id)
        else:
            raise UnknownSystemError(system_id)
        with self._lock:
            self._systems.setdefault(system_id, system)
        return system

    def _resolve(self, system: SystemLike) -> HamiltonianSystem:
        return system if isinstance(system, HamiltonianSystem) else self.get_system(system)

    def _build_system(self, system_id: str) -> HamiltonianSystem:
        problem = self.lax.build_lax(f"{system_id}-lin")
        greek_params, _, builder = ham.GREEK_SYSTEMS[system_id]
        prefix = system_id.split(":")[0]
        if prefix == "Gar":
            pattern = system_id.split(":")[1]
        else:
            pattern = _node_pattern(problem.problem_id) or ""
        charts = {}
        if problem.chart_map:
            charts["lambda,mu <- q,p"] = dict(problem.chart_map)
        chart = None
        if problem.kappa is not None:
            Q, P = ham.matrix_chart(problem.kappa, sign=-1)
            chart = MatrixChart(Q=Q, P=P, theta=THETA, kappa=problem.kappa)
        return HamiltonianSystem(
            system_id=system_id,
            family=FAMILY_BY_PREFIX[prefix],
            pattern_text=pattern,
            spectral_text=problem.spectral_text,
            linear_problem=problem.problem_id,
            times=problem.times,
            canonical=problem.canonical,
            hamiltonians=tuple(RationalExpr.of(h) for h in problem.hamiltonians),
            params=ParameterSet(problem.params, problem.fuchs),
            greek_params=tuple(greek_params),
            greek_hamiltonians=tuple(RationalExpr.of(h) for h in builder()),
            greek_map=self.greek_to_theta(problem.problem_id),
            gauge_odes=tuple({g.name: _law_text(g, law) for g, law in laws.items()} for laws in problem.gauge_laws),
            charts=charts,
            matrix_chart=chart,
            notes=problem.notes,
        )

    def _restricted_system(self) -> HamiltonianSystem:
        params = (ham.theta_0, ham.theta_1, ham.theta_inf_2, ham.theta_inf_3, ham.eta1, ham.eta2)
        return HamiltonianSystem(
            system_id=RESTRICTED_ID,
            family="Fuji-Suzuki",
            pattern_text="2+1+1+1",
            spectral_text="(1)(1)(1),21,21",
            linear_problem=None,
            times=(ham.t,),
            canonical=ham.CANONICAL,
            hamiltonians=(RationalExpr.of(ham.fs_restriction_hamiltonian()),),
            params=ParameterSet(params),
            notes="η1, η2 冻结的 2+1+1+1 型 Garnier 系统的限制",
        )

    def fs_restriction_hamiltonian(self) -> RationalExpr:
        return self.get_system(RESTRICTED_ID).hamiltonians[0]

    def vector_field(self, system: SystemLike, time_index: int = 0) -> Dict[sp.Symbol, RationalExpr]:
        """q̇_i = ∂H/∂p_i, ṗ_i = −∂H/∂q_i"""
        s = self._resolve(system)
        if not 0 <= time_index < len(s.times):
            raise PreconditionError(f"{s.system_id} 只有 {len(s.times)} 个时间变量")
        H = s.hamiltonians[time_index]
        field = {}
        for q, p in s.pairs:
            field[q] = differentiate(H, p)
            field[p] = -differentiate(H, q)
        return field

    # ---------- 参数与形式对照 ----------

    def greek_hamiltonian(self, system_id: str) -> Tuple[RationalExpr, ...]:
        if system_id not in ham.GREEK_SYSTEMS:
            raise UnknownSystemError(system_id)
        return tuple(RationalExpr.of(h) for h in ham.GREEK_SYSTEMS[system_id][2]())

    def greek_to_theta(self, problem_id: str) -> Dict[sp.Symbol, sp.Expr]:
        """希腊字母参数 → θ 表达式（按线性问题存放）"""
        problem = self.lax.build_lax(problem_id)
        greek_params = ham.GREEK_SYSTEMS[problem.system_id][0]
        if problem.greek is None:
            return {}
        if len(problem.greek) != len(greek_params):
            raise ArityError(f"{problem.problem_id} 的参数对应有 {len(problem.greek)} 项，应为 {len(greek_params)} 项")
        return dict(zip(greek_params, problem.greek))

    def _greek_forms(self, problem: LinearProblem) -> Tuple[sp.Expr, ...]:
        """希腊字母形式；矩阵系统改用线性问题所在的 sign=-1 参数化，κ 取 α−ω"""
        greek_params, _, builder = ham.GREEK_SYSTEMS[problem.system_id]
        if problem.system_id not in ham.MATRIX_KINDS:
            return tuple(builder())
        kind, params = ham.MATRIX_KINDS[problem.system_id]
        kappa = ham.alpha - ham.omega
        Q, P = ham.matrix_chart(kappa, sign=-1)
        return (ham.trace_form(kind, params, ham.t, Q, P, kappa),)

    def greek_consistency(self, problem_id: str) -> SignatureCheck:
        """两种形式在 Fuchs 超平面上只差与典则变量无关的项"""
        problem = self.lax.build_lax(problem_id)
        check = SignatureCheck(problem.problem_id, problem.system_id)
        mapping = self.greek_to_theta(problem.problem_id)
        if not mapping:
            check.residuals.append("没有存放参数对应")
            return check
        eliminate = {problem.eliminate: problem.fuchs_solution}
        for H, G in zip(problem.hamiltonians, self._greek_forms(problem)):
            theta_form = substitute(H, problem.chart_map) if problem.chart_map else RationalExpr.of(H)
            greek_form = substitute(G, mapping)
            residual = strip_canonical_free(substitute(theta_form - greek_form, eliminate), ham.CANONICAL)
            check.matches.append(residual.is_zero())
            check.residuals.append(to_text(residual))
        if check.passed:
            self.logger.info(f"✅ {problem.problem_id} 的希腊字母形式与 θ 形式一致")
        else:
            self.logger.warning(f"⚠️ {problem.problem_id} 的希腊字母形式与 θ 形式不一致: {check.residuals}")
        return check

    def fuchs_check(self, problem_or_system: str) -> bool:
        """存放的 Fuchs 关系等于 Riemann 图式各留数列之和"""
        problem = self.lax.build_lax(problem_or_system)
        total = sum((sum(e.residues, sp.Integer(0)) for e in problem.scheme), sp.Integer(0))
        ok = sp.expand(total - problem.fuchs) == 0
        if not ok:
            self.logger.error(f"❌ {problem.problem_id} 的 Fuchs 关系 {to_text(problem.fuchs)} 与图式留数和 {to_text(total)} 不符")
        return ok

    # ---------- 矩阵 Painlevé ----------

    def matrix_chart(self, system_id: str) -> MatrixChart:
        s = self.get_system(system_id)
        if s.matrix_chart is None:
            raise PreconditionError(f"{system_id} 不是矩阵 Painlevé 系统")
        return s.matrix_chart

    def matrix_expand(self, system_id: str) -> RationalExpr:
        """把 Q, P, Θ 代入迹形式并展开（参数按希腊字母对应换成 θ）"""
        if system_id not in ham.MATRIX_KINDS:
            raise PreconditionError(f"{system_id} 不是矩阵 Painlevé 系统")
        problem = self.lax.build_lax(f"{system_id}-lin")
        (greek_form,) = self._greek_forms(problem)
        return substitute(greek_form, self.greek_to_theta(problem.problem_id))

    # ---------- 典则性与可积性 ----------

    def chart_canonicity(
        self,
        mapping: Mapping[sp.Symbol, sp.Expr],
        old_pairs: Sequence[Tuple[sp.Symbol, sp.Symbol]],
        new_pairs: Optional[Sequence[Tuple[sp.Symbol, sp.Symbol]]] = None,
    ) -> bool:
        """J^T Ω J = Ω，J = ∂(旧变量)/∂(新变量)"""
        new_pairs = old_pairs if new_pairs is None else new_pairs
        old = [v for pair in old_pairs for v in pair]
        new = [v for pair in new_pairs for v in pair]
        images = sp.Matrix([sp.sympify(mapping.get(v, v)) for v in old])
        J = images.jacobian(new)
        n = len(old_pairs)
        omega = sp.zeros(2 * n, 2 * n)
        for k in range(n):
            omega[2 * k, 2 * k + 1] = 1
            omega[2 * k + 1, 2 * k] = -1
        defect = (J.T * omega * J - omega).applyfunc(lambda e: sp.cancel(sp.together(e)))
        return defect.is_zero_matrix

    def integrability_identity(self, system: SystemLike) -> IntegrabilityReport:
        """∂_{t2}H_{t1} − ∂_{t1}H_{t2} + {H_{t1}, H_{t2}} 在 Fuchs 超平面上与典则变量无关"""
        s = self._resolve(system)
        if not s.two_time:
            raise PreconditionError(f"{s.system_id} 只有一个时间变量")
        t1, t2 = s.times
        H1, H2 = s.hamiltonians
        if s.linear_problem is not None:
            problem = self.lax.build_lax(s.linear_problem)
            eliminate = {problem.eliminate: problem.fuchs_solution}
            H1, H2 = substitute(H1, eliminate), substitute(H2, eliminate)
        expression = differentiate(H1, t2) - differentiate(H2, t1) + poisson_bracket(H1, H2, s.pairs)
        report = IntegrabilityReport(
            system_id=s.system_id,
            expression=expression,
            depends_on=[v.name for v in depends_on(expression, s.canonical)],
        )
        if report.holds:
            self.logger.info(f"✅ {s.system_id} 的两个哈密顿流相容")
        else:
            self.logger.error(f"❌ {s.system_id} 的可积性恒等式依赖于 {report.depends_on}")
        return report

    # ---------- Noumi–Yamada 对称形式 ----------

    def ny_equations(self, level: str, f: Sequence, alphas: Sequence) -> List[sp.Expr]:
        if level not in NY_SIZES:
            raise UnknownSystemError(level, kind="对称形式")
        n = NY_SIZES[level]
        if len(f) != n or len(alphas) != n:
            raise ArityError(f"NY^{level} 需要 {n} 个 f 与 {n} 个 α")
        return ham.ny_equations(level, list(f), list(alphas))

    def ny_map(self, f: Sequence, level: str, alphas: Optional[Sequence] = None) -> NoumiYamadaMap:
        """p1=f2, q1=−f1, p2=f4, q2=−f1−f3；α=−α1, …"""
        if level not in NY_SIZES:
            raise UnknownSystemError(level, kind="对称形式")
        n = NY_SIZES[level]
        if len(f) != n:
            raise ArityError(f"NY^{level} 需要 {n} 个 f，实际给出 {len(f)} 个")
        alphas = alphas if alphas is not None else [sym(f"alpha_{i}") for i in range(n)]
        return NoumiYamadaMap(level, ham.ny_variable_map(list(f)), ham.ny_parameter_map(list(alphas)))


# 全局服务实例
_catalog_service: Optional[CatalogService] = None


def get_catalog_service() -> CatalogService:
    """获取系统目录服务单例"""
    global _catalog_service
    if _catalog_service is None:
        _catalog_service = CatalogService()
    return _catalog_service
