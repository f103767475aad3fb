"""
退化规则服务：规则表检索、代换、ε→0 极限检验与典则性检验

哈密顿量统一在 (q, p) 坐标下比较；(λ, μ) 坐标的线性问题先经其坐标变换拉回。
源问题先用自身的 Fuchs 关系消去一个参数，代换后再用目标问题的 Fuchs 关系消去。
"""
import logging
import random
import threading
from typing import Dict, List, Optional, Tuple, Union

import sympy as sp

from ..config.toolkit_config import ToolkitConfig
from ..data.degeneration_rules import RULES, rule_index
from ..data.hamiltonians import MATRIX_KINDS, matrix_chart, trace_form
from ..data.lax_common import QP
from ..data.spectral_corpus import GRAPH_EDGES
from ..errors import MalformedRuleError, PoleError, PreconditionError, ResampleSignal, UnknownSystemError
from ..models.degeneration_models import (
    CanonicityReport,
    DegenerationRule,
    GraphConsistency,
    LimitCheck,
    LimitVerdict,
)
from ..models.lax_models import LinearProblem
from ..models.symexpr import (
    EPS,
    RationalExpr,
    depends_on,
    laurent_head,
    poisson_bracket,
    strip_canonical_free,
    substitute,
    to_text,
)
from .laxpair_service import LaxPairService, get_laxpair_service
from .sampling import SamplingConfig, random_point, task_seed, with_resampling

RuleLike = Union[str, DegenerationRule]
Point = Dict[sp.Symbol, sp.Rational]

RULE_FAMILIES = ("Garnier", "FS", "Sasano", "Matrix")
PAIRS = [(QP[0], QP[1]), (QP[2], QP[3])]


def _leading(expr: sp.Expr) -> Optional[Tuple[int, sp.Expr]]:
    """ε 的最低次幂及其系数；零返回 None"""
    num, den = sp.fraction(sp.cancel(sp.together(expr)))
    if num == 0:
        return None
    pn, pd = sp.Poly(num, EPS), sp.Poly(den, EPS)
    vn = min(m[0] for m in pn.monoms())
    vd = min(m[0] for m in pd.monoms())
    return vn - vd, sp.cancel(pn.coeff_monomial(EPS**vn) / pd.coeff_monomial(EPS**vd))


def _offending(coeff: RationalExpr) -> List[str]:
    """Laurent 系数分子中含典则变量的单项式"""
    num = sp.expand(coeff.num)
    terms = sp.Poly(num, *QP).terms() if num.free_symbols & set(QP) else []
    out = []
    for monom, c in terms:
        if any(monom):
            out.append(sp.sstr(c * sp.Mul(*[v**k for v, k in zip(QP, monom)])))
    return out[:10]


class DegenerationService:
    """退化规则的检索与检验"""

    def __init__(self, lax_service: Optional[LaxPairService] = None, config: Optional[SamplingConfig] = None):
        self.logger = logging.getLogger(__name__)
        self.lax = lax_service or get_laxpair_service()
        self.config = config or ToolkitConfig.get_sampling_config()
        self._forms: Dict[str, Tuple[RationalExpr, ...]] = {}
        self._lock = threading.Lock()

    # ---------- 规则表 ----------

    def list_rules(self, include_no_data: bool = True, family: Optional[str] = None) -> List[DegenerationRule]:
        rules = [r for r in RULES if include_no_data or r.has_data]
        if family is not None:
            rules = [r for r in rules if r.family == family]
        return rules

    def get_rule(self, source: str, target: Optional[str] = None) -> DegenerationRule:
        """按规则编号 "源 -> 目标"，或按源、目标编号（可用系统编号或别名）查找"""
        if target is None:
            if "->" not in source:
                raise UnknownSystemError(source, kind="退化规则")
            source, target = (s.strip() for s in source.split("->", 1))
        rule_id = f"{self.lax.resolve_id(source)} -> {self.lax.resolve_id(target)}"
        rule = rule_index().get(rule_id)
        if rule is None:
            raise UnknownSystemError(rule_id, kind="退化规则")
        return rule

    def _as_rule(self, rule: RuleLike) -> DegenerationRule:
        rule = rule if isinstance(rule, DegenerationRule) else self.get_rule(rule)
        if not rule.has_data:
            raise PreconditionError(f"{rule.rule_id} 没有代换数据")
        return rule

    # ---------- 哈密顿量的 (q, p) 形式 ----------

    def _qp_forms(self, problem: LinearProblem) -> Tuple[RationalExpr, ...]:
        """(q, p) 坐标下、已按 Fuchs 关系消去参数的哈密顿量"""
        with self._lock:
            cached = self._forms.get(problem.problem_id)
        if cached is not None:
            return cached
        eliminate = {problem.eliminate: problem.fuchs_solution}
        forms = []
        for H in problem.hamiltonians:
            pulled = substitute(H, problem.chart_map) if problem.chart_map else RationalExpr.of(H)
            forms.append(substitute(pulled, eliminate))
        forms = tuple(forms)
        with self._lock:
            self._forms[problem.problem_id] = forms
        return forms

    @staticmethod
    def _target_closure(target: LinearProblem, point: Point):
        eliminate = {target.eliminate: target.fuchs_solution}

        def close(value) -> sp.Expr:
            return sp.sympify(value).xreplace(eliminate).xreplace(point)
        return close

    def _mapping(self, rule: DegenerationRule, source: LinearProblem, close, symbols) -> Dict[sp.Symbol, sp.Expr]:
        table = rule.substitution
        return {s: close(table.get(s, s)) for s in symbols if s != EPS}

    def _matrix_forms(self, rule, source, target, close, mapping) -> Tuple[RationalExpr, sp.Expr, sp.Matrix, sp.Matrix]:
        """矩阵规则：把 Q, P 的代换代入源迹形式；返回 (H_源, R, Q_源, P_源)"""
        kind, greek_params = MATRIX_KINDS[source.system_id]
        src_elim = {source.eliminate: source.fuchs_solution}

        def mapped(value):
            value = sp.sympify(value).xreplace(src_elim)
            return value.xreplace({s: mapping.get(s, close(s)) for s in value.free_symbols})

        greek = [mapped(g) for g in source.greek[:len(greek_params)]]
        kappa = mapped(source.kappa)
        tt = mapped(source.times[0])
        Qt, Pt = matrix_chart(close(target.kappa), sign=-1)
        I = sp.eye(2)
        Qs, Ps = rule.matrix_map(Qt, Pt, I)
        Qs = sp.Matrix(Qs).applyfunc(close)
        Ps = sp.Matrix(Ps).applyfunc(close)
        H = RationalExpr.of(trace_form(kind, greek, tt, Qs, Ps, kappa))
        R = close(rule.matrix_remainder(Qt, Pt, I)) if rule.matrix_remainder else sp.Integer(0)
        return H, R, Qs, Ps

    def _candidate(self, rule: DegenerationRule, point: Point) -> Tuple[List[RationalExpr], List[RationalExpr]]:
        """H̃(ε) = C^{-1}(H_源∘代换 − R) 与目标哈密顿量（同一取值点）"""
        source = self.lax.build_lax(rule.source_id)
        target = self.lax.build_lax(rule.target_id)
        close = self._target_closure(target, point)
        try:
            if rule.is_matrix:
                symbols = set(source.params) | set(source.times)
                mapping = self._mapping(rule, source, close, symbols)
                H, R, _, _ = self._matrix_forms(rule, source, target, close, mapping)
                substituted, remainders = [H], [RationalExpr.of(R)]
            else:
                substituted = []
                for H in self._qp_forms(source):
                    mapping = self._mapping(rule, source, close, H.free_symbols)
                    substituted.append(substitute(H, mapping))
                remainders = [RationalExpr.of(close(r)) for r in rule.remainder]
            C = sp.Matrix([[close(c) for c in row] for row in rule.coefficients])
            if C.det() == 0:
                raise PoleError(f"{rule.rule_id} 的哈密顿量系数矩阵退化")
            Cinv = C.inv().applyfunc(sp.cancel)
            targets = [substitute(h, {s: close(s) for s in h.free_symbols}) for h in self._qp_forms(target)]
        except PoleError as exc:
            if point:
                raise ResampleSignal(str(exc)) from exc
            raise MalformedRuleError(f"{rule.rule_id}: {exc}") from exc

        if len(substituted) != C.rows or len(targets) != C.cols:
            raise MalformedRuleError(f"{rule.rule_id}: 系数矩阵的形状与时间变量个数不符")
        shifted = [h - r for h, r in zip(substituted, remainders)]
        candidates = []
        for j in range(C.cols):
            total = RationalExpr.of(0)
            for i in range(C.rows):
                if Cinv[j, i] != 0:
                    total = total + RationalExpr.of(Cinv[j, i]) * shifted[i]
            candidates.append(total)
        return candidates, targets

    def apply_rule(self, rule: RuleLike, point: Optional[Point] = None) -> List[RationalExpr]:
        """源哈密顿量经全部代换、去掉余项并按系数矩阵还原后得到的 H̃(ε)（按目标时间排列）"""
        rule = self._as_rule(rule)
        candidates, _ = self._candidate(rule, dict(point or {}))
        return candidates

    # ---------- 极限检验 ----------

    @staticmethod
    def _limit_check(label: str, difference: RationalExpr) -> LimitCheck:
        """
        逐阶去掉 Laurent 系数中与典则变量无关的部分。

        代换常把典则变量带进分母（如 1 + ε³q1 + ε⁶(p2 − t2)），
        整体分式上取“常数项”没有意义，只能在 ε 的各阶系数上做。
        """
        pole, offending = 0, []
        at_zero = RationalExpr.of(0)
        for order, coeff in laurent_head(difference, EPS, upto=0):
            stripped = strip_canonical_free(coeff, QP)
            if stripped.is_zero():
                continue
            if order < 0 and not pole:
                pole, offending = -order, _offending(stripped)
            elif order == 0:
                at_zero = stripped
        if pole:
            return LimitCheck(label, False, pole, offending, "∞")
        ok = at_zero.is_zero()
        return LimitCheck(label, ok, 0, [] if ok else [to_text(at_zero)], to_text(at_zero))

    def _checks_at(self, rule: DegenerationRule, point: Point) -> List[LimitCheck]:
        candidates, targets = self._candidate(rule, point)
        target = self.lax.build_lax(rule.target_id)
        return [
            self._limit_check(time.name, H_tilde - H_target)
            for time, H_tilde, H_target in zip(target.times, candidates, targets)
        ]

    def _sample_symbols(self, rule: DegenerationRule) -> List[sp.Symbol]:
        target = self.lax.build_lax(rule.target_id)
        symbols = (set(target.params) | set(target.times)) - {target.eliminate}
        return sorted(symbols, key=lambda s: s.name)

    def verify_limit(
        self,
        rule: RuleLike,
        symbolic: bool = False,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> LimitVerdict:
        """
        Δ(ε) = strip(H̃(ε) − H_目标) 在 ε=0 处正则且 Δ(0)=0 即通过。
        非符号模式下参数与时间取随机有理点，典则变量与 ε 保持符号。
        """
        rule = self._as_rule(rule)
        if symbolic:
            verdict = LimitVerdict(rule.rule_id, "symbolic", 0, self._checks_at(rule, {}))
        else:
            count = self.config.samples if samples is None else samples
            base = self.config.seed if seed is None else seed
            symbols = self._sample_symbols(rule)
            verdict = LimitVerdict(rule.rule_id, "sampled", count)
            for k in range(count):
                rng = random.Random(task_seed(base, rule.rule_id, str(k)))
                try:
                    checks = with_resampling(
                        lambda r: self._checks_at(rule, random_point(r, symbols)),
                        rng, self.config.max_resample, rule.rule_id,
                    )
                except ResampleSignal as exc:
                    raise MalformedRuleError(f"{rule.rule_id}: {exc}") from exc
                verdict.checks.extend(checks)
                if not all(c.passed for c in checks):
                    break

        if verdict.passed:
            self.logger.info(f"✅ {rule.rule_id} 的 ε→0 极限给出目标哈密顿量")
        else:
            self.logger.error(f"❌ {rule.rule_id} 的极限检验失败，最高极点阶 {verdict.max_pole_order}")
        return verdict

    # ---------- 典则性 ----------

    def _source_variables(self, rule: DegenerationRule) -> List[sp.Expr]:
        source = self.lax.build_lax(rule.source_id)
        target = self.lax.build_lax(rule.target_id)
        close = self._target_closure(target, {})
        if not rule.is_matrix:
            return [close(rule.variables.get(v, v)) for v in QP]
        symbols = set(source.params) | set(source.times)
        mapping = self._mapping(rule, source, close, symbols)
        _, _, Qs, Ps = self._matrix_forms(rule, source, target, close, mapping)
        kappa = sp.sympify(source.kappa).xreplace({source.eliminate: source.fuchs_solution})
        kappa = kappa.xreplace({s: mapping.get(s, close(s)) for s in kappa.free_symbols})
        # 共轭不变量给出源坐标：tr Q = 2q1, det Q = q1² + q2, tr P = p1, tr QP = q1p1 + 2p2q2 − κ
        q1s = Qs.trace() / 2
        q2s = Qs.det() - q1s**2
        p1s = Ps.trace()
        p2s = ((Qs * Ps).trace() - q1s * p1s + kappa) / (2 * q2s)
        return [q1s, p1s, q2s, p2s]

    def canonicity_check(self, rule: RuleLike) -> CanonicityReport:
        """{z_a, z_b}（目标变量下）= s·Ω，且 C 与 s·(J^T)^{-1} 一致（J = ∂t_源/∂t_目标）"""
        rule = self._as_rule(rule)
        source = self.lax.build_lax(rule.source_id)
        target = self.lax.build_lax(rule.target_id)
        z = self._source_variables(rule)
        bracket = [[poisson_bracket(z[a], z[b], PAIRS) for b in range(4)] for a in range(4)]
        scale = bracket[0][1]
        symplectic = (
            (bracket[2][3] - scale).is_zero()
            and all(bracket[a][b].is_zero() for a, b in ((0, 2), (0, 3), (1, 2), (1, 3)))
        )
        scale_constant = not depends_on(scale, QP)

        J = sp.Matrix([
            [sp.diff(sp.sympify(rule.times.get(ts, ts)), tt) for tt in target.times]
            for ts in source.times
        ])
        expected = (scale.expr * J.T.inv()).applyfunc(sp.cancel)
        C = sp.Matrix(rule.coefficients)
        exact = all(sp.cancel(C[i, j] - expected[i, j]) == 0 for i in range(C.rows) for j in range(C.cols))
        leading = True
        for i in range(C.rows):
            for j in range(C.cols):
                a, b = _leading(C[i, j]), _leading(expected[i, j])
                if a is None or b is None:
                    leading = leading and a is None and b is None
                else:
                    leading = leading and a[0] == b[0] and sp.cancel(a[1] - b[1]) == 0
        report = CanonicityReport(
            rule_id=rule.rule_id,
            scale=to_text(scale),
            symplectic=symplectic,
            scale_constant=scale_constant,
            exact_match=exact,
            leading_match=leading,
            expected=[[to_text(expected[i, j]) for j in range(expected.cols)] for i in range(expected.rows)],
        )
        if report.passed:
            self.logger.info(f"✅ {rule.rule_id} 是典则变换（标度 {report.scale}）")
        else:
            self.logger.warning(f"⚠️ {rule.rule_id} 的典则性检验未通过: {report.to_dict()}")
        return report

    # ---------- 与退化图的对照 ----------

    def graph_consistency(self) -> GraphConsistency:
        edges = {edge for family in RULE_FAMILIES for edge in GRAPH_EDGES[family]}
        pairs = {(r.source_id, r.target_id) for r in RULES}
        report = GraphConsistency(
            missing=sorted(edges - pairs),
            extra=sorted(pairs - edges),
            rules=sum(1 for r in RULES if r.has_data),
            no_data=sum(1 for r in RULES if not r.has_data),
        )
        if report.consistent:
            self.logger.info(f"✅ {report.rules} 条规则与 {report.no_data} 条无数据边覆盖全部退化边")
        else:
            self.logger.error(f"❌ 规则表与退化图不一致: 缺 {report.missing}，多 {report.extra}")
        return report

    def verify_all(self, samples: Optional[int] = None, seed: Optional[int] = None) -> List[LimitVerdict]:
        return [self.verify_limit(r, samples=samples, seed=seed) for r in self.list_rules(include_no_data=False)]


# 全局服务实例
_degeneration_service: Optional[DegenerationService] = None


def get_degeneration_service() -> DegenerationService:
    """获取退化规则服务单例"""
    global _degeneration_service
    if _degeneration_service is None:
        _degeneration_service = DegenerationService()
    return _degeneration_service
