"""
Lax 对构造与等单值相容性检验服务

残差在随机有理点上精确求值：时间方向的导数用对偶数（z → z0 + h·ż0）
沿哈密顿流取得，再在 x 上约分判定是否为零矩阵。
"""
import logging
import random
import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy as sp

from ..config.toolkit_config import ToolkitConfig
from ..data import lax_fs, lax_garnier, lax_matrix, lax_sasano  # noqa: F401  登记全部线性问题
from ..data.lax_common import LAX_ALIASES, LAX_BUILDERS
from ..errors import PreconditionError, ResampleSignal, UnknownSystemError
from ..models.lax_models import (
    AnchoredRate,
    ExponentCheckReport,
    GaugeLaw,
    LinearProblem,
    ResidualReport,
    SchemeEntry,
)
from ..models.symexpr import X, MatrixExpr, RationalExpr, commutator, to_text, total_derivative
from .sampling import (
    SamplingConfig,
    guard_nonzero,
    random_float_params,
    random_point,
    random_rational,
    task_seed,
    with_resampling,
)

_H = sp.Dummy("h")

Point = Dict[sp.Symbol, sp.Rational]
TimeLike = Union[sp.Symbol, str, int]


def _finite(value, label: str = ""):
    """取值点处出现 zoo/nan/oo 时发出重采样信号"""
    if isinstance(value, sp.MatrixBase):
        for entry in value:
            _finite(entry, label)
        return value
    if value.has(sp.zoo, sp.nan, sp.oo, sp.S.NegativeInfinity):
        raise ResampleSignal(f"{label} 在取值点处出现极点")
    return value


def _derivative_at_zero(expr: sp.Expr) -> sp.Expr:
    return _finite(sp.diff(expr, _H).xreplace({_H: 0}), "时间导数")


def _reduced(M: sp.Matrix) -> sp.Matrix:
    return M.applyfunc(lambda e: sp.cancel(sp.together(e)))


def canonical_pairs(problem: LinearProblem) -> List[Tuple[sp.Symbol, sp.Symbol]]:
    c = problem.canonical
    return [(c[k], c[k + 1]) for k in range(0, len(c), 2)]


def _same_location(a: Optional[sp.Expr], b: Optional[sp.Expr]) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return sp.cancel(sp.together(a - b)) == 0


@dataclass
class _ProblemCache:
    """每个线性问题只算一次的派生量"""
    problem: LinearProblem
    A: sp.Matrix
    symbols: Tuple[sp.Symbol, ...]
    fuchs_solution: sp.Expr
    guards: Tuple[sp.Expr, ...]


class LaxPairService:
    """线性问题登记表与相容性检验"""

    def __init__(self, config: Optional[SamplingConfig] = None):
        self.logger = logging.getLogger(__name__)
        self.config = config or ToolkitConfig.get_sampling_config()
        self._cache: Dict[str, _ProblemCache] = {}
        self._vector_fields: Dict[Tuple[str, int], Dict[sp.Symbol, sp.Expr]] = {}
        self._lock = threading.Lock()

    # ---------- 登记表 ----------

    def list_linear_problems(self) -> List[str]:
        """全部线性问题编号（按族登记顺序）"""
        return list(LAX_BUILDERS)

    def aliases(self) -> Dict[str, str]:
        return dict(LAX_ALIASES)

    def resolve_id(self, problem_id: str) -> str:
        if problem_id in LAX_BUILDERS:
            return problem_id
        if problem_id in LAX_ALIASES:
            return LAX_ALIASES[problem_id]
        # 系统编号本身指向其主线性问题
        alias = f"{problem_id}-lin"
        if alias in LAX_ALIASES:
            return LAX_ALIASES[alias]
        raise UnknownSystemError(problem_id, kind="线性问题")

    def build_lax(self, problem_id: str) -> LinearProblem:
        """按编号、别名或系统编号构造线性问题"""
        return self._entry(problem_id).problem

    def _entry(self, problem_id: str) -> _ProblemCache:
        pid = self.resolve_id(problem_id)
        with self._lock:
            cached = self._cache.get(pid)
            if cached is None:
                self.logger.debug(f"构造线性问题 {pid}")
                problem = LAX_BUILDERS[pid]()
                A = problem.A
                cached = _ProblemCache(
                    problem=problem,
                    A=A,
                    symbols=self._sample_symbols(problem, A),
                    fuchs_solution=problem.fuchs_solution,
                    guards=self._guards(problem),
                )
                self._cache[pid] = cached
        return cached

    @staticmethod
    def _sample_symbols(problem: LinearProblem, A: sp.Matrix) -> Tuple[sp.Symbol, ...]:
        free = set(problem.canonical) | set(problem.times) | set(problem.params) | set(problem.gauges)
        free |= A.free_symbols
        for B in problem.B:
            free |= B.free_symbols
        for H in problem.hamiltonians:
            free |= H.free_symbols
        for laws in problem.gauge_laws:
            for law in laws.values():
                if isinstance(law, AnchoredRate):
                    free |= sp.sympify(law.anchor).free_symbols | sp.sympify(law.extra).free_symbols
                else:
                    free |= sp.sympify(law).free_symbols
        free.discard(X)
        free.discard(problem.eliminate)
        return tuple(sorted(free, key=lambda s: s.name))

    @staticmethod
    def _guards(problem: LinearProblem) -> Tuple[sp.Expr, ...]:
        """极点位置两两相异、时间两两相异、∞ 处指数两两相异"""
        locations: List[sp.Expr] = []
        for term in problem.terms:
            if term.location is not None and not any(_same_location(term.location, l) for l in locations):
                locations.append(term.location)
        guards = [a - b for a, b in combinations(locations, 2)]
        guards += [a - b for a, b in combinations(problem.times, 2)]
        for entry in problem.scheme:
            if entry.location is None:
                residues = list(dict.fromkeys(entry.residues))
                guards += [a - b for a, b in combinations(residues, 2)]
        return tuple(g for g in guards if g != 0)

    # ---------- 取样 ----------

    def draw_sample(self, problem_id: str, rng: random.Random) -> Point:
        """抽取一个满足 Fuchs 关系且避开分母零点的有理取值点"""
        entry = self._entry(problem_id)
        point = random_point(rng, entry.symbols)
        point[entry.problem.eliminate] = _finite(entry.fuchs_solution.xreplace(point), "Fuchs 关系")
        guard_nonzero(entry.guards, point, entry.problem.problem_id)
        return point

    def draw_numeric_sample(self, problem_id: str, rng: random.Random) -> Point:
        """
        数值局部分析用的取值点：参数取 [1, 10] 内的有理数，
        另外要求 Riemann 图式同一列中符号不同的指数取值也不同
        """
        entry = self._entry(problem_id)
        problem = entry.problem
        point = random_float_params(rng, entry.symbols)
        point[problem.eliminate] = _finite(entry.fuchs_solution.xreplace(point), "Fuchs 关系")
        guard_nonzero(entry.guards, point, problem.problem_id)
        guards = []
        for scheme_entry in problem.scheme:
            width = len(scheme_entry.rows[0])
            for k in range(width):
                column = list(dict.fromkeys(sp.sympify(r[k]) for r in scheme_entry.rows))
                guards += [a - b for a, b in combinations(column, 2)]
        guard_nonzero(guards, point, problem.problem_id)
        return point

    def _complete_sample(self, entry: _ProblemCache, sample: Dict) -> Point:
        point = {}
        for key, value in sample.items():
            s = key if isinstance(key, sp.Symbol) else sp.Symbol(str(key))
            point[s] = sp.Rational(value)
        missing = [s.name for s in entry.symbols if s not in point]
        if missing:
            raise PreconditionError(f"取值点缺少符号: {', '.join(missing)}")
        point[entry.problem.eliminate] = _finite(entry.fuchs_solution.xreplace(point), "Fuchs 关系")
        return point

    def _time_index(self, problem: LinearProblem, time: Optional[TimeLike]) -> int:
        if time is None:
            return 0
        if isinstance(time, int):
            if not 0 <= time < len(problem.times):
                raise PreconditionError(f"{problem.problem_id} 没有第 {time} 个时间变量")
            return time
        name = str(time)
        for k, s in enumerate(problem.times):
            if s.name == name:
                return k
        raise PreconditionError(f"{problem.problem_id} 没有时间变量 {name}")

    # ---------- 沿哈密顿流的对偶求值 ----------

    def _vector_field(self, problem: LinearProblem, index: int, perturbation=None) -> Dict[sp.Symbol, sp.Expr]:
        key = (problem.problem_id, index)
        if perturbation is None and key in self._vector_fields:
            return self._vector_fields[key]
        H = problem.hamiltonians[index]
        if perturbation is not None:
            H = H + sp.sympify(perturbation)
        field = {}
        for q, p in canonical_pairs(problem):
            field[q] = sp.diff(H, p)
            field[p] = -sp.diff(H, q)
        if perturbation is None:
            self._vector_fields[key] = field
        return field

    def _gauge_rate(self, problem: LinearProblem, g: sp.Symbol, law: GaugeLaw, point: Point, flow: Dict) -> sp.Expr:
        if not isinstance(law, AnchoredRate):
            return _finite(sp.sympify(law).xreplace(point), f"规范方程 d{g}/dt")
        anchor = sp.sympify(law.anchor)
        if anchor.free_symbols & set(problem.gauges):
            raise PreconditionError(f"规范 {g} 的锚表达式不能含规范变量")
        anchor0 = _finite(anchor.xreplace(point), f"规范 {g} 的锚")
        if anchor0 == 0:
            raise ResampleSignal(f"规范 {g} 的锚在取值点处为零")
        d_anchor = _derivative_at_zero(anchor.xreplace(flow))
        extra0 = _finite(sp.sympify(law.extra).xreplace(point), f"规范 {g}")
        return point[g] * (d_anchor + extra0) / anchor0

    def _dual_point(self, problem: LinearProblem, index: int, point: Point, perturbation=None) -> Dict:
        """z → z0 + h·ż0；时间 t_i → t_i + h；规范变量按规范方程推进"""
        time = problem.times[index]
        flow = dict(point)
        for z, rhs in self._vector_field(problem, index, perturbation).items():
            flow[z] = point[z] + _H * _finite(rhs.xreplace(point), f"向量场 d{z}/d{time}")
        flow[time] = point[time] + _H
        dual = dict(flow)
        for g, law in problem.gauge_laws[index].items():
            dual[g] = point[g] + _H * self._gauge_rate(problem, g, law, point, flow)
        return dual

    def _evaluated(self, entry: _ProblemCache, index: int, point: Point, perturbation=None):
        """(D_t A, A, B) 在取值点处的值，仍为 x 的有理函数"""
        problem = entry.problem
        dual = self._dual_point(problem, index, point, perturbation)
        DA = entry.A.xreplace(dual).applyfunc(_derivative_at_zero)
        A0 = _finite(entry.A.xreplace(point), "A")
        B0 = _finite(problem.B[index].xreplace(point), "B")
        return DA, A0, B0

    @staticmethod
    def _zero_curvature(DA: sp.Matrix, A0: sp.Matrix, B0: sp.Matrix) -> sp.Matrix:
        return _reduced(DA - B0.diff(X) + A0 * B0 - B0 * A0)

    @staticmethod
    def _report(problem: LinearProblem, label: str, point: Point, R: sp.Matrix) -> ResidualReport:
        offending = [
            (i, j, to_text(R[i, j]))
            for i in range(R.rows) for j in range(R.cols) if R[i, j] != 0
        ]
        return ResidualReport(
            problem_id=problem.problem_id,
            time=label,
            sample={s.name: str(v) for s, v in sorted(point.items(), key=lambda kv: kv[0].name)},
            zero=not offending,
            offending=offending,
        )

    # ---------- 相容性残差 ----------

    def isomonodromy_residual(
        self,
        problem_id: str,
        time: Optional[TimeLike] = None,
        sample: Optional[Dict] = None,
        perturbation=None,
        seed: Optional[int] = None,
    ) -> ResidualReport:
        """R = ∂_t A − ∂_x B + [A, B] 在一个取值点处是否为零；perturbation 加到对应哈密顿量上"""
        entry = self._entry(problem_id)
        problem = entry.problem
        index = self._time_index(problem, time)
        label = problem.times[index].name

        def at(point: Point) -> ResidualReport:
            DA, A0, B0 = self._evaluated(entry, index, point, perturbation)
            return self._report(problem, label, point, self._zero_curvature(DA, A0, B0))

        if sample is not None:
            return at(self._complete_sample(entry, sample))
        base = self.config.seed if seed is None else seed
        rng = random.Random(task_seed(base, problem.problem_id, label))
        return with_resampling(
            lambda r: at(self.draw_sample(problem.problem_id, r)),
            rng, self.config.max_resample, f"{problem.problem_id}/{label}",
        )

    def cross_compatibility(
        self,
        problem_id: str,
        sample: Optional[Dict] = None,
        seed: Optional[int] = None,
    ) -> ResidualReport:
        """∂_{t2}B_1 − ∂_{t1}B_2 + [B_1, B_2] 在一个取值点处是否为零"""
        entry = self._entry(problem_id)
        problem = entry.problem
        if len(problem.times) != 2:
            raise PreconditionError(f"{problem.problem_id} 只有一个时间变量，没有交叉相容性")
        label = f"{problem.times[0].name},{problem.times[1].name}"
        B1, B2 = problem.B

        def at(point: Point) -> ResidualReport:
            along_t1 = self._dual_point(problem, 0, point)
            along_t2 = self._dual_point(problem, 1, point)
            dB1 = B1.xreplace(along_t2).applyfunc(_derivative_at_zero)
            dB2 = B2.xreplace(along_t1).applyfunc(_derivative_at_zero)
            b1 = _finite(B1.xreplace(point), "B1")
            b2 = _finite(B2.xreplace(point), "B2")
            return self._report(problem, label, point, _reduced(dB1 - dB2 + b1 * b2 - b2 * b1))

        if sample is not None:
            return at(self._complete_sample(entry, sample))
        base = self.config.seed if seed is None else seed
        rng = random.Random(task_seed(base, problem.problem_id, label))
        return with_resampling(
            lambda r: at(self.draw_sample(problem.problem_id, r)),
            rng, self.config.max_resample, f"{problem.problem_id}/{label}",
        )

    def check_compatibility(
        self,
        problem_id: str,
        time: Optional[TimeLike] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> List[ResidualReport]:
        """在若干独立样本上检验残差；每个样本的子种子只由编号、时间与序号决定"""
        problem = self.build_lax(problem_id)
        count = self.config.samples if samples is None else samples
        base = self.config.seed if seed is None else seed
        indices = range(len(problem.times)) if time is None else [self._time_index(problem, time)]
        reports = []
        for index in indices:
            label = problem.times[index].name
            for k in range(count):
                reports.append(self.isomonodromy_residual(
                    problem.problem_id, index, seed=task_seed(base, label, str(k)),
                ))
            failed = sum(1 for r in reports if r.time == label and not r.zero)
            if failed:
                self.logger.error(f"❌ {problem.problem_id} 关于 {label} 的残差在 {failed}/{count} 个样本上非零")
            else:
                self.logger.info(f"✅ {problem.problem_id} 关于 {label} 的残差在 {count} 个样本上为零")
        return reports

    def check_cross(self, problem_id: str, samples: Optional[int] = None, seed: Optional[int] = None) -> List[ResidualReport]:
        problem = self.build_lax(problem_id)
        count = self.config.samples if samples is None else samples
        base = self.config.seed if seed is None else seed
        reports = [
            self.cross_compatibility(problem.problem_id, seed=task_seed(base, "cross", str(k)))
            for k in range(count)
        ]
        failed = sum(1 for r in reports if not r.zero)
        if failed:
            self.logger.error(f"❌ {problem.problem_id} 交叉相容性在 {failed}/{count} 个样本上失败")
        else:
            self.logger.info(f"✅ {problem.problem_id} 交叉相容性在 {count} 个样本上成立")
        return reports

    def symbolic_residual(self, problem_id: str, time: Optional[TimeLike] = None) -> ResidualReport:
        """2×2 问题的完全符号残差（约去 Fuchs 关系后化为零矩阵）"""
        entry = self._entry(problem_id)
        problem = entry.problem
        if problem.size != 2:
            raise PreconditionError(f"{problem.problem_id} 为 {problem.size}×{problem.size}，符号模式只用于 2×2 问题")
        index = self._time_index(problem, time)
        t = problem.times[index]
        rates: Dict[sp.Symbol, sp.Expr] = dict(self._vector_field(problem, index))
        for g, law in problem.gauge_laws[index].items():
            if isinstance(law, AnchoredRate):
                d_anchor = total_derivative(law.anchor, t, rates).expr
                rates[g] = g * (d_anchor + law.extra) / law.anchor
            else:
                rates[g] = sp.sympify(law)
        A, B = MatrixExpr.of(entry.A), MatrixExpr.of(problem.B[index])
        DA = A.apply(lambda e: total_derivative(e, t, rates).expr)
        R = (DA - B.differentiate(X) + commutator(A, B)).substitute({problem.eliminate: entry.fuchs_solution})
        offending = []
        for i in range(R.rows):
            for j in range(R.cols):
                r = R.entry(i, j)
                if not r.is_zero():
                    offending.append((i, j, to_text(r)))
        verdict = "为零" if not offending else "非零"
        self.logger.info(f"{'✅' if not offending else '❌'} {problem.problem_id} 关于 {t} 的符号残差{verdict}")
        return ResidualReport(problem.problem_id, t.name, {}, not offending, offending)

    def gauge_covariance_check(
        self,
        problem_id: str,
        time: Optional[TimeLike] = None,
        sample: Optional[Dict] = None,
        perturbation=None,
        seed: Optional[int] = None,
    ) -> bool:
        """用随机常数对角阵共轭 A 与 B 后，残差是否为零的判定不变"""
        entry = self._entry(problem_id)
        problem = entry.problem
        index = self._time_index(problem, time)
        base = self.config.seed if seed is None else seed
        rng = random.Random(task_seed(base, problem.problem_id, "gauge", str(index)))

        def at(point: Point) -> bool:
            DA, A0, B0 = self._evaluated(entry, index, point, perturbation)
            D = sp.diag(*[random_rational(rng) for _ in range(problem.size)])
            Di = D.inv()
            before = self._zero_curvature(DA, A0, B0).is_zero_matrix
            after = self._zero_curvature(Di * DA * D, Di * A0 * D, Di * B0 * D).is_zero_matrix
            if before != after:
                self.logger.error(f"❌ {problem.problem_id} 对角规范共轭改变了残差判定")
            return before == after

        if sample is not None:
            return at(self._complete_sample(entry, sample))
        return with_resampling(
            lambda r: at(self.draw_sample(problem.problem_id, r)),
            rng, self.config.max_resample, f"{problem.problem_id}/gauge",
        )

    # ---------- Riemann 图式 ----------

    def residue_exponents_check(
        self,
        problem_id: str,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> ExponentCheckReport:
        """
        逐个奇点对照 Riemann 图式：

        - Fuchs 型点：留数矩阵的特征多项式等于 ∏(λ−θ_j)（∞ 处留数为 −ΣA_ξ）
        - 不规则点：首项系数的特征值等于图式第一列（∞ 处取相反数），
          且 1/(x−ξ) 系数的迹等于留数列之和
        - 全部留数列之和在 Fuchs 超平面上为零
        """
        entry = self._entry(problem_id)
        problem = entry.problem
        count = self.config.samples if samples is None else samples
        base = self.config.seed if seed is None else seed
        report = ExponentCheckReport(problem.problem_id, count)

        total = sum((sum(e.residues, sp.Integer(0)) for e in problem.scheme), sp.Integer(0))
        if not RationalExpr.of(total.xreplace({problem.eliminate: entry.fuchs_solution})).is_zero():
            report.failures.append(f"留数列之和 {to_text(total)} 与 Fuchs 关系 {to_text(problem.fuchs)} 不符")

        for scheme_entry in problem.scheme:
            report.failures.extend(self._column_count(problem, scheme_entry))

        seen = set(report.failures)
        for k in range(count):
            rng = random.Random(task_seed(base, problem.problem_id, "exponents", str(k)))

            def check(r):
                point = self.draw_sample(problem.problem_id, r)
                return [msg for e in problem.scheme for msg in self._check_point(entry, e, point)]

            for msg in with_resampling(check, rng, self.config.max_resample, f"{problem.problem_id}/exponents"):
                if msg not in seen:
                    seen.add(msg)
                    report.failures.append(msg)

        if report.passed:
            self.logger.info(f"✅ {problem.problem_id} 的 Riemann 图式与系数矩阵一致")
        else:
            for msg in report.failures:
                self.logger.error(f"❌ {problem.problem_id}: {msg}")
        return report

    @staticmethod
    def _local_terms(problem: LinearProblem, location: Optional[sp.Expr]):
        return [t for t in problem.terms if (t.location is None) == (location is None)
                and (location is None or _same_location(t.location, location))]

    def _column_count(self, problem: LinearProblem, scheme_entry: SchemeEntry) -> List[str]:
        local = self._local_terms(problem, scheme_entry.location)
        if scheme_entry.location is None:
            expected = max(t.power for t in local) + 2 if local else 1
        else:
            expected = max((t.power for t in local), default=0)
        widths = {len(r) for r in scheme_entry.rows}
        if widths != {expected}:
            return [f"{scheme_entry.label} 处图式列数 {sorted(widths)} 与极点阶 {expected} 不符"]
        if len(scheme_entry.rows) != problem.size:
            return [f"{scheme_entry.label} 处图式行数 {len(scheme_entry.rows)} 不等于矩阵大小 {problem.size}"]
        return []

    def _check_point(self, entry: _ProblemCache, scheme_entry: SchemeEntry, point: Point) -> List[str]:
        problem = entry.problem
        lam = sp.Dummy("lambda")
        values = [[_finite(sp.sympify(v).xreplace(point), scheme_entry.label) for v in r] for r in scheme_entry.rows]
        first = [r[0] for r in values]
        residue_sum = sum((r[-1] for r in values), sp.Integer(0))
        n = problem.size

        def coefficient(terms, power):
            M = sp.zeros(n, n)
            for term in terms:
                if term.power == power:
                    M += term.coefficient
            return _finite(M.xreplace(point), scheme_entry.label)

        def same_spectrum(M: sp.Matrix, roots: Sequence[sp.Expr]) -> bool:
            target = sp.Poly(sp.prod([lam - r for r in roots]), lam).all_coeffs()
            actual = M.charpoly().all_coeffs()
            return len(actual) == len(target) and all(sp.expand(a - b) == 0 for a, b in zip(actual, target))

        finite_poles = [t for t in problem.terms if t.location is not None]
        label = scheme_entry.label
        failures = []
        if scheme_entry.location is None:
            residue = coefficient(finite_poles, 1)
            local = self._local_terms(problem, None)
            if not local:
                if not same_spectrum(-residue, first):
                    failures.append(f"{label} 处 −ΣA_ξ 的特征值与图式不符")
                return failures
            top = max(t.power for t in local)
            if not same_spectrum(coefficient(local, top), [-v for v in first]):
                failures.append(f"{label} 处首项系数的特征值与图式第一列不符")
            if sp.expand(-residue.trace() - residue_sum) != 0:
                failures.append(f"{label} 处留数迹与图式留数列之和不符")
            return failures

        local = self._local_terms(problem, scheme_entry.location)
        if not local:
            return [f"{label} 处没有对应的极点项"]
        top = max(t.power for t in local)
        residue = coefficient(local, 1)
        if top == 1:
            if not same_spectrum(residue, first):
                failures.append(f"{label} 处留数矩阵的特征值与图式不符")
            return failures
        if not same_spectrum(coefficient(local, top), first):
            failures.append(f"{label} 处首项系数的特征值与图式第一列不符")
        if sp.expand(residue.trace() - residue_sum) != 0:
            failures.append(f"{label} 处留数迹与图式留数列之和不符")
        return failures


# 全局服务实例
_laxpair_service: Optional[LaxPairService] = None


def get_laxpair_service() -> LaxPairService:
    """获取 Lax 对服务单例"""
    global _laxpair_service
    if _laxpair_service is None:
        _laxpair_service = LaxPairService()
    return _laxpair_service
