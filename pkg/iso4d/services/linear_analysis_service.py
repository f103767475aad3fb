"""
数值局部分析与 Laplace 变换服务

线性问题先在有理取值点上精确展开成 Laurent 级数，再转成双精度做形式约化：
首项特征值聚类，逐阶解 Sylvester 方程分块对角化，标量首项用标量规范变换吸收。
"""
import logging
import random
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg as sla
import sympy as sp

from ..config.toolkit_config import ToolkitConfig
from ..data.laplace_data import CORRESPONDENCES, REMARKS, correspondence_index, oshima_tables
from ..errors import (
    PreconditionError,
    RamifiedTypeError,
    ResampleSignal,
    UnknownSystemError,
    UnresolvedClusteringError,
)
from ..models.analysis_models import (
    AnalysisConfig,
    CorrespondenceVerdict,
    LaplaceCorrespondence,
    LocalData,
    LocalFormReport,
    LocalSeries,
    OkuboData,
    SpectralAnalysis,
)
from ..models.lax_models import LinearProblem
from ..models.spectral_models import RefiningSequence, SpectralType
from ..models.symexpr import X
from .laxpair_service import LaxPairService, get_laxpair_service
from .sampling import task_seed, with_resampling
from .spectral_service import SpectralService, _tree_key, _tree_levels, get_spectral_service

_S = sp.Dummy("s")

Point = Dict[sp.Symbol, sp.Rational]
Location = Union[sp.Expr, int, str, None]

INFINITY_LABELS = ("inf", "∞", "oo", "infinity")


def is_infinity(location: Location) -> bool:
    if location is None:
        return True
    return isinstance(location, str) and location.strip().lower() in INFINITY_LABELS


def _ascending(expr: sp.Expr) -> Tuple[int, List[sp.Expr]]:
    """多项式按升幂排列的系数（去掉低次零项）及其最低次数"""
    coeffs = sp.Poly(expr, _S).all_coeffs()[::-1]
    v = next(i for i, c in enumerate(coeffs) if c != 0)
    return v, coeffs[v:]


def _power_series(a: Sequence[sp.Expr], b: Sequence[sp.Expr], count: int) -> List[sp.Expr]:
    """a/b 的前 count 项幂级数系数（b[0] ≠ 0）"""
    out: List[sp.Expr] = []
    for k in range(count):
        acc = a[k] if k < len(a) else sp.Integer(0)
        for i in range(1, min(k, len(b) - 1) + 1):
            acc -= b[i] * out[k - i]
        out.append(acc / b[0])
    return out


def _to_numpy(M: sp.Matrix) -> np.ndarray:
    return np.array([[complex(v) for v in row] for row in M.tolist()], dtype=complex)


def _scale(values: Iterable[complex]) -> float:
    return max([1.0] + [abs(v) for v in values])


def _canonical_tree(node):
    if not isinstance(node, list):
        return node
    children = [_canonical_tree(c) for c in node]
    children.sort(key=_tree_key, reverse=True)
    return children


def _match_rows(
    computed: Sequence[Tuple[complex, ...]],
    printed: Sequence[Tuple[complex, ...]],
) -> float:
    """两组指数行在最佳配对下的最大偏差"""
    best = float("inf")
    for perm in permutations(range(len(printed))):
        worst = 0.0
        for i, j in enumerate(perm):
            worst = max(worst, max(abs(a - b) for a, b in zip(computed[i], printed[j])))
            if worst >= best:
                break
        best = min(best, worst)
    return best


class LinearAnalysisService:
    """形式局部约化、谱型提取与 Laplace 对应"""

    def __init__(
        self,
        lax_service: Optional[LaxPairService] = None,
        spectral_service: Optional[SpectralService] = None,
        config: Optional[AnalysisConfig] = None,
    ):
        self.logger = logging.getLogger(__name__)
        self.lax = lax_service or get_laxpair_service()
        self.spectral = spectral_service or get_spectral_service()
        self.config = config or ToolkitConfig.get_analysis_config()
        self.sampling = self.lax.config

    # ---------- 取值点 ----------

    def _problem(self, source: Union[str, LinearProblem]) -> LinearProblem:
        if isinstance(source, LinearProblem):
            return source
        return self.lax.build_lax(source)

    def _numeric_matrix(self, problem: LinearProblem, params: Point) -> sp.Matrix:
        M = problem.A.xreplace(params)
        leftover = sorted(s.name for s in M.free_symbols if s != X)
        if leftover:
            raise PreconditionError(f"{problem.problem_id} 取值点缺少符号: {', '.join(leftover)}")
        for entry in M:
            if entry.has(sp.zoo, sp.nan, sp.oo, sp.S.NegativeInfinity):
                raise ResampleSignal(f"{problem.problem_id} 的系数矩阵在取值点处出现极点")
        return M

    def numeric_point(self, problem_id: str, seed: Optional[int] = None, index: int = 0) -> Point:
        """[1, 10] 内的随机有理参数（确定性种子），并保证系数矩阵可求值"""
        problem = self._problem(problem_id)
        base = self.sampling.seed if seed is None else seed
        rng = random.Random(task_seed(base, problem.problem_id, "numeric", str(index)))

        def draw(r: random.Random) -> Point:
            point = self.lax.draw_numeric_sample(problem.problem_id, r)
            self._numeric_matrix(problem, point)
            return point

        return with_resampling(draw, rng, self.sampling.max_resample, f"{problem.problem_id}/numeric")

    # ---------- Laurent 展开 ----------

    def _resolve_location(self, problem: Optional[LinearProblem], location: Location):
        """返回 (标签, 位置表达式或 None)"""
        if is_infinity(location):
            return "∞", None
        if problem is not None and isinstance(location, str):
            for entry in problem.scheme:
                if entry.label == location.strip():
                    return entry.label, entry.location
            names = {s.name: s for s in problem.times + problem.params}
            return location.strip(), sp.sympify(location, locals=names)
        return str(location), sp.sympify(location)

    def laurent_expand(
        self,
        source: Union[str, LinearProblem, sp.Matrix],
        location: Location,
        params: Optional[Point] = None,
        order: Optional[int] = None,
    ) -> LocalSeries:
        """
        精确有理展开后转为浮点：

        - 有限点 ξ：s = x − ξ
        - ∞：s = 1/x，局部系数矩阵为 −s^{-2}A(1/s)

        非奇点返回 pole_order = 0 的级数。
        """
        if isinstance(source, sp.MatrixBase):
            problem = None
            M = sp.Matrix(source)
            if params:
                M = M.xreplace(params)
            leftover = sorted(s.name for s in M.free_symbols if s != X)
            if leftover:
                raise PreconditionError(f"系数矩阵含有未赋值的符号: {', '.join(leftover)}")
        else:
            problem = self._problem(source)
            if params is None:
                raise PreconditionError(f"{problem.problem_id} 的展开需要数值取值点")
            M = self._numeric_matrix(problem, params)

        label, loc = self._resolve_location(problem, location)
        if loc is None:
            local = -M.xreplace({X: 1 / _S}) / _S**2
        else:
            xi = sp.sympify(loc).xreplace(params or {})
            if xi.free_symbols:
                raise PreconditionError(f"展开点 {label} 含有未赋值的符号")
            local = M.xreplace({X: xi + _S})

        m = M.rows
        parts: Dict[Tuple[int, int], Tuple[int, List[sp.Expr], List[sp.Expr]]] = {}
        for i in range(m):
            for j in range(M.cols):
                e = sp.cancel(sp.together(local[i, j]))
                if e == 0:
                    continue
                num, den = sp.fraction(e)
                va, a = _ascending(num)
                vb, b = _ascending(den)
                parts[(i, j)] = (va - vb, a, b)

        pole = max(0, -min((v for v, _, _ in parts.values()), default=0))
        N = order if order is not None else max(pole, 1) * m + self.config.series_margin
        coefficients = [np.zeros((m, M.cols), dtype=complex) for _ in range(N + 1)]
        for (i, j), (v, a, b) in parts.items():
            count = -pole + N - v + 1
            if count <= 0:
                continue
            series = _power_series(a, b, count)
            for k, c in enumerate(series):
                index = v + k + pole
                if 0 <= index <= N:
                    coefficients[index][i, j] = complex(c)
        self.logger.debug(f"{label} 处 Laurent 展开：极点阶 {pole}，{N + 1} 项系数")
        return LocalSeries(label, pole, coefficients)

    # ---------- 形式约化 ----------

    def _clusters(self, values: np.ndarray, tol: float, label: str) -> List[List[int]]:
        """单链聚类；间隙落在容差与 ambiguity_factor·容差之间时无法判定"""
        n = len(values)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        scale = _scale(values)
        gray = self.config.ambiguity_factor * tol * scale
        for i in range(n):
            for j in range(i + 1, n):
                gap = abs(values[i] - values[j])
                if gap <= tol * scale:
                    parent[find(i)] = find(j)
                elif gap <= gray:
                    raise UnresolvedClusteringError(
                        f"{label} 处特征值 {values[i]:.6g} 与 {values[j]:.6g} 的间隙 {gap:.3g} 无法判定"
                    )
        groups: Dict[int, List[int]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return list(groups.values())

    def _require_semisimple(self, M: np.ndarray, values: np.ndarray, clusters, tol: float, label: str) -> None:
        n = M.shape[0]
        scale = _scale(M.flatten())
        for c in clusters:
            lam = np.mean(values[c])
            sv = np.linalg.svd(M - lam * np.eye(n), compute_uv=False)
            if np.count_nonzero(sv <= tol * scale) < len(c):
                raise RamifiedTypeError(f"{label} 处首项在特征值 {lam:.6g} 上不可对角化（分歧型）")

    def _split(self, coeffs: List[np.ndarray], tol: float, label: str):
        """
        coeffs 为当前层到留数层的系数；返回 (加细树节点列表, 指数行列表)。
        留数层的节点是整数（重数），其余层的节点是子节点列表。
        """
        lead = coeffs[0]
        n = lead.shape[0]
        if len(coeffs) == 1:
            values = np.linalg.eigvals(lead)
            clusters = self._clusters(values, tol, label)
            rows = [(complex(np.mean(values[c])),) for c in clusters for _ in c]
            return [len(c) for c in clusters], rows

        values, V = np.linalg.eig(lead)
        clusters = self._clusters(values, tol, label)
        self._require_semisimple(lead, values, clusters, tol, label)

        if len(clusters) == 1:
            lam = complex(np.mean(values))
            children, rows = self._split(coeffs[1:], tol, label)
            return [children], [(lam,) + row for row in rows]

        order = [i for c in clusters for i in c]
        V = V[:, order]
        Vi = np.linalg.inv(V)
        C = [Vi @ A @ V for A in coeffs]
        bounds, start = [], 0
        for c in clusters:
            bounds.append(slice(start, start + len(c)))
            start += len(c)

        def block_diagonal(M: np.ndarray) -> np.ndarray:
            out = np.zeros_like(M)
            for b in bounds:
                out[b, b] = M[b, b]
            return out

        # 逐阶求 P_k 使 P^{-1} A P 分块对角；留数层之前不出现 P' 项
        B = [block_diagonal(C[0])]
        P = [np.eye(n, dtype=complex)]
        for k in range(1, len(C)):
            M = C[k].copy()
            for i in range(1, k):
                M += C[i] @ P[k - i] - P[k - i] @ B[i]
            Pk = np.zeros_like(M)
            for a in bounds:
                for b in bounds:
                    if a != b:
                        Pk[a, b] = sla.solve_sylvester(B[0][a, a], -B[0][b, b], -M[a, b])
            B.append(block_diagonal(M))
            P.append(Pk)

        nodes, rows = [], []
        for b in bounds:
            sub_nodes, sub_rows = self._split([Bk[b, b] for Bk in B], tol, label)
            nodes.extend(sub_nodes)
            rows.extend(sub_rows)
        return nodes, rows

    def reduce_local(self, series: LocalSeries, tol: Optional[float] = None) -> LocalData:
        """约化到典则形式 s^{-(r+1)}(T_0 + T_1 s + … + T_r s^r)，给出加细序列与指数行"""
        if series.regular:
            raise PreconditionError(f"{series.location} 不是奇点")
        tol = self.config.cluster_tol if tol is None else tol
        r = series.pole_order - 1
        if len(series.coefficients) < r + 1:
            raise PreconditionError(f"{series.location} 处展开阶数不足以确定 T_0…T_{r}")
        nodes, rows = self._split([np.asarray(C, dtype=complex) for C in series.coefficients[: r + 1]], tol, series.location)
        tree = _canonical_tree(nodes)
        refining = RefiningSequence.from_lists(_tree_levels(tree, r))
        return LocalData(series.location, refining, rows, self.spectral.print_local(refining))

    # ---------- 整体谱型 ----------

    def _assemble(self, source: str, locals_: List[LocalData], sample: Dict[str, str]) -> SpectralAnalysis:
        if not locals_:
            raise PreconditionError(f"{source} 没有奇点")
        spectral = SpectralType(tuple(d.refining for d in locals_))
        fuchs_sum = complex(sum(d.formal_monodromy_trace for d in locals_))
        scale = _scale(v for d in locals_ for row in d.rows for v in row)
        if abs(fuchs_sum) > self.config.exponent_tol * scale * 10:
            self.logger.warning(f"⚠️ {source} 的形式单值指数之和 {fuchs_sum:.3g} 不为零")
        return SpectralAnalysis(
            source=source,
            locals=locals_,
            spectral=spectral,
            spectral_text=self.spectral.print_spectral(spectral),
            fuchs_sum=fuchs_sum,
            sample=sample,
        )

    def spectral_type_of(
        self,
        problem_id: Union[str, LinearProblem],
        params: Optional[Point] = None,
        tol: Optional[float] = None,
        seed: Optional[int] = None,
    ) -> SpectralAnalysis:
        """逐个奇点（含 ∞）做局部约化并汇总"""
        problem = self._problem(problem_id)
        if params is None:
            params = self.numeric_point(problem.problem_id, seed)
        locals_ = []
        for entry in problem.scheme:
            series = self.laurent_expand(problem, entry.label if entry.location is not None else None, params)
            if series.regular:
                self.logger.debug(f"{problem.problem_id}: {entry.label} 在该取值点处不是奇点")
                continue
            locals_.append(self.reduce_local(series, tol))
        sample = {s.name: str(v) for s, v in sorted(params.items(), key=lambda kv: kv[0].name)}
        return self._assemble(problem.problem_id, locals_, sample)

    def analyzed_point(
        self,
        problem_id: Union[str, LinearProblem],
        seed: Optional[int] = None,
        index: int = 0,
        tol: Optional[float] = None,
    ) -> Tuple[Point, SpectralAnalysis]:
        """
        取值点连同其谱型分析一起抽样：首项特征值落在含糊聚类区间时换一个取值点，
        重采样次数用尽时抛出 ResampleSignal
        """
        problem = self._problem(problem_id)
        base = self.sampling.seed if seed is None else seed
        rng = random.Random(task_seed(base, problem.problem_id, "local", str(index)))

        def draw(r: random.Random) -> Tuple[Point, SpectralAnalysis]:
            point = self.lax.draw_numeric_sample(problem.problem_id, r)
            self._numeric_matrix(problem, point)
            try:
                return point, self.spectral_type_of(problem, point, tol)
            except UnresolvedClusteringError as e:
                raise ResampleSignal(str(e)) from e

        return with_resampling(draw, rng, self.sampling.max_resample, f"{problem.problem_id}/local")

    def analyze_matrix(self, A: sp.Matrix, tol: Optional[float] = None) -> SpectralAnalysis:
        """只含 x 的有理系数矩阵：有限奇点取分母的有理根"""
        A = sp.Matrix(A).applyfunc(lambda e: sp.cancel(sp.together(e)))
        leftover = sorted(s.name for s in A.free_symbols if s != X)
        if leftover:
            raise PreconditionError(f"系数矩阵含有未赋值的符号: {', '.join(leftover)}")
        poles = set()
        for e in A:
            den = sp.fraction(e)[1]
            if den.has(X):
                roots = sp.roots(sp.Poly(den, X))
                if sum(roots.values()) != sp.degree(den, X):
                    raise PreconditionError(f"分母 {den} 有非有理根")
                poles.update(roots)
        locals_ = []
        for loc in sorted(poles, key=lambda v: (sp.re(v), sp.im(v))) + [None]:
            series = self.laurent_expand(A, loc)
            if not series.regular:
                locals_.append(self.reduce_local(series, tol))
        return self._assemble("matrix", locals_, {})

    def scheme_deviation(self, problem: LinearProblem, analysis: SpectralAnalysis, params: Point) -> Dict[str, float]:
        """各奇点处计算所得指数行与 Riemann 图式（代入取值点）的最大偏差"""
        out = {}
        for entry in problem.scheme:
            try:
                local = analysis.local_at(entry.label)
            except KeyError:
                out[entry.label] = float("inf")
                continue
            printed = [tuple(complex(sp.sympify(v).xreplace(params)) for v in row) for row in entry.rows]
            if len(printed) != len(local.rows) or len(printed[0]) != len(local.rows[0]):
                out[entry.label] = float("inf")
                continue
            out[entry.label] = _match_rows(local.rows, printed)
        return out

    def check_problem(
        self,
        problem_id: str,
        draws: Optional[int] = None,
        seed: Optional[int] = None,
        tol: Optional[float] = None,
    ) -> LocalFormReport:
        """在若干随机取值点上复现登记的谱型与 Riemann 图式"""
        problem = self._problem(problem_id)
        count = self.config.draws if draws is None else draws
        expected = self.spectral.parse_spectral(problem.spectral_text)
        report = LocalFormReport(problem.problem_id, count)
        for k in range(count):
            try:
                params, analysis = self.analyzed_point(problem, seed, index=k, tol=tol)
            except (ResampleSignal, RamifiedTypeError, PreconditionError) as e:
                report.failures.append(f"第 {k} 个取值点: {e}")
                continue
            report.spectral.append(analysis.spectral_text)
            if not analysis.spectral.eq_multiset(expected):
                report.failures.append(f"第 {k} 个取值点: 谱型 {analysis.spectral_text} ≠ {problem.spectral_text}")
            deviations = self.scheme_deviation(problem, analysis, params)
            worst = max(deviations.values(), default=0.0)
            report.max_deviation = max(report.max_deviation, worst)
            scale = _scale(v for d in analysis.locals for row in d.rows for v in row)
            for label, dev in deviations.items():
                if dev > self.config.exponent_tol * scale:
                    report.failures.append(f"第 {k} 个取值点: {label} 处指数偏差 {dev:.3g}")
            if abs(analysis.fuchs_sum) > self.config.exponent_tol * scale * 10:
                report.failures.append(f"第 {k} 个取值点: 形式单值指数之和 {analysis.fuchs_sum:.3g} ≠ 0")
        if report.passed:
            self.logger.info(f"✅ {problem.problem_id} 的局部形式与谱型 {problem.spectral_text} 一致")
        else:
            for msg in report.failures:
                self.logger.error(f"❌ {problem.problem_id}: {msg}")
        return report

    # ---------- Okubo 型数据 ----------

    def _rank_factor(self, R: np.ndarray, tol: float, label: str):
        """R − cI = Q·P，c 取重数最大的特征值（并列时取模最小者）"""
        values = np.linalg.eigvals(R)
        clusters = self._clusters(values, tol, label)
        best = max(clusters, key=lambda c: (len(c), -abs(np.mean(values[c]))))
        shift = complex(np.mean(values[best]))
        U, s, Vh = np.linalg.svd(R - shift * np.eye(R.shape[0]))
        k = int(np.sum(s > tol * _scale(s)))
        return U[:, :k] * s[:k], Vh[:k, :], shift

    def okubo_from_problem(
        self,
        problem_id: Union[str, LinearProblem],
        params: Point,
        tol: Optional[float] = None,
    ) -> OkuboData:
        """
        把唯一的不规则奇点移到 ∞（y = 1/(x − ξ)），再写成
        Q(y − T)^{-1}P + S_0 + S_1 y；各留数先减去标量再做数值秩分解
        """
        tol = self.config.cluster_tol if tol is None else tol
        problem = self._problem(problem_id)
        A = self._numeric_matrix(problem, params)
        irregular = [e for e in problem.scheme if len(e.rows[0]) > 1]
        if len(irregular) != 1:
            raise PreconditionError(f"{problem.problem_id} 需要恰好一个不规则奇点才能写成 Okubo 型")
        if irregular[0].location is not None:
            xi = sp.sympify(irregular[0].location).xreplace(params)
            A = -A.xreplace({X: xi + 1 / X}) / X**2
        A = A.applyfunc(lambda e: sp.cancel(sp.together(e)))

        den = sp.Integer(1)
        for e in A:
            den = sp.lcm(den, sp.fraction(e)[1])
        poles: Dict[sp.Expr, int] = sp.roots(sp.Poly(den, X)) if den.has(X) else {}
        if den.has(X) and sum(poles.values()) != sp.degree(den, X):
            raise PreconditionError(f"{problem.problem_id}: 有限奇点不全是有理点")
        if any(mult > 1 for mult in poles.values()):
            raise PreconditionError(f"{problem.problem_id}: 移动后的有限奇点不是 Fuchs 型")

        residues = []
        remainder = A
        for tau in sorted(poles, key=lambda v: (sp.re(v), sp.im(v))):
            R = ((X - tau) * A).applyfunc(lambda e: sp.cancel(sp.together(e))).xreplace({X: tau})
            residues.append((tau, R))
            remainder = remainder - R / (X - tau)
        remainder = remainder.applyfunc(lambda e: sp.cancel(sp.together(e)))
        for e in remainder:
            if sp.fraction(e)[1].has(X) or sp.degree(e, X) > 1:
                raise PreconditionError(f"{problem.problem_id}: ∞ 处 Poincaré 秩超过 2")
        S0 = _to_numpy(remainder.xreplace({X: 0}))
        S1 = _to_numpy(remainder.applyfunc(lambda e: sp.expand(e).coeff(X, 1)))

        m = A.rows
        Qs, Ps, taus = [], [], []
        for tau, R in residues:
            Qb, Pb, _ = self._rank_factor(_to_numpy(R), tol, f"{problem.problem_id}@{tau}")
            Qs.append(Qb)
            Ps.append(Pb)
            taus += [complex(tau)] * Qb.shape[1]
        Q = np.hstack(Qs) if Qs else np.zeros((m, 0), dtype=complex)
        P = np.vstack(Ps) if Ps else np.zeros((0, m), dtype=complex)
        T = np.diag(np.array(taus, dtype=complex)) if taus else np.zeros((0, 0), dtype=complex)
        return OkuboData(T=T, Q=Q, P=P, S0=S0, S1=S1 if np.any(S1) else None, label=problem.problem_id)

    def normalize_rank2(self, d: OkuboData, shift: complex, tol: Optional[float] = None) -> OkuboData:
        """
        标量规范变换 exp(−c x²/2) 把 S_1 平移 −cI，
        再用常数规范变换化成 S_1 = diag(a_1, …, a_k, 0, …, 0)
        """
        tol = self.config.cluster_tol if tol is None else tol
        if d.S1 is None:
            raise PreconditionError(f"{d.label} 不是秩 2 形式")
        m = d.m
        S1 = d.S1 - shift * np.eye(m)
        values, W = np.linalg.eig(S1)
        clusters = self._clusters(values, tol, d.label)
        self._require_semisimple(S1, values, clusters, tol, d.label)
        scale = _scale(values)
        zero = [i for c in clusters if abs(np.mean(values[c])) <= tol * scale for i in c]
        nonzero = [i for i in range(m) if i not in zero]
        order = nonzero + zero
        W = W[:, order]
        Wi = np.linalg.inv(W)
        diag = np.array([values[i] if i in nonzero else 0 for i in order], dtype=complex)
        return OkuboData(
            T=d.T,
            Q=Wi @ d.Q,
            P=d.P @ W,
            S0=Wi @ d.S0 @ W,
            S1=np.diag(diag),
            label=d.label,
        )

    def rank2_shifts(self, d: OkuboData, tol: Optional[float] = None) -> List[complex]:
        """S_1 的互异特征值：每个都给出一种可做 Laplace 变换的规范化"""
        tol = self.config.cluster_tol if tol is None else tol
        values = np.linalg.eigvals(d.S1)
        return [complex(np.mean(values[c])) for c in self._clusters(values, tol, d.label)]

    # ---------- Laplace 变换 ----------

    def laplace_rank1(self, d: OkuboData) -> OkuboData:
        """dẐ/dξ = −[P(ξ − S)^{-1}Q + T]Ẑ"""
        if d.rank != 1:
            raise PreconditionError(f"{d.label} 在 ∞ 处的 Poincaré 秩为 {d.rank}，不适用秩 1 公式")
        return OkuboData(T=d.S0, Q=-d.P, P=d.Q, S0=-d.T, S1=None, label=f"L[{d.label}]")

    def laplace_rank2(self, d: OkuboData, tol: Optional[float] = None) -> OkuboData:
        """
        S_1 = diag(S̃_1, O) 时消去 Ŷ_2 后的系统：

            (S̃_1^{-1}S_0^{12}; −P_2)(ξ − S_0^{22})^{-1}(S_0^{21}, Q_2)
            + [[S̃_1^{-1}S_0^{11}, S̃_1^{-1}Q_1], [−P_1, −T]] − ξ diag(S̃_1^{-1}, O)
        """
        tol = self.config.cluster_tol if tol is None else tol
        if d.S1 is None:
            raise PreconditionError(f"{d.label} 不是秩 2 形式")
        m, l = d.m, d.l
        diag = np.diag(d.S1)
        scale = _scale(diag)
        nonzero = np.abs(diag) > tol * scale
        k = int(np.count_nonzero(nonzero))
        off = d.S1 - np.diag(diag)
        if np.any(np.abs(off) > tol * scale) or not np.all(nonzero[:k]) or np.any(nonzero[k:]):
            raise PreconditionError(f"{d.label}: S_1 必须形如 diag(a_1, …, a_k, 0, …, 0)")
        if k == 0:
            raise PreconditionError(f"{d.label}: S̃_1 为空，不可逆")
        Si = np.diag(1.0 / diag[:k])
        S0 = d.S0
        S011, S012 = S0[:k, :k], S0[:k, k:]
        S021, S022 = S0[k:, :k], S0[k:, k:]
        Q1, Q2 = d.Q[:k, :], d.Q[k:, :]
        P1, P2 = d.P[:, :k], d.P[:, k:]
        U = np.vstack([Si @ S012, -P2])
        V = np.hstack([S021, Q2])
        C = np.block([[Si @ S011, Si @ Q1], [-P1, -d.T]])
        S1_new = -sla.block_diag(Si, np.zeros((l, l), dtype=complex))
        return OkuboData(T=S022, Q=U, P=V, S0=C, S1=S1_new, label=f"L[{d.label}]")

    def laplace(self, d: OkuboData) -> OkuboData:
        return self.laplace_rank1(d) if d.rank == 1 else self.laplace_rank2(d)

    # ---------- Okubo 型数据的谱型 ----------

    def _okubo_poles(self, d: OkuboData, tol: float) -> List[Tuple[complex, np.ndarray]]:
        if d.l == 0:
            return []
        values, W = np.linalg.eig(d.T)
        clusters = self._clusters(values, tol, f"{d.label}/T")
        self._require_semisimple(d.T, values, clusters, tol, f"{d.label}/T")
        Qd, Pd = d.Q @ W, np.linalg.inv(W) @ d.P
        return [(complex(np.mean(values[c])), Qd[:, c] @ Pd[c, :]) for c in clusters]

    def _series_from_powers(
        self, label: str, powers: Dict[int, np.ndarray], m: int, count: int, scale: float,
    ) -> LocalSeries:
        # 阈值按 Okubo 数据的量级取，不含 τ^k 放大后的高阶系数
        live = [p for p, M in powers.items() if np.any(np.abs(M) > 1e-13 * scale)]
        pole = max(0, -min(live, default=0))
        coefficients = [powers.get(-pole + j, np.zeros((m, m), dtype=complex)) for j in range(count)]
        return LocalSeries(label, pole, coefficients)

    def okubo_series(self, d: OkuboData, tol: Optional[float] = None) -> List[LocalSeries]:
        """Okubo 型系统在各有限奇点与 ∞ 处的 Laurent 展开"""
        tol = self.config.cluster_tol if tol is None else tol
        m = d.m
        S1 = d.S1 if d.S1 is not None else np.zeros((m, m), dtype=complex)
        poles = self._okubo_poles(d, tol)
        count = 3 * m + self.config.series_margin
        scale = _scale(
            abs(v) for M in [d.T, d.S0, S1] + [R for _, R in poles] for v in np.asarray(M).flatten()
        )
        out = []
        for tau, R in poles:
            powers: Dict[int, np.ndarray] = {-1: R}
            for p in range(count):
                M = np.zeros((m, m), dtype=complex)
                if p == 0:
                    M += d.S0 + S1 * tau
                if p == 1:
                    M += S1
                for other, R2 in poles:
                    if other != tau:
                        M += R2 * (-1) ** p / (tau - other) ** (p + 1)
                powers[p] = M
            out.append(self._series_from_powers(f"{tau:.6g}", powers, m, count, scale))
        powers = {-3: -S1, -2: -d.S0.astype(complex)}
        for k in range(count):
            M = np.zeros((m, m), dtype=complex)
            for tau, R in poles:
                M -= R * tau**k
            powers[k - 1] = M
        out.append(self._series_from_powers("∞", powers, m, count, scale))
        return out

    def okubo_spectral(self, d: OkuboData, tol: Optional[float] = None) -> SpectralAnalysis:
        locals_ = [self.reduce_local(s, tol) for s in self.okubo_series(d, tol) if not s.regular]
        return self._assemble(d.label or "okubo", locals_, {})

    # ---------- Laplace 对应 ----------

    def list_correspondences(self) -> List[LaplaceCorrespondence]:
        return list(CORRESPONDENCES)

    def laplace_tables(self) -> Dict:
        """对应表、幂零构造备注与三点 Fuchs 型分类表"""
        return {
            "correspondences": [c.to_dict() for c in CORRESPONDENCES],
            "remarks": [r.to_dict() for r in REMARKS],
            "oshima": oshima_tables(),
        }

    def get_correspondence(self, pair_id: str) -> LaplaceCorrespondence:
        index = correspondence_index()
        key = pair_id.strip().replace("↔", "<->")
        key = " <-> ".join(part.strip() for part in key.split("<->"))
        if key not in index:
            raise UnknownSystemError(pair_id, kind="Laplace 对应")
        return index[key]

    def dual_candidates(self, d: OkuboData, tol: Optional[float] = None) -> List[Tuple[str, OkuboData]]:
        """秩 1 只有一种变换；秩 2 对 S_1 的每个特征值平移各做一次"""
        if d.rank == 1:
            return [("", self.laplace_rank1(d))]
        out = []
        for shift in self.rank2_shifts(d, tol):
            normalized = self.normalize_rank2(d, shift, tol)
            out.append((f"S_1 平移 {shift:.6g}", self.laplace_rank2(normalized, tol)))
        return out

    def check_dual(
        self, d: OkuboData, expected_text: str, tol: Optional[float] = None, strict: bool = False,
    ) -> Tuple[bool, List[str]]:
        """
        Okubo 数据的 Laplace 对偶是否具有给定谱型；返回 (是否一致, 各候选的谱型)。
        strict 时，没有候选一致且有候选聚类含糊则抛出该 UnresolvedClusteringError
        """
        expected = self.spectral.parse_spectral(expected_text)
        seen = []
        ambiguous: Optional[UnresolvedClusteringError] = None
        for note, dual in self.dual_candidates(d, tol):
            try:
                analysis = self.okubo_spectral(dual, tol)
            except (UnresolvedClusteringError, RamifiedTypeError, PreconditionError) as e:
                seen.append(f"{note}: {e}".strip(": "))
                if isinstance(e, UnresolvedClusteringError):
                    ambiguous = e
                continue
            seen.append(f"{analysis.spectral_text} ({note})" if note else analysis.spectral_text)
            if analysis.spectral.eq_multiset(expected):
                return True, seen
        if strict and ambiguous is not None:
            raise ambiguous
        return False, seen

    def _correspondence_side(
        self,
        problem_id: str,
        point: Point,
        own_text: str,
        partner_text: str,
        rank: int,
        tol: Optional[float],
    ) -> Tuple[Dict[str, str], List[str]]:
        """单侧：本身的谱型、Okubo 形式的秩、Laplace 对偶的谱型"""
        computed: Dict[str, str] = {}
        mismatches: List[str] = []
        analysis = self.spectral_type_of(problem_id, point, tol)
        computed[problem_id] = analysis.spectral_text
        if not analysis.spectral.eq_multiset(self.spectral.parse_spectral(own_text)):
            mismatches.append(f"{problem_id} 的谱型为 {analysis.spectral_text}，应为 {own_text}")
        d = self.okubo_from_problem(problem_id, point, tol)
        if d.rank != rank:
            mismatches.append(f"{problem_id} 的 Okubo 形式秩为 {d.rank}，应为 {rank}")
            return computed, mismatches
        ok, seen = self.check_dual(d, partner_text, tol, strict=True)
        computed[f"L[{problem_id}]"] = " | ".join(seen)
        if not ok:
            mismatches.append(f"L[{problem_id}] 的谱型 {seen} 中没有 {partner_text}")
        return computed, mismatches

    def verify_correspondence(
        self,
        pair_id: str,
        params: Optional[Dict[str, Point]] = None,
        tol: Optional[float] = None,
        seed: Optional[int] = None,
    ) -> CorrespondenceVerdict:
        """
        两侧线性问题各取一个数值点：本身的谱型、Okubo 形式的秩，
        以及 Laplace 对偶的谱型都与对应表一致。
        未给定取值点时，聚类含糊的取值点会被换掉
        """
        c = self.get_correspondence(pair_id)
        verdict = CorrespondenceVerdict(c.pair_id)
        base = self.sampling.seed if seed is None else seed
        sides = ((c.left, c.left_text, c.right_text), (c.right, c.right_text, c.left_text))
        for problem_id, own_text, partner_text in sides:
            verdict.expected[problem_id] = own_text
            verdict.expected[f"L[{problem_id}]"] = partner_text
            given = (params or {}).get(problem_id)

            def draw(r: random.Random, problem_id=problem_id, own_text=own_text,
                     partner_text=partner_text, given=given):
                point = given or self.lax.draw_numeric_sample(problem_id, r)
                self._numeric_matrix(self._problem(problem_id), point)
                try:
                    return self._correspondence_side(problem_id, point, own_text, partner_text, c.rank, tol)
                except UnresolvedClusteringError as e:
                    if given:
                        raise
                    raise ResampleSignal(str(e)) from e

            rng = random.Random(task_seed(base, c.pair_id, problem_id))
            try:
                attempts = 0 if given else self.sampling.max_resample
                computed, mismatches = with_resampling(draw, rng, attempts, f"{problem_id}/laplace")
            except (ResampleSignal, UnresolvedClusteringError, RamifiedTypeError, PreconditionError) as e:
                verdict.mismatches.append(f"{problem_id}: {e}")
                continue
            verdict.computed.update(computed)
            verdict.mismatches.extend(mismatches)
        if verdict.passed:
            self.logger.info(f"✅ Laplace 对应 {c.left_text} ↔ {c.right_text} 成立")
        else:
            for msg in verdict.mismatches:
                self.logger.error(f"❌ {c.pair_id}: {msg}")
        return verdict

    def verify_all_correspondences(self, seed: Optional[int] = None) -> List[CorrespondenceVerdict]:
        return [self.verify_correspondence(c.pair_id, seed=seed) for c in CORRESPONDENCES]


_linear_analysis_service: Optional[LinearAnalysisService] = None


def get_linear_analysis_service() -> LinearAnalysisService:
    """获取数值局部分析服务单例"""
    global _linear_analysis_service
    if _linear_analysis_service is None:
        _linear_analysis_service = LinearAnalysisService()
    return _linear_analysis_service
