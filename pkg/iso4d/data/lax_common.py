"""
Lax 对数据的公共符号与构造工具
"""
from typing import Callable, Dict, Iterable, Optional, Sequence

import sympy as sp

from ..models.lax_models import AnchoredRate, GaugeLaw, LinearProblem, PoleTerm, SchemeEntry
from ..models.symexpr import X, sym

x = X
t, t1, t2 = sym("t"), sym("t1"), sym("t2")
q1, p1, q2, p2 = sym("q1"), sym("p1"), sym("q2"), sym("p2")
lambda1, mu1, lambda2, mu2 = sym("lambda1"), sym("mu1"), sym("lambda2"), sym("mu2")
u, v, w = sym("u"), sym("v"), sym("w")
u11, u12, u21, u22 = sym("u11"), sym("u12"), sym("u21"), sym("u22")

th0, th1, tht = sym("theta_0"), sym("theta_1"), sym("theta_t")
tht1, tht2 = sym("theta_t1"), sym("theta_t2")
th01, th02 = sym("theta_0_1"), sym("theta_0_2")
thi1, thi2, thi3, thi4 = (sym(f"theta_inf_{k}") for k in range(1, 5))

QP = (q1, p1, q2, p2)
LM = (lambda1, mu1, lambda2, mu2)

I2 = sp.eye(2)
O2 = sp.zeros(2, 2)
U2 = sp.Matrix([[u11, u12], [u21, u22]])

# 编号 -> 构造函数
LAX_BUILDERS: Dict[str, Callable[[], LinearProblem]] = {}
LAX_ALIASES: Dict[str, str] = {}

FAMILY_TAGS = {"Garnier": "Gar", "FS": "FS", "Sasano": "Ss", "Matrix": "Mat"}


def register(problem_id: str, *aliases: str):
    """登记一个线性问题的构造函数；aliases 为 "<系统编号>-lin" 形式的别名"""
    def deco(fn):
        LAX_BUILDERS[problem_id] = fn
        for alias in aliases:
            LAX_ALIASES[alias] = problem_id
        return fn
    return deco


def col(*entries) -> sp.Matrix:
    return sp.Matrix(entries)


def row(*entries) -> sp.Matrix:
    return sp.Matrix([list(entries)])


def E(m: int, *indices: int) -> sp.Matrix:
    """对角元在给定位置（从 1 计）为 1 的 m×m 矩阵"""
    return sp.diag(*[1 if k + 1 in indices else 0 for k in range(m)])


def gauge(*entries) -> sp.Matrix:
    return sp.diag(*entries)


def conj(A: sp.Matrix, *factors: sp.Matrix) -> sp.Matrix:
    """G^{-1} A G，G 为各因子按书写顺序的乘积"""
    G = sp.eye(A.rows)
    for g in factors:
        G = G * g
    return G.inv() * A * G


def off_diagonal(M: sp.Matrix) -> sp.Matrix:
    out = sp.zeros(M.rows, M.cols)
    for i in range(M.rows):
        for j in range(M.cols):
            if i != j:
                out[i, j] = M[i, j]
    return out


def block2(a, b, c, d) -> sp.Matrix:
    """2×2 分块；标量块按 s·I2 解释"""
    def as_block(m):
        return m if isinstance(m, sp.MatrixBase) else m * I2
    return sp.Matrix(sp.BlockMatrix([[as_block(a), as_block(b)], [as_block(c), as_block(d)]]))


def stack(top, bottom) -> sp.Matrix:
    """纵向拼接 2×2 块（标量按 s·I2）"""
    def as_block(m):
        return m if isinstance(m, sp.MatrixBase) else m * I2
    return as_block(top).col_join(as_block(bottom))


def side(left, right) -> sp.Matrix:
    def as_block(m):
        return m if isinstance(m, sp.MatrixBase) else m * I2
    return as_block(left).row_join(as_block(right))


def conjugator2(a, th_a, th_b) -> sp.Matrix:
    """把下三角 Â∞ 对角化的 2×2 共轭矩阵"""
    return sp.Matrix([[1, 0], [a / (th_a - th_b), 1]])


def lower_conjugator(a, b, c, th_a, th_b, th_c) -> sp.Matrix:
    """把 Â∞ 下三角化的 3×3 共轭矩阵（a, b, c 为 Â∞ 的下三角元素）"""
    return sp.Matrix([
        [1, 0, 0],
        [a / (th_a - th_b), 1, 0],
        [(b + a * c / (th_a - th_b)) / (th_a - th_c), c / (th_b - th_c), 1],
    ])


def first_column_conjugator(a_hat: Sequence, thetas: Sequence) -> sp.Matrix:
    """第一列为 â_i/(θ∞1-θ∞i) 的单位下三角矩阵"""
    m = len(thetas)
    P = sp.eye(m)
    for i in range(1, m):
        P[i, 0] = a_hat[i - 1] / (thetas[0] - thetas[i])
    return P


def qp_from_lambda_mu(lam, mu, theta):
    """λ=1-1/q, μ=q(pq-θ) 的逆：q=1/(1-λ), p=μ(1-λ)²+θ(1-λ)"""
    return 1 / (1 - lam), mu * (1 - lam)**2 + theta * (1 - lam)


def lambda_mu_from_qp(qq, pp, theta):
    return 1 - 1 / qq, qq * (pp * qq - theta)


def lam_mu_chart(*pairs) -> Dict[sp.Symbol, sp.Expr]:
    """(q, p, θ) 依次对应 (λ1, μ1)、(λ2, μ2)：λ=1-1/q, μ=q(pq-θ)"""
    out = {}
    for (lam, mu), (qq, pp, theta) in zip(((lambda1, mu1), (lambda2, mu2)), pairs):
        out[lam], out[mu] = lambda_mu_from_qp(qq, pp, theta)
    return out


def pole(location, power: int, coefficient: sp.Matrix) -> PoleTerm:
    """coefficient/(x-location)^power"""
    return PoleTerm(sp.sympify(location), power, coefficient)


def poly(power: int, coefficient: sp.Matrix) -> PoleTerm:
    """coefficient·x^power（∞ 处的多项式部分）"""
    return PoleTerm(None, power, coefficient)


def rates(**laws) -> Dict[sp.Symbol, GaugeLaw]:
    """u=rate 表示 du/dt = u·rate"""
    out: Dict[sp.Symbol, GaugeLaw] = {}
    for name, law in laws.items():
        g = sym(name)
        out[g] = law if isinstance(law, AnchoredRate) else g * law
    return out


def matrix_rates(M: sp.Matrix, prefactor=1, **scalars) -> Dict[sp.Symbol, GaugeLaw]:
    """dU/dt = prefactor·M U 的各元素，外加标量规范 v 等"""
    dU = prefactor * M * U2
    out: Dict[sp.Symbol, GaugeLaw] = {
        u11: dU[0, 0], u12: dU[0, 1], u21: dU[1, 0], u22: dU[1, 1],
    }
    out.update(rates(**scalars))
    return out


def fuchsian(label: str, location, *exponents) -> SchemeEntry:
    loc = None if location is None else sp.sympify(location)
    return SchemeEntry(label, loc, tuple((sp.sympify(e),) for e in exponents))


def irregular(label: str, location, rows: Iterable[Sequence]) -> SchemeEntry:
    loc = None if location is None else sp.sympify(location)
    return SchemeEntry(label, loc, tuple(tuple(sp.sympify(e) for e in r) for r in rows))


def problem(
    *,
    family: str,
    spectral: str,
    system: str,
    size: int,
    canonical: Sequence[sp.Symbol],
    times: Sequence[sp.Symbol],
    params: Sequence[sp.Symbol],
    fuchs: sp.Expr,
    eliminate: sp.Symbol,
    hamiltonians: Sequence[sp.Expr],
    terms: Sequence[PoleTerm],
    B: Sequence[sp.Matrix],
    gauge_laws: Sequence[Dict[sp.Symbol, GaugeLaw]],
    scheme: Sequence[SchemeEntry],
    chart_map: Optional[Dict[sp.Symbol, sp.Expr]] = None,
    greek: Optional[Sequence[sp.Expr]] = None,
    kappa: Optional[sp.Expr] = None,
    notes: str = "",
) -> LinearProblem:
    """把一个线性问题的全部数据收拢为 LinearProblem"""
    chart = "lambda,mu" if lambda1 in canonical else "q,p"
    return LinearProblem(
        problem_id=f"{FAMILY_TAGS[family]}:{spectral}",
        system_id=system,
        family=family,
        spectral_text=spectral,
        size=size,
        chart=chart,
        canonical=tuple(canonical),
        times=tuple(times),
        params=tuple(params),
        fuchs=sp.sympify(fuchs),
        eliminate=eliminate,
        hamiltonians=tuple(sp.sympify(h) for h in hamiltonians),
        terms=tuple(terms),
        B=tuple(B),
        gauge_laws=tuple(gauge_laws),
        scheme=tuple(scheme),
        chart_map=dict(chart_map or {}),
        greek=None if greek is None else tuple(sp.sympify(g) for g in greek),
        kappa=None if kappa is None else sp.sympify(kappa),
        notes=notes,
    )
