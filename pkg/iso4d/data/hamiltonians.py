"""
经典 Painlevé 哈密顿量与 22 个四维系统的希腊字母形式
"""
import sympy as sp

from ..models.symexpr import sym

q, p, t = sym("q"), sym("p"), sym("t")
q1, p1, q2, p2 = sym("q1"), sym("p1"), sym("q2"), sym("p2")
t1, t2 = sym("t1"), sym("t2")
alpha, beta, gamma, delta = sym("alpha"), sym("beta"), sym("gamma"), sym("delta")
epsilon, zeta, omega = sym("epsilon"), sym("zeta"), sym("omega")
gamma1, gamma2 = sym("gamma1"), sym("gamma2")

CANONICAL = (q1, p1, q2, p2)
K = sp.diag(1, -1)


# ---- 经典哈密顿量（已除去 t(t-1)、t 等前因子） ----

def H_VI(a, b, c, d, tt, qq, pp):
    num = (qq * (qq - 1) * (qq - tt) * pp**2
           + (d * qq * (qq - 1) - (2 * a + b + c + d) * qq * (qq - tt) + c * (qq - 1) * (qq - tt)) * pp
           + a * (a + b) * (qq - tt))
    return num / (tt * (tt - 1))


def H_V(a, b, c, tt, qq, pp):
    return (pp * (pp + tt) * qq * (qq - 1) + b * pp * qq + c * pp - (a + c) * tt * qq) / tt


def H_V_tilde(a, b, c, tt, qq, pp):
    num = (qq * (qq - 1)**2 * pp**2
           + ((1 - qq) * (a + (b + 2 * c) * qq) + tt * qq) * pp
           - c * (b + c) * (1 - qq))
    return num / tt


def H_IV(a, b, tt, qq, pp):
    return pp * qq * (pp - qq - tt) + b * pp + a * qq


def H_III_D6(a, b, tt, qq, pp):
    return (pp**2 * qq**2 - (qq**2 - b * qq - tt) * pp - a * qq) / tt


def H_III_D7(a, tt, qq, pp):
    return (pp**2 * qq**2 + a * qq * pp + tt * pp + qq) / tt


def H_III_D8(tt, qq, pp):
    return (pp**2 * qq**2 + qq * pp - qq - tt / qq) / tt


def H_II(a, tt, qq, pp):
    return pp**2 - (qq**2 + tt) * pp - a * qq


def H_I(tt, qq, pp):
    return pp**2 - qq**3 - tt * qq


# kind -> (函数, 参数个数)
CLASSICAL = {
    "VI": (H_VI, 4),
    "V": (H_V, 3),
    "V~": (H_V_tilde, 3),
    "IV": (H_IV, 2),
    "III_D6": (H_III_D6, 2),
    "III_D7": (H_III_D7, 1),
    "III_D8": (H_III_D8, 0),
    "II": (H_II, 1),
    "I": (H_I, 0),
}

CLASSICAL_PARAMS = {
    "VI": (alpha, beta, gamma, delta),
    "V": (alpha, beta, gamma),
    "V~": (alpha, beta, gamma),
    "IV": (alpha, beta),
    "III_D6": (alpha, beta),
    "III_D7": (alpha,),
    "III_D8": (),
    "II": (alpha,),
    "I": (),
}

# 另一种第五哈密顿量的典则变换 q → 1-1/q, p → q(pq-γ)
TILDE_V_MAP = {q: 1 - 1 / q, p: q * (p * q - gamma)}
TILDE_V_TARGET = H_V(beta + gamma, alpha + beta, -beta, t, q, p) - alpha * gamma / t + gamma


# ---- 四维系统（希腊字母参数） ----

def _garnier_11111(i):
    # 耦合系数、p1p2 项的符号与 γ_i 项的 q_j 因子按 θ 形式改正
    ti, tj = (t1, t2) if i == 0 else (t2, t1)
    qi, pi_, qj, pj = (q1, p1, q2, p2) if i == 0 else (q2, p2, q1, p1)
    gi, gj = (gamma1, gamma2) if i == 0 else (gamma2, gamma1)
    body = (ti * (ti - 1) * H_VI(alpha, beta, gi, gj + delta, ti, qi, pi_)
            + (2 * qi * pi_ + qj * pj - beta - 2 * alpha) * q1 * q2 * pj
            - q1 * q2 / (ti - tj) * (ti * (ti - 1) * pi_**2 - 2 * ti * (tj - 1) * p1 * p2 + tj * (ti - 1) * pj**2)
            + gj * tj * (ti - 1) / (ti - tj) * qi * (pi_ - pj)
            - gi * ti * qj / (ti - tj) * ((ti - 1) * pi_ - (tj - 1) * pj))
    return body / (ti * (ti - 1))


def _coupling(a, b):
    """(p1(q1-q2)-a)(p2(q2-q1)-b)"""
    return (p1 * (q1 - q2) - a) * (p2 * (q2 - q1) - b)


def _gar_2111():
    h1 = (H_V(-alpha - gamma, -beta - gamma - delta - 1, alpha + beta + gamma, t1, q1, p1)
          + p1 / t1 * (gamma * (q1 - q2) + p2 * q2 * (q2 - 1))
          + _coupling(beta, gamma) / (t1 - t2))
    h2 = (H_V(-alpha - beta, -beta - gamma - delta - 1, alpha + beta + gamma, t2, q2, p2)
          + p2 / t2 * (beta * (q2 - q1) + p1 * q1 * (q1 - 1))
          + _coupling(beta, gamma) / (t2 - t1))
    return h1, h2


def _gar_221():
    h1 = (H_V(alpha + beta + gamma, beta - alpha, -beta - gamma, t1, q1, p1)
          + (q1 * q2 * (p1 * q1 - alpha) + p2 * q2 * (alpha + p1 - 2 * p1 * q1) - t2 / t1 * p1 * (p2 - q1)) / t1)
    h2 = (H_III_D6(-alpha - beta - gamma, -beta, t2, q2, p2)
          + (-(p1 * q1 - alpha) * q2 * (q1 - 1) + t2 / t1 * p1 * (p2 - q1)) / t2)
    return h1, h2


def _gar_311():
    h1 = H_IV(alpha, gamma, t1, q1, p1) + p2 * q2 * p1 + _coupling(alpha, beta) / (t1 - t2)
    h2 = H_IV(beta, gamma, t2, q2, p2) + p1 * q1 * p2 + _coupling(alpha, beta) / (t2 - t1)
    return h1, h2


def _gar_32():
    h1 = H_III_D6(-beta, alpha + 1, t1, q1, p1) - p1 - q1 * q2 / t1 * (q2 - p2 + t2) + p1 * p2 - q2
    h2 = H_IV(alpha, beta, t2, q2, p2) - p1 * q1 * (p2 - 2 * q2 - t2) - q1 * q2 + t1 * p1
    return h1, h2


def _gar_41():
    h1 = H_II(-beta, t1, q1, p1) + p2 * q2 * (q1 - q2 + t2) + p1 * p2 + alpha * q2
    h2 = (-p2**2 * q2 - t2 * p2 * q2**2 + t2**2 * p2 * q2 + alpha * t2 * q2 - beta * p2
          + p1 * p2 * (q1 - 2 * q2 + t2) + q1 * q2 * (p2 * q2 - alpha) + alpha * p1 + t1 * p2 * q2)
    return h1, h2


def _gar_5():
    h1 = -q1 * (q1 * p1 - alpha) + q2 * (q1 * (p2 + q2) - 2 * p1 + t1) + p1 * (p2 - 2 * t2)
    h2 = H_IV(-1, alpha, 2 * t2, q2, p2) + q1 * q2 * (q1 * q2 - 2 * p1 + t1) + p1 * (p1 - p2 * q1 - t1)
    return h1, h2


def _gar_32111():
    h1 = (H_III_D6(-alpha, gamma - alpha, t1, q1, p1)
          + (q1 * (q1 * p1 * p2 - alpha * p2)) / t1
          + _coupling(alpha, beta) / (t1 - t2))
    h2 = (H_III_D6(-beta, gamma - beta, t2, q2, p2)
          + (q2 * (q2 * p1 * p2 - beta * p1)) / t2
          + _coupling(alpha, beta) / (t2 - t1))
    return h1, h2


def _gar_5211():
    h1 = H_II(-alpha, t1, q1, p1) + p1 * p2 + _coupling(alpha, beta) / (t1 - t2)
    h2 = H_II(-beta, t2, q2, p2) + p1 * p2 + _coupling(alpha, beta) / (t2 - t1)
    return h1, h2


def _fs_a5():
    return (H_VI(alpha, beta + delta, beta + gamma, epsilon - omega + 1, t, q1, p1)
            + H_VI(beta, alpha + delta, alpha + gamma, epsilon - alpha + 1, t, q2, p2)
            + (q1 - t) * (q2 - 1) * ((p1 * q1 - alpha) * p2 + p1 * (p2 * q2 - beta)) / (t * (t - 1)))


def _fs_a4():
    return (H_V(alpha + beta + delta + epsilon, alpha + gamma - delta - 1, -alpha - epsilon, t, q1, p1)
            + H_V(alpha + epsilon, alpha + gamma - epsilon - 1, -alpha, t, q2, p2)
            + p1 * (q2 - 1) * (p2 * (q1 + q2) - epsilon) / t)


def _fs_a3():
    return (H_III_D6(alpha + gamma, -beta + gamma, t, q1, p1)
            + H_III_D6(delta, -beta + delta, t, q2, p2)
            + p1 * q2 * (p2 * (q1 + q2) + delta) / t)


def _ny_a5():
    return (H_V(alpha + beta, alpha + gamma + epsilon, -alpha, t, q1, p1)
            + H_V(alpha + gamma + delta, alpha + gamma + epsilon, -alpha - gamma, t, q2, p2)
            + 2 * p1 * p2 * q1 * (q2 - 1) / t)


def _ny_a4():
    return H_IV(beta, alpha, t, q1, p1) + H_IV(delta, alpha + gamma, t, q2, p2) + 2 * q1 * p1 * p2


def _ss_d6():
    # 第一对 H_VI 的第四个参数含 −γ（θ 形式为 1 − θ¹ − θᵗ − θ∞1 − θ∞4）
    s = beta + gamma + 2 * delta + epsilon + zeta
    return (H_VI(s, -beta - zeta, -beta - 2 * gamma - 2 * delta - epsilon, 1 - alpha - beta - gamma - 2 * delta - epsilon - zeta, t, q1, p1)
            + H_VI(gamma + delta, epsilon, zeta, 1 - alpha - gamma, t, q2, p2)
            + 2 * (q1 - 1) * p2 * q2 * ((q1 - t) * p1 - s) / (t * (t - 1)))


def _ss_d5():
    return (H_V(epsilon, alpha - beta, beta, t, q1, p1)
            + H_V(-2 * alpha - 3 * beta - gamma - delta - 2 * epsilon, -alpha - beta - 2 * delta,
                  alpha + 2 * beta + delta + epsilon, t, q2, p2)
            + 2 * p2 * q1 * (p1 * (q1 - 1) - beta - epsilon) / t)


def _ss_d4():
    return (H_III_D6(alpha + beta + gamma, -alpha - 2 * delta, t, q1, p1)
            + H_III_D6(-gamma, -alpha - 2 * gamma, t, q2, p2)
            + 2 * p2 * q1 * (p1 * q1 + alpha + beta + gamma) / t)


# ---- 矩阵 Painlevé：迹形式 ----

def matrix_chart(kappa, sign=1):
    """2×2 参数化：tr Q = 2q1, -Q12 Q21 = q2, P12/Q12 = sign·p2, [P,Q] = κK"""
    Q = sp.Matrix([[q1, 1], [-q2, q1]])
    P = sp.Matrix([[p1 / 2, sign * p2], [-sign * p2 * q2 - kappa, p1 / 2]])
    return Q, P


def trace_form(kind, params, tt, Q, P, kappa):
    """矩阵 Painlevé 哈密顿量的迹形式（已除去前因子）"""
    I2 = sp.eye(2)
    if kind == "VI":
        a, b, c, d = params
        body = (Q * (Q - I2) * (Q - tt * I2) * P * P
                + ((d * I2 - kappa * K) * Q * (Q - I2) + c * (Q - I2) * (Q - tt * I2)
                   - (2 * a + b + c + d) * Q * (Q - tt * I2)) * P
                + a * (a + b) * Q)
        return body.trace() / (tt * (tt - 1))
    if kind == "V":
        a, b, c = params
        body = Q * (Q - I2) * P * (P + tt * I2) + b * Q * P + c * P - (a + c) * tt * Q
        return body.trace() / tt
    if kind == "IV":
        a, b = params
        return (Q * P * (P - Q - tt * I2) + b * P + a * Q).trace()
    if kind == "III_D6":
        a, b = params
        body = Q * Q * P * P - (Q * Q + b * Q - tt * I2) * P - a * Q
        return body.trace() / tt
    if kind == "II":
        (a,) = params
        return (P * P - (Q * Q + tt * I2) * P - a * Q).trace()
    raise KeyError(kind)


def _matrix(kind, params):
    kappa = alpha - omega
    Q, P = matrix_chart(kappa)
    return trace_form(kind, params, t, Q, P, kappa)


# 编号 -> (希腊参数, 时间, 各时间的哈密顿量构造函数)
GREEK_SYSTEMS = {
    "Gar:1+1+1+1+1": ((alpha, beta, gamma1, gamma2, delta), (t1, t2),
                      lambda: (_garnier_11111(0), _garnier_11111(1))),
    "Gar:2+1+1+1": ((alpha, beta, gamma, delta), (t1, t2), _gar_2111),
    "Gar:3+1+1": ((alpha, beta, gamma), (t1, t2), _gar_311),
    "Gar:2+2+1": ((alpha, beta, gamma), (t1, t2), _gar_221),
    "Gar:3+2": ((alpha, beta), (t1, t2), _gar_32),
    "Gar:4+1": ((alpha, beta), (t1, t2), _gar_41),
    "Gar:5": ((alpha,), (t1, t2), _gar_5),
    "Gar:3/2+1+1+1": ((alpha, beta, gamma), (t1, t2), _gar_32111),
    "Gar:5/2+1+1": ((alpha, beta), (t1, t2), _gar_5211),
    "FS:A5": ((alpha, beta, gamma, delta, epsilon, omega), (t,), lambda: (_fs_a5(),)),
    "FS:A4": ((alpha, beta, gamma, delta, epsilon), (t,), lambda: (_fs_a4(),)),
    "FS:A3": ((alpha, beta, gamma, delta), (t,), lambda: (_fs_a3(),)),
    "NY:A5": ((alpha, beta, gamma, delta, epsilon), (t,), lambda: (_ny_a5(),)),
    "NY:A4": ((alpha, beta, gamma, delta), (t,), lambda: (_ny_a4(),)),
    "Ss:D6": ((alpha, beta, gamma, delta, epsilon, zeta), (t,), lambda: (_ss_d6(),)),
    "Ss:D5": ((alpha, beta, gamma, delta, epsilon), (t,), lambda: (_ss_d5(),)),
    "Ss:D4": ((alpha, beta, gamma, delta), (t,), lambda: (_ss_d4(),)),
    "Mat:VI": ((alpha, beta, gamma, delta, omega), (t,), lambda: (_matrix("VI", (alpha, beta, gamma, delta)),)),
    "Mat:V": ((alpha, beta, gamma, omega), (t,), lambda: (_matrix("V", (alpha, beta, gamma)),)),
    "Mat:IV": ((alpha, beta, omega), (t,), lambda: (_matrix("IV", (alpha, beta)),)),
    "Mat:III_D6": ((alpha, beta, omega), (t,), lambda: (_matrix("III_D6", (alpha, beta)),)),
    "Mat:II": ((alpha, omega), (t,), lambda: (_matrix("II", (alpha,)),)),
}

MATRIX_KINDS = {
    "Mat:VI": ("VI", (alpha, beta, gamma, delta)),
    "Mat:V": ("V", (alpha, beta, gamma)),
    "Mat:IV": ("IV", (alpha, beta)),
    "Mat:III_D6": ("III_D6", (alpha, beta)),
    "Mat:II": ("II", (alpha,)),
}


# ---- Noumi–Yamada 对称形式 ----

def ny_equations(level, f, alphas):
    """f_i 的右端；A4 取 5 个 f，A5 取 6 个 f（下标模 l+1）"""
    n = len(f)
    if level == "A4":
        return [f[i] * (f[(i + 1) % n] - f[(i + 2) % n] + f[(i + 3) % n] - f[(i + 4) % n]) + alphas[i]
                for i in range(n)]
    if level == "A5":
        out = []
        for i in range(n):
            g = lambda k: f[(i + k) % n]
            a = lambda k: alphas[(i + k) % n]
            cubic = (g(1) * g(2) - g(2) * g(3) + g(1) * g(4) - g(2) * g(5) + g(3) * g(4) - g(4) * g(5))
            out.append(f[i] * cubic + (-1)**i * (a(1) + a(2) + a(5)) * f[i] + alphas[i] * (g(0) + g(2) + g(4)))
        return out
    raise KeyError(level)


def ny_variable_map(f):
    """p1=f2, q1=-f1, p2=f4, q2=-f1-f3"""
    return {p1: f[2], q1: -f[1], p2: f[4], q2: -f[1] - f[3]}


def ny_parameter_map(alphas):
    """α=-α1, β=-α2, γ=-α3, δ=-α4, ε=-α5"""
    greek = (alpha, beta, gamma, delta, epsilon)
    return {g: -a for g, a in zip(greek, alphas[1:])}


# ---- Fuji–Suzuki 型线性问题限制到两个不规则时间所得的哈密顿量 ----

theta_0, theta_1 = sym("theta_0"), sym("theta_1")
theta_inf_2, theta_inf_3 = sym("theta_inf_2"), sym("theta_inf_3")
eta1, eta2 = sym("eta1"), sym("eta2")


def fs_restriction_hamiltonian():
    """tH = T1·H_V(θ0,θ∞2,θ1;T1) + T2·H_V(θ0,θ∞3,θ1;T2) + p1p2(2q1q2-q1-q2)，T1=(η2-η1)t，T2=-η1 t"""
    T1, T2 = (eta2 - eta1) * t, -eta1 * t
    tH = (T1 * H_V(theta_0, theta_inf_2, theta_1, T1, q1, p1)
          + T2 * H_V(theta_0, theta_inf_3, theta_1, T2, q2, p2)
          + p1 * p2 * (2 * q1 * q2 - q1 - q2))
    return tH / t
