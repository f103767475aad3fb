"""
矩阵 Painlevé 系（4×4，2×2 分块）的线性问题

Q, P 取 matrix_chart(κ, sign=-1)：P12 = -p2, P21 = p2q2 - κ，κ 随问题而定。
"""
import sympy as sp

from .hamiltonians import matrix_chart, trace_form
from .lax_common import (
    I2, O2, QP, U2, E, block2, conj, fuchsian, irregular, matrix_rates, p1, p2, pole, poly,
    problem, q1, q2, register, side, stack, t, th0, th1, tht, thi1, thi2, thi3, v, x,
)

E34 = E(4, 3, 4)
THETA = sp.diag(thi2, thi3)
PARAMS_INF = (thi1, thi2, thi3)


def _gauge_left():
    """U ⊕ diag(v, 1)"""
    return sp.diag(U2, v, 1)


def _gauge_right():
    """diag(1, v) ⊕ U"""
    return sp.diag(1, v, U2)


def _shift_inverse() -> sp.Matrix:
    """(θ∞1 - Θ)^{-1}"""
    return sp.diag(1 / (thi1 - thi2), 1 / (thi1 - thi3))


def _chart(kappa):
    return matrix_chart(kappa, sign=-1)


def _hamiltonian(kind, greek, Q, P, kappa):
    return trace_form(kind, greek, t, Q, P, kappa)


def _inf_scheme():
    return fuchsian("∞", None, thi1, thi1, thi2, thi3)


@register("Mat:22,22,22,211", "Mat:VI-lin")
def mat_vi():
    theta = th0 + th1 + tht
    kappa = theta + thi1 + thi2
    Q, P = _chart(kappa)
    shifted = Q * P + (theta + thi1) * I2
    Z = _shift_inverse() * (-th1 * shifted + shifted**2 - t * (P * Q + tht * I2) * P)
    X = block2(I2, O2, Z, I2)
    G = _gauge_left()
    hat = {
        0: stack(I2, O2) * side(th0 * I2, Q / t - I2),
        1: stack(I2, P * Q - THETA) * side(th1 * I2 - P * Q + THETA, I2),
        t: stack(I2, t * P) * side(tht * I2 + Q * P, -Q / t),
    }
    A = {xi: conj(M, X, G) for xi, M in hat.items()}
    greek = (-th0 - tht - thi1, -th1, tht, th0 + 1, th1 + thi3)
    shift = th0 + tht + thi1 - thi2
    M = sp.Matrix([
        [p1 * (2 * q1 - t) * (1 - q1) - (th0 + tht + thi1 - thi2) * q1 + 2 * p2 * q2
         + 2 * q1 * p2 * (q1 * (q1 - t - 1) + t - q2) + (thi1 - thi3 - 1) * t
         + th0 + tht - thi2 + thi3 + 1,
         p1 * (2 * q1 - t) + 2 * p2 * q2 + 2 * q1 * p2 * (t - q1) + shift],
        [2 * kappa * q1 * (t - q1) - (2 * p2 * q2 + shift) * q2
         + p1 * q2 * (t - 2 * q1) + 2 * q1 * p2 * q2 * (q1 - t),
         ((q1 - t) * p1 + shift) * q1 - 2 * t * p2 * q2 + q2 * (4 * p2 * q1 - p1)
         + (th0 + th1 + thi1 + thi2) * t],
    ])
    dv = (2 * q1 * ((t + 1) * p1 + th1 + 2 * thi2) - p1 * (3 * q1**2 + t) + 2 * (t + 1) * p2 * q2
          + 2 * q1 * p2 * (q1 * (q1 - t - 1) + t - 3 * q2) + p1 * q2
          + (th0 + th1 + 2 * tht + 2 * thi1 - 1) * t + th0 + tht - thi2 + thi3 + 1)
    prefactor = 1 / (t * (t - 1))
    return problem(
        family="Matrix", spectral="22,22,22,211", system="Mat:VI", size=4,
        canonical=QP, times=(t,), params=(th0, th1, tht) + PARAMS_INF,
        fuchs=2 * th0 + 2 * th1 + 2 * tht + 2 * thi1 + thi2 + thi3, eliminate=thi3,
        hamiltonians=(_hamiltonian("VI", greek[:4], Q, P, kappa),),
        terms=[pole(xi, 1, M_) for xi, M_ in A.items()],
        B=(-A[t] / (x - t),),
        gauge_laws=(matrix_rates(M, prefactor, v=prefactor * dv),),
        scheme=(
            fuchsian("0", 0, 0, 0, th0, th0), fuchsian("1", 1, 0, 0, th1, th1),
            fuchsian("t", t, 0, 0, tht, tht), _inf_scheme(),
        ),
        greek=greek,
        kappa=kappa,
    )


@register("Mat:(2)(2),22,211", "Mat:V-lin")
def mat_v_irregular_one():
    kappa = th0 + th1 + thi1 + thi2
    Q, P = _chart(kappa)
    Pt = P + t * I2
    Z = _shift_inverse() * (-Pt * Q * (Q - I2) + (2 * th0 + th1 + 2 * thi1) * Q - (th0 + th1 + thi1) * I2)
    G = _gauge_left()
    A1m_hat = stack(I2, Q - Z) * side(-t * (I2 - Q) - t * Z, -t * I2)
    A10_hat = block2(-(th0 + thi1) * I2 + Pt * Z, Pt, th0 * Z - Z * Pt * Z, -Z * Pt - THETA)
    A0_hat = stack(I2, -Z) * side(th0 * I2 - Pt * Z, -t * I2 - P)
    A0, A1m, A10 = (conj(M_, G) for M_ in (A0_hat, A1m_hat, A10_hat))
    greek = (thi1 - 1, -2 * th0 - th1 - 2 * thi1, th0 + th1 + thi1, -th0 - th1 - thi2 - 1)
    level = 4 * th0 + 3 * th1 + 4 * thi1 + 2 * thi2
    M = sp.Matrix([
        [(1 - 2 * q1) * (sp.Rational(3, 2) * p1 + 2 * t)
         + 2 * (q1 * (q1 - 1) * p2 - 2 * p2 * q2 + th0 + thi1 - thi3),
         (2 * q1 - 1) * p2 - p1 - 2 * t],
        [(p2 * q2 - kappa) * (1 - 2 * q1) + (p1 + 2 * t) * q2,
         (1 - 2 * q1) * (p1 / 2 + t) - 2 * p2 * q2 + level],
    ])
    dv = p1 * (1 - 2 * q1) - 2 * t * q1 - 2 * p2 * q2 + 2 * p2 * q1 * (q1 - 1) + t + level
    return problem(
        family="Matrix", spectral="(2)(2),22,211", system="Mat:V", size=4,
        canonical=QP, times=(t,), params=(th0, th1) + PARAMS_INF,
        fuchs=2 * th0 + 2 * th1 + 2 * thi1 + thi2 + thi3, eliminate=thi3,
        hamiltonians=(_hamiltonian("V", greek[:3], Q, P, kappa),),
        terms=[pole(0, 1, A0), pole(1, 2, A1m), pole(1, 1, A10)],
        B=(-A1m / (t * (x - 1)),),
        gauge_laws=(matrix_rates(M, 1 / t, v=dv / t),),
        scheme=(
            fuchsian("0", 0, 0, 0, th0, th0),
            irregular("1", 1, [(0, 0), (0, 0), (-t, th1), (-t, th1)]),
            _inf_scheme(),
        ),
        greek=greek,
        kappa=kappa,
    )


@register("Mat:(2)(11),22,22")
def mat_v_irregular_inf():
    kappa = th0 + th1 + thi1 + thi2
    Q, P = _chart(kappa)
    G = _gauge_right()
    QPs = Q * P + (th0 + thi1) * I2
    A0_hat = (stack(QPs, t * I2)
              * side(I2 - Q, ((Q - I2) * Q * P + (th0 + thi1) * Q - thi1 * I2) / t))
    A1_hat = (stack(QPs * (Q - I2) - THETA, t * Q)
              * side(I2, ((Q * P + (th0 + th1 + thi1) * I2 + THETA) * Q.inv() - QPs) / t))
    S = A0_hat + A1_hat
    B_hat = block2(O2, S[0:2, 2:4] / t, S[2:4, 0:2] / t, O2)
    greek = (-th0 - th1 - thi1, th0 - th1, th1, thi3)
    eta = th0 + 3 * th1 + 3 * thi1 + thi2 - 1
    M = sp.Matrix([
        [t * q1 - thi1 + thi2 + 1, t],
        [-t * q2, 2 * p1 * q1 + 3 * t * q1 - p1 + 2 * p2 * q2 - 2 * q1 * p2 * (q1 - 1) - eta - t],
    ])
    dv = (2 * q1 - 1) * p1 - 2 * q1 * p2 * (q1 - 1) + 2 * t * q1 + 2 * p2 * q2 - t + th0 - th1
    return problem(
        family="Matrix", spectral="(2)(11),22,22", system="Mat:V", size=4,
        canonical=QP, times=(t,), params=(th0, th1) + PARAMS_INF,
        fuchs=2 * th0 + 2 * th1 + 2 * thi1 + thi2 + thi3, eliminate=thi3,
        hamiltonians=(_hamiltonian("V", greek[:3], Q, P, kappa),),
        terms=[pole(0, 1, conj(A0_hat, G)), pole(1, 1, conj(A1_hat, G)), poly(0, -t * E34)],
        B=(-E34 * x + conj(B_hat, G),),
        gauge_laws=(matrix_rates(M, 1 / t, v=dv / t),),
        scheme=(
            fuchsian("0", 0, 0, 0, th0, th0), fuchsian("1", 1, 0, 0, th1, th1),
            irregular("∞", None, [(0, thi2), (0, thi3), (t, thi1), (t, thi1)]),
        ),
        greek=greek,
        kappa=kappa,
    )


@register("Mat:((2))((2)),211", "Mat:IV-lin")
def mat_iv_zero():
    kappa = th0 + thi1 + thi2
    Q, P = _chart(kappa)
    Z = _shift_inverse() * ((P - Q - t * I2) * Q - (th0 + thi1) * I2)
    G = _gauge_left()
    A2_hat = stack(I2, -Z) * side(-I2 - Z, -I2)
    A1_hat = block2(P * Z + Q + t * I2, P, -Z * P * Z - Q * Z - Z * Q - t * Z - Q, -Z * P - Q)
    A0_hat = -sp.diag(thi1, thi1, THETA)
    A2, A1, A0 = (conj(M_, G) for M_ in (A2_hat, A1_hat, A0_hat))
    greek = (th0 + 2 * thi1 - 1, -th0 - thi1, thi1 - thi2 - 1)
    M = sp.Matrix([
        [-sp.Rational(3, 2) * p1 + 2 * (p2 + 2) * q1 + 2 * t, p2 + 2],
        [-(p2 + 2) * q2 + kappa, 2 * q1 + t - p1 / 2],
    ])
    return problem(
        family="Matrix", spectral="((2))((2)),211", system="Mat:IV", size=4,
        canonical=QP, times=(t,), params=(th0,) + PARAMS_INF,
        fuchs=2 * th0 + 2 * thi1 + thi2 + thi3, eliminate=thi3,
        hamiltonians=(_hamiltonian("IV", greek[:2], Q, P, kappa),),
        terms=[pole(0, 3, A2), pole(0, 2, A1), pole(0, 1, A0)],
        B=(A2 / x,),
        gauge_laws=(matrix_rates(M, v=2 * (p2 + 1) * q1 - p1 + t),),
        scheme=(
            irregular("0", 0, [(0, 0, 0), (0, 0, 0), (-1, t, th0), (-1, t, th0)]),
            _inf_scheme(),
        ),
        greek=greek,
        kappa=kappa,
    )


@register("Mat:((2))((11)),22")
def mat_iv_inf():
    kappa = th0 + thi1 + thi2
    Q, P = _chart(kappa)
    G = _gauge_right()
    A_lead = -E34
    A_const = block2(O2, P * Q - THETA, I2, t * I2)
    A0_hat = stack(-P, I2) * side(Q, Q * P + th0 * I2)
    B_hat = -block2(O2, A_const[0:2, 2:4], A_const[2:4, 0:2], O2)
    greek = (-th0 - thi1, th0, thi3)
    M = sp.Matrix([[-q1 - t, -1], [q2, p1 - (2 * p2 + 3) * q1 - 2 * t]])
    return problem(
        family="Matrix", spectral="((2))((11)),22", system="Mat:IV", size=4,
        canonical=QP, times=(t,), params=(th0,) + PARAMS_INF,
        fuchs=2 * th0 + 2 * thi1 + thi2 + thi3, eliminate=thi3,
        hamiltonians=(_hamiltonian("IV", greek[:2], Q, P, kappa),),
        terms=[pole(0, 1, conj(A0_hat, G)), poly(0, conj(A_const, G)), poly(1, A_lead)],
        B=(E34 * x + conj(B_hat, G),),
        gauge_laws=(matrix_rates(M, v=p1 - 2 * (p2 + 1) * q1 - t),),
        scheme=(
            fuchsian("0", 0, 0, 0, th0, th0),
            irregular("∞", None, [(0, 0, thi2), (0, 0, thi3), (1, -t, thi1), (1, -t, thi1)]),
        ),
        greek=greek,
        kappa=kappa,
    )


@register("Mat:(2)(2),(2)(11)", "Mat:III_D6-lin")
def mat_iii():
    kappa = th0 + thi1 + thi2
    Q, P = _chart(kappa)
    Z = (Q * P + (th0 + 2 * thi1) * I2) * P - (Q * P + (th0 + thi1) * I2)
    G = _gauge_left()
    A0m_hat = stack(I2, P) * side(t * (I2 - P), t * I2)
    A00_hat = block2(-thi1 * I2, -Q, -Z, -THETA)
    A_inf = sp.diag(-1, -1, 0, 0)
    A0m, A00 = conj(A0m_hat, G), conj(A00_hat, G)
    greek = (th0 + thi1, -th0 - 2 * thi1, -thi2)
    M = sp.Matrix([
        [(2 * p2 * q1 - p1 + 1) * q1, p1 - 2 * p2 * q1 - 1],
        [2 * q1 * (p2 * q2 - kappa) - (p1 - 1) * q2, 2 * p2 * q2 + (p1 - 1) * q1 + th0 + 2 * thi1],
    ])
    dv = 2 * p2 * (q1**2 - q2) - 2 * (p1 - 1) * q1 + th0 + 2 * thi2
    return problem(
        family="Matrix", spectral="(2)(2),(2)(11)", system="Mat:III_D6", size=4,
        canonical=QP, times=(t,), params=(th0,) + PARAMS_INF,
        fuchs=2 * th0 + 2 * thi1 + thi2 + thi3, eliminate=thi3,
        hamiltonians=(_hamiltonian("III_D6", greek[:2], Q, P, kappa),),
        terms=[pole(0, 2, A0m), pole(0, 1, A00), poly(0, A_inf)],
        B=(-A0m / (t * x),),
        gauge_laws=(matrix_rates(M, 1 / t, v=dv / t),),
        scheme=(
            irregular("0", 0, [(0, 0), (0, 0), (t, th0), (t, th0)]),
            irregular("∞", None, [(1, thi1), (1, thi1), (0, thi2), (0, thi3)]),
        ),
        greek=greek,
        kappa=kappa,
    )


@register("Mat:(((2)))(((11)))", "Mat:II-lin")
def mat_ii():
    kappa = thi1 + thi2
    Q, P = _chart(kappa)
    G = _gauge_left()
    R = -P + Q**2 + t * I2
    A3_hat = block2(O2, O2, O2, I2)
    A2_hat = block2(O2, I2, R, O2)
    A1_hat = block2(R, Q, -R * Q - THETA, P - Q**2)
    A3, A2, A1 = (conj(M_, G) for M_ in (A3_hat, A2_hat, A1_hat))
    greek = (1 - thi1, thi3 + 1)
    M = sp.Matrix([[2 * (q1 + p2), 0], [0, 0]])
    return problem(
        family="Matrix", spectral="(((2)))(((11)))", system="Mat:II", size=4,
        canonical=QP, times=(t,), params=PARAMS_INF,
        fuchs=2 * thi1 + thi2 + thi3, eliminate=thi3,
        hamiltonians=(_hamiltonian("II", greek[:1], Q, P, kappa),),
        terms=[poly(0, A1), poly(1, A2), poly(2, A3)],
        B=(A3 * x + conj(block2(Q, I2, R, O2), G),),
        gauge_laws=(matrix_rates(M, v=2 * (q1 + p2)),),
        scheme=(irregular("∞", None, [
            (0, 0, 0, thi1), (0, 0, 0, thi1), (-1, 0, -t, thi2), (-1, 0, -t, thi3),
        ]),),
        greek=greek,
        kappa=kappa,
    )
