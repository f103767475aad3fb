"""
Sasano 系（4×4）的线性问题

4×4 的项多以秩 2 分解 [I2; B̂](θI2 - ĈB̂, Ĉ) 给出，辅助函数 f_k 直接写成有理式。
"""
import sympy as sp

from ..models.lax_models import AnchoredRate
from .hamiltonians import H_III_D6, H_IV, H_V, H_V_tilde, H_VI
from .lax_common import (
    I2, LM, QP, E, col, conj, first_column_conjugator, fuchsian, gauge, irregular,
    lam_mu_chart, lambda1, lambda2, mu1, mu2, p1, p2, pole, poly, problem, q1, q2, rates,
    register, row, side, stack, t, th0, th1, tht, thi1, thi2, thi3, thi4, u, v, w, x,
)

E1 = E(4, 1)
E34 = E(4, 3, 4)
U = gauge(1, u, v, w)
THETA_INF = (thi1, thi2, thi3, thi4)


def _rank_two(B: sp.Matrix, left: sp.Matrix, right: sp.Matrix) -> sp.Matrix:
    """[I2; B] · (left, right)"""
    return stack(I2, B) * side(left, right)


def _fuchsian_block(B: sp.Matrix, C: sp.Matrix, theta) -> sp.Matrix:
    return _rank_two(B, theta * I2 - C * B, C)


def _first_column(A_inf: sp.Matrix) -> sp.Matrix:
    return first_column_conjugator([A_inf[k, 0] for k in range(1, 4)], THETA_INF)


def _first_cross(S: sp.Matrix) -> sp.Matrix:
    """只保留第一行与第一列（对角元除外）"""
    out = sp.zeros(4, 4)
    for k in range(1, 4):
        out[0, k] = S[0, k]
        out[k, 0] = S[k, 0]
    return out


def _off_blocks(S: sp.Matrix) -> sp.Matrix:
    """2×2 分块意义下的非对角块"""
    out = sp.zeros(4, 4)
    out[0:2, 2:4] = S[0:2, 2:4]
    out[2:4, 0:2] = S[2:4, 0:2]
    return out


@register("Ss:31,22,22,1111", "Ss:D6-lin")
def ss_d6():
    f1 = (p1 * (q2 - q1) + th1 + tht + thi2 + thi3) / (thi3 - thi4)
    r = p1 + p2 * (1 - f1)
    f2 = ((p2 * (q2 - q1) - thi3) * (p2 * (q1 * (1 - f1) - q2) + th1 + thi3)
          - p2 * q1 * (r * (q2 - q1) + thi4 * f1)) / (thi3 - thi2)
    f3 = (r * ((thi3 - thi4) * q1 * f1 + (q1 - q2) * (q1 * p1 + q2 * p2 - th1 - thi3 - thi4))
          + thi4 * (th1 + thi4) * f1) / (thi4 - thi2)
    a12 = (-(p1 + p2) * (q2 - q1) + (thi3 - thi4) * f1
           + f2 * (f1 - (q1 * f1 + q2 - q1) / t) + f3 * (1 - q1 / t))
    B1 = sp.Matrix([
        [p2 * q2 - thi3, -p2 * (q2 - q1) + f2 + thi3],
        [(1 - f1) * (p2 * q2 - thi4) + p1 * q2, -(q2 - q1) * r - thi4 * f1 + f3],
    ])
    C1 = sp.Matrix([[f1, 1], [f1 - 1, 1]])
    Bt = sp.Matrix([[t * p2, f2], [t * r, f3]])
    Ct = sp.Matrix([[(q1 * (1 - f1) - q2) / t, -q1 / t], [1 - f1, -1]])
    hat = {
        0: col(1, 0, 0, 0) * row(th0, a12, -f1 + (q1 * f1 + q2 - q1) / t, -1 + q1 / t),
        1: _fuchsian_block(B1, C1, th1),
        t: _fuchsian_block(Bt, Ct, tht),
    }
    A_inf = -sum(hat.values(), sp.zeros(4, 4))
    P = _first_column(A_inf)
    A = {xi: conj(M, P, U) for xi, M in hat.items()}
    s = th0 + th1 + tht + thi1 + thi3
    h = (H_VI(-s, -tht - thi2 + thi3, -th1 - thi2 - thi3, th0 + th1 + tht + thi2 + thi3 + 1, t, q1, p1)
         + H_VI(thi3, th1, tht, -thi1 + thi2 - thi3 + thi4 + 1, t, q2, p2)
         + 2 * (q1 - 1) * p2 * q2 * (p1 * (q1 - t) + s) / (t * (t - 1)))
    energy = p1 * q1 + p2 * q2 + tht
    return problem(
        family="Sasano", spectral="31,22,22,1111", system="Ss:D6", size=4,
        canonical=QP, times=(t,), params=(th0, th1, tht, thi1, thi2, thi3, thi4),
        fuchs=th0 + 2 * th1 + 2 * tht + thi1 + thi2 + thi3 + thi4, eliminate=th0,
        hamiltonians=(h,),
        terms=[pole(xi, 1, M) for xi, M in A.items()],
        B=(-A[t] / (x - t),),
        gauge_laws=(rates(
            u=AnchoredRate(A_inf[1, 0], (thi1 - thi2) * p1),
            v=AnchoredRate(A_inf[2, 0], (thi1 - thi3) * (f2 * p1 + p2 * energy)),
            w=AnchoredRate(A_inf[3, 0], (thi1 - thi4) * (f3 * p1 + r * energy)),
        ),),
        scheme=(
            fuchsian("0", 0, 0, 0, 0, th0), fuchsian("1", 1, 0, 0, th1, th1),
            fuchsian("t", t, 0, 0, tht, tht), fuchsian("∞", None, *THETA_INF),
        ),
        greek=(thi1 - thi2, thi2 - thi3, thi3 - thi4, thi4, th1, tht),
        notes="规范方程为隐式：du/dt 含 dâ∞/dt，沿哈密顿流取全导数",
    )


@register("Ss:(2)(2),31,1111", "Ss:D5-lin")
def ss_d5():
    k = th1 + thi2 + thi3
    f1 = (p1 * (q2 - q1) + k) / (thi3 - thi4)
    r = p1 + (1 - f1) * p2
    f2 = (p2 * ((p2 + t) * (q1 - q2) + k) + t * thi3) / (thi3 - thi2)
    f3 = (r * ((p2 + t) * (q1 - q2) + k) - t * thi4 * f1) / (thi4 - thi2)
    f4 = (p2 + f2) * (q1 - q2) + (f1 * f2 + f3) * (1 - q1) + k
    a12 = (q1 - 1) * (f1 * f2 + f3) - (q1 - q2) * (f2 + p2) - k
    a31 = ((p2 + f2) * p1 * (1 - q1)
           + p2 * ((t + p2) * (1 - q2) - th0 - thi1 + thi3) + t * thi3 + f2 * (th1 + thi2 + thi4))
    a41 = ((p1 - (f1 - 1) * p2) * ((p2 + t) * (1 - q2) + p1 * (1 - q1) - th0 - thi1 + thi4)
           - f3 * (p1 * (q2 - 1) - (f1 - 1) * (thi3 - thi4)) - (f1 - 1) * t * thi4)
    B1 = sp.Matrix([[p2, f2], [r, f3]])
    C1 = sp.Matrix([[f1, 1], [f1 - 1, 1]])
    A1m_hat = _rank_two(B1, t * I2 + C1 * B1, -C1)
    A10_hat = sp.Matrix([
        [-th0 - thi1, a12, f1 * (1 - q1) + q1 - q2, 1 - q1],
        [th1 + thi2 + thi4 - p1 * (q1 - 1), -thi2, 0, 0],
        [a31, 0, -thi3, 0],
        [a41, 0, 0, -thi4],
    ])
    A0_hat = col(1, 0, 0, 0) * row(th0, f4, f1 * (q1 - 1) + q2 - q1, q1 - 1)
    P = _first_column(-(A0_hat + A10_hat))
    A0, A1m, A10 = (conj(M, P, U) for M in (A0_hat, A1m_hat, A10_hat))
    h = (H_V(-th0 - th1 - thi3 - thi4 - 1, th0 + th1 + thi1 + thi2 + thi3 - thi4 - 1,
             -thi1 + thi4 + 1, t, q1, p1)
         + H_V(th0 + th1 + 2 * thi1 + thi3 - 1, th0 + th1 + thi1 + thi2 - thi3 + thi4 - 1,
               -th0 - th1 - 2 * thi1 + 1, t, q2, p2)
         + 2 * p2 * q1 * (p1 * (q1 - 1) + th0 + th1 + thi1 + thi3) / t)
    return problem(
        family="Sasano", spectral="(2)(2),31,1111", system="Ss:D5", size=4,
        canonical=QP, times=(t,), params=(th0, th1, thi1, thi2, thi3, thi4),
        fuchs=th0 + 2 * th1 + thi1 + thi2 + thi3 + thi4, eliminate=th0,
        hamiltonians=(h,),
        terms=[pole(0, 1, A0), pole(1, 2, A1m), pole(1, 1, A10)],
        B=(-A1m / (t * (x - 1)),),
        gauge_laws=(rates(
            u=-((t + 2 * p2) * (1 - q1) + p1) / t,
            v=-((t + 2 * p2) * (1 - q2) + p1 + th1 + 2 * thi3) / t,
            w=-((t + 2 * p1 + 2 * p2) * (1 - q1) - th1 - 2 * thi4) / t,
        ),),
        scheme=(
            fuchsian("0", 0, 0, 0, 0, th0),
            irregular("1", 1, [(0, 0), (0, 0), (t, th1), (t, th1)]),
            fuchsian("∞", None, *THETA_INF),
        ),
        greek=(th0 + th1 + thi2 + thi3, -thi1 + thi4 + 1, thi1 - thi2 - thi3,
               -th0 - th1 - thi2 - thi4, -th0 - th1 - thi3 - thi4 - 1),
    )


@register("Ss:(11)(11),31,22")
def ss_ny_a5():
    k = th1 + thi2 + thi4
    f1 = p1 * q1 * (q1 - 1) - thi1 * q1
    f2 = p2 * q2 * (q2 - 1) - k * q2
    f3 = q1 / q2 * (p1 * (q2 - q1) + thi1)
    f4 = p2 * q2 * f1 - p1 * q1 * f2
    f5 = (p2 * q2 * (q1 - q2) + k * q2) / ((thi1 - thi2) * q1)
    g = f2 / (thi4 - thi3)
    A0_hat = (
        col(-f1 - p1 * q1, -f2 - p2 * q2 + f5 * (f1 + p1 * q1), 1, g)
        * row((-f2 + p2 * (q2 - 1) * q1 - th1 - thi1 - thi4) / ((thi1 - thi2) * q1) + 1,
              1 - 1 / q2,
              f1 - th1 - thi3 - g * (f3 + th1 + thi3),
              f3 + th1 + thi4)
    )
    left = sp.Matrix([
        [-f1, -f3],
        [((1 - 1 / q1) * f4 + thi2 * f2) / (thi1 - thi2),
         ((1 / q1 - 1 / q2) * f4 + (th1 + thi1 + thi4) * thi2) / (thi1 - thi2)],
        [1, 0],
        [g, 1],
    ])
    right = sp.Matrix([
        [-f5 - 1, -1, g * (f3 + th1 + thi3) - f1 + th1, -f3 - th1 - thi4],
        [-f5, -1, thi3 * g, -thi4],
    ])
    A1_hat = left * right
    B_hat = _off_blocks(A0_hat + A1_hat) / t
    h = (H_V(th1 + thi1, th0 + th1, -th1, t, q1, p1)
         + H_V(th1 - thi1 + thi2, th0 + th1, thi1 + thi4, t, q2, p2)
         + 2 * p1 * p2 * q1 * (q2 - 1) / t)
    du = -(q1 * q2 * (p2 - 2 * p1 + thi2 - thi1) + q1 * (2 * p1 * q1 - th1 - thi4) - th1 * q2) / (t * q1 * q2)
    dv = (q1 * p2 * (1 - 2 * q2) - 2 * p1 * q1 * (q1 - 1)
          + (t + th1 + 2 * thi1 + thi2 + thi4) * q1 + th1) / (t * q1)
    dw = (q1 * q2 * (2 * p1 + t + thi1 - thi4) - q1 * (2 * p1 * q1 - thi1 - thi4) + th1 * q2) / (t * q1 * q2)
    return problem(
        family="Sasano", spectral="(11)(11),31,22", system="NY:A5", size=4,
        canonical=QP, times=(t,), params=(th0, th1, thi1, thi2, thi3, thi4),
        fuchs=th0 + 2 * th1 + thi1 + thi2 + thi3 + thi4, eliminate=th0,
        hamiltonians=(h,),
        terms=[pole(0, 1, conj(A0_hat, U)), pole(1, 1, conj(A1_hat, U)), poly(0, -t * E34)],
        B=(-E34 * x + conj(B_hat, U),),
        gauge_laws=(rates(u=du, v=dv, w=dw),),
        scheme=(
            fuchsian("0", 0, 0, 0, 0, th0), fuchsian("1", 1, 0, 0, th1, th1),
            irregular("∞", None, [(0, thi1), (0, thi2), (t, thi3), (t, thi4)]),
        ),
        greek=(th1, thi1, -th1 - thi1 - thi4, th1 + thi2 + thi4, -th1 - thi2 - thi3),
    )


@register("Ss:(111)(1),22,22")
def ss_d5_lm():
    f1 = (mu1 * (lambda2 - lambda1) + th0 + th1 + thi2 + thi3) / (thi3 - thi4)
    f2 = (mu2 * lambda2 * (mu2 * (lambda2 - lambda1) - th1 - 2 * thi3)
          - mu2 * lambda1 * (th0 + thi2 - thi3) + thi3 * (th1 + thi3)) / (thi2 - thi3)
    f3 = ((lambda2 * (mu2 * (lambda1 - lambda2) + th1 + thi3 + thi4) + (th0 + thi2 - thi4) * lambda1)
          * ((f1 - 1) * mu2 - mu1) - f1 * thi4 * (th1 + thi4)) / (thi2 - thi4)
    B0 = sp.Matrix([[mu2, f2], [mu1 - (f1 - 1) * mu2, f3]])
    C0 = sp.Matrix([[(1 - f1) * lambda1 - lambda2, -lambda1], [1 - f1, -1]])
    B1 = sp.Matrix([
        [mu2 * lambda2 - thi3, f2 + mu2 * (lambda1 - lambda2) + thi3],
        [mu1 * lambda2 + (1 - f1) * (mu2 * lambda2 - thi4),
         f3 + (lambda1 - lambda2) * (mu2 * (1 - f1) + mu1) - f1 * thi4],
    ])
    C1 = sp.Matrix([[f1, 1], [f1 - 1, 1]])
    A0_hat = _fuchsian_block(B0, C0, th0)
    A1_hat = _fuchsian_block(B1, C1, th1)
    B_hat = _first_cross(A0_hat + A1_hat) / t
    c = th0 + th1 + thi1 + thi3
    h = (H_V_tilde(-th1 - thi2 - thi3, th0 + thi2 - thi3, -2 * th0 - th1 - thi1 - thi2, t, lambda1, mu1)
         + H_V_tilde(th0, th1, thi3, t, lambda2, mu2)
         + 2 * mu2 * lambda2 * (lambda1 - 1) * (mu1 * (lambda1 - 1) + c) / t)
    du = ((lambda1 - 1) * (2 * mu2 * lambda2 + mu1 * (lambda1 - 1) - th1 - thi3 - thi4)
          + t - thi1 + thi2)
    dv = ((lambda1 - 1) * (mu1 * (lambda1 - 1) + c) + lambda2 * (2 * mu2 * (lambda2 - 1) - th1 - 2 * thi3)
          + t - th0 - thi1 + thi3)
    dw = (2 * (lambda1 - 1) * (mu1 * lambda1 + mu2 * lambda2) + lambda1 * (th0 + thi1 - thi4)
          + t - 2 * th0 - th1 - 2 * thi1)
    return problem(
        family="Sasano", spectral="(111)(1),22,22", system="Ss:D5", size=4,
        canonical=LM, times=(t,), params=(th0, th1, thi1, thi2, thi3, thi4),
        fuchs=2 * th0 + 2 * th1 + thi1 + thi2 + thi3 + thi4, eliminate=thi4,
        hamiltonians=(h,),
        terms=[pole(0, 1, conj(A0_hat, U)), pole(1, 1, conj(A1_hat, U)), poly(0, -t * E1)],
        B=(-E1 * x + conj(B_hat, U),),
        gauge_laws=(rates(u=-du / t, v=-dv / t, w=-dw / t),),
        scheme=(
            fuchsian("0", 0, 0, 0, th0, th0), fuchsian("1", 1, 0, 0, th1, th1),
            irregular("∞", None, [(t, thi1), (0, thi2), (0, thi3), (0, thi4)]),
        ),
        chart_map=lam_mu_chart((q2, p2, -c), (q1, p1, th1 + thi3)),
        greek=(th0, th1, thi1, thi2, thi3),
    )


@register("Ss:((11))((11)),31")
def ss_ny_a4():
    f1 = p1 * q1 - thi2 - thi4
    f2 = p2 * q2 - thi1 - thi4
    f3 = ((p1 * q1 - thi2 - thi3) * (p2 * q2 - thi1 - thi3) - p2 * q1 * f1) / (thi4 - thi3)
    f4 = (f1 - p1 * q2) / (thi2 - thi1)
    ratio = thi3 / (thi3 - thi4)
    g = f1 / (thi4 - thi3)
    A_lead = -E34
    A_const = sp.Matrix([
        [0, 0, f4 * (f3 + thi3 - ratio * f1), -f4 * (f2 - p2 * q1 + thi4)],
        [0, 0, -f4 * (f3 + thi3) + ratio * f1 * (f4 + 1), f4 * (f2 - p2 * q1 + thi4) + thi4],
        [1 + 1 / f4, 1, t, 0],
        [g * (1 + 1 / f4) + 1, g + 1, 0, t],
    ])
    A0_hat = col(-p2 * f4, -p1 + p2 * f4, 1, g) * row(q1 + q2 / f4, q1, f3, p2 * q1 - f2)
    B_hat = -_off_blocks(A_const)
    drift = (thi1 - thi2) * p1 / (p1 * q2 - f1)
    return problem(
        family="Sasano", spectral="((11))((11)),31", system="NY:A4", size=4,
        canonical=QP, times=(t,), params=(th0, thi1, thi2, thi3, thi4),
        fuchs=th0 + thi1 + thi2 + thi3 + thi4, eliminate=th0,
        hamiltonians=(
            H_IV(thi2 + thi4, -thi1 - thi4, t, q1, p1) + H_IV(thi3, th0, t, q2, p2) + 2 * q1 * p1 * p2,
        ),
        terms=[pole(0, 1, conj(A0_hat, U)), poly(0, conj(A_const, U)), poly(1, A_lead)],
        B=(E34 * x + conj(B_hat, U),),
        gauge_laws=(rates(u=drift, v=-q1 - t + drift, w=p1 - t + drift),),
        scheme=(
            fuchsian("0", 0, 0, 0, 0, th0),
            irregular("∞", None, [(0, 0, thi1), (0, 0, thi2), (1, -t, thi3), (1, -t, thi4)]),
        ),
        greek=(-thi1 - thi4, thi2 + thi4, -thi2 - thi3, thi3),
    )


@register("Ss:(2)(2),(111)(1)", "Ss:D4-lin")
def ss_d4():
    k = th0 + thi2 + thi3
    f1 = (-p1 * (q1 - q2) + k) / (thi3 - thi4)
    r = (1 - f1) * p2 + p1
    f2 = ((q1 - q2) * p2 * (1 - p2) - p2 * k + thi3) / (thi2 - thi3)
    f3 = (r * ((q1 - q2) * (p2 - 1) + k) + f1 * thi4) / (thi4 - thi2)
    a12 = f3 * q1 + p2 * (q2 - q1) + f2 * ((f1 - 1) * q1 + q2) - k
    a31 = (p2 * (thi3 - thi1) + p2 * q2 * (1 - p2) - p1 * q1 * (f2 + p2) - thi3
           + f2 * (th0 + thi2 + thi4))
    a41 = ((p1 * q1 + (p2 - 1) * q2 + thi1 - thi4) * ((f1 - 1) * p2 - p1)
           + f3 * (-p1 * q1 + th0 + thi2 + thi4) + (f1 - 1) * thi4)
    B0 = sp.Matrix([[p2, f2], [r, f3]])
    C0 = sp.Matrix([[f1, 1], [f1 - 1, 1]])
    A0m_hat = _rank_two(B0, I2 - C0 * B0, C0)
    A00_hat = sp.Matrix([
        [-thi1, a12, (1 - f1) * q1 - q2, -q1],
        [-p1 * q1 + th0 + thi2 + thi4, -thi2, 0, 0],
        [a31, 0, -thi3, 0],
        [a41, 0, 0, -thi4],
    ])
    B_hat = _first_cross(A0m_hat) / t
    h = (H_III_D6(th0 + thi1 + thi3, -th0 - 2 * thi4, t, q1, p1)
         + H_III_D6(-thi3, -th0 - 2 * thi3, t, q2, p2)
         + 2 * p2 * q1 * (p1 * q1 + th0 + thi1 + thi3) / t)
    return problem(
        family="Sasano", spectral="(2)(2),(111)(1)", system="Ss:D4", size=4,
        canonical=QP, times=(t,), params=(th0, thi1, thi2, thi3, thi4),
        fuchs=2 * th0 + thi1 + thi2 + thi3 + thi4, eliminate=thi2,
        hamiltonians=(h,),
        terms=[pole(0, 2, conj(A0m_hat, U)), pole(0, 1, conj(A00_hat, U)), poly(0, -t * E1)],
        B=(-E1 * x + conj(B_hat, U),),
        gauge_laws=(rates(
            u=((1 - 2 * p2) * q1 + thi1 - thi2) / t,
            v=((1 - 2 * p2) * q2 + th0 + thi1 + thi3) / t,
            w=((1 - 2 * p1 - 2 * p2) * q1 - th0 - thi2 - thi3) / t,
        ),),
        scheme=(
            irregular("0", 0, [(0, 0), (0, 0), (1, th0), (1, th0)]),
            irregular("∞", None, [(t, thi1), (0, thi2), (0, thi3), (0, thi4)]),
        ),
        greek=(th0, thi1, thi3, thi4),
    )
