"""
Fuji–Suzuki 系（3×3）的线性问题
"""
import sympy as sp

from .hamiltonians import H_II, H_III_D6, H_IV, H_V, H_V_tilde, H_VI
from .lax_common import (
    LM, QP, E, col, conj, fuchsian, gauge, irregular, lam_mu_chart, lower_conjugator,
    p1, p2, pole, poly, problem, q1, q2, qp_from_lambda_mu, rates, register, row,
    lambda1, lambda2, mu1, mu2, t, t1, t2, th0, th01, th02, th1, tht, thi1, thi2, thi3, u, v, x,
)

E2, E3 = E(3, 2), E(3, 3)
U = gauge(1, u, v)


def _conjugator(A_inf: sp.Matrix) -> sp.Matrix:
    return lower_conjugator(A_inf[1, 0], A_inf[2, 0], A_inf[2, 1], thi1, thi2, thi3)


def _two_time_b(S: sp.Matrix):
    """由 S 的非对角元组成的 B̂1, B̂2"""
    B1 = sp.Matrix([
        [0, S[0, 1] / t1, 0],
        [S[1, 0] / t1, 0, S[1, 2] / (t1 - t2)],
        [0, S[2, 1] / (t1 - t2), 0],
    ])
    B2 = sp.Matrix([
        [0, 0, S[0, 2] / t2],
        [0, 0, S[1, 2] / (t2 - t1)],
        [S[2, 0] / t2, S[2, 1] / (t2 - t1), 0],
    ])
    return B1, B2


def _coupling(a, b):
    return (p1 * (q1 - q2) - a) * (p2 * (q2 - q1) - b)


@register("FS:21,21,111,111", "FS:A5-lin")
def fs_a5():
    hat = {
        0: sp.Matrix([
            [th01, q1 / t - 1, q2 / t - 1],
            [0, th02, p1 * (q2 - q1) + thi2 + th02],
            [0, 0, 0],
        ]),
        t: col(1, t * p1, t * p2) * row(tht + p1 * q1 + p2 * q2, -q1 / t, -q2 / t),
        1: col(1, p1 * q1 - thi2 - th02, p2 * q2 - thi3)
           * row(-p1 * q1 - p2 * q2 - th01 - tht - thi1, 1, 1),
    }
    P = _conjugator(-sum(hat.values(), sp.zeros(3, 3)))
    A = {xi: conj(M, P, U) for xi, M in hat.items()}
    h = (H_VI(th02 + thi2, th1 + thi3, tht + thi3, th01 - th02 + 1, t, q1, p1)
         + H_VI(thi3, th02 + th1 + thi2, th02 + tht + thi2, th01 - th02 - thi2 + 1, t, q2, p2)
         + (q1 - t) * (q2 - 1) * ((p1 * q1 - th02 - thi2) * p2 + p1 * (p2 * q2 - thi3)) / (t * (t - 1)))
    du = (2 * p1 * q1 * (t - q1) + p2 * q2 * (t - q2) + (-th01 + th02 - tht - thi1 + thi2) * q1
          + thi3 * q2 + q1 * p2 * (1 - q2) + t * tht)
    dv = (q1 * (p1 * (t - q1) + th02 + thi2) + q2 * (2 * p2 * (t - q2) - th01 - tht - thi1 + thi3)
          + p1 * q2 * (t - q1) + t * tht)
    return problem(
        family="FS", spectral="21,21,111,111", system="FS:A5", size=3,
        canonical=QP, times=(t,), params=(th01, th02, th1, tht, thi1, thi2, thi3),
        fuchs=th01 + th02 + th1 + tht + thi1 + thi2 + thi3, eliminate=th1,
        hamiltonians=(h,),
        terms=[pole(xi, 1, M) for xi, M in A.items()],
        B=(-A[t] / (x - t),),
        gauge_laws=(rates(u=du / (t * (t - 1)), v=dv / (t * (t - 1))),),
        scheme=(
            fuchsian("0", 0, 0, th01, th02), fuchsian("1", 1, 0, 0, th1),
            fuchsian("t", t, 0, 0, tht), fuchsian("∞", None, thi1, thi2, thi3),
        ),
        greek=(th02 + thi2, thi3, tht, th1, th01, th02),
    )


@register("FS:(2)(1),111,111", "NY:A5-lin")
def ny_a5():
    A0_hat = sp.Matrix([
        [th01, t * (q2 - 1), t * (q1 - 1)],
        [0, th02, p2 * (q1 - q2) + th02 + thi2],
        [0, 0, 0],
    ])
    A1m_hat = col(1, p2 / t, p1 / t) * row(p1 + p2 + t, -t, -t)
    a = (p2 * (q2 - 1) * (p1 + p2 + t) - (th02 + thi2) * (p1 + t)
         - (2 * th02 + th1 + 2 * thi2 + thi3) * p2) / t
    b = (p1 * (q1 - 1) * (p1 + p2 + t) - thi3 * (p2 + t) - (th02 + th1 + thi2 + 2 * thi3) * p1) / t
    A10_hat = sp.Matrix([
        [th02 + th1 + thi2 + thi3, t * (1 - q2), t * (1 - q1)],
        [-a, -th02 - thi2, p2 * (q2 - q1) - th02 - thi2],
        [-b, p1 * (q1 - q2) - thi3, -thi3],
    ])
    P = _conjugator(-(A0_hat + A10_hat))
    A0, A1m, A10 = (conj(M, P, U) for M in (A0_hat, A1m_hat, A10_hat))
    kappa = th01 - th02 + thi1 - thi2 - thi3 - 1
    h = (H_V(thi1 - 1, kappa, -thi1 + thi3 + 1, t, q1, p1)
         + H_V(th02 + thi1 - thi3 - 1, kappa, -thi1 + thi2 + thi3 + 1, t, q2, p2)
         + 2 * p1 * p2 * q1 * (q2 - 1) / t)
    shift = -th01 + th02 - thi1 + thi2 + thi3
    du = p1 * (1 - 2 * q1) + (2 * p2 + t) * (1 - q2) + shift
    dv = (2 * p1 + t) * (1 - q1) + 2 * p2 * (1 - q2) + shift
    return problem(
        family="FS", spectral="(2)(1),111,111", system="NY:A5", size=3,
        canonical=QP, times=(t,), params=(th01, th02, th1, thi1, thi2, thi3),
        fuchs=th01 + th02 + th1 + thi1 + thi2 + thi3, eliminate=th1,
        hamiltonians=(h,),
        terms=[pole(0, 1, A0), pole(1, 2, A1m), pole(1, 1, A10)],
        B=(-A1m / (t * (x - 1)),),
        gauge_laws=(rates(u=du / t, v=dv / t),),
        scheme=(
            fuchsian("0", 0, 0, th01, th02),
            irregular("1", 1, [(0, 0), (0, 0), (t, th1)]),
            fuchsian("∞", None, thi1, thi2, thi3),
        ),
        greek=(thi1 - thi3 - 1, thi3, -thi2, th02 + thi2, th01 - th02),
    )


@register("FS:(11)(1),21,111", "FS:A4-lin")
def fs_a4():
    A1_hat = col(1, -p1 * q1, -p2 * q2) * row(p1 * q1 + p2 * q2 + th1, 1, 1)
    A0m_hat = col(1, 0, 0) * row(t, -1 / q1, -1 / q2)
    A00_hat = sp.Matrix([
        [-p1 * q1 - p2 * q2 - th1 - thi1, -1, -1],
        [-t * q1 * (p1 * q1 - th01 - thi2), p1 * q1 - thi2, p1 * q1],
        [-t * q2 * (p2 * q2 - thi3), q2 * (p2 * q2 - thi3) / q1, p2 * q2 - thi3],
    ])
    P = _conjugator(-(A00_hat + A1_hat))
    A1, A0m, A00 = (conj(M, P, U) for M in (A1_hat, A0m_hat, A00_hat))
    h = (H_V(th01 + th1 + thi2 + thi3, th1 + thi1 - thi2 - 1, -th1 - thi3, t, q1, p1)
         + H_V(th1 + thi3, th1 + thi1 - thi3 - 1, -th1, t, q2, p2)
         + p1 * (q2 - 1) * (p2 * (q1 + q2) - thi3) / t)
    du = (q2 * (p2 * q2 - p2 - thi3) - q1 * (2 * p1 + p2 + t) - th1) / (t * q1)
    dv = (-p1 * (q1 + q2) - (2 * p2 + t) * q2 - th1) / (t * q2)
    return problem(
        family="FS", spectral="(11)(1),21,111", system="FS:A4", size=3,
        canonical=QP, times=(t,), params=(th01, th02, th1, thi1, thi2, thi3),
        fuchs=th01 + th02 + th1 + thi1 + thi2 + thi3, eliminate=th02,
        hamiltonians=(h,),
        terms=[pole(0, 2, A0m), pole(0, 1, A00), pole(1, 1, A1)],
        B=(-A0m / (t * x),),
        gauge_laws=(rates(u=du, v=dv),),
        scheme=(
            irregular("0", 0, [(0, 0), (0, th01), (t, th02)]),
            fuchsian("1", 1, 0, 0, th1),
            fuchsian("∞", None, thi1, thi2, thi3),
        ),
        greek=(th1, th01, thi1, thi2, thi3),
    )


@register("FS:(1)(1)(1),21,21")
def fs_gar_2111():
    A0_hat = col(1, mu1, mu2) * row(mu1 * lambda1 + mu2 * lambda2 + th0, -lambda1, -lambda2)
    A1_hat = (col(1, mu1 * lambda1 - thi2, mu2 * lambda2 - thi3)
              * row(-mu1 * lambda1 - mu2 * lambda2 + th1 + thi2 + thi3, 1, 1))
    B1_hat, B2_hat = _two_time_b(A0_hat + A1_hat)
    coupling = (mu1 * (lambda1 - lambda2) - thi2) * (mu2 * (lambda2 - lambda1) - thi3)
    h1 = (H_V_tilde(th0, th1 + thi3, thi2, t1, lambda1, mu1)
          + (1 - lambda1) * mu2 * lambda2 * (mu1 - mu1 * lambda1 + thi2) / t1
          + coupling / (t1 - t2))
    h2 = (H_V_tilde(th0, th1 + thi2, thi3, t2, lambda2, mu2)
          + (1 - lambda2) * mu1 * lambda1 * (mu2 - mu2 * lambda2 + thi3) / t2
          + coupling / (t2 - t1))
    Q1, P1 = qp_from_lambda_mu(lambda1, mu1, thi2)
    Q2, P2 = qp_from_lambda_mu(lambda2, mu2, thi3)
    back = {q1: Q1, p1: P1, q2: Q2, p2: P2}
    du1 = (2 * p1 * q1 * (q1 - 1) - (2 * thi2 + t1) * q1 - p2 * q2 - th1
           + (p2 * q2 * (t1 * q1 - t2 * q2) + thi3 * t2 * q2) / (t1 - t2)) / (t1 * q1)
    dv1 = ((-p1 * q1 * (t1 * q1 + (t2 - 2 * t1) * q2) + thi2 * t1 * q1) / (t1 - t2)
           - (p1 + thi2) * q2) / (t1 * q2)
    du2 = ((p2 * q2 * (t2 * q2 + (t1 - 2 * t2) * q1) - thi3 * t2 * q2) / (t1 - t2)
           - (p2 + thi3) * q1) / (t2 * q1)
    dv2 = (2 * p2 * q2 * (q2 - 1) - (2 * thi3 + t2) * q2 - p1 * q1 - th1
           - (p1 * q1 * (t2 * q2 - t1 * q1) + thi2 * t1 * q1) / (t1 - t2)) / (t2 * q2)
    return problem(
        family="FS", spectral="(1)(1)(1),21,21", system="Gar:2+1+1+1", size=3,
        canonical=LM, times=(t1, t2), params=(th0, th1, thi1, thi2, thi3),
        fuchs=th0 + th1 + thi1 + thi2 + thi3, eliminate=thi1,
        hamiltonians=(h1, h2),
        terms=[pole(0, 1, conj(A0_hat, U)), pole(1, 1, conj(A1_hat, U)), poly(0, sp.diag(0, t1, t2))],
        B=(E2 * x + conj(B1_hat, U), E3 * x + conj(B2_hat, U)),
        gauge_laws=(
            rates(u=du1.xreplace(back), v=dv1.xreplace(back)),
            rates(u=du2.xreplace(back), v=dv2.xreplace(back)),
        ),
        scheme=(
            fuchsian("0", 0, 0, 0, th0), fuchsian("1", 1, 0, 0, th1),
            irregular("∞", None, [(0, thi1), (-t1, thi2), (-t2, thi3)]),
        ),
        chart_map=lam_mu_chart((q1, p1, thi2), (q2, p2, thi3)),
        greek=(th0 + thi1, thi2, thi3, thi1 - 1),
    )


@register("FS:((11))((1)),111", "NY:A4-lin")
def ny_a4():
    A2_hat = col(1, 0, 0) * row(1, 1, 1)
    A1_hat = sp.Matrix([
        [p1 + p2 - t, q2, q1],
        [-p2, -p2, -p2],
        [-p1, -p1, -p1],
    ])
    a = p2 * (p2 - q2 - t) + p1 * p2 + th01 + thi2
    b = p1 * (p1 - q1 - t) + p1 * p2 + thi3
    c = p1 * (q2 - q1) + thi3
    A0_hat = sp.Matrix([[-thi1, 0, 0], [-a, -thi2, 0], [-b, -c, -thi3]])
    P = lower_conjugator(a, b, c, thi1, thi2, thi3)
    A2, A1, A0 = (conj(M, P, U) for M in (A2_hat, A1_hat, A0_hat))
    h = (H_IV(thi3, thi1 - thi3 - 1, t, q1, p1)
         + H_IV(th01 + thi2, thi1 - thi2 - thi3 - 1, t, q2, p2)
         + 2 * p1 * q1 * p2)
    return problem(
        family="FS", spectral="((11))((1)),111", system="NY:A4", size=3,
        canonical=QP, times=(t,), params=(th01, th02, thi1, thi2, thi3),
        fuchs=th01 + th02 + thi1 + thi2 + thi3, eliminate=th02,
        hamiltonians=(h,),
        terms=[pole(0, 3, A2), pole(0, 2, A1), pole(0, 1, A0)],
        B=(A2 / x,),
        gauge_laws=(rates(u=-p1 - 2 * p2 + q2 + t, v=q1 - 2 * p1 - 2 * p2 + t),),
        scheme=(
            irregular("0", 0, [(0, 0, 0), (0, 0, th01), (1, -t, th02)]),
            fuchsian("∞", None, thi1, thi2, thi3),
        ),
        greek=(thi1 - thi3 - 1, thi3, -thi2, th01 + thi2),
    )


@register("FS:((1)(1))((1)),21")
def fs_gar_311():
    A_inf2 = sp.diag(0, 1, 1)
    A_inf1_hat = sp.Matrix([
        [0, -1, -1],
        [-p1 * q1 + thi2, -t1, 0],
        [-p2 * q2 + thi3, 0, -t2],
    ])
    A0_hat = col(1, p1, p2) * row(p1 * q1 + p2 * q2 + th0, -q1, -q2)
    c12 = p1 * (q1 - q2) - thi2
    c21 = p2 * (q2 - q1) - thi3
    B1_hat = sp.Matrix([
        [0, 1, 0],
        [p1 * q1 - thi2, 0, c12 / (t1 - t2)],
        [0, c21 / (t1 - t2), 0],
    ])
    B2_hat = sp.Matrix([
        [0, 0, 1],
        [0, 0, c12 / (t2 - t1)],
        [p2 * q2 - thi3, c21 / (t2 - t1), 0],
    ])
    h1 = H_IV(thi2, th0, t1, q1, p1) + p2 * q2 * p1 + _coupling(thi2, thi3) / (t1 - t2)
    h2 = H_IV(thi3, th0, t2, q2, p2) + p1 * q1 * p2 + _coupling(thi2, thi3) / (t2 - t1)
    return problem(
        family="FS", spectral="((1)(1))((1)),21", system="Gar:3+1+1", size=3,
        canonical=QP, times=(t1, t2), params=(th0, thi1, thi2, thi3),
        fuchs=th0 + thi1 + thi2 + thi3, eliminate=thi1,
        hamiltonians=(h1, h2),
        terms=[pole(0, 1, conj(A0_hat, U)), poly(0, conj(A_inf1_hat, U)), poly(1, A_inf2)],
        B=(-E2 * x + conj(B1_hat, U), -E3 * x + conj(B2_hat, U)),
        gauge_laws=(
            rates(u=(p2 * (q1 - q2) + (t1 - t2) * (q1 + t1) + thi3) / (t1 - t2),
                  v=(p1 * (q2 - q1) + thi2) / (t1 - t2)),
            rates(u=(p2 * (q1 - q2) + thi3) / (t2 - t1),
                  v=(p1 * (q2 - q1) + (t2 - t1) * (q2 + t2) + thi2) / (t2 - t1)),
        ),
        scheme=(
            fuchsian("0", 0, 0, 0, th0),
            irregular("∞", None, [(0, 0, thi1), (-1, t1, thi2), (-1, t2, thi3)]),
        ),
        greek=(thi2, thi3, th0),
    )


@register("FS:(11)(1),(11)(1)", "FS:A3-lin")
def fs_a3():
    P = sp.Matrix([
        [1, 0, 0],
        [-p1 * q1, 1, 0],
        [-p2 * q2, (p2 * q2 * (q1 - q2) + thi1 * q2) / ((thi2 - thi1) * q1), 1],
    ])
    A_inf_hat = col(-1, p1 * q1, p2 * q2) * row(1, 0, 0)
    A00_hat = sp.Matrix([
        [-p1 * q1 - p2 * q2 - thi3, -1, -1],
        [q1 * (p1 * q1 - th01 - thi2), p1 * q1 - thi2, p1 * q1],
        [q2 * (p2 * q2 - thi1), q2 * (p2 * q2 - thi1) / q1, p2 * q2 - thi1],
    ])
    A0m_hat = col(1, 0, 0) * row(t, t / q1, t / q2)
    A_inf, A00, A0m = (conj(M, P, U) for M in (A_inf_hat, A00_hat, A0m_hat))
    h = (H_III_D6(-th01 - thi2, thi3 - thi2, t, q1, p1)
         + H_III_D6(-thi1, thi3 - thi1, t, q2, p2)
         + p1 * q2 * (p2 * (q1 + q2) - thi1) / t)
    return problem(
        family="FS", spectral="(11)(1),(11)(1)", system="FS:A3", size=3,
        canonical=QP, times=(t,), params=(th01, th02, thi1, thi2, thi3),
        fuchs=th01 + th02 + thi1 + thi2 + thi3, eliminate=th02,
        hamiltonians=(h,),
        terms=[pole(0, 2, A0m), pole(0, 1, A00), poly(0, A_inf)],
        B=(-A0m / (t * x),),
        gauge_laws=(rates(u=(q2 * (p2 * q2 - thi1) + t) / (t * q1), v=1 / q2),),
        scheme=(
            irregular("0", 0, [(0, 0), (0, th01), (t, th02)]),
            irregular("∞", None, [(0, thi1), (0, thi2), (1, thi3)]),
        ),
        greek=(-th01, -thi3, -thi2, -thi1),
    )


@register("FS:(2)(1),(1)(1)(1)", "Gar:3/2+1+1+1-lin")
def fs_gar_32111():
    A0m_hat = col(1, p1, p2) * row(-p1 - p2 + 1, 1, 1)
    s = p1 + p2 - 1
    A00_hat = sp.Matrix([
        [-thi1, -q1, -q2],
        [-p1 * q1 * s + thi2 * (p2 - 1) + (thi2 - thi1) * p1, -thi2, p1 * (q1 - q2) - thi2],
        [-p2 * q2 * s + thi3 * (p1 - 1) + (thi3 - thi1) * p2, p2 * (q2 - q1) - thi3, -thi3],
    ])
    B1_hat, B2_hat = _two_time_b(A00_hat)
    coupling = _coupling(thi2, thi3)
    h1 = (H_III_D6(-thi2, thi1 - thi2, t1, q1, p1)
          + q1 * (q1 * p1 * p2 - thi2 * p2) / t1 + coupling / (t1 - t2))
    h2 = (H_III_D6(-thi3, thi1 - thi3, t2, q2, p2)
          + q2 * (q2 * p1 * p2 - thi3 * p1) / t2 + coupling / (t2 - t1))
    d12 = t1 * (t1 - t2)
    d21 = t2 * (t2 - t1)
    return problem(
        family="FS", spectral="(2)(1),(1)(1)(1)", system="Gar:3/2+1+1+1", size=3,
        canonical=QP, times=(t1, t2), params=(th0, thi1, thi2, thi3),
        fuchs=th0 + thi1 + thi2 + thi3, eliminate=th0,
        hamiltonians=(h1, h2),
        terms=[pole(0, 2, conj(A0m_hat, U)), pole(0, 1, conj(A00_hat, U)), poly(0, sp.diag(0, t1, t2))],
        B=(E2 * x + conj(B1_hat, U), E3 * x + conj(B2_hat, U)),
        gauge_laws=(
            rates(u=((t1 - t2) * (1 - 2 * p1) * q1 + p2 * (t2 * q1 - t1 * q2) + thi3 * t1) / d12,
                  v=(t1 * (thi2 - 2 * p1 * q1) + p1 * (t2 * q1 + t1 * q2)) / d12),
            rates(u=(t2 * (thi3 - 2 * p2 * q2) + p2 * (t2 * q1 + t1 * q2)) / d21,
                  v=((t2 - t1) * (1 - 2 * p2) * q2 + p1 * (t1 * q2 - t2 * q1) + thi2 * t2) / d21),
        ),
        scheme=(
            irregular("0", 0, [(0, 0), (0, 0), (1, th0)]),
            irregular("∞", None, [(0, thi1), (-t1, thi2), (-t2, thi3)]),
        ),
        greek=(thi2, thi3, thi1),
    )


@register("FS:(((1)(1)))(((1)))", "Gar:5/2+1+1-lin")
def fs_gar_5211():
    A3 = sp.diag(0, -1, -1)
    A2_hat = sp.Matrix([[0, -1, -1], [-p1, 0, 0], [-p2, 0, 0]])
    A1_hat = sp.Matrix([
        [-p1 - p2, -q1, -q2],
        [p1 * q1 - thi2, p1 - t1, p1],
        [p2 * q2 - thi3, p2, p2 - t2],
    ])
    c = p2 * (q1 - q2) + thi3
    d = p1 * (q1 - q2) - thi2
    B1_hat = sp.Matrix([
        [0, -1, 0],
        [-p1, c / (t1 - t2) + q1, d / (t1 - t2)],
        [0, -c / (t1 - t2), -d / (t1 - t2)],
    ])
    B2_hat = sp.Matrix([
        [0, 0, -1],
        [0, c / (t2 - t1), d / (t2 - t1)],
        [-p2, -c / (t2 - t1), -d / (t2 - t1) + q2],
    ])
    coupling = _coupling(thi2, thi3)
    h1 = H_II(-thi2, t1, q1, p1) + p1 * p2 + coupling / (t1 - t2)
    h2 = H_II(-thi3, t2, q2, p2) + p1 * p2 + coupling / (t2 - t1)
    return problem(
        family="FS", spectral="(((1)(1)))(((1)))", system="Gar:5/2+1+1", size=3,
        canonical=QP, times=(t1, t2), params=(thi1, thi2, thi3),
        fuchs=thi1 + thi2 + thi3, eliminate=thi1,
        hamiltonians=(h1, h2),
        terms=[poly(0, conj(A1_hat, U)), poly(1, conj(A2_hat, U)), poly(2, A3)],
        B=(-E2 * x + conj(B1_hat, U), -E3 * x + conj(B2_hat, U)),
        gauge_laws=(rates(u=0, v=0), rates(u=0, v=0)),
        scheme=(irregular("∞", None, [(0, 0, 0, thi1), (1, 0, t1, thi2), (1, 0, t2, thi3)]),),
        greek=(thi2, thi3),
    )
