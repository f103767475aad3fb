"""
Garnier 系（2×2）的线性问题
"""
import sympy as sp

from .hamiltonians import H_II, H_III_D6, H_IV, H_V_tilde, H_VI
from .lax_common import (
    LM, QP, E, col, conj, conjugator2, fuchsian, gauge, irregular, lam_mu_chart, off_diagonal,
    p1, p2, pole, poly, problem, q1, q2, qp_from_lambda_mu, rates, register, row,
    lambda1, lambda2, mu1, mu2, t1, t2, th0, th1, tht, tht1, tht2, thi1, thi2, u, x,
)

E2 = E(2, 2)
U = gauge(1, u)


def _garnier_hamiltonian(i):
    ti, tj = (t1, t2) if i == 0 else (t2, t1)
    qi, pi_, qj, pj = (q1, p1, q2, p2) if i == 0 else (q2, p2, q1, p1)
    thi, thj = (tht1, tht2) if i == 0 else (tht2, tht1)
    rest = ((2 * qi * pi_ + qj * pj - th1 - 2 * thi2) * q1 * q2 * pj
            - (ti * (ti - 1) * (pi_ * qi + thi) * pi_ * qj
               - ti * (tj - 1) * (2 * pi_ * qi + thi) * pj * qj
               + tj * (ti - 1) * (pj**2 * qj + thj * (pj - pi_)) * qi) / (ti - tj))
    return H_VI(thi2, th1, thi, th0 + thj + 1, ti, qi, pi_) + rest / (ti * (ti - 1))


def _garnier_gauge(i):
    ti = t1 if i == 0 else t2
    qi, pi_, qj, pj = (q1, p1, q2, p2) if i == 0 else (q2, p2, q1, p1)
    thi = tht1 if i == 0 else tht2
    return (qi * (2 * pi_ * (ti - qi) + th1 + 2 * thi2) - 2 * qi * pj * qj + ti * thi) / (ti * (ti - 1))


@register("Gar:11,11,11,11,11", "Gar:1+1+1+1+1-lin")
def gar_11111():
    s = p1 * q1 + p2 * q2 - thi2
    hat = {
        0: col(1, 0) * row(th0, -1 + q1 / t1 + q2 / t2),
        1: col(1, s) * row(th1 + thi2 - p1 * q1 - p2 * q2, 1),
        t1: col(1, t1 * p1) * row(tht1 + p1 * q1, -q1 / t1),
        t2: col(1, t2 * p2) * row(tht2 + p2 * q2, -q2 / t2),
    }
    a_inf = -sum(hat.values(), sp.zeros(2, 2))
    P = conjugator2(a_inf[1, 0], thi1, thi2)
    A = {xi: conj(M, P, U) for xi, M in hat.items()}
    return problem(
        family="Garnier", spectral="11,11,11,11,11", system="Gar:1+1+1+1+1", size=2,
        canonical=QP, times=(t1, t2), params=(th0, th1, tht1, tht2, thi1, thi2),
        fuchs=th0 + th1 + tht1 + tht2 + thi1 + thi2, eliminate=th0,
        hamiltonians=(_garnier_hamiltonian(0), _garnier_hamiltonian(1)),
        terms=[pole(xi, 1, M) for xi, M in A.items()],
        B=(-A[t1] / (x - t1), -A[t2] / (x - t2)),
        gauge_laws=(rates(u=_garnier_gauge(0)), rates(u=_garnier_gauge(1))),
        scheme=(
            fuchsian("0", 0, 0, th0), fuchsian("1", 1, 0, th1),
            fuchsian("t1", t1, 0, tht1), fuchsian("t2", t2, 0, tht2),
            fuchsian("∞", None, thi1, thi2),
        ),
        greek=(thi2, th1, tht1, tht2, th0 + 1),
    )


@register("Gar:(1)(1),11,11,11", "Gar:2+1+1+1-lin")
def gar_2111():
    ell = lambda1 * mu1 + lambda2 * mu2
    hat = {
        0: col(1, 1) * row(ell - th1 - tht - thi1, -ell - thi2),
        1: col(1, lambda1) * row(th1 - mu1 * lambda1, mu1),
        t2 / t1: col(1, lambda2) * row(tht - mu2 * lambda2, mu2),
    }
    A = {xi: conj(M, U) for xi, M in hat.items()}
    A_inf0 = -sum(A.values(), sp.zeros(2, 2))
    B1 = off_diagonal(-A_inf0) / t1
    At = A[t2 / t1]
    coupling = (mu1 * (lambda1 - lambda2) - th1) * (mu2 * (lambda2 - lambda1) - tht)
    h1 = (H_V_tilde(th0 + thi2, th0 + tht + thi1, th1, t1, lambda1, mu1)
          + mu2 * lambda2 / t1 * (1 - lambda1) * (mu1 - (mu1 * lambda1 - th1))
          + coupling / (t1 - t2))
    h2 = (H_V_tilde(th0 + thi2, th0 + th1 + thi1, tht, t2, lambda2, mu2)
          + mu1 * lambda1 / t2 * (1 - lambda2) * (mu2 - (mu2 * lambda2 - tht))
          + coupling / (t2 - t1))
    _, pp1 = qp_from_lambda_mu(lambda1, mu1, th1)
    _, pp2 = qp_from_lambda_mu(lambda2, mu2, tht)
    return problem(
        family="Garnier", spectral="(1)(1),11,11,11", system="Gar:2+1+1+1", size=2,
        canonical=LM, times=(t1, t2), params=(th0, th1, tht, thi1, thi2),
        fuchs=th0 + th1 + tht + thi1 + thi2, eliminate=th0,
        hamiltonians=(h1, h2),
        terms=[pole(xi, 1, M) for xi, M in A.items()] + [poly(0, sp.diag(0, t1))],
        B=(E2 * x + B1 + (t2 / t1**2) * At / (x - t2 / t1), -(At / t1) / (x - t2 / t1)),
        gauge_laws=(rates(u=(pp1 + thi1 - thi2) / t1), rates(u=pp2 / t2)),
        scheme=(
            fuchsian("0", 0, 0, th0), fuchsian("1", 1, 0, th1), fuchsian("t2/t1", t2 / t1, 0, tht),
            irregular("∞", None, [(0, thi1), (-t1, thi2)]),
        ),
        chart_map=lam_mu_chart((q1, p1, th1), (q2, p2, tht)),
        greek=(thi2, th1, tht, -th0 - 1),
    )


@register("Gar:((1))((1)),11,11", "Gar:3+1+1-lin")
def gar_311():
    A0 = conj(col(q2, 1) * row(p2, -p2 * q2 + th0), U)
    A1 = conj(col(q1, 1) * row(p1, -p1 * q1 + th1), U)
    A_inf2 = E2
    A_inf1 = conj(-sp.Matrix([[0, p1 * q1 + p2 * q2 + thi1], [1, t2]]), U)
    loc = t2 - t1
    coupling = (p1 * (q1 - q2) - th1) * (p2 * (q2 - q1) - th0)
    h1 = H_IV(th1, thi1, t1, q1, p1) + p2 * q2 * p1 + coupling / (t1 - t2)
    h2 = H_IV(th0, thi1, t2, q2, p2) + p1 * q1 * p2 + coupling / (t2 - t1)
    return problem(
        family="Garnier", spectral="((1))((1)),11,11", system="Gar:3+1+1", size=2,
        canonical=QP, times=(t1, t2), params=(th0, th1, thi1, thi2),
        fuchs=th0 + th1 + thi1 + thi2, eliminate=thi2,
        hamiltonians=(h1, h2),
        terms=[pole(0, 1, A0), pole(loc, 1, A1), poly(0, A_inf1), poly(1, A_inf2)],
        B=(A1 / (x - loc), -A1 / (x - loc) - A_inf2 * x + off_diagonal(-A_inf1)),
        gauge_laws=(rates(u=-p1), rates(u=t2 - p2)),
        scheme=(
            fuchsian("0", 0, 0, th0), fuchsian("t2-t1", loc, 0, th1),
            irregular("∞", None, [(0, 0, thi1), (-1, t2, thi2)]),
        ),
        greek=(th1, th0, thi1),
    )


@register("Gar:(1)(1),(1)(1),11", "Gar:2+2+1-lin")
def gar_221():
    A0m = conj((t2 / t1) * col(1, 1) * row(1 - mu2, mu2), U)
    A00 = conj(sp.Matrix([
        [mu1 * lambda1 - th1 - thi1, -mu1 * lambda1 - mu2 * lambda2 - thi2],
        [mu1 * lambda1 + (1 - mu2) * lambda2 - th1 - thi1, -mu1 * lambda1 - thi2],
    ]), U)
    A1 = conj(col(1, lambda1) * row(-mu1 * lambda1 + th1, mu1), U)
    A_inf0 = -(A00 + A1)
    shared = (t2 / t1) * (mu1 * (lambda1 - 1) - th1) * (mu2 * (lambda1 - 1) + 1)
    h1 = (H_V_tilde(th0 + thi2, th0 + thi1, th1, t1, lambda1, mu1)
          + (((mu1 * lambda1 - th1) * lambda1 - mu1) * mu2 * lambda2 + mu1 * lambda2 - shared) / t1)
    h2 = H_III_D6(thi2, -th0, t2, lambda2, mu2) + (-mu1 * lambda1 * lambda2 + shared) / t2
    _, pp1 = qp_from_lambda_mu(lambda1, mu1, th1)
    chart_map = lam_mu_chart((q1, p1, th1))
    chart_map.update({lambda2: q2, mu2: p2})
    return problem(
        family="Garnier", spectral="(1)(1),(1)(1),11", system="Gar:2+2+1", size=2,
        canonical=LM, times=(t1, t2), params=(th0, th1, thi1, thi2),
        fuchs=th0 + th1 + thi1 + thi2, eliminate=th0,
        hamiltonians=(h1, h2),
        terms=[pole(0, 2, A0m), pole(0, 1, A00), pole(1, 1, A1), poly(0, sp.diag(0, t1))],
        B=(E2 * x + off_diagonal(-A_inf0) / t1 + A0m / (t1 * x), -A0m / (t2 * x)),
        gauge_laws=(rates(u=(pp1 + thi1 - thi2) / t1), rates(u=-lambda2 / t2)),
        scheme=(
            irregular("0", 0, [(0, 0), (t2 / t1, th0)]), fuchsian("1", 1, 0, th1),
            irregular("∞", None, [(0, thi1), (-t1, thi2)]),
        ),
        chart_map=chart_map,
        greek=(th1, th0, -th0 - th1 - thi2),
    )


@register("Gar:((1))((1)),(1)(1)", "Gar:3+2-lin")
def gar_32():
    A0m = conj(col(q2, 1) * row(-q1, q1 * q2 + t1), U)
    A00 = conj(sp.Matrix([
        [-p1 * q1 + p2 * q2, -q2 * (p2 * q2 - th0) + p1 * (2 * q1 * q2 + t1)],
        [p2, p1 * q1 - p2 * q2 + th0],
    ]), U)
    A_inf2 = E2
    A_inf1 = conj(sp.Matrix([[0, p1 * q1 - p2 * q2 - thi1], [-1, -t2]]), U)
    h1 = H_III_D6(-thi1, th0 + 1, t1, q1, p1) - p1 - q1 * q2 / t1 * (q2 - p2 + t2) + p1 * p2 - q2
    h2 = H_IV(th0, thi1, t2, q2, p2) - p1 * q1 * (p2 - 2 * q2 - t2) - q1 * q2 + t1 * p1
    return problem(
        family="Garnier", spectral="((1))((1)),(1)(1)", system="Gar:3+2", size=2,
        canonical=QP, times=(t1, t2), params=(th0, thi1, thi2),
        fuchs=th0 + thi1 + thi2, eliminate=thi2,
        hamiltonians=(h1, h2),
        terms=[pole(0, 2, A0m), pole(0, 1, A00), poly(0, A_inf1), poly(1, A_inf2)],
        B=(-A0m / (t1 * x), -A_inf2 * x + off_diagonal(-A_inf1)),
        gauge_laws=(rates(u=-q1 / t1), rates(u=t2 - p2)),
        scheme=(
            irregular("0", 0, [(0, 0), (t1, th0)]),
            irregular("∞", None, [(0, 0, thi1), (-1, t2, thi2)]),
        ),
        greek=(th0, thi1),
    )


@register("Gar:(((1)))(((1))),11", "Gar:4+1-lin")
def gar_41():
    A0 = conj(col(q2, 1) * row(p2, -p2 * q2 + th0), U)
    A_inf3 = sp.diag(0, -1)
    A_inf2 = conj(sp.Matrix([[0, p1], [1, -2 * t2]]), U)
    A_inf1 = conj(sp.Matrix([
        [-p1, p1 * (q1 + t2) - p2 * q2 - thi1],
        [-q1 + t2, p1 - t1 - t2**2],
    ]), U)
    h1 = H_II(-thi1, t1, q1, p1) + p2 * q2 * (q1 - q2 + t2) + p1 * p2 + th0 * q2
    h2 = (-p2**2 * q2 - t2 * p2 * q2**2 + t2**2 * p2 * q2 + th0 * t2 * q2 - thi1 * p2
          + p1 * p2 * (q1 - 2 * q2 + t2) + q1 * q2 * (p2 * q2 - th0) + th0 * p1 + t1 * p2 * q2)
    return problem(
        family="Garnier", spectral="(((1)))(((1))),11", system="Gar:4+1", size=2,
        canonical=QP, times=(t1, t2), params=(th0, thi1, thi2),
        fuchs=th0 + thi1 + thi2, eliminate=thi2,
        hamiltonians=(h1, h2),
        terms=[pole(0, 1, A0), poly(0, A_inf1), poly(1, A_inf2), poly(2, A_inf3)],
        B=(
            -E2 * x + off_diagonal(A_inf2),
            -E2 * x**2 + A_inf2 * x + A_inf1 + sp.diag(0, t1 + t2**2),
        ),
        gauge_laws=(rates(u=-q1 - t2), rates(u=p2 - t1 - t2**2)),
        scheme=(
            fuchsian("0", 0, 0, th0),
            irregular("∞", None, [(0, 0, 0, thi1), (1, 2 * t2, t1 + t2**2, thi2)]),
        ),
        greek=(th0, thi1),
    )


@register("Gar:((((1))))((((1))))", "Gar:5-lin")
def gar_5():
    A4 = E2
    A3 = conj(sp.Matrix([[0, q2], [-1, 0]]), U)
    A2 = conj(sp.Matrix([[-q2, -p1], [-q1, q2 + 2 * t2]]), U)
    A1 = conj(sp.Matrix([
        [p1 - q1 * q2, p1 * q1 - (p2 - q2 - 2 * t2) * q2 - thi1],
        [-p2, -p1 + q1 * q2 + t1],
    ]), U)
    h1 = -q1 * (q1 * p1 - thi1) + q2 * (q1 * (p2 + q2) - 2 * p1 + t1) + p1 * (p2 - 2 * t2)
    h2 = H_IV(-1, thi1, 2 * t2, q2, p2) + q1 * q2 * (q1 * q2 - 2 * p1 + t1) + p1 * (p1 - p2 * q1 - t1)
    return problem(
        family="Garnier", spectral="((((1))))((((1))))", system="Gar:5", size=2,
        canonical=QP, times=(t1, t2), params=(thi1, thi2),
        fuchs=thi1 + thi2, eliminate=thi2,
        hamiltonians=(h1, h2),
        terms=[poly(0, A1), poly(1, A2), poly(2, A3), poly(3, A4)],
        B=(A4 * x + A3, A4 * x**2 + A3 * x + A2 + sp.diag(0, -2 * t2)),
        gauge_laws=(rates(u=-q1), rates(u=2 * t2 - p2)),
        scheme=(irregular("∞", None, [(0, 0, 0, 0, thi1), (-1, 0, -2 * t2, -t1, thi2)]),),
        greek=(thi1,),
    )
