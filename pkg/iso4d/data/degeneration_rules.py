"""
四个族的退化规则表

每条规则把源线性问题的参数、时间与典则变量写成目标符号与 ε 的表达式，
哈密顿量按 H_源 = C·H_目标 + R 对应。矩阵族的规则直接以 Q, P 的矩阵代换给出。
"""
from typing import Callable, Dict, List, Optional, Sequence

import sympy as sp

from ..models.degeneration_models import DegenerationRule
from ..models.symexpr import EPS
from .lax_common import (
    p1, p2, q1, q2, t, t1, t2, th0, th01, th02, th1, tht, tht1, tht2, thi1, thi2, thi3, thi4,
)

e = EPS

RULES: List[DegenerationRule] = []


def _rule(
    source: str,
    target: str,
    family: str,
    *,
    params: Dict,
    times: Dict,
    coefficients: Sequence[Sequence],
    variables: Optional[Dict] = None,
    remainder: Optional[Sequence] = None,
    matrix: Optional[Callable] = None,
    matrix_remainder: Optional[Callable] = None,
    notes: str = "",
) -> DegenerationRule:
    rows = tuple(tuple(sp.sympify(c) for c in row) for row in coefficients)
    rule = DegenerationRule(
        source_id=source,
        target_id=target,
        family=family,
        params={k: sp.sympify(v) for k, v in params.items()},
        times={k: sp.sympify(v) for k, v in times.items()},
        variables={k: sp.sympify(v) for k, v in (variables or {}).items()},
        coefficients=rows,
        remainder=tuple(sp.sympify(r) for r in (remainder or [0] * len(rows))),
        matrix_map=matrix,
        matrix_remainder=matrix_remainder,
        notes=notes,
    )
    RULES.append(rule)
    return rule


def _no_data(source: str, target: str, family: str, notes: str) -> DegenerationRule:
    rule = DegenerationRule(source_id=source, target_id=target, family=family, has_data=False, notes=notes)
    RULES.append(rule)
    return rule


# ---------- Garnier ----------

# 代换显含时间时 R = C·Σ p ∂q/∂t（目标变量固定）
_TIME_TERM = "余项来自代换对时间的显式依赖，表中省略"

_D1 = (q1 - 1) * (p1 * (q1 - 1) - th1)

_rule(
    "Gar:11,11,11,11,11", "Gar:(1)(1),11,11,11", "Garnier",
    params={tht1: -1 / e, tht2: tht, thi1: thi2 + 1 / e, thi2: thi1},
    times={t1: 1 / (e * t1), t2: t2 / t1},
    coefficients=[[-e * t1**2, -e * t1 * t2], [0, t1]],
    remainder=[-e * t1 * p1 * (q1 - 1) - e * t1 * p2 * (q2 - 1), t1 * p2 * (q2 - 1) / t2],
    notes=_TIME_TERM,
    variables={
        q1: (p1 * (1 - q1) + p2 * (1 - q2) + th1 + tht + thi1) / (e * t1 * _D1),
        p1: e * t1 * _D1,
        q2: -t2 * (q2 - 1) * (p2 * (q2 - 1) - tht) / (t1 * _D1),
        p2: -t1 * _D1 / (t2 * (q2 - 1)),
    },
)

_rule(
    "Gar:(1)(1),11,11,11", "Gar:((1))((1)),11,11", "Garnier",
    params={th0: thi2 + e**-2, tht: th0, thi1: thi2, thi2: thi1 - thi2 - e**-2},
    times={t1: -t1 / e - e**-2, t2: -t2 / e - e**-2},
    coefficients=[[-e, 0], [0, -e]],
    variables={
        q1: 1 / (1 - e * q1), p1: (1 - e * q1) * (p1 * (1 - e * q1) / e + th1),
        q2: 1 / (1 - e * q2), p2: (1 - e * q2) * (p2 * (1 - e * q2) / e + th0),
    },
)

_rule(
    "Gar:(1)(1),11,11,11", "Gar:(1)(1),(1)(1),11", "Garnier",
    params={th0: -1 / e, tht: th0 + 1 / e},
    times={t2: e * t2},
    coefficients=[[1, 0], [0, 1 / e]],
    variables={q2: -1 / (e * q2), p2: q2 * (e * p2 * q2 - e * th0 - 1)},
    notes="表中 q1, p1 的代换对应目标 2+2+1 的 λ1, μ1 坐标；(q, p) 坐标下第一对不变",
)

_S = e * (p1 * q1 - p2 * q2 - thi1)

_rule(
    "Gar:(1)(1),(1)(1),11", "Gar:((1))((1)),(1)(1)", "Garnier",
    params={th1: -e**-2, thi2: thi2 + e**-2},
    times={t1: t2 / e - e**-2, t2: t1 / e},
    coefficients=[[0, e], [e, 0]],
    remainder=[0, -e * p1 * q1 / t1],
    notes=_TIME_TERM,
    variables={
        q1: _S / (_S * (1 + e * q2) + q2),
        p1: (1 + e * q2) / (e**2 * q2) * (_S * (1 + e * q2) + q2),
        q2: -t1 * p1 / q2,
        p2: q1 * q2 / t1 + 1,
    },
)

_rule(
    "Gar:(1)(1),(1)(1),11", "Gar:(((1)))(((1))),11", "Garnier",
    params={th0: -2 * e**-3, th1: th0, thi2: thi2 + 2 * e**-3},
    times={t1: -t2 / e**2 + e**-3, t2: t1 / e**4 + e**-6},
    coefficients=[[0, -e**2], [e**4, 0]],
    variables={
        q1: q2 / (q2 + e * p1),
        p1: (q2 + e * p1) * (p2 * (q2 + e * p1) - th0) / (e * p1),
        q2: (-p1 * (1 + e * q1) + e * (p2 * q2 + thi1)) / (e**3 * p1),
        p2: 1 - e**2 * p1,
    },
)

_rule(
    "Gar:((1))((1)),11,11", "Gar:((1))((1)),(1)(1)", "Garnier",
    params={th0: -1 / e, th1: th0 + 1 / e},
    times={t1: t2 - e * t1},
    coefficients=[[-1 / e, 0], [1 / e, 1]],
    remainder=[q1 * p1 / (e * t1), -q1 * p1 / (e * t1)],
    notes=_TIME_TERM,
    variables={q1: e * t1 * p1 + q2, p1: -q1 / (e * t1), p2: p2 + q1 / (e * t1)},
)

_rule(
    "Gar:((1))((1)),11,11", "Gar:(((1)))(((1))),11", "Garnier",
    params={th1: e**-6, thi2: thi2 - e**-6},
    times={t1: e * t1 - 2 * e**-3, t2: -t2 / e - e**-3},
    coefficients=[[1 / e, 0], [0, -e]],
    variables={q1: -e * p1, p1: q1 / e - e**-3, q2: q2 / e, p2: e * p2},
)

_rule(
    "Gar:((1))((1)),(1)(1)", "Gar:((((1))))((((1))))", "Garnier",
    params={th0: 3 * e**-4, thi2: thi2 - 3 * e**-4},
    times={t1: t1 / e**3 + t2 / e**4 + e**-6, t2: t2 - 3 * e**-2},
    coefficients=[[e**3, 0], [-1 / e, 1]],
    variables={q1: q1 / e**3 + e**-4, p1: e**3 * p1 - e**2 * q2, p2: p2 - q1 / e - 2 * e**-2},
)

_rule(
    "Gar:(((1)))(((1))),11", "Gar:((((1))))((((1))))", "Garnier",
    params={th0: -e**-12},
    times={t1: -e * t1 + t2 / e**2 + sp.Rational(3, 4) * e**-8, t2: -e**2 * t2 + sp.Rational(3, 2) * e**-4},
    coefficients=[[-1 / e, 0], [-e**-5, -e**-2]],
    remainder=[0, -q2 / e**2],
    variables={
        q1: -q1 / e - e**-4 / 2,
        p1: -q2 / e**2,
        q2: e**2 * (q2 + e**3 * (q1 * q2 - p1) - e**6 * thi1) / (1 + e**3 * q1 + e**6 * (p2 - t2)),
        p2: (p2 - t2) / e**2 + q1 / e**5 + e**-8,
    },
)


# ---------- Fuji–Suzuki ----------

_rule(
    "FS:21,21,111,111", "FS:(2)(1),111,111", "FS",
    params={th1: -1 / e, tht: th1 + 1 / e},
    times={t: 1 + e * t},
    coefficients=[[1 / e]],
    remainder=[(p1 * q1 + p2 * q2) / (e * t)],
    variables={q1: 1 + e * t * q2, p1: p2 / (e * t), q2: 1 + e * t * q1, p2: p1 / (e * t)},
    notes="源的第一对对应目标的第二对（表中写成恒等对应）",
)

_rule(
    "FS:21,21,111,111", "FS:(11)(1),21,111", "FS",
    params={th01: th02 - 1 / e, th02: th01, tht: 1 / e},
    times={t: e * t},
    coefficients=[[1 / e]],
    variables={
        q1: 1 / q1, p1: -q1 * (p1 * q1 - th01 - thi2),
        q2: 1 / q2, p2: -q2 * (p2 * q2 - thi3),
    },
)

_no_data(
    "FS:21,21,111,111", "FS:(1)(1)(1),21,21", "FS",
    "形变参数个数增加，表中不给代换",
)

_rule(
    "FS:(2)(1),111,111", "FS:((11))((1)),111", "FS",
    params={th01: th02 + e**-2, th02: th01, th1: -e**-2},
    times={t: -t / e + e**-2},
    coefficients=[[-e]],
    variables={q1: e * q1, p1: p1 / e, q2: e * q2, p2: p2 / e},
)

_no_data(
    "FS:(2)(1),111,111", "FS:(2)(1),(1)(1)(1)", "FS",
    "形变参数个数增加，表中不给代换",
)

_rule(
    "FS:(11)(1),21,111", "FS:((11))((1)),111", "FS",
    params={th1: e**-2, th02: th02 - e**-2},
    times={t: -t / e - e**-2},
    coefficients=[[-e]],
    variables={
        q1: 1 / (1 - e * q2), p1: (1 - e * q2) * (th01 + thi2 + p2 / e - p2 * q2),
        q2: 1 / (1 - e * q1), p2: (1 - e * q1) * (thi3 + p1 / e - p1 * q1),
    },
)

_no_data(
    "FS:(11)(1),21,111", "FS:((1)(1))((1)),21", "FS",
    "形变参数个数增加，表中不给代换",
)

_rule(
    "FS:(11)(1),21,111", "FS:(11)(1),(11)(1)", "FS",
    params={th1: 1 / e, thi1: thi3 - 1 / e, thi3: thi1},
    times={t: e * t},
    coefficients=[[1 / e]],
    remainder=[-(p1 * q1 + p2 * q2) / (e * t)],
    variables={q1: -q1 / (e * t), p1: -e * t * p1, q2: -q2 / (e * t), p2: -e * t * p2},
)

_rule(
    "FS:(1)(1)(1),21,21", "FS:((1)(1))((1)),21", "FS",
    params={th1: e**-2, thi1: thi1 - e**-2},
    times={t1: -t1 / e - e**-2, t2: -t2 / e - e**-2},
    coefficients=[[-e, 0], [0, -e]],
    variables={
        q1: 1 / (1 - e * q1), p1: (1 - e * q1) * (p1 * (1 - e * q1) / e + thi2),
        q2: 1 / (1 - e * q2), p2: (1 - e * q2) * (p2 * (1 - e * q2) / e + thi3),
    },
)

_rule(
    "FS:(1)(1)(1),21,21", "FS:(2)(1),(1)(1)(1)", "FS",
    params={th0: -1 / e, th1: th0 + 1 / e},
    times={t1: e * t1, t2: e * t2},
    coefficients=[[1 / e, 0], [0, 1 / e]],
    variables={
        q1: -1 / (e * q1), p1: e * q1 * (p1 * q1 - thi2),
        q2: -1 / (e * q2), p2: e * q2 * (p2 * q2 - thi3),
    },
)

_no_data(
    "FS:((11))((1)),111", "FS:(((1)(1)))(((1)))", "FS",
    "形变参数个数增加，表中不给代换",
)

_rule(
    "FS:((1)(1))((1)),21", "FS:(((1)(1)))(((1)))", "FS",
    params={th0: -e**-6, thi1: thi1 + e**-6},
    times={t1: e * t1 - 2 * e**-3, t2: e * t2 - 2 * e**-3},
    coefficients=[[1 / e, 0], [0, 1 / e]],
    variables={q1: q1 / e + e**-3, p1: e * p1, q2: q2 / e + e**-3, p2: e * p2},
)

_no_data(
    "FS:(11)(1),(11)(1)", "FS:(((1)(1)))(((1)))", "FS",
    "形变参数个数增加，表中不给代换",
)

_rule(
    "FS:(2)(1),(1)(1)(1)", "FS:(((1)(1)))(((1)))", "FS",
    params={thi1: 2 * e**-3, thi2: -thi2, thi3: -thi3},
    times={t1: -t1 / e**4 - e**-6, t2: -t2 / e**4 - e**-6},
    coefficients=[[-e**4, 0], [0, -e**4]],
    notes="θ∞1 按 2ε⁻³ 取（表中 2ε⁻² 时 ε⁻² 阶不抵消）",
    variables={
        q1: (1 + e * (q1 - thi2 / p1)) / e**3, p1: e**2 * p1,
        q2: (1 + e * (q2 - thi3 / p2)) / e**3, p2: e**2 * p2,
    },
)


# ---------- Sasano ----------

_rule(
    "Ss:31,22,22,1111", "Ss:(2)(2),31,1111", "Sasano",
    params={th1: th1 - 1 / e, tht: 1 / e},
    times={t: 1 + e * t},
    coefficients=[[1 / e]],
    remainder=[(p1 * q1 + p2 * q2) / (e * t)],
    variables={q1: 1 + e * t * q1, p1: p1 / (e * t), q2: 1 + e * t * q2, p2: p2 / (e * t)},
)

_rule(
    "Ss:31,22,22,1111", "Ss:(11)(11),31,22", "Sasano",
    params={tht: 1 / e, thi1: thi3 - 1 / e, thi2: thi4 - 1 / e, thi3: thi1, thi4: thi2},
    times={t: 1 / (e * t)},
    coefficients=[[-e * t**2]],
    remainder=[-e * t * (p1 * q1 + p2 * q2)],
    variables={
        q1: 1 / (e * t * q2), p1: -e * t * q2 * (p2 * q2 - th1 - thi2 - thi4),
        q2: 1 / (e * t * q1), p2: -e * t * q1 * (p1 * q1 - thi1),
    },
)

_rule(
    "Ss:31,22,22,1111", "Ss:(111)(1),22,22", "Sasano",
    params={th0: 1 / e, tht: th0, thi1: thi1 - 1 / e},
    times={t: 1 / (1 - e * t)},
    coefficients=[[1 / e]],
    variables={
        q1: (q2 - 1) / (q2 * (1 - e * t)),
        p1: q2 * (1 - e * t) * (p2 * q2 + th0 + th1 + thi1 + thi3),
        q2: (q1 - 1) / (q1 * (1 - e * t)),
        p2: q1 * (1 - e * t) * (p1 * q1 - th1 - thi3),
    },
    notes="表中两对的右端互换后才给出目标哈密顿量",
)

_rule(
    "Ss:(11)(11),31,22", "Ss:((11))((11)),31", "Sasano",
    params={th1: e**-2, thi1: thi3, thi2: thi4, thi3: thi1 - e**-2, thi4: thi2 - e**-2},
    times={t: -t / e - e**-2},
    coefficients=[[-e]],
    notes="表中 θ∞1, θ∞2 与 θ∞3, θ∞4 的代换需要交换",
    variables={
        q1: 1 / (1 - e * q2), p1: (1 - e * q2) * (p2 * (1 - e * q2) / e + thi1),
        q2: 1 / (1 - e * q1), p2: (1 - e * q1) * (p1 * (1 - e * q1) / e + thi2 + thi4),
    },
)

_rule(
    "Ss:(2)(2),31,1111", "Ss:((11))((11)),31", "Sasano",
    params={th1: -e**-2, thi1: thi1 + e**-2, thi2: thi2 + e**-2},
    times={t: -t / e - e**-2},
    coefficients=[[-e]],
    variables={
        q1: 1 / (1 - e * q1), p1: (1 - e * q1) * (p1 / e - p1 * q1 - th0 - thi1 - thi3),
        q2: 1 / (1 - e * q2), p2: (1 - e * q2) * (p2 / e - p2 * q2 + thi3),
    },
)

_rule(
    "Ss:(2)(2),31,1111", "Ss:(2)(2),(111)(1)", "Sasano",
    params={th0: 1 / e, th1: th0, thi1: thi1 - 1 / e},
    times={t: -e * t},
    coefficients=[[-1 / e]],
    remainder=[(p1 * q1 + p2 * q2) / (e * t)],
    variables={q1: q1 / (e * t), p1: e * t * p1, q2: q2 / (e * t), p2: e * t * p2},
)

_rule(
    "Ss:(111)(1),22,22", "Ss:(2)(2),(111)(1)", "Sasano",
    params={th0: th0 - 1 / e, th1: 1 / e},
    times={t: e * t},
    coefficients=[[1 / e]],
    variables={
        q2: -1 / (e * q1), p2: e * q1 * (p1 * q1 + th0 + thi1 + thi3),
        q1: -1 / (e * q2), p1: q2 * (e * (p2 * q2 - thi3) - 1),
    },
    notes="表中左端两对需要互换",
)


# ---------- 矩阵 Painlevé ----------

_rule(
    "Mat:22,22,22,211", "Mat:(2)(2),22,211", "Matrix",
    params={th1: 1 / e, tht: th1 - 1 / e},
    times={t: 1 + e * t},
    coefficients=[[1 / e]],
    matrix=lambda Q, P, I: (I - e * P, Q / e),
)

_rule(
    "Mat:22,22,22,211", "Mat:(2)(11),22,22", "Matrix",
    params={tht: 1 / e, thi1: thi1 - 1 / e},
    times={t: 1 / (e * t)},
    coefficients=[[-e * t**2]],
    matrix=lambda Q, P, I: (Q**-1 / (e * t), -e * t * (Q * P + (th0 + thi1) * I) * Q),
    matrix_remainder=lambda Q, P, I: -e * t * sp.trace(P * Q),
)

_rule(
    "Mat:(2)(2),22,211", "Mat:((2))((2)),211", "Matrix",
    params={th0: th0 - e**-2, th1: e**-2},
    times={t: (-t + 1 / e) / e},
    coefficients=[[-e]],
    matrix=lambda Q, P, I: (e * Q, P / e),
)

_rule(
    "Mat:(2)(2),22,211", "Mat:((2))((11)),22", "Matrix",
    params={th1: e**-2, thi2: thi2 - e**-2, thi3: thi3 - e**-2},
    times={t: (-t - 1 / e) / e},
    coefficients=[[-e]],
    matrix=lambda Q, P, I: (
        (I + e * P)**-1,
        ((P + I / e) * (-P + Q + t * I) + (th0 + 2 * thi1 + e**-2 - 1) * I) * (e * P + I),
    ),
    matrix_remainder=lambda Q, P, I: -e * sp.trace(P),
)

_rule(
    "Mat:(2)(11),22,22", "Mat:((2))((11)),22", "Matrix",
    params={th1: e**-2, thi1: thi1 - e**-2},
    times={t: (-t - 1 / e) / e},
    coefficients=[[-e]],
    matrix=lambda Q, P, I: (
        (I - e * Q)**-1,
        ((Q - I / e) * P + (th0 + thi1 - e**-2) * I) * (e * Q - I),
    ),
)

_rule(
    "Mat:(2)(2),22,211", "Mat:(2)(2),(2)(11)", "Matrix",
    params={th0: 1 / e, th1: th0, thi1: thi1 - 1 / e},
    times={t: e * t},
    coefficients=[[1 / e]],
    matrix=lambda Q, P, I: (P, -Q),
)

_rule(
    "Mat:(2)(11),22,22", "Mat:(2)(2),(2)(11)", "Matrix",
    params={th0: -1 / e, th1: th0 + 1 / e},
    times={t: e * t},
    coefficients=[[1 / e]],
    matrix=lambda Q, P, I: ((-e * Q)**-1, e * (Q * P + (thi1 - 1 / e) * I) * Q),
)

_rule(
    "Mat:(2)(2),(2)(11)", "Mat:(((2)))(((11)))", "Matrix",
    params={th0: -2 * e**-3, thi1: thi1 + 2 * e**-3},
    times={t: -t / e**4 - e**-6},
    coefficients=[[-e**4]],
    matrix=lambda Q, P, I: ((I - e * Q) / e**3, e**2 * (-P + Q * Q + t * I)),
    matrix_remainder=lambda Q, P, I: -e**4 * sp.trace(Q),
)

_rule(
    "Mat:((2))((2)),211", "Mat:(((2)))(((11)))", "Matrix",
    params={th0: -e**-6, thi2: thi2 + e**-6, thi3: thi3 + e**-6},
    times={t: e * t - 2 * e**-3},
    coefficients=[[1 / e]],
    matrix=lambda Q, P, I: (
        Q / e + I / e**3,
        e * P + e**3 * (thi1 - e**-6) * (e**2 * Q + I)**-1,
    ),
)

_rule(
    "Mat:((2))((11)),22", "Mat:(((2)))(((11)))", "Matrix",
    params={th0: -e**-6, thi1: thi1 + e**-6},
    times={t: e * t - 2 * e**-3},
    coefficients=[[1 / e]],
    matrix=lambda Q, P, I: (-Q / e + I / e**3, -e * (P - Q * Q - t * I)),
    matrix_remainder=lambda Q, P, I: sp.trace(Q) / e,
)


def rule_index() -> Dict[str, DegenerationRule]:
    return {r.rule_id: r for r in RULES}

