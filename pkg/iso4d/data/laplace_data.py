"""
Laplace 变换对应表与幂零构造备注

对应的两侧都是已登记的线性问题；right_text 取修正后的谱型，printed 保留印刷写法。
"""
from typing import Dict, List

from ..models.analysis_models import LaplaceCorrespondence, LaplaceRemark
from .spectral_corpus import (
    OSHIMA_CONFLUENT,
    OSHIMA_CORRESPONDENCES,
    OSHIMA_NON_DEFORMING,
    OSHIMA_THREE_POINT,
    OSHIMA_THREE_POINT_CONFLUENCES,
)

CORRESPONDENCES: List[LaplaceCorrespondence] = [
    # 一个 Poincaré 秩 1 的不规则奇点 + 若干正则奇点
    LaplaceCorrespondence(
        "L1", 1, "Gar:(1)(1),11,11,11", "FS:(1)(1)(1),21,21",
        "(1)(1),11,11,11", "(1)(1)(1),21,21",
    ),
    LaplaceCorrespondence(
        "L2", 1, "FS:(2)(1),111,111", "Ss:(11)(11),31,22",
        "(2)(1),111,111", "(11)(11),31,22",
        printed="(2)(1),111,111 ↔ (11)(11),31,21",
    ),
    LaplaceCorrespondence(
        "L3", 1, "Ss:(2)(2),31,1111", "Ss:(111)(1),22,22",
        "(2)(2),31,1111", "(111)(1),22,22",
    ),
    LaplaceCorrespondence(
        "L4", 1, "Mat:(2)(2),22,211", "Mat:(2)(11),22,22",
        "(2)(2),22,211", "(2)(11),22,22",
    ),
    # Poincaré 秩 2
    LaplaceCorrespondence(
        "L5", 2, "Gar:((1))((1)),11,11", "FS:((1)(1))((1)),21",
        "((1))((1)),11,11", "((1)(1))((1)),21",
    ),
    LaplaceCorrespondence(
        "L6", 2, "FS:((11))((1)),111", "Ss:((11))((11)),31",
        "((11))((1)),111", "((11))((11)),31",
    ),
    LaplaceCorrespondence(
        "L7", 2, "Mat:((2))((2)),211", "Mat:((2))((11)),22",
        "((2))((2)),211", "((11))((2)),22",
    ),
]

REMARKS: List[LaplaceRemark] = [
    LaplaceRemark(
        "R1",
        "(2)(1),(1)(1)(1)",
        "Gar:3/2+1+1+1",
        {"S": "diag(0, 1, t)", "T": "[[0, 1], [0, 0]]"},
        "秩 1 对应中取幂零 T，得到 3/2+1+1+1 型退化 Garnier 系",
    ),
    LaplaceRemark(
        "R2",
        "Gar:5/2+1+1",
        "(((1)(1)))(((1)))",
        {"T": "diag(0, 1)", "S1": "[[0, 1], [0, 0]]"},
        "秩 2 对应中取幂零 S_1，5/2+1+1 型退化 Garnier 系对应 (((1)(1)))(((1))) 型线性方程",
    ),
]


def correspondence_index() -> Dict[str, LaplaceCorrespondence]:
    out = {}
    for c in CORRESPONDENCES:
        out[c.pair_id] = c
        out[f"{c.left_text} <-> {c.right_text}"] = c
        out[f"{c.left} <-> {c.right}"] = c
    return out


def oshima_tables() -> Dict[str, list]:
    """三点 Fuchs 型方程及其合流的分类表（只作记录）"""
    return {
        "three_point": list(OSHIMA_THREE_POINT),
        "confluent": list(OSHIMA_CONFLUENT),
        "non_deforming": list(OSHIMA_NON_DEFORMING),
        "laplace_to_fuchsian": [list(pair) for pair in OSHIMA_CORRESPONDENCES],
        "three_point_confluences": list(OSHIMA_THREE_POINT_CONFLUENCES),
    }
