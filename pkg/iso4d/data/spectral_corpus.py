"""
谱型语料、退化图与 Oshima 三点分类表
"""

# 全部合法谱型字符串（用于往返测试）
SPECTRAL_CORPUS = (
    # Garnier 系
    "11,11,11,11,11",
    "(1)(1),11,11,11",
    "((1))((1)),11,11",
    "(1)(1),(1)(1),11",
    "(((1)))(((1))),11",
    "((1))((1)),(1)(1)",
    "((((1))))((((1))))",
    # Fuji-Suzuki 系
    "21,21,111,111",
    "(2)(1),111,111",
    "(11)(1),21,111",
    "(1)(1)(1),21,21",
    "((11))((1)),111",
    "((1)(1))((1)),21",
    "(11)(1),(11)(1)",
    "(2)(1),(1)(1)(1)",
    "(((1)(1)))(((1)))",
    # Sasano 系
    "31,22,22,1111",
    "(2)(2),31,1111",
    "(11)(11),31,22",
    "(111)(1),22,22",
    "((11))((11)),31",
    "(2)(2),(111)(1)",
    "(11)(11),22,31",
    "31,31,22,1111",
    # 矩阵 Painlevé 系
    "22,22,22,211",
    "(2)(2),22,211",
    "(2)(11),22,22",
    "((2))((2)),211",
    "((2))((11)),22",
    "((11))((2)),22",
    "(2)(2),(2)(11)",
    "(((2)))(((11)))",
    # 局部记号示例
    "((22)(2))((31))((1)(1))",
    "111",
    "((11))((1))",
    "(111),111,21,21",
    # 二维 Painlevé 方程（非分歧部分）
    "11,11,11,11",
    "(1)(1),11,11",
    "(1)(1),(1)(1)",
    "((1))((1)),11",
    "(((1)))(((1)))",
    # 三个奇点的 Fuchs 型（4 个附属参数）
    "211,1111,1111",
    "221,221,11111",
    "32,11111,11111",
    "222,222,2211",
    "33,2211,111111",
    "44,2222,22211",
    "44,332,11111111",
    "55,3331,22222",
    "66,444,2222211",
    # 两个正则奇点合流得到的 17 个方程
    "(11)(1)(1),1111",
    "(1)(1)(1)(1),211",
    "(2)(2)(1),11111",
    "(11)(11)(1),221",
    "(111)(11),11111",
    "(1)(1)(1)(1)(1),32",
    "(2)(2)(2),2211",
    "(2)(2)(11),222",
    "(111)(111),2211",
    "(11)(11)(1)(1),33",
    "(22)(22),22211",
    "(22)(211),2222",
    "(2)(2)(2)(11),44",
    "(1111)(1111),332",
    "(111)(111)(11),44",
    "(222)(2211),444",
    "(22)(22)(211),66",
    # 三个正则奇点合流
    "((11))((11))((1))",
    "((1)(1)(1))((1)(1))",
    "((2))((2))((11))",
    "((2)(2))((2)(11))",
)

# 自相矛盾的谱型字符串：校验器必须拒绝
FLAGGED_STRINGS = {
    "(11)(11),31,21": "size",          # 应为 (11)(11),31,22
    "21,21,11,11": "size",
    "((1)(1))((1)((1)))": "nesting",
}

# 已知的奇点型（含分歧型标签）
PATTERN_CORPUS = (
    "1+1+1+1+1", "2+1+1+1", "3+1+1", "2+2+1", "4+1", "3+2", "5",
    "3/2+1+1+1", "5/2+1+1",
    "1+1+1+1", "2+1+1", "3+1", "2+2", "4",
    "3/2+1+1", "2+3/2", "5/2+1", "3/2+3/2", "7/2",
)

OSHIMA_THREE_POINT = (
    "211,1111,1111", "221,221,11111", "32,11111,11111",
    "222,222,2211", "33,2211,111111",
    "44,2222,22211", "44,332,11111111", "55,3331,22222", "66,444,2222211",
)

OSHIMA_CONFLUENT = (
    "(11)(1)(1),1111", "(1)(1)(1)(1),211", "(2)(2)(1),11111", "(11)(11)(1),221",
    "(111)(11),11111", "(1)(1)(1)(1)(1),32", "(2)(2)(2),2211", "(2)(2)(11),222",
    "(111)(111),2211", "(11)(11)(1)(1),33", "(22)(22),22211", "(22)(211),2222",
    "(2)(2)(2)(11),44",
    "(1111)(1111),332", "(111)(111)(11),44", "(222)(2211),444", "(22)(22)(211),66",
)

OSHIMA_NON_DEFORMING = (
    "(111)(11),11111", "(111)(111),2211", "(22)(22),22211", "(22)(211),2222",
    "(1111)(1111),332", "(222)(2211),444",
)

# 合流方程经 Laplace 变换对应的 Fuchs 型方程
OSHIMA_CORRESPONDENCES = (
    ("(11)(1)(1),1111", "21,21,111,111"),
    ("(1)(1)(1)(1),211", "11,11,11,11,11"),
    ("(2)(2)(1),11111", "31,22,22,1111"),
    ("(11)(11)(1),221", "21,21,111,111"),
    ("(1)(1)(1)(1)(1),32", "11,11,11,11,11"),
    ("(2)(2)(2),2211", "22,22,22,211"),
    ("(2)(2)(11),222", "22,22,22,211"),
    ("(11)(11)(1)(1),33", "21,21,11,11"),
    ("(2)(2)(2)(11),44", "22,22,22,211"),
    ("(111)(111)(11),44", "211,1111,1111"),
    ("(22)(22)(211),66", "222,222,2211"),
)

OSHIMA_THREE_POINT_CONFLUENCES = (
    "((1)(1))((1)((1)))",
    "((11))((11))((1))",
    "((1)(1)(1))((1)(1))",
    "((2))((2))((11))",
    "((2)(2))((2)(11))",
)

# 退化图：节点 (编号, 奇点型, 谱型或 None, 哈密顿量编号, 层级)
GRAPH_NODES = {
    "Garnier": (
        ("Gar:11,11,11,11,11", "1+1+1+1+1", "11,11,11,11,11", "Gar:1+1+1+1+1", 0),
        ("Gar:(1)(1),11,11,11", "2+1+1+1", "(1)(1),11,11,11", "Gar:2+1+1+1", 1),
        ("Gar:((1))((1)),11,11", "3+1+1", "((1))((1)),11,11", "Gar:3+1+1", 2),
        ("Gar:(1)(1),(1)(1),11", "2+2+1", "(1)(1),(1)(1),11", "Gar:2+2+1", 2),
        ("Gar:(((1)))(((1))),11", "4+1", "(((1)))(((1))),11", "Gar:4+1", 3),
        ("Gar:((1))((1)),(1)(1)", "3+2", "((1))((1)),(1)(1)", "Gar:3+2", 3),
        ("Gar:((((1))))((((1))))", "5", "((((1))))((((1))))", "Gar:5", 4),
    ),
    "FS": (
        ("FS:21,21,111,111", "1+1+1+1", "21,21,111,111", "FS:A5", 0),
        ("FS:(2)(1),111,111", "2+1+1", "(2)(1),111,111", "NY:A5", 1),
        ("FS:(11)(1),21,111", "2+1+1", "(11)(1),21,111", "FS:A4", 1),
        ("FS:(1)(1)(1),21,21", "2+1+1", "(1)(1)(1),21,21", "Gar:2+1+1+1", 1),
        ("FS:((11))((1)),111", "3+1", "((11))((1)),111", "NY:A4", 2),
        ("FS:((1)(1))((1)),21", "3+1", "((1)(1))((1)),21", "Gar:3+1+1", 2),
        ("FS:(11)(1),(11)(1)", "2+2", "(11)(1),(11)(1)", "FS:A3", 2),
        ("FS:(2)(1),(1)(1)(1)", "2+2", "(2)(1),(1)(1)(1)", "Gar:3/2+1+1+1", 2),
        ("FS:(((1)(1)))(((1)))", "4", "(((1)(1)))(((1)))", "Gar:5/2+1+1", 3),
    ),
    "Sasano": (
        ("Ss:31,22,22,1111", "1+1+1+1", "31,22,22,1111", "Ss:D6", 0),
        ("Ss:(11)(11),31,22", "2+1+1", "(11)(11),31,22", "NY:A5", 1),
        ("Ss:(2)(2),31,1111", "2+1+1", "(2)(2),31,1111", "Ss:D5", 1),
        ("Ss:(111)(1),22,22", "2+1+1", "(111)(1),22,22", "Ss:D5", 1),
        ("Ss:((11))((11)),31", "3+1", "((11))((11)),31", "NY:A4", 2),
        ("Ss:(2)(2),(111)(1)", "2+2", "(2)(2),(111)(1)", "Ss:D4", 2),
        ("Ss:4", "4", None, None, 3),
    ),
    "Matrix": (
        ("Mat:22,22,22,211", "1+1+1+1", "22,22,22,211", "Mat:VI", 0),
        ("Mat:(2)(2),22,211", "2+1+1", "(2)(2),22,211", "Mat:V", 1),
        ("Mat:(2)(11),22,22", "2+1+1", "(2)(11),22,22", "Mat:V", 1),
        ("Mat:((2))((2)),211", "3+1", "((2))((2)),211", "Mat:IV", 2),
        ("Mat:((2))((11)),22", "3+1", "((2))((11)),22", "Mat:IV", 2),
        ("Mat:(2)(2),(2)(11)", "2+2", "(2)(2),(2)(11)", "Mat:III_D6", 2),
        ("Mat:(((2)))(((11)))", "4", "(((2)))(((11)))", "Mat:II", 3),
    ),
    "Classical": (
        ("P:VI", "1+1+1+1", "11,11,11,11", "P:VI", 0),
        ("P:V", "2+1+1", "(1)(1),11,11", "P:V", 1),
        ("P:III_D6", "2+2", "(1)(1),(1)(1)", "P:III_D6", 2),
        ("P:III_D6~", "3/2+1+1", None, "P:III_D6", 2),
        ("P:IV", "3+1", "((1))((1)),11", "P:IV", 2),
        ("P:III_D7", "2+3/2", None, "P:III_D7", 3),
        ("P:II", "4", "(((1)))(((1)))", "P:II", 3),
        ("P:II~", "5/2+1", None, "P:II", 3),
        ("P:III_D8", "3/2+3/2", None, "P:III_D8", 4),
        ("P:I", "7/2", None, "P:I", 4),
    ),
}

GRAPH_EDGES = {
    "Garnier": (
        ("Gar:11,11,11,11,11", "Gar:(1)(1),11,11,11"),
        ("Gar:(1)(1),11,11,11", "Gar:((1))((1)),11,11"),
        ("Gar:(1)(1),11,11,11", "Gar:(1)(1),(1)(1),11"),
        ("Gar:((1))((1)),11,11", "Gar:(((1)))(((1))),11"),
        ("Gar:((1))((1)),11,11", "Gar:((1))((1)),(1)(1)"),
        ("Gar:(1)(1),(1)(1),11", "Gar:(((1)))(((1))),11"),
        ("Gar:(1)(1),(1)(1),11", "Gar:((1))((1)),(1)(1)"),
        ("Gar:(((1)))(((1))),11", "Gar:((((1))))((((1))))"),
        ("Gar:((1))((1)),(1)(1)", "Gar:((((1))))((((1))))"),
    ),
    "FS": (
        ("FS:21,21,111,111", "FS:(2)(1),111,111"),
        ("FS:21,21,111,111", "FS:(11)(1),21,111"),
        ("FS:21,21,111,111", "FS:(1)(1)(1),21,21"),
        ("FS:(2)(1),111,111", "FS:((11))((1)),111"),
        ("FS:(2)(1),111,111", "FS:(2)(1),(1)(1)(1)"),
        ("FS:(11)(1),21,111", "FS:((11))((1)),111"),
        ("FS:(11)(1),21,111", "FS:((1)(1))((1)),21"),
        ("FS:(11)(1),21,111", "FS:(11)(1),(11)(1)"),
        ("FS:(1)(1)(1),21,21", "FS:((1)(1))((1)),21"),
        ("FS:(1)(1)(1),21,21", "FS:(2)(1),(1)(1)(1)"),
        ("FS:((11))((1)),111", "FS:(((1)(1)))(((1)))"),
        ("FS:((1)(1))((1)),21", "FS:(((1)(1)))(((1)))"),
        ("FS:(11)(1),(11)(1)", "FS:(((1)(1)))(((1)))"),
        ("FS:(2)(1),(1)(1)(1)", "FS:(((1)(1)))(((1)))"),
    ),
    "Sasano": (
        ("Ss:31,22,22,1111", "Ss:(11)(11),31,22"),
        ("Ss:31,22,22,1111", "Ss:(2)(2),31,1111"),
        ("Ss:31,22,22,1111", "Ss:(111)(1),22,22"),
        ("Ss:(11)(11),31,22", "Ss:((11))((11)),31"),
        ("Ss:(2)(2),31,1111", "Ss:((11))((11)),31"),
        ("Ss:(2)(2),31,1111", "Ss:(2)(2),(111)(1)"),
        ("Ss:(111)(1),22,22", "Ss:(2)(2),(111)(1)"),
    ),
    "Matrix": (
        ("Mat:22,22,22,211", "Mat:(2)(2),22,211"),
        ("Mat:22,22,22,211", "Mat:(2)(11),22,22"),
        ("Mat:(2)(2),22,211", "Mat:((2))((2)),211"),
        ("Mat:(2)(2),22,211", "Mat:((2))((11)),22"),
        ("Mat:(2)(2),22,211", "Mat:(2)(2),(2)(11)"),
        ("Mat:(2)(11),22,22", "Mat:((2))((11)),22"),
        ("Mat:(2)(11),22,22", "Mat:(2)(2),(2)(11)"),
        ("Mat:((2))((2)),211", "Mat:(((2)))(((11)))"),
        ("Mat:((2))((11)),22", "Mat:(((2)))(((11)))"),
        ("Mat:(2)(2),(2)(11)", "Mat:(((2)))(((11)))"),
    ),
    "Classical": (
        ("P:VI", "P:V"),
        ("P:V", "P:III_D6"),
        ("P:V", "P:III_D6~"),
        ("P:V", "P:IV"),
        ("P:III_D6", "P:III_D7"),
        ("P:III_D6", "P:II"),
        ("P:III_D6~", "P:III_D7"),
        ("P:III_D6~", "P:II~"),
        ("P:IV", "P:II"),
        ("P:IV", "P:II~"),
        ("P:III_D7", "P:I"),
        ("P:III_D7", "P:III_D8"),
        ("P:II", "P:I"),
        ("P:II~", "P:I"),
    ),
}

FAMILIES = ("Garnier", "FS", "Sasano", "Matrix", "Classical")
