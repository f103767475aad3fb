"""
精确有理函数与矩阵表达式
"""
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Mapping, Sequence, Tuple, Union

import sympy as sp
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from ..errors import (
    MalformedExpressionError,
    PoleAtPointError,
    PoleError,
    PoleOrderError,
    PreconditionError,
)

# 退化参数与谱变量是保留符号
EPS = sp.Symbol("eps")
X = sp.Symbol("x")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_TRANSFORMS = standard_transformations + (convert_xor,)

ExprLike = Union["RationalExpr", sp.Expr, int, str]


@lru_cache(maxsize=None)
def sym(name: str) -> sp.Symbol:
    """按名字取符号（同名同对象）"""
    return sp.Symbol(name)


def symbols(names: str) -> Tuple[sp.Symbol, ...]:
    return tuple(sym(n) for n in names.replace(",", " ").split())


def _sorted_gens(*exprs: sp.Expr) -> List[sp.Symbol]:
    free = set()
    for e in exprs:
        free |= e.free_symbols
    return sorted(free, key=lambda s: s.name)


def _as_sympy(value: ExprLike) -> sp.Expr:
    if isinstance(value, RationalExpr):
        return value.expr
    if isinstance(value, str):
        return from_text(value).expr
    return sp.sympify(value)


def _canonical_pair(num: sp.Expr, den: sp.Expr) -> Tuple[sp.Expr, sp.Expr]:
    if sp.expand(den) == 0:
        raise MalformedExpressionError("分母恒为零")
    n, d = sp.fraction(sp.cancel(sp.together(num / den)))
    n, d = sp.expand(n), sp.expand(d)
    if n == 0:
        return sp.Integer(0), sp.Integer(1)
    gens = _sorted_gens(d)
    if gens:
        lc = sp.Poly(d, *gens).LC(order="grlex")
    else:
        lc = d
    if lc != 1:
        n, d = sp.expand(n / lc), sp.expand(d / lc)
    return n, d


@dataclass(frozen=True, eq=False)
class RationalExpr:
    """有理数域上的多元有理函数，分子分母互素且分母首项系数为 1"""
    num: sp.Expr
    den: sp.Expr

    @classmethod
    def of(cls, value: ExprLike) -> "RationalExpr":
        if isinstance(value, RationalExpr):
            return value
        e = _as_sympy(value)
        n, d = sp.fraction(sp.together(e))
        return cls(*_canonical_pair(n, d))

    @property
    def expr(self) -> sp.Expr:
        if self.den == 1:
            return self.num
        return self.num / self.den

    @property
    def free_symbols(self):
        return self.num.free_symbols | self.den.free_symbols

    def is_zero(self) -> bool:
        return self.num == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalExpr):
            try:
                other = RationalExpr.of(other)
            except (sp.SympifyError, MalformedExpressionError):
                return False
        return sp.expand(self.num * other.den - other.num * self.den) == 0

    def __hash__(self):
        return hash((sp.srepr(self.num), sp.srepr(self.den)))

    def __add__(self, other):
        o = RationalExpr.of(other)
        return RationalExpr(*_canonical_pair(self.num * o.den + o.num * self.den, self.den * o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalExpr.of(other))

    def __rsub__(self, other):
        return RationalExpr.of(other) - self

    def __mul__(self, other):
        o = RationalExpr.of(other)
        return RationalExpr(*_canonical_pair(self.num * o.num, self.den * o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalExpr.of(other)
        if o.is_zero():
            raise MalformedExpressionError("除以零")
        return RationalExpr(*_canonical_pair(self.num * o.den, self.den * o.num))

    def __rtruediv__(self, other):
        return RationalExpr.of(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalExpr.of(1) / self ** (-k)
        return RationalExpr(*_canonical_pair(self.num ** k, self.den ** k))

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"RationalExpr({to_text(self)})"


def normalize(e: ExprLike) -> RationalExpr:
    """化为既约标准形；对同一值幂等"""
    if isinstance(e, RationalExpr):
        return RationalExpr(*_canonical_pair(e.num, e.den))
    return RationalExpr.of(e)


def differentiate(e: ExprLike, s: sp.Symbol) -> RationalExpr:
    r = RationalExpr.of(e)
    num = sp.diff(r.num, s) * r.den - r.num * sp.diff(r.den, s)
    return RationalExpr(*_canonical_pair(num, r.den ** 2))


def substitute(e: ExprLike, mapping: Mapping[sp.Symbol, ExprLike]) -> RationalExpr:
    """同时代换；结果分母恒为零时抛出 PoleError"""
    r = RationalExpr.of(e)
    repl = {k: _as_sympy(v) for k, v in mapping.items()}
    num = r.num.xreplace(repl)
    den = r.den.xreplace(repl)
    if sp.cancel(sp.together(den)) == 0:
        raise PoleError("代换后分母恒为零")
    n1, d1 = sp.fraction(sp.together(num))
    n2, d2 = sp.fraction(sp.together(den))
    return RationalExpr(*_canonical_pair(n1 * d2, d1 * n2))


def eval_exact(e: ExprLike, point: Mapping[sp.Symbol, object]) -> sp.Rational:
    r = RationalExpr.of(e)
    values = {k: sp.Rational(v) for k, v in point.items()}
    missing = r.free_symbols - set(values)
    if missing:
        names = ", ".join(sorted(s.name for s in missing))
        raise PreconditionError(f"取值点未给出符号: {names}")
    den = r.den.xreplace(values)
    if den == 0:
        raise PoleAtPointError("分母在取值点处为零", dict(point))
    return sp.Rational(r.num.xreplace(values)) / sp.Rational(den)


def _valuation(poly_expr: sp.Expr, s: sp.Symbol) -> Tuple[int, sp.Expr]:
    poly = sp.Poly(poly_expr, s)
    low = min(m[0] for m in poly.monoms())
    return low, poly.coeff_monomial(s ** low)


def limit_at_zero(e: ExprLike, s: sp.Symbol = EPS) -> RationalExpr:
    """s→0 的极限；以分子分母在 s 上的赋值精确判定正则性"""
    r = RationalExpr.of(e)
    if r.is_zero():
        return r
    vn, cn = _valuation(r.num, s)
    vd, cd = _valuation(r.den, s)
    if vn < vd:
        raise PoleOrderError(vd - vn, s.name)
    if vn > vd:
        return RationalExpr(sp.Integer(0), sp.Integer(1))
    return RationalExpr.of(cn / cd)


def pole_order(e: ExprLike, s: sp.Symbol = EPS) -> int:
    """s=0 处的极点阶数（正则时为 0）"""
    r = RationalExpr.of(e)
    if r.is_zero():
        return 0
    vn, _ = _valuation(r.num, s)
    vd, _ = _valuation(r.den, s)
    return max(vd - vn, 0)


def laurent_head(e: ExprLike, s: sp.Symbol = EPS, upto: int = 0) -> List[Tuple[int, sp.Expr]]:
    """
    s=0 处 Laurent 展开中次数不超过 upto 的各项系数 [(次数, 系数), ...]

    系数可以含其他符号；分母在 s=0 处的首项必须非零（由多项式赋值保证）。
    """
    r = RationalExpr.of(e)
    if r.is_zero():
        return []
    num, den = sp.Poly(r.num, s), sp.Poly(r.den, s)
    vn = min(m[0] for m in num.monoms())
    vd = min(m[0] for m in den.monoms())
    lead = vn - vd
    count = upto - lead + 1
    if count <= 0:
        return []
    a = [num.coeff_monomial(s ** (vn + k)) for k in range(count)]
    b = [den.coeff_monomial(s ** (vd + k)) for k in range(count)]
    coeffs: List[sp.Expr] = []
    for k in range(count):
        acc = a[k] - sp.Add(*[b[j] * coeffs[k - j] for j in range(1, k + 1)])
        coeffs.append(sp.cancel(sp.together(acc / b[0])))
    return [(lead + k, c) for k, c in enumerate(coeffs)]


def _free_part(expr: sp.Expr, variables: Sequence[sp.Symbol]) -> sp.Expr:
    if not variables:
        return expr
    v, rest = variables[0], variables[1:]
    n, d = sp.fraction(sp.cancel(sp.together(expr)))
    if v in d.free_symbols:
        quotient, _ = sp.Poly(n, v).div(sp.Poly(d, v))
        const = quotient.as_expr().xreplace({v: 0})
    else:
        const = (n / d).xreplace({v: 0})
    return _free_part(const, rest)


def strip_canonical_free(e: ExprLike, variables: Iterable[sp.Symbol]) -> RationalExpr:
    """去掉关于给定变量的零次项（有理部分按整式部分的常数项计）"""
    r = RationalExpr.of(e)
    order = sorted(set(variables), key=lambda s: s.name)
    free = _free_part(r.expr, order)
    return r - RationalExpr.of(free)


def depends_on(e: ExprLike, variables: Iterable[sp.Symbol]) -> List[sp.Symbol]:
    """返回 e 真正依赖的变量（偏导数不恒为零）"""
    r = RationalExpr.of(e)
    return [v for v in variables if v in r.free_symbols and not differentiate(r, v).is_zero()]


def total_derivative(e: ExprLike, time: sp.Symbol, rates: Mapping[sp.Symbol, ExprLike]) -> RationalExpr:
    """∂e/∂t + Σ ∂e/∂z · ż"""
    result = differentiate(e, time)
    for z, rate in rates.items():
        result = result + differentiate(e, z) * RationalExpr.of(rate)
    return result


def poisson_bracket(f: ExprLike, g: ExprLike, pairs: Sequence[Tuple[sp.Symbol, sp.Symbol]]) -> RationalExpr:
    """{f,g} = Σ ∂f/∂q ∂g/∂p − ∂f/∂p ∂g/∂q，{q,p} = 1"""
    result = RationalExpr.of(0)
    for q, p in pairs:
        result = result + differentiate(f, q) * differentiate(g, p) - differentiate(f, p) * differentiate(g, q)
    return result


def to_text(e: ExprLike) -> str:
    r = RationalExpr.of(e)
    num = sp.sstr(r.num).replace("**", "^")
    if r.den == 1:
        return num
    den = sp.sstr(r.den).replace("**", "^")
    return f"({num})/({den})"


def from_text(text: str) -> RationalExpr:
    local = {name: sym(name) for name in _IDENT.findall(text)}
    try:
        e = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, sp.SympifyError) as exc:
        raise MalformedExpressionError(f"无法解析表达式 {text!r}: {exc}") from exc
    return RationalExpr.of(e)


@dataclass(frozen=True, eq=False)
class MatrixExpr:
    """RationalExpr 元素的矩阵（内部以 sympy Matrix 存储）"""
    data: sp.ImmutableMatrix

    @classmethod
    def of(cls, rows) -> "MatrixExpr":
        if isinstance(rows, MatrixExpr):
            return rows
        if isinstance(rows, (sp.MatrixBase,)):
            return cls(sp.ImmutableMatrix(rows))
        grid = [[_as_sympy(v) for v in row] for row in rows]
        return cls(sp.ImmutableMatrix(grid))

    @property
    def rows(self) -> int:
        return self.data.rows

    @property
    def cols(self) -> int:
        return self.data.cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    def entry(self, i: int, j: int) -> RationalExpr:
        return RationalExpr.of(self.data[i, j])

    def __matmul__(self, other: "MatrixExpr") -> "MatrixExpr":
        return MatrixExpr(sp.ImmutableMatrix(self.data * MatrixExpr.of(other).data))

    def __add__(self, other):
        return MatrixExpr(sp.ImmutableMatrix(self.data + MatrixExpr.of(other).data))

    def __sub__(self, other):
        return MatrixExpr(sp.ImmutableMatrix(self.data - MatrixExpr.of(other).data))

    def apply(self, fn) -> "MatrixExpr":
        return MatrixExpr(sp.ImmutableMatrix(self.data.applyfunc(fn)))

    def is_zero(self) -> bool:
        return all(RationalExpr.of(v).is_zero() for v in self.data)

    def substitute(self, mapping: Mapping[sp.Symbol, ExprLike]) -> "MatrixExpr":
        repl = {k: _as_sympy(v) for k, v in mapping.items()}
        return MatrixExpr(sp.ImmutableMatrix(self.data.xreplace(repl)))

    def differentiate(self, s: sp.Symbol) -> "MatrixExpr":
        return self.apply(lambda v: differentiate(v, s).expr)

    def __eq__(self, other) -> bool:
        other = MatrixExpr.of(other)
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None


def commutator(a: MatrixExpr, b: MatrixExpr) -> MatrixExpr:
    return a @ b - b @ a
