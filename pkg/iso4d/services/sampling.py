"""
随机有理数取样（用于精确点值恒等式检验）
"""
import hashlib
import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Optional, Sequence, TypeVar

import sympy as sp

from ..errors import Iso4dError, ResampleSignal

logger = logging.getLogger(__name__)

# 分母取自固定素数表，避免与公式中的小整数系数巧合抵消
DENOMINATOR_PRIMES = (1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
NUMERATOR_BOUND = 97

T = TypeVar("T")


@dataclass
class SamplingConfig:
    """随机检验设置"""
    seed: int = 7
    samples: int = 20
    max_resample: int = 50


def task_seed(base_seed: int, *labels: str) -> int:
    """由基础种子与任务标签导出确定性的子种子（与执行顺序无关）"""
    key = "|".join([str(base_seed), *labels]).encode("utf-8")
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def random_rational(rng: random.Random, bound: int = NUMERATOR_BOUND) -> sp.Rational:
    num = rng.randint(-bound, bound)
    if num == 0:
        num = rng.choice((-1, 1)) * rng.randint(1, bound)
    den = rng.choice(DENOMINATOR_PRIMES)
    return sp.Rational(num, den)


def random_point(rng: random.Random, symbols: Iterable[sp.Symbol], bound: int = NUMERATOR_BOUND) -> Dict[sp.Symbol, sp.Rational]:
    """按名字排序后依次取值，保证同一种子得到同一取值点"""
    return {s: random_rational(rng, bound) for s in sorted(set(symbols), key=lambda s: s.name)}


def random_float_params(rng: random.Random, symbols: Iterable[sp.Symbol], low: int = 1, high: int = 10) -> Dict[sp.Symbol, sp.Rational]:
    """[low, high] 内的随机有理参数（数值局部分析用）"""
    out = {}
    for s in sorted(set(symbols), key=lambda s: s.name):
        den = rng.choice(DENOMINATOR_PRIMES[1:8])
        out[s] = sp.Rational(rng.randint(low * den, high * den), den)
    return out


def with_resampling(
    draw: Callable[[random.Random], T],
    rng: random.Random,
    max_resample: int,
    label: str = "",
) -> T:
    """反复抽样直到 draw 不再抛出 ResampleSignal"""
    last: Optional[Iso4dError] = None
    for attempt in range(max_resample + 1):
        try:
            return draw(rng)
        except ResampleSignal as e:
            last = e
            logger.debug(f"⚠️ {label} 第 {attempt + 1} 次取样不可用，重新取样: {e}")
    raise ResampleSignal(f"{label} 连续 {max_resample + 1} 次取样失败: {last}")


def guard_nonzero(values: Sequence[sp.Expr], point: Dict[sp.Symbol, sp.Rational], label: str = "") -> None:
    """任一守卫表达式在取值点处为零时发出重采样信号"""
    for g in values:
        v = sp.sympify(g).xreplace(point)
        if v == 0:
            raise ResampleSignal(f"守卫 {g} 在{label}取值点处为零")

