import random

import pytest
import sympy as sp

from iso4d.errors import (
    MalformedExpressionError,
    PoleAtPointError,
    PoleError,
    PoleOrderError,
    PreconditionError,
    ResampleSignal,
)
from iso4d.models.symexpr import (
    EPS,
    MatrixExpr,
    RationalExpr,
    commutator,
    depends_on,
    differentiate,
    eval_exact,
    from_text,
    laurent_head,
    limit_at_zero,
    normalize,
    pole_order,
    poisson_bracket,
    strip_canonical_free,
    substitute,
    sym,
    to_text,
    total_derivative,
)
from iso4d.services.sampling import random_point, random_rational, task_seed, with_resampling

q, p, t, x, theta = sym("q"), sym("p"), sym("t"), sym("x"), sym("theta")


def _random_poly(rng, gens, terms=4):
    e = sp.Integer(0)
    for _ in range(terms):
        mono = sp.Integer(1)
        for g in gens:
            mono *= g ** rng.randint(0, 2)
        e += random_rational(rng, 9) * mono
    return e


def _random_rational_expr(rng):
    gens = (q, p, t)
    den = _random_poly(rng, gens, 2)
    while sp.expand(den) == 0:
        den = _random_poly(rng, gens, 2)
    return RationalExpr.of(_random_poly(rng, gens) / den)


# ---------- normalize ----------

def test_normalize_cancels_common_factor():
    r = RationalExpr.of(2 * q / 2)
    assert r.num == q and r.den == 1


def test_normalize_cancels_polynomial_factor():
    r = RationalExpr.of((q**2 - 1) / (q - 1))
    assert sp.expand(r.num - (q + 1)) == 0
    assert r.den == 1


def test_commutativity_gives_zero():
    assert (RationalExpr.of(p + q) - RationalExpr.of(q + p)).is_zero()


def test_division_by_zero_is_malformed():
    with pytest.raises(MalformedExpressionError):
        RationalExpr.of(q) / 0


def test_denominator_is_monic():
    r = RationalExpr.of(1 / (3 * q + 6))
    assert sp.Poly(r.den, q).LC() == 1
    assert r == RationalExpr.of(sp.Rational(1, 3) / (q + 2))


def test_normalize_is_idempotent(rng):
    for _ in range(50):
        e = _random_rational_expr(rng)
        once = normalize(e)
        twice = normalize(once)
        assert once.num == twice.num and once.den == twice.den


# ---------- differentiate ----------

def test_differentiate_examples():
    assert differentiate(q**2 * p, q) == 2 * q * p
    assert differentiate(p**2 - q**3 - t * q, p) == 2 * p
    assert differentiate(1 / (x - t), x) == -1 / (x - t) ** 2


def test_product_and_quotient_rules(rng):
    for _ in range(20):
        e, f = _random_rational_expr(rng), _random_rational_expr(rng)
        assert differentiate(e * f, q) == e * differentiate(f, q) + f * differentiate(e, q)
        if not f.is_zero():
            lhs = differentiate(e / f, p)
            rhs = (differentiate(e, p) * f - e * differentiate(f, p)) / (f * f)
            assert lhs == rhs


# ---------- substitute ----------

def test_substitute_degeneration_chart():
    qt = sym("qt")
    result = substitute(q**2, {q: 1 + EPS * t * qt})
    assert result == (1 + EPS * t * qt) ** 2


def test_substitute_identity_and_inverse():
    e = RationalExpr.of((q + p) / (q - t))
    assert substitute(e, {}) == e
    assert substitute(e, {q: q, p: p}) == e
    assert substitute(1 / q, {q: 1 / (1 - EPS * q)}) == 1 - EPS * q


def test_substitute_is_simultaneous():
    assert substitute(q - p, {q: p, p: q}) == p - q


def test_substitute_to_zero_denominator():
    with pytest.raises(PoleError):
        substitute(1 / (q - t), {q: t})


def test_substitute_then_evaluate_matches_composed_point(rng):
    for _ in range(10):
        e = _random_rational_expr(rng)
        mapping = {q: p + t, p: q * t}
        point = random_point(rng, (q, p, t))
        composed = {q: point[p] + point[t], p: point[q] * point[t], t: point[t]}
        try:
            left = eval_exact(substitute(e, mapping), point)
            right = eval_exact(e, composed)
        except PoleError:
            continue
        assert left == right


# ---------- eval_exact ----------

def test_eval_exact_examples():
    assert eval_exact(p**2 - q**3 - t * q, {t: 1, q: 2, p: 3}) == -1
    assert eval_exact((q - p) / (q + p), {q: 3, p: 1}) == sp.Rational(1, 2)


def test_eval_exact_pole():
    with pytest.raises(PoleAtPointError):
        eval_exact(1 / (x - t), {x: 2, t: 2})


def test_eval_exact_missing_symbol():
    with pytest.raises(PreconditionError):
        eval_exact(q + p, {q: 1})


# ---------- limit_at_zero ----------

def test_limit_examples():
    assert limit_at_zero((EPS**2 * q + EPS * p) / EPS) == p
    assert limit_at_zero(q + EPS * t) == q
    assert limit_at_zero(EPS * q / (1 + EPS)).is_zero()


def test_limit_reports_pole_order():
    with pytest.raises(PoleOrderError) as info:
        limit_at_zero(1 / EPS)
    assert info.value.order == 1
    with pytest.raises(PoleOrderError) as info:
        limit_at_zero((q + EPS) / (EPS**3 * t))
    assert info.value.order == 3
    assert pole_order(q / EPS**2 + 1) == 2
    assert pole_order(q + EPS) == 0


def test_limit_agrees_with_small_eps_evaluation(rng):
    for _ in range(20):
        e = _random_rational_expr(rng) + EPS * _random_rational_expr(rng)
        point = random_point(rng, (q, p, t))
        try:
            limit = eval_exact(limit_at_zero(e), point)
            near = eval_exact(e, {**point, EPS: sp.Rational(1, 10**12)})
        except (PoleError, PoleOrderError):
            continue
        assert abs(float(near - limit)) < 1e-6 * max(1.0, abs(float(limit)))


def test_laurent_head_with_canonical_denominator():
    f = (theta + EPS**2 * p) / (EPS**2 * (1 + EPS * q))
    head = laurent_head(f, EPS, upto=0)
    assert [k for k, _ in head] == [-2, -1, 0]
    expected = [theta, -theta * q, theta * q**2 + p]
    assert all(sp.expand(c - e) == 0 for (_, c), e in zip(head, expected))
    assert laurent_head(EPS * q) == []
    assert laurent_head(0) == []


# ---------- strip_canonical_free ----------

def test_strip_canonical_free():
    assert strip_canonical_free(p * q + t**2 + theta / EPS, (q, p)) == p * q
    assert strip_canonical_free(p * q + q, (q, p)) == p * q + q
    assert strip_canonical_free(theta * t / (t - 1), (q, p)).is_zero()


def test_depends_on():
    assert depends_on(p * q + t, (q, p)) == [q, p]
    assert depends_on(t**2 + theta, (q, p)) == []


# ---------- brackets and derivatives ----------

def test_poisson_bracket_standard_convention():
    assert poisson_bracket(q, p, [(q, p)]) == 1
    assert poisson_bracket(p, q, [(q, p)]) == -1
    H = p**2 - q**3 - t * q
    assert poisson_bracket(q, H, [(q, p)]) == 2 * p


def test_total_derivative_of_hamiltonian():
    H = p**2 - q**3 - t * q
    rates = {q: differentiate(H, p), p: -differentiate(H, q)}
    # dH/dt = ∂H/∂t along the flow
    assert total_derivative(H, t, rates) == -q


# ---------- text and matrices ----------

def test_text_round_trip(rng):
    for _ in range(20):
        e = _random_rational_expr(rng)
        assert from_text(to_text(e)) == e
    assert "^" in to_text(q**2)


def test_from_text_rejects_garbage():
    with pytest.raises(MalformedExpressionError):
        from_text("q + * p")


def test_matrix_commutator_and_substitute():
    A = MatrixExpr.of([[0, q], [0, 0]])
    B = MatrixExpr.of([[0, 0], [p, 0]])
    C = commutator(A, B)
    assert C == MatrixExpr.of([[q * p, 0], [0, -q * p]])
    assert C.substitute({q: 0}).is_zero()
    assert A.differentiate(q).entry(0, 1) == 1


def test_with_resampling_retries_then_gives_up():
    calls = []

    def draw(r):
        calls.append(1)
        if len(calls) < 3:
            raise ResampleSignal("pole")
        return len(calls)

    assert with_resampling(draw, random.Random(1), 5) == 3

    def never(r):
        raise ResampleSignal("pole")

    with pytest.raises(ResampleSignal):
        with_resampling(never, random.Random(1), 2)


def test_task_seed_is_stable_and_label_sensitive():
    assert task_seed(7, "Gar:5", "t1") == task_seed(7, "Gar:5", "t1")
    assert task_seed(7, "Gar:5", "t1") != task_seed(7, "Gar:5", "t2")
    assert task_seed(7, "a") != task_seed(8, "a")
