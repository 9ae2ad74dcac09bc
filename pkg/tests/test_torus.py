import itertools
import json
import random
from math import comb, prod

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schurpres.errors import ParameterError, ResourceCapExceeded
from schurpres.exact_arith import binomial
from schurpres.params import AlgebraParams
from schurpres.tensor_rep import s0_dimension
from schurpres.torus import (
    GridFunction,
    IdealGenerator,
    TorusAlgebraContext,
    TorusElement,
    binomial_of_difference,
    build_ideal,
    evaluate,
    idempotent_h,
    interpolate,
    linear_form_binomial,
    linear_form_product,
    multiply,
    proper_subsets,
    quotient_dimension,
    shifted_binomial,
    sigma_shift,
    to_grid,
    vanishing_locus,
)
from schurpres.weights import RSParams, enumerate_lambda, enumerate_lambda_rs


def ctx_p(n, p, m, shift=0):
    return TorusAlgebraContext.char_p(n, p, m, shift)


def mono(ctx, *b):
    return TorusElement.monomial(ctx, b)


def comb_table(lower, side, p):
    """T[t, b] = binom(lower + t, b) mod p from the signed-binomial formula."""
    return np.array([[binomial(lower + t, b) % p for b in range(side)] for t in range(side)], dtype=np.int64)


def grid_values(x: TorusElement, table, p):
    """Values of x on the grid from the table, as an int array of shape (side,)*n."""
    n = x.context.n
    side = table.shape[0]
    out = np.zeros((side,) * n, dtype=np.int64)
    for b, c in x.terms.items():
        term = np.ones((side,) * n, dtype=np.int64) * c
        for axis, e in enumerate(b):
            shape = [1] * n
            shape[axis] = side
            term = term * table[:, e].reshape(shape) % p
        out = (out + term) % p
    return out


def random_element(ctx, rng, terms=4):
    return TorusElement(ctx, {
        tuple(rng.randrange(ctx.side) for _ in range(ctx.n)): rng.randrange(ctx.characteristic or 7)
        for _ in range(terms)
    })


# --- multiplication, evaluation ----------------------------------------------------

def test_multiply_examples():
    c0 = TorusAlgebraContext.char_zero(1, 2, 0)
    h = mono(c0, 1)
    assert h * h == mono(c0, 2).scale(2) + h
    c2 = ctx_p(1, 2, 1)
    assert mono(c2, 1) * mono(c2, 1) == mono(c2, 1)
    x = mono(ctx_p(2, 3, 1), 1, 2)
    assert x * TorusElement.unit(x.context) == x


def test_multiply_rejects_mixed_contexts():
    with pytest.raises(ValueError):
        multiply(mono(ctx_p(1, 2, 1), 1), mono(ctx_p(1, 3, 1), 1))


def test_evaluate_examples():
    c0 = TorusAlgebraContext.char_zero(2, 3, 0)
    assert evaluate(mono(c0, 1, 0), (3, 0)) == 3
    c3 = ctx_p(2, 3, 1)
    assert evaluate(mono(c3, 2, 0), (3, 0)) == 0
    assert evaluate(TorusElement.unit(c3), (5, -7)) == 1


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2), (3, 1, 1), (3, 1, 2), (3, 2, 1), (3, 2, 2)])
def test_to_grid_is_multiplicative_on_monomial_basis(p, m, n):
    ctx = ctx_p(n, p, m)
    q = ctx.q
    table = comb_table(0, q, p)
    basis = list(itertools.product(range(q), repeat=n))
    grids = {b: grid_values(mono(ctx, *b), table, p) for b in basis}
    for a in basis:
        for b in basis:
            prod_el = multiply(mono(ctx, *a), mono(ctx, *b))
            assert np.array_equal(grid_values(prod_el, table, p), grids[a] * grids[b] % p)
    # and to_grid agrees with the table oracle
    for b in basis[:: max(1, len(basis) // 10)]:
        assert to_grid(mono(ctx, *b)).values == tuple(int(v) for v in grids[b].reshape(-1))


def test_to_grid_unit_and_indicator():
    ctx = ctx_p(2, 2, 2)
    assert to_grid(TorusElement.unit(ctx)) == GridFunction.constant(ctx, 1)
    for b in [(0, 0), (3, 1), (2, 2)]:
        assert to_grid(idempotent_h(ctx, b)) == GridFunction.indicator(ctx, b)


def test_linear_form_vanishes_on_weight_subgrid():
    ctx = ctx_p(2, 5, 1)
    f = linear_form_binomial(ctx, (1, 1), -3, 1)
    for w in enumerate_lambda(2, 3):
        assert f.value_at(w) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=16, max_size=16))
def test_interpolate_inverts_to_grid_p2_m2_n2(values):
    ctx = ctx_p(2, 2, 2)
    f = GridFunction(ctx, tuple(values))
    assert to_grid(interpolate(f)) == f


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_interpolate_inverts_to_grid_char0(values):
    ctx = TorusAlgebraContext.char_zero(2, 1, 1)
    f = GridFunction(ctx, tuple(values))
    assert to_grid(interpolate(f)) == f


def test_interpolate_constant_is_unit():
    ctx = ctx_p(2, 3, 1)
    assert interpolate(GridFunction.constant(ctx, 1)) == TorusElement.unit(ctx)


# --- idempotents ------------------------------------------------------------------

def expanded_h(ctx, b):
    """The alternating-sum formula for h_b, expanded independently of the library."""
    q, p = ctx.q, ctx.characteristic
    per_axis = [{k: (-1) ** (k - bi) * comb(k, bi) for k in range(bi, q)} for bi in b]
    terms = {}
    for ks in itertools.product(*[list(d) for d in per_axis]):
        terms[ks] = prod(per_axis[i][k] for i, k in enumerate(ks)) % p
    return TorusElement(ctx, terms)


def test_idempotent_examples():
    c = ctx_p(1, 2, 1)
    assert idempotent_h(c, (1,)) == mono(c, 1)
    assert idempotent_h(c, (0,)) == TorusElement.unit(c) + mono(c, 1)
    c3 = ctx_p(2, 3, 1)
    for a in itertools.product(range(3), repeat=2):
        for b in itertools.product(range(3), repeat=2):
            assert evaluate(idempotent_h(c3, b), a) == (1 if a == b else 0)


@pytest.mark.parametrize("p,m,n", [(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (2, 2, 2)])
def test_idempotent_system(p, m, n):
    ctx = ctx_p(n, p, m)
    pts = list(itertools.product(range(ctx.q), repeat=n))
    hs = {b: idempotent_h(ctx, b) for b in pts}
    total = TorusElement.zero(ctx)
    for b in pts:
        assert hs[b] == expanded_h(ctx, b)
        assert interpolate(GridFunction.indicator(ctx, b)) == hs[b]
        total = total + hs[b]
    assert total == TorusElement.unit(ctx)
    sample = pts if len(pts) <= 9 else pts[::3]
    for a in sample:
        for b in sample:
            expected = hs[a] if a == b else TorusElement.zero(ctx)
            assert hs[a] * hs[b] == expected


# --- binomial reductions ---------------------------------------------------------

@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_binomials_factor_through_prime_power_digits(p, m):
    q = p**m
    for a in range(q * q):
        digits = [(a // p**j) % p for j in range(2 * m)]
        for x in range(q * q):
            lhs = comb(x, a) % p
            rhs = prod(comb(x, d * p**j) for j, d in enumerate(digits)) % p
            assert lhs == rhs
    # inside Dist(T_m) the factorisation holds as an identity of elements
    ctx = ctx_p(1, p, m)
    for a in range(q):
        digits = [(a // p**j) % p for j in range(m)]
        factors = [mono(ctx, d * p**j) for j, d in enumerate(digits)]
        acc = TorusElement.unit(ctx)
        for f in factors:
            acc = acc * f
        assert acc == mono(ctx, a)


def test_bounded_integers_detected_by_prime_power_binomials():
    for p in (2, 3):
        for m in (1, 2):
            q = p**m
            window = 2 * m
            for l in range(0, 2 * m + 1):
                for a in range(-q, q * q + 1):
                    vanish = all(binomial(a, p**j) % p == 0 for j in range(l, l + window + 1))
                    assert vanish == (0 <= a < p**l), (p, m, l, a)


def test_shifted_binomial_examples():
    ctx = TorusAlgebraContext.char_zero(2, 4, 4)
    h1 = TorusElement.monomial(ctx, (1, 0))
    one = TorusElement.unit(ctx)
    assert shifted_binomial(ctx, 1, 1, 1) == h1 + one
    assert shifted_binomial(ctx, 1, -1, 1) == h1 - one
    for c in range(-3, 4):
        for j in range(5):
            el = shifted_binomial(ctx, 2, c, j)
            for lam in range(-3, 4):
                assert evaluate(el, (0, lam)) == binomial(lam + c, j)


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 4), st.integers(0, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_binomial_of_difference_evaluates(c, a, x, y):
    ctx = TorusAlgebraContext.char_zero(2, 4, 4)
    assert evaluate(binomial_of_difference(ctx, 1, 2, c, a), (x, y)) == binomial(x - y + c, a)


def test_linear_form_binomial_examples():
    ctx = ctx_p(2, 2, 2)
    assert linear_form_binomial(ctx, (1, 0), 0, 4).is_zero()
    neg = ctx_p(1, 2, 2, shift=1)
    for j in range(4):
        assert linear_form_binomial(neg, (1,), 0, 2**j).value_at((-1,)) == 1


def test_linear_form_product_char0():
    ctx = TorusAlgebraContext.char_zero(2, 1, 1)
    f = linear_form_product(ctx, (1, 0), -1, 1)
    assert f.is_zero()


@pytest.mark.parametrize("ctx", [ctx_p(2, 2, 2), ctx_p(3, 3, 1, shift=1), ctx_p(2, 3, 2, shift=2), TorusAlgebraContext.char_zero(3, 1, 2)])
def test_zero_mask_matches_scalar_evaluation(ctx):
    rng = random.Random(7)
    for _ in range(40):
        coeffs = tuple(rng.randint(-1, 1) for _ in range(ctx.n))
        c = rng.randint(-6, 6)
        if ctx.characteristic:
            g = IdealGenerator("t", coeffs, c, rng.choice([1, 2, 3, 4, 8, 9, 27, rng.randint(0, 30)]))
        elif rng.random() < 0.5:
            g = IdealGenerator("t", coeffs, c, rng.randint(0, 4))
        else:
            g = IdealGenerator("t", coeffs, lo=rng.randint(-3, 0), hi=rng.randint(0, 3))
        slow = [v == 0 for v in g.grid_function(ctx).values]
        assert list(g.zero_mask(ctx)) == slow


# --- sigma shift -----------------------------------------------------------------

def test_sigma_shift_properties():
    ctx = ctx_p(2, 2, 2)
    rng = random.Random(3)
    for _ in range(50):
        x, y = random_element(ctx, rng), random_element(ctx, rng)
        assert sigma_shift(x, 0) == x
        assert sigma_shift(x * y, 1) == sigma_shift(x, 1) * sigma_shift(y, 1)
        lam = (rng.randint(-4, 8), rng.randint(-4, 8))
        s = rng.randint(0, 3)
        assert evaluate(sigma_shift(x, s), lam) == evaluate(x, (lam[0] + s, lam[1] + s))


# --- ideals -----------------------------------------------------------------------

def test_build_ideal_examples():
    I = build_ideal("char0_rs", AlgebraParams(2, 1, 1))
    assert set(I.vanishing_locus) == {(1, -1), (0, 0), (-1, 1)}
    assert quotient_dimension(I) == 3
    rendered = [g.render() for g in I.generators]
    assert "binom(H1+H2, 1)" in rendered
    assert "prod_{k=-1}^{1} (H1+k)" in rendered
    J = build_ideal("charp_d", AlgebraParams.polynomial(2, 2, 3, 1))
    assert J.vanishing_locus == ((0, 2), (1, 1), (2, 0))
    K = build_ideal("charp_rs", AlgebraParams(2, 1, 1, 2, 2))
    assert quotient_dimension(K) == 3 and K.truncation_verified
    assert quotient_dimension(build_ideal("char0_rs", AlgebraParams(4, 1, 1))) == len(enumerate_lambda_rs(RSParams(4, 1, 1)))


def test_build_ideal_errors():
    with pytest.raises(ParameterError):
        build_ideal("charp_d", AlgebraParams.polynomial(2, 4, 2, 2))
    with pytest.raises(ParameterError):
        build_ideal("char0_rs", AlgebraParams(1, 1, 1))
    with pytest.raises(ParameterError):
        build_ideal("nonsense", AlgebraParams(2, 1, 1))


def test_grid_cap():
    with pytest.raises(ResourceCapExceeded):
        TorusAlgebraContext.char_p(4, 2, 6)


def test_ideal_json_is_deterministic():
    a = build_ideal("charp_rs", AlgebraParams(3, 1, 1, 2, 2)).to_json()
    b = build_ideal("charp_rs", AlgebraParams(3, 1, 1, 2, 2)).to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["locus"] == sorted(doc["locus"])
    assert {g["kind"] for g in doc["generators"]} == {"binomial"}


@pytest.mark.parametrize("n,r,s", [(n, r, s) for n in (2, 3) for r in range(3) for s in range(3)])
def test_quotient_dimensions_char0(n, r, s):
    I = build_ideal("char0_rs", AlgebraParams(n, r, s))
    lam = enumerate_lambda_rs(RSParams(n, r, s))
    assert set(I.vanishing_locus) == set(lam)
    assert quotient_dimension(I) == len(lam) == s0_dimension(n, r, s)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 1), (5, 1)])
def test_quotient_dimensions_charp(p, m):
    q = p**m
    for n in (1, 2, 3):
        for d in range(q):
            I = build_ideal("charp_d", AlgebraParams.polynomial(n, d, p, m))
            assert set(I.vanishing_locus) == set(enumerate_lambda(n, d))
            assert I.truncation_verified
        if n >= 2:
            for r in range(3):
                for s in range(3):
                    if r + (n - 1) * s < q:
                        I = build_ideal("charp_rs", AlgebraParams(n, r, s, p, m))
                        assert set(I.vanishing_locus) == set(enumerate_lambda_rs(RSParams(n, r, s)))


def test_weak_subset_family_same_locus():
    for n in (2, 3, 4):
        for r in range(3):
            for s in range(3):
                full = build_ideal("char0_rs", AlgebraParams(n, r, s))
                weak = build_ideal("char0_rs", AlgebraParams(n, r, s), weak_subsets=True)
                assert weak.vanishing_locus == full.vanishing_locus
                assert len(weak.generators) <= len(full.generators)


def test_proper_subsets_order():
    assert list(proper_subsets(3)) == [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)]
    assert list(proper_subsets(4, 1)) == [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def test_vanishing_locus_of_no_generators_is_whole_grid():
    ctx = ctx_p(2, 2, 1)
    assert vanishing_locus(ctx, []) == ((0, 0), (0, 1), (1, 0), (1, 1))
