"""One test per acceptance criterion; each prints a single CRITERION line with its timing."""
import itertools
import random
from math import comb, factorial, prod

import numpy as np

from schurpres.cli import desk_preset
from schurpres.exact_arith import (
    GF,
    QQ,
    Field,
    binomial,
    binomial_mod_p_lucas,
    field_binomial,
    kummer_carries_array,
    kummer_carry_count,
    lucas_mod_p_array,
    shift_expansion,
)
from schurpres.params import AlgebraParams
from schurpres.presentation import build_presentation, donkin_report, verify_presentation
from schurpres.rewrite import RewriteContext, certify_rewrite, pbw_rewrite, random_word
from schurpres.tensor_rep import TensorRepresentation, algebra_closure_dimension, s0_dimension
from schurpres.torus import (
    TorusAlgebraContext,
    TorusElement,
    build_ideal,
    evaluate,
    idempotent_h,
    quotient_dimension,
    shifted_binomial,
)
from schurpres.weights import (
    WEIGHT_CONDITION_VARIANTS,
    DOMINANT_CONDITION_VARIANTS,
    RSParams,
    enumerate_lambda,
    enumerate_lambda_plus,
    enumerate_lambda_plus_rs,
    enumerate_lambda_rs,
    in_lambda_rs_by_t,
    is_dominant,
    is_saturated,
    lambda_plus_rs_condition,
    lambda_rs_condition,
    nu_prime_set,
    pi_double_prime_membership,
    pi_double_prime_set,
    pi_prime_membership,
    shift_bijection,
    sum_weyl_dimension_squares,
)


def test_criterion_01_donkin_counterexample(criterion):
    with criterion(1, 1):
        p = RSParams(4, 1, 1)
        lam = (2, 2, 0, 0)
        assert pi_prime_membership(lam, p)
        assert not pi_double_prime_membership(lam, p)
        above = [i + 1 for i, x in enumerate(lam) if x > p.s]
        assert above == [1, 2]
        assert sum(lam[i - 1] for i in above) == 4 > 3 == p.r + len(above) * p.s
        report = donkin_report()
        assert report["pass"] and report["R_plus"] == [1, 2] and "4 > 3" in report["inequality"]


def test_criterion_02_lemma_variants(criterion):
    with criterion(2, 10):
        for n in range(1, 5):
            for r in range(4):
                for s in range(4):
                    p = RSParams(n, r, s)
                    for w in itertools.product(range(-(s + 2), r + 3), repeat=n):
                        truth = in_lambda_rs_by_t(w, p)
                        for v in WEIGHT_CONDITION_VARIANTS:
                            assert lambda_rs_condition(w, p, v) == truth, (w, p, v)
                        if is_dominant(w):
                            for v in DOMINANT_CONDITION_VARIANTS:
                                assert lambda_plus_rs_condition(w, p, v) == truth, (w, p, v)


def test_criterion_03_shift_bijection(criterion):
    with criterion(3, 5):
        for n in range(1, 5):
            for r in range(4):
                for s in range(4):
                    p = RSParams(n, r, s)
                    source = list(enumerate_lambda_plus_rs(p))
                    target = set(pi_double_prime_set(p))
                    image = [shift_bijection(mu, p, "to_pi_double_prime") for mu in source]
                    assert len(set(image)) == len(source) and set(image) == target
                    for mu, lam in zip(source, image):
                        assert shift_bijection(lam, p, "to_lambda_plus_rs") == mu


PRIMES = (2, 3, 5, 7)
# p**e exceeds 2000 for each factor, so every valuation of binom(a, b) with a <= 2000 is
# readable from the residue modulo this product, which still fits in an int64
RESIDUE_MODULUS = 2**11 * 3**7 * 5**5 * 7**4


def _exact_row(a: int) -> list[int]:
    """binom(a, 0..a) by the exact multiplicative recurrence."""
    row = [1]
    for b in range(a):
        row.append(row[-1] * (a - b) // (b + 1))
    return row


def _valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _valuation_array(res: np.ndarray, p: int) -> np.ndarray:
    v = np.zeros_like(res)
    power = p
    while RESIDUE_MODULUS % power == 0:
        v += res % power == 0
        power *= p
    return v


def test_criterion_04_binomial_suite(criterion):
    with criterion(4, 30):
        amax = 2000
        for a in range(amax + 1):
            row = _exact_row(a)
            if a % 97 == 0:
                assert row == [comb(a, b) for b in range(a + 1)]
            res = np.array([c % RESIDUE_MODULUS for c in row], dtype=np.int64)
            assert res.all()
            tops = np.full(a + 1, a, dtype=np.int64)
            bottoms = np.arange(a + 1, dtype=np.int64)
            for p in PRIMES:
                assert np.array_equal(lucas_mod_p_array(tops, bottoms, p), res % p)
                assert np.array_equal(kummer_carries_array(tops, bottoms, p), _valuation_array(res, p))
            if a <= 200:
                for p in PRIMES:
                    for b, c in enumerate(row):
                        assert binomial_mod_p_lucas(a, b, p).value == c % p
                        assert kummer_carry_count(a, b, p) == _valuation(c, p)
        # Pascal's identity and the falling-factorial reading of negative tops
        for a in range(-50, 51):
            for b in range(1, 51):
                assert binomial(a, b) == binomial(a - 1, b) + binomial(a - 1, b - 1)
                assert binomial(a, b) == prod(a - i for i in range(b)) // factorial(b)
        # shifts by positive and negative constants, as polynomial identities and on the torus
        ctx = TorusAlgebraContext.char_zero(2, 4, 3)
        for c in range(-3, 4):
            for j in range(5):
                for x in range(-3, 4):
                    assert binomial(x + c, j) == sum(k * binomial(x, t) for t, k in shift_expansion(c, j))
                    assert evaluate(shifted_binomial(ctx, 1, c, j), (x, 0)) == binomial(x + c, j)


def _signed_binomial(a: int, b: int) -> int:
    """Oracle independent of the library: comb for a >= 0, falling factorial for a < 0."""
    if a >= 0:
        return comb(a, b)
    return prod(a - i for i in range(b)) // factorial(b)


def test_criterion_05_boundedness_criterion(criterion):
    with criterion(5, 5):
        for p in (2, 3):
            for m in (1, 2):
                q = p**m
                window = 0
                while p**window < q * q:
                    window += 1
                for l in range(0, 2 * m + 1):
                    for a in range(-q, q * q + 1):
                        values = {j: _signed_binomial(a, p**j) % p for j in range(l, l + window + 1)}
                        for j, v in values.items():
                            assert field_binomial(a, p**j, GF(p)) == v
                        assert all(v == 0 for v in values.values()) == (0 <= a < p**l), (p, m, l, a)
                        if a < 0:
                            # the reflected coefficient binom(-a-1+p^k, p^k) is 1 mod p once p^k > -a-1,
                            # so binom(a, p^k) = (-1)^(p^k) is a unit and the window detects a < 0
                            k = max(l, next(k for k in itertools.count() if p**k > -a - 1))
                            assert k <= l + window
                            assert comb(-a - 1 + p**k, p**k) % p == 1
                            assert values[k] == (-1) ** (p**k) % p


def _expanded_idempotent(ctx, b):
    """h_b from the alternating-sum formula, expanded without the library."""
    q, p = ctx.q, ctx.characteristic
    per_axis = [{k: (-1) ** (k - bi) * comb(k, bi) for k in range(bi, q)} for bi in b]
    terms = {}
    for ks in itertools.product(*[list(axis) for axis in per_axis]):
        terms[ks] = prod(per_axis[i][k] for i, k in enumerate(ks)) % p
    return TorusElement(ctx, terms)


def test_criterion_06_idempotents(criterion):
    with criterion(6, 10):
        for p, m, n in [(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (2, 2, 2)]:
            ctx = TorusAlgebraContext.char_p(n, p, m)
            points = list(itertools.product(range(ctx.q), repeat=n))
            hs = {b: idempotent_h(ctx, b) for b in points}
            total = TorusElement.zero(ctx)
            for b in points:
                assert hs[b] == _expanded_idempotent(ctx, b)
                total = total + hs[b]
            assert total == TorusElement.unit(ctx)
            assert len({tuple(sorted(h.terms.items())) for h in hs.values() if not h.is_zero()}) == ctx.q**n
            for a in points:
                for b in points:
                    assert hs[a] * hs[b] == (hs[a] if a == b else TorusElement.zero(ctx))
            # primitivity: h_b * binom(H, e) = binom(b, e) h_b, so h_b D h_b is one-dimensional
            for b in points:
                for e in points:
                    scalar = prod(comb(bi, ei) for bi, ei in zip(b, e)) % p
                    assert hs[b] * TorusElement.monomial(ctx, e) == hs[b].scale(scalar)


def test_criterion_07_dimension_agreement(criterion):
    with criterion(7, 60):
        cases = 0
        for n in (2, 3):
            for r in range(3):
                for s in range(3):
                    ideal = build_ideal("char0_rs", AlgebraParams(n, r, s))
                    weights = enumerate_lambda_rs(RSParams(n, r, s))
                    assert quotient_dimension(ideal) == len(weights) == s0_dimension(n, r, s)
                    assert set(ideal.vanishing_locus) == set(weights)
                    cases += 1
        for n in (1, 2, 3):
            for p in (2, 3, 5):
                m = 1
                while p ** (m * n) <= 10**6:
                    q = p**m
                    for d in range(min(q, 5)):
                        ideal = build_ideal("charp_d", AlgebraParams.polynomial(n, d, p, m))
                        weights = enumerate_lambda(n, d)
                        assert quotient_dimension(ideal) == len(weights) == s0_dimension(n, d)
                        assert set(ideal.vanishing_locus) == set(weights) and ideal.truncation_verified
                        cases += 1
                    if n >= 2:
                        for r in range(3):
                            for s in range(3):
                                if r + (n - 1) * s < q:
                                    ideal = build_ideal("charp_rs", AlgebraParams(n, r, s, p, m))
                                    weights = enumerate_lambda_rs(RSParams(n, r, s))
                                    assert quotient_dimension(ideal) == len(weights) == s0_dimension(n, r, s)
                                    assert set(ideal.vanishing_locus) == set(weights)
                                    cases += 1
                    m += 1
        assert cases > 500


def test_criterion_08_relation_sweep(criterion):
    with criterion(8, 120):
        preset = desk_preset()
        assert {label for label, _ in preset} == {"char0_rational", "charp_schur", "charp_rational"}
        for label, params in preset:
            report = verify_presentation(build_presentation(label, params))
            failures = [item.to_dict() for item in report.failures()]
            assert report.passed, (label, params, failures)
            assert any(item.check == "kernel" for item in report.items)
            assert sum(item.check == "relation" for item in report.items) > 0


def _chevalley_images(rep):
    n = rep.n
    gens = [rep.matrix_divided_power((i, j), 1) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return gens + [rep.matrix_binomial_H(i, 1) for i in range(1, n + 1)]


def test_criterion_09_closure_dimensions(criterion):
    with criterion(9, 60):
        for (n, r, s), expected in [((2, 2, 0), 10), ((2, 3, 0), 20), ((3, 2, 0), 45), ((2, 1, 1), 10)]:
            got = algebra_closure_dimension(_chevalley_images(TensorRepresentation(n, r, s, QQ)))
            dominant = enumerate_lambda_plus(n, r) if s == 0 else enumerate_lambda_plus_rs(RSParams(n, r, s))
            assert got == expected == sum_weyl_dimension_squares(dominant), (n, r, s, got)


def test_criterion_10_pbw_certification(criterion):
    with criterion(10, 120):
        configs = [(n, p, m) for n in (2, 3) for p in (2, 3) for m in (1, 2, 3) if p**m <= 9]
        for n, p, m in configs:
            ctx = RewriteContext(n, p, m)
            modules = [TensorRepresentation(n, d, 0, Field(p)) for d in range(1, min(ctx.q, 4))]
            rng = random.Random(7919 * n + 31 * p + m)
            for _ in range(200):
                word = random_word(ctx, rng.randint(0, 6), rng)
                trace = []
                nf = pbw_rewrite(word, ctx, trace=trace)
                assert all(after < before for before, after in trace)
                for module in modules:
                    assert certify_rewrite(word, nf, module), (n, p, m, word)


def test_criterion_11_cellular_bookkeeping(criterion):
    with criterion(11, 10):
        for n in range(1, 5):
            for r in range(3):
                for s in range(3):
                    p = RSParams(n, r, s)
                    ambient = enumerate_lambda_plus(n, p.d)
                    nu = nu_prime_set(p)
                    pi2 = pi_double_prime_set(p)
                    assert is_saturated(nu, ambient)
                    assert set(nu) | set(pi2) == set(ambient) and not set(nu) & set(pi2)
                    assert sum_weyl_dimension_squares(pi2) == sum_weyl_dimension_squares(enumerate_lambda_plus_rs(p))


def test_criterion_12_weak_generator_subsets(criterion):
    with criterion(12, 5):
        for n in range(2, 5):
            for r in range(3):
                for s in range(3):
                    params = AlgebraParams(n, r, s)
                    full = build_ideal("char0_rs", params)
                    weak = build_ideal("char0_rs", params, weak_subsets=True)
                    weak_sizes = {sum(g.coeffs) for g in weak.generators if g.family == "subset"}
                    full_sizes = {sum(g.coeffs) for g in full.generators if g.family == "subset"}
                    assert weak_sizes == set(range(1, n // 2 + 1))
                    assert full_sizes == set(range(1, n))
                    assert weak.vanishing_locus == full.vanishing_locus
