"""Weight sets of GL(n): Lambda(n,d), Lambda(n,r,s), their dominant parts, pi', pi'', nu'.

Weights are plain tuples of ints.  Every enumeration returns a
:class:`WeightSet` whose members are sorted in descending lexicographic order.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb

from .errors import ParameterError

Weight = tuple[int, ...]

WEIGHT_CONDITION_VARIANTS = ("b", "b1", "b2", "b3", "b4")
DOMINANT_CONDITION_VARIANTS = ("B", "B1", "B2", "B3", "B4")


@dataclass(frozen=True)
class RSParams:
    n: int
    r: int
    s: int

    def __post_init__(self):
        if self.n < 1 or self.r < 0 or self.s < 0:
            raise ParameterError(f"invalid (n, r, s) = ({self.n}, {self.r}, {self.s})")

    @property
    def d(self) -> int:
        """Degree of the polynomial Schur algebra S(n, r + (n-1)s) the rational one sits under."""
        return self.r + (self.n - 1) * self.s

    def require_rational(self) -> "RSParams":
        if self.n < 2:
            raise ParameterError("rational Schur algebra parameters need n >= 2")
        return self


@dataclass(frozen=True)
class WeightSet:
    description: str
    members: tuple[Weight, ...]

    def __post_init__(self):
        ordered = tuple(sorted(set(self.members), reverse=True))
        object.__setattr__(self, "members", ordered)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, w):
        return tuple(w) in self._lookup

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.members)

    def to_json(self) -> str:
        return json.dumps([list(w) for w in self.members])


@dataclass(frozen=True)
class SignSupport:
    positive_positions: frozenset[int]
    negative_positions: frozenset[int]
    above_s_positions: frozenset[int]


def sign_support(w: Weight, s: int = 0) -> SignSupport:
    """P+, P- and R+ (entries > s) of a weight, as 0-based position sets."""
    return SignSupport(
        frozenset(i for i, x in enumerate(w) if x > 0),
        frozenset(i for i, x in enumerate(w) if x < 0),
        frozenset(i for i, x in enumerate(w) if x > s),
    )


def is_dominant(w: Weight) -> bool:
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1))


def _compositions(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


def enumerate_lambda(n: int, d: int) -> WeightSet:
    """Weights of E^{(x)d}: nonnegative n-vectors with entry sum d."""
    if n < 1 or d < 0:
        raise ParameterError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    return WeightSet(f"Lambda({n},{d})", tuple(_compositions(n, d)))


def enumerate_lambda_plus(n: int, d: int) -> WeightSet:
    return WeightSet(
        f"Lambda+({n},{d})", tuple(w for w in _compositions(n, d) if is_dominant(w))
    )


def in_lambda_rs_by_t(w: Weight, p: RSParams) -> bool:
    """Membership via the defining t-decomposition of the weights of E^{r,s}."""
    if len(w) != p.n:
        return False
    pos = sum(x for x in w if x > 0)
    neg = sum(x for x in w if x < 0)
    t = p.r - pos
    return 0 <= t <= min(p.r, p.s) and neg == t - p.s


def _box(n: int, lo: int, hi: int):
    return itertools.product(range(lo, hi + 1), repeat=n)


def enumerate_lambda_rs(p: RSParams) -> WeightSet:
    """Lambda(n,r,s), built from the t-decomposition over the box [-s, r]^n."""
    members = []
    for t in range(min(p.r, p.s) + 1):
        for w in _box(p.n, -p.s, p.r):
            if sum(x for x in w if x > 0) == p.r - t and sum(x for x in w if x < 0) == t - p.s:
                members.append(w)
    return WeightSet(f"Lambda({p.n},{p.r},{p.s})", tuple(members))


@lru_cache(maxsize=1 << 16)
def _proper_subset_sum_range(w: Weight) -> tuple[int, int]:
    """(min, max) of sum_{i in S} w_i over nonempty proper subsets S."""
    n = len(w)
    sums = [0] * (1 << n)
    lo, hi = None, None
    full = (1 << n) - 1
    for mask in range(1, full):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + w[low.bit_length() - 1]
        v = sums[mask]
        if lo is None or v < lo:
            lo = v
        if hi is None or v > hi:
            hi = v
    if lo is None:
        return 0, 0
    return lo, hi


def lambda_rs_condition(w: Weight, p: RSParams, variant: str) -> bool:
    """Condition (a) together with one of (b), (b'), (b''), (b'''), (b'''').

    ``variant`` is one of ``b, b1, b2, b3, b4`` (number of primes).
    """
    w = tuple(w)
    if len(w) != p.n:
        raise ValueError(f"weight length {len(w)} != n = {p.n}")
    if sum(w) != p.r - p.s:
        return False
    if variant in ("b", "b1", "b2"):
        lo, hi = _proper_subset_sum_range(w)
        if p.n == 1:
            return True
        if variant == "b":
            return -p.s <= lo and hi <= p.r
        if variant == "b1":
            return hi <= p.r
        return -p.s <= lo
    if variant == "b3":
        return sum(x for x in w if x > 0) <= p.r
    if variant == "b4":
        return -p.s <= sum(x for x in w if x < 0)
    raise ValueError(f"unknown variant {variant!r}")


def lambda_plus_rs_condition(mu: Weight, p: RSParams, variant: str) -> bool:
    """Condition (A) with one of (B)..(B'''') for a dominant weight (prefix-sum form)."""
    mu = tuple(mu)
    if len(mu) != p.n:
        raise ValueError(f"weight length {len(mu)} != n = {p.n}")
    if not is_dominant(mu):
        raise ValueError(f"{mu} is not dominant")
    if sum(mu) != p.r - p.s:
        return False
    prefix = list(itertools.accumulate(mu))
    n = p.n
    if variant == "B":
        return all(-p.s <= prefix[k] <= p.r for k in range(n))
    if variant == "B1":
        return all(prefix[k] <= p.r for k in range(n - 1))
    if variant == "B2":
        # suffix sums mu_k + ... + mu_n for 1 < k <= n (mirror of B1)
        return all(-p.s <= sum(mu[k:]) for k in range(1, n))
    if variant == "B3":
        u = sum(1 for x in mu if x > 0)
        return sum(mu[:u]) <= p.r
    if variant == "B4":
        l = n - sum(1 for x in mu if x < 0)
        return -p.s <= sum(mu[l:])
    raise ValueError(f"unknown variant {variant!r}")


def enumerate_lambda_plus_rs(p: RSParams) -> WeightSet:
    """Dominant weights of E^{r,s}, selected by the prefix-sum conditions (A)+(B)."""
    members = tuple(
        w for w in _box(p.n, -p.s, p.r)
        if is_dominant(w) and lambda_plus_rs_condition(w, p, "B")
    )
    return WeightSet(f"Lambda+({p.n},{p.r},{p.s})", members)


def _check_polynomial_dominant(w: Weight, p: RSParams) -> None:
    if len(w) != p.n or not is_dominant(w) or sum(w) != p.d or (w and w[-1] < 0):
        raise ValueError(f"{tuple(w)} is not in Lambda+({p.n},{p.d})")


def pi_prime_membership(w: Weight, p: RSParams) -> bool:
    """Donkin's pi': dominant weights of S(n, r+(n-1)s) with entries in [0, r+s]."""
    w = tuple(w)
    if len(w) != p.n or not is_dominant(w) or sum(w) != p.d:
        raise ValueError(f"{w} must be dominant with entry sum {p.d}")
    return all(0 <= x <= p.r + p.s for x in w)


def pi_double_prime_membership(w: Weight, p: RSParams) -> bool:
    w = tuple(w)
    _check_polynomial_dominant(w, p)
    above = [x for x in w if x > p.s]
    return sum(above) <= p.r + len(above) * p.s


def pi_prime_set(p: RSParams) -> WeightSet:
    return WeightSet(
        f"pi'({p.n},{p.r},{p.s})",
        tuple(w for w in enumerate_lambda_plus(p.n, p.d) if pi_prime_membership(w, p)),
    )


def pi_double_prime_set(p: RSParams) -> WeightSet:
    return WeightSet(
        f"pi''({p.n},{p.r},{p.s})",
        tuple(w for w in enumerate_lambda_plus(p.n, p.d) if pi_double_prime_membership(w, p)),
    )


def shift_bijection(mu: Weight, p: RSParams, direction: str) -> Weight:
    """mu -> mu + s(1,..,1) into pi'', or lambda -> lambda - s(1,..,1) back into Lambda+(n,r,s)."""
    mu = tuple(mu)
    if direction == "to_pi_double_prime":
        if not (len(mu) == p.n and is_dominant(mu) and lambda_plus_rs_condition(mu, p, "B")):
            raise ValueError(f"{mu} is not in Lambda+({p.n},{p.r},{p.s})")
        out = tuple(x + p.s for x in mu)
        assert pi_double_prime_membership(out, p)
        return out
    if direction == "to_lambda_plus_rs":
        if not pi_double_prime_membership(mu, p):
            raise ValueError(f"{mu} is not in pi''({p.n},{p.r},{p.s})")
        out = tuple(x - p.s for x in mu)
        assert lambda_plus_rs_condition(out, p, "B")
        return out
    raise ValueError(f"unknown direction {direction!r}")


def dominance_geq(a: Weight, b: Weight) -> bool:
    """a dominates b: every prefix sum of a is >= that of b. Requires equal degree."""
    if len(a) != len(b):
        raise ValueError("weights of different lengths")
    if sum(a) != sum(b):
        raise ValueError(f"dominance only compares weights of equal degree: {tuple(a)} vs {tuple(b)}")
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa < sb:
            return False
    return True


def is_saturated(subset, ambient) -> bool:
    """Upward closure under dominance inside ``ambient``."""
    subset = set(subset)
    return all(
        k in subset
        for mu in subset
        for k in ambient
        if dominance_geq(k, mu)
    )


def nu_prime_set(p: RSParams) -> WeightSet:
    """Lambda+(n, r+(n-1)s) minus pi''; checked to be saturated."""
    ambient = enumerate_lambda_plus(p.n, p.d)
    members = tuple(w for w in ambient if not pi_double_prime_membership(w, p))
    if not is_saturated(members, ambient):
        raise AssertionError(f"nu' for {p} is not saturated")
    return WeightSet(f"nu'({p.n},{p.r},{p.s})", members)


def weyl_dimension(w: Weight) -> int:
    """Dimension of the GL(n) Weyl module of highest weight ``w`` (product formula)."""
    w = tuple(w)
    if not is_dominant(w):
        raise ValueError(f"{w} is not dominant")
    n = len(w)
    value = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            value *= Fraction(w[i] - w[j] + j - i, j - i)
    assert value.denominator == 1
    return int(value)


def sum_weyl_dimension_squares(ws) -> int:
    return sum(weyl_dimension(w) ** 2 for w in ws)


def count_lambda(n: int, d: int) -> int:
    return comb(n + d - 1, d)
