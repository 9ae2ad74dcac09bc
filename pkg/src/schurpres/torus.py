"""Commutative quotients of Dist(T), realised as exact functions on integer grids.

An element of ``Dist(T)`` (or of a finite quotient) is stored in the monomial
basis ``prod_i binom(H_i, b_i)``.  Evaluating ``H_i`` at the points of a
finite grid identifies the quotient with the algebra of all functions on the
grid (pointwise operations), and ideals become vanishing loci.

Grids are boxes ``[lower, lower + side)^n``:

* characteristic p: ``side = q = p**m``.  Since ``binom(x, b) mod p`` is
  q-periodic in x for ``b < q``, any interval of length q works; the default is
  ``[0, q)`` and the rational case uses the shifted box ``[-s, q - s)``.
* characteristic 0: the box ``[-s, r]`` for the ambient ``(r, s)``.

Axes are numbered 1..n in the public API, matching ``H_1, ..., H_n``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from math import prod

import numpy as np

from .errors import ParameterError, ResourceCapExceeded
from .exact_arith import (
    Field,
    binomial,
    binomial_product_expansion,
    field_binomial,
    lucas_mod_p_array,
    require_prime,
    shift_expansion,
)
from .params import AlgebraParams

MAX_GRID_POINTS = 10**7

Exponents = tuple[int, ...]
Point = tuple[int, ...]


@dataclass(frozen=True)
class TorusAlgebraContext:
    n: int
    characteristic: int
    lower: int
    side: int
    m: int = 0

    def __post_init__(self):
        if self.n < 1 or self.side < 1:
            raise ParameterError(f"invalid torus context n={self.n}, side={self.side}")
        if self.characteristic:
            require_prime(self.characteristic)
            if self.side != self.characteristic**self.m:
                raise ParameterError("characteristic p grids have side q = p^m")
        if self.side**self.n > MAX_GRID_POINTS:
            raise ResourceCapExceeded(
                f"grid of {self.side}^{self.n} points exceeds the cap of {MAX_GRID_POINTS}"
            )

    @classmethod
    def char_p(cls, n: int, p: int, m: int, shift: int = 0) -> "TorusAlgebraContext":
        require_prime(p)
        if m < 1:
            raise ParameterError("m must be >= 1")
        return cls(n, p, -shift, p**m, m)

    @classmethod
    def char_zero(cls, n: int, r: int, s: int) -> "TorusAlgebraContext":
        if r < 0 or s < 0:
            raise ParameterError("r, s must be >= 0")
        return cls(n, 0, -s, r + s + 1)

    @property
    def field(self) -> Field:
        return Field(self.characteristic)

    @property
    def q(self) -> int:
        return self.side

    @property
    def upper(self) -> int:
        """Largest grid coordinate."""
        return self.lower + self.side - 1

    @property
    def grid_size(self) -> int:
        return self.side**self.n

    def grid_points(self):
        return itertools.product(range(self.lower, self.lower + self.side), repeat=self.n)

    def point_index(self, point: Point) -> int:
        idx = 0
        for x in point:
            off = x - self.lower
            if not 0 <= off < self.side:
                raise ValueError(f"{tuple(point)} is not on the grid")
            idx = idx * self.side + off
        return idx

    @cached_property
    def coordinates(self) -> np.ndarray:
        """int64 array of shape (n, grid_size); column k is the k-th grid point."""
        shape = (self.side,) * self.n
        return np.indices(shape, dtype=np.int64).reshape(self.n, -1) + self.lower

    def describe(self) -> dict:
        return {
            "n": self.n,
            "characteristic": self.characteristic,
            "grid": [self.lower, self.upper],
        }

    # One-variable tables, shared between contexts with the same box.
    def _key(self):
        return self.characteristic, self.lower, self.side


@lru_cache(maxsize=None)
def _eval_matrix(char: int, lower: int, side: int) -> np.ndarray:
    """E[t, b] = binom(lower + t, b)."""
    f = Field(char)
    out = np.empty((side, side), dtype=object)
    for t in range(side):
        for b in range(side):
            out[t, b] = field_binomial(lower + t, b, f)
    return out


@lru_cache(maxsize=None)
def _interp_matrix(char: int, lower: int, side: int) -> np.ndarray:
    """Inverse of :func:`_eval_matrix` (Newton forward differences, shifted).

    f(x) = sum_k D^k f(lower) binom(x - lower, k) and
    binom(x - lower, k) = sum_b binom(x, b) binom(-lower, k - b), so
    M[b, t] = sum_k binom(-lower, k - b) (-1)^(k-t) binom(k, t).  Integral.
    """
    f = Field(char)
    out = np.empty((side, side), dtype=object)
    for b in range(side):
        for t in range(side):
            acc = 0
            for k in range(max(b, t), side):
                term = binomial(-lower, k - b) * binomial(k, t)
                acc += -term if (k - t) % 2 else term
            out[b, t] = f.reduce(acc)
    return out


def _apply_axes(arr: np.ndarray, mat: np.ndarray, field: Field) -> np.ndarray:
    n = arr.ndim
    red = np.frompyfunc(field.reduce, 1, 1)
    for axis in range(n):
        arr = np.tensordot(mat, arr, axes=([1], [axis]))
        arr = np.moveaxis(arr, 0, axis)
        arr = red(arr)
    return arr


@lru_cache(maxsize=None)
def _reduced_binomial(char: int, lower: int, side: int, c: int) -> tuple[tuple[int, int], ...]:
    """binom(H, c) restricted to the interval, re-expanded in exponents < side."""
    f = Field(char)
    if c < side:
        return ((c, 1),)
    values = np.array([field_binomial(lower + t, c, f) for t in range(side)], dtype=object)
    coeffs = _interp_matrix(char, lower, side).dot(values)
    return tuple((b, f.reduce(v)) for b, v in enumerate(coeffs) if f.reduce(v) != 0)


@lru_cache(maxsize=None)
def _product_1d(char: int, lower: int, side: int, a: int, b: int) -> tuple[tuple[int, int], ...]:
    """binom(H, a) binom(H, b) in exponents < side: product rule, then reduction."""
    f = Field(char)
    acc: dict[int, int] = {}
    for c, coeff in binomial_product_expansion(a, b):
        coeff = f.reduce(coeff)
        if coeff == 0:
            # In characteristic p every c >= q lands here: the coefficient
            # binom(c, a) binom(a, j) is divisible by p.
            continue
        for e, k in _reduced_binomial(char, lower, side, c):
            acc[e] = f.reduce(acc.get(e, 0) + coeff * k)
    return tuple(sorted((e, v) for e, v in acc.items() if v != 0))


class TorusElement:
    """Sparse linear combination of monomials ``prod binom(H_i, b_i)``, ``b_i < side``."""

    __slots__ = ("context", "terms")

    def __init__(self, context: TorusAlgebraContext, terms=None):
        f = context.field
        clean = {}
        for b, v in (terms or {}).items():
            b = tuple(b)
            if len(b) != context.n or any(not 0 <= x < context.side for x in b):
                raise ValueError(f"exponent {b} out of range for {context}")
            v = f.reduce(v)
            if v != 0:
                clean[b] = v
        self.context = context
        self.terms = clean

    @classmethod
    def monomial(cls, context, exponents, coeff=1) -> "TorusElement":
        return cls(context, {tuple(exponents): coeff})

    @classmethod
    def unit(cls, context) -> "TorusElement":
        return cls.monomial(context, (0,) * context.n)

    @classmethod
    def zero(cls, context) -> "TorusElement":
        return cls(context)

    def _check(self, other: "TorusElement"):
        if not isinstance(other, TorusElement):
            return False
        if other.context != self.context:
            raise ValueError("torus elements from different contexts")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        for b, v in other.terms.items():
            out[b] = out.get(b, 0) + v
        return TorusElement(self.context, out)

    def __neg__(self):
        return TorusElement(self.context, {b: -v for b, v in self.terms.items()})

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TorusElement":
        c = self.context.field.reduce(c)
        return TorusElement(self.context, {b: v * c for b, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents):
        return self.context.field.element(self.terms.get(tuple(exponents), 0))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for b in sorted(self.terms):
            mono = "*".join(f"binom(H{i + 1},{e})" for i, e in enumerate(b) if e) or "1"
            parts.append(f"{self.terms[b]}*{mono}")
        return " + ".join(parts)


def multiply(x: TorusElement, y: TorusElement) -> TorusElement:
    """Product in the monomial basis, axis by axis."""
    if x.context != y.context:
        raise ValueError("torus elements from different contexts")
    ctx = x.context
    f = ctx.field
    key = ctx._key()
    out: dict[Exponents, int] = {}
    for bx, cx in x.terms.items():
        for by, cy in y.terms.items():
            factors = [_product_1d(*key, a, b) for a, b in zip(bx, by)]
            for combo in itertools.product(*factors):
                e = tuple(c for c, _ in combo)
                out[e] = out.get(e, 0) + cx * cy * prod(k for _, k in combo)
    return TorusElement(ctx, {b: f.reduce(v) for b, v in out.items()})


def evaluate(x: TorusElement, point: Point):
    """Substitute integers for H_1..H_n."""
    point = tuple(point)
    ctx = x.context
    if len(point) != ctx.n:
        raise ValueError(f"point {point} has length != {ctx.n}")
    f = ctx.field
    acc = 0
    for b, c in x.terms.items():
        acc += c * prod(field_binomial(lam, e, f) for lam, e in zip(point, b))
    return f.element(acc)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """One exact value per grid point, grid points in lexicographic order."""

    context: TorusAlgebraContext
    values: tuple = dc_field(repr=False)

    def __post_init__(self):
        if len(self.values) != self.context.grid_size:
            raise ValueError("one value per grid point required")
        f = self.context.field
        object.__setattr__(self, "values", tuple(f.reduce(v) for v in self.values))

    @classmethod
    def from_callable(cls, context, fn) -> "GridFunction":
        return cls(context, tuple(fn(pt) for pt in context.grid_points()))

    @classmethod
    def constant(cls, context, c) -> "GridFunction":
        return cls(context, (c,) * context.grid_size)

    @classmethod
    def indicator(cls, context, point) -> "GridFunction":
        vals = [0] * context.grid_size
        vals[context.point_index(point)] = 1
        return cls(context, tuple(vals))

    def _zip(self, other, op):
        if other.context != self.context:
            raise ValueError("grid functions on different contexts")
        return GridFunction(self.context, tuple(op(a, b) for a, b in zip(self.values, other.values)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            return self._zip(other, lambda a, b: a * b)
        return GridFunction(self.context, tuple(v * other for v in self.values))

    def __eq__(self, other):
        if not isinstance(other, GridFunction):
            return NotImplemented
        return self.context == other.context and self.values == other.values

    def __hash__(self):
        return hash((self.context, self.values))

    def value_at(self, point):
        return self.context.field.element(self.values[self.context.point_index(point)])

    def is_zero(self) -> bool:
        return not any(self.values)

    def zero_set(self) -> tuple[Point, ...]:
        return tuple(pt for pt, v in zip(self.context.grid_points(), self.values) if v == 0)

    def as_array(self) -> np.ndarray:
        arr = np.empty(len(self.values), dtype=object)
        arr[:] = self.values
        return arr.reshape((self.context.side,) * self.context.n)


def to_grid(x: TorusElement) -> GridFunction:
    ctx = x.context
    arr = np.zeros((ctx.side,) * ctx.n, dtype=object)
    for b, c in x.terms.items():
        arr[b] = c
    vals = _apply_axes(arr, _eval_matrix(*ctx._key()), ctx.field)
    return GridFunction(ctx, tuple(vals.reshape(-1)))


def interpolate(f: GridFunction) -> TorusElement:
    """The unique element with exponents < side taking the values of ``f``."""
    ctx = f.context
    coeffs = _apply_axes(f.as_array(), _interp_matrix(*ctx._key()), ctx.field)
    terms = {}
    for idx in zip(*np.nonzero(coeffs != 0)):
        terms[tuple(int(i) for i in idx)] = coeffs[idx]
    return TorusElement(ctx, terms)


def _require_char_p(ctx: TorusAlgebraContext):
    if ctx.characteristic == 0:
        raise ParameterError("this operation needs a characteristic p context")


def idempotent_h(context: TorusAlgebraContext, b: Exponents) -> TorusElement:
    """h_b = prod_i sum_{k=b_i}^{q-1} (-1)^(k-b_i) binom(k, b_i) binom(H_i, k).

    On any grid its values are 1 at points congruent to b mod q, else 0.
    """
    _require_char_p(context)
    b = tuple(b)
    q = context.q
    if len(b) != context.n or any(not 0 <= x < q for x in b):
        raise ValueError(f"{b} is not in [0, {q})^{context.n}")
    f = context.field
    axes = []
    for bi in b:
        axes.append([(k, (-1) ** (k - bi) * binomial(k, bi)) for k in range(bi, q)])
    terms = {}
    for combo in itertools.product(*axes):
        e = tuple(k for k, _ in combo)
        terms[e] = f.reduce(prod(c for _, c in combo))
    return TorusElement(context, terms)


def _embed_1d(context, axis: int, poly: dict[int, int]) -> TorusElement:
    """Lift a one-variable expansion in binom(H_axis, .) to the full torus."""
    if not 1 <= axis <= context.n:
        raise ValueError(f"axis {axis} out of range 1..{context.n}")
    key = context._key()
    acc: dict[int, int] = {}
    for e, c in poly.items():
        for e2, k in _reduced_binomial(*key, e):
            acc[e2] = acc.get(e2, 0) + c * k
    terms = {}
    for e, c in acc.items():
        exps = [0] * context.n
        exps[axis - 1] = e
        terms[tuple(exps)] = c
    return TorusElement(context, terms)


def shifted_binomial(context: TorusAlgebraContext, i: int, c: int, j: int) -> TorusElement:
    """binom(H_i + c, j) = sum_t binom(H_i, t) binom(c, j - t)."""
    return _embed_1d(context, i, dict(shift_expansion(c, j)))


def binomial_of_difference(context: TorusAlgebraContext, i: int, j: int, c: int, a: int) -> TorusElement:
    """binom(H_i - H_j + c, a) in the monomial basis (i != j).

    binom(x - y + c, a) = sum_u binom(x, u) binom(c - y, a - u) and
    binom(c - y, v) = (-1)^v binom(y - c + v - 1, v)
                    = (-1)^v sum_w binom(y, w) binom(v - 1 - c, v - w).
    """
    if i == j:
        raise ValueError("binomial_of_difference needs distinct axes")
    key = context._key()
    acc: dict[tuple[int, int], int] = {}
    for u in range(a + 1):
        v = a - u
        sign = -1 if v % 2 else 1
        for w, k in shift_expansion(v - 1 - c, v):
            acc[(u, w)] = acc.get((u, w), 0) + sign * k
    terms: dict[Exponents, int] = {}
    for (u, w), k in acc.items():
        if k == 0:
            continue
        for u2, ku in _reduced_binomial(*key, u):
            for w2, kw in _reduced_binomial(*key, w):
                exps = [0] * context.n
                exps[i - 1] = u2
                exps[j - 1] = w2
                e = tuple(exps)
                terms[e] = terms.get(e, 0) + k * ku * kw
    return TorusElement(context, terms)


def sigma_shift(x: TorusElement, s: int) -> TorusElement:
    """binom(H_i, b) -> binom(H_i + s, b), applied monomial by monomial."""
    ctx = x.context
    _require_char_p(ctx)
    if s < 0:
        raise ValueError("s must be >= 0")
    out: dict[Exponents, int] = {}
    for b, c in x.terms.items():
        for combo in itertools.product(*(shift_expansion(s, e) for e in b)):
            e = tuple(t for t, _ in combo)
            out[e] = out.get(e, 0) + c * prod(k for _, k in combo)
    return TorusElement(ctx, out)


# ---------------------------------------------------------------------------
# Linear-form generators and ideals


def format_linear_form(coeffs, c: int = 0, var: str = "H", suffix: str = "") -> str:
    """``(1, 1), -3`` -> ``H1+H2-3``."""
    parts = []
    for i, a in enumerate(coeffs, start=1):
        if a == 0:
            continue
        name = f"{var}{i}{suffix}"
        if a == 1:
            tok = name
        elif a == -1:
            tok = f"-{name}"
        else:
            tok = f"{a}{name}"
        if parts and not tok.startswith("-"):
            tok = "+" + tok
        parts.append(tok)
    if c or not parts:
        parts.append(f"{c:+d}" if parts else str(c))
    return "".join(parts)


def _is_power_of(j: int, p: int) -> bool:
    while j > 1 and j % p == 0:
        j //= p
    return j == 1


@dataclass(frozen=True)
class IdealGenerator:
    """``binom(L + c, j)`` (binomial kind) or ``prod_{k=lo}^{hi} (L + k)`` (product kind),
    where ``L = sum_i coeffs[i] H_i``."""

    family: str
    coeffs: tuple[int, ...]
    c: int = 0
    j: int | None = None
    lo: int | None = None
    hi: int | None = None

    @property
    def kind(self) -> str:
        return "binomial" if self.j is not None else "product"

    def value_at_form(self, u: int, field: Field) -> int:
        """Raw value when the linear form L takes the value ``u``."""
        if self.j is not None:
            return field_binomial(u + self.c, self.j, field)
        return field.reduce(prod(field.reduce(u + k) for k in range(self.lo, self.hi + 1)))

    def zero_mask(self, context: TorusAlgebraContext, columns: np.ndarray | None = None) -> np.ndarray:
        """Boolean mask of grid points where the generator vanishes.

        ``columns`` restricts the scan to those grid-point indices.
        """
        coords = context.coordinates if columns is None else context.coordinates[:, columns]
        forms = np.asarray(self.coeffs, dtype=np.int64) @ coords
        if forms.size == 0:
            return np.zeros(0, dtype=bool)
        base = int(forms.min())
        uniq = np.arange(base, int(forms.max()) + 1, dtype=np.int64)
        f = context.field
        p = f.characteristic
        if self.j is not None and p:
            # binom(u, j) for u < 0 is +-binom(-u+j-1, j); only zero-ness matters here
            top = uniq + self.c
            top = np.where(top >= 0, top, self.j - 1 - top)
            if _is_power_of(self.j, p):
                # Lucas with a single nonzero digit of j: binom(a, p^k) = digit_k(a) mod p
                table = (top // self.j) % p == 0
            else:
                table = lucas_mod_p_array(top, self.j, p) == 0
        elif self.j is not None:
            top = uniq + self.c
            table = (top >= 0) & (top < self.j)
        else:
            table = np.array([self.value_at_form(int(u), f) == 0 for u in uniq], dtype=bool)
        return table[forms - base]

    def grid_function(self, context: TorusAlgebraContext) -> GridFunction:
        f = context.field
        cache: dict[int, int] = {}
        vals = []
        for pt in context.grid_points():
            u = sum(a * x for a, x in zip(self.coeffs, pt))
            if u not in cache:
                cache[u] = self.value_at_form(u, f)
            vals.append(cache[u])
        return GridFunction(context, tuple(vals))

    def render(self, var: str = "H", suffix: str = "") -> str:
        if self.j is not None:
            return f"binom({format_linear_form(self.coeffs, self.c, var, suffix)}, {self.j})"
        form = format_linear_form(self.coeffs, 0, var, suffix)
        return f"prod_{{k={self.lo}}}^{{{self.hi}}} ({form}+k)"

    def to_dict(self) -> dict:
        out = {"family": self.family, "kind": self.kind, "coeffs": list(self.coeffs)}
        if self.j is not None:
            out.update(c=self.c, j=self.j)
        else:
            out.update(lo=self.lo, hi=self.hi)
        return out


def linear_form_binomial(context: TorusAlgebraContext, coeffs, c: int, j: int) -> GridFunction:
    """point -> binom(<coeffs, point> + c, j) on the grid."""
    return IdealGenerator("ad hoc", tuple(coeffs), c, j).grid_function(context)


def linear_form_product(context: TorusAlgebraContext, coeffs, lo: int, hi: int) -> GridFunction:
    return IdealGenerator("ad hoc", tuple(coeffs), lo=lo, hi=hi).grid_function(context)


def vanishing_locus(context: TorusAlgebraContext, generators) -> tuple[Point, ...]:
    """Common zeros of the generators, in lexicographic order."""
    alive = np.arange(context.grid_size)
    for g in generators:
        alive = alive[g.zero_mask(context, alive)]
        if alive.size == 0:
            break
    pts = context.coordinates[:, alive].T
    return tuple(tuple(int(v) for v in row) for row in pts)


def proper_subsets(n: int, max_size: int | None = None):
    """Nonempty proper subsets of {1..n} as 0/1 vectors, in increasing bitmask order."""
    for mask in range(1, (1 << n) - 1):
        vec = tuple((mask >> i) & 1 for i in range(n))
        if max_size is None or sum(vec) <= max_size:
            yield vec


def _unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


IDEAL_KINDS = ("char0_rs", "charp_d", "charp_rs")


@dataclass(frozen=True)
class IdealDescriptor:
    kind: str
    params: AlgebraParams
    context: TorusAlgebraContext
    generators: tuple[IdealGenerator, ...]
    vanishing_locus: tuple[Point, ...]
    truncation_generators: tuple[IdealGenerator, ...] = ()
    truncation_verified: bool | None = None

    def grid_functions(self) -> list[GridFunction]:
        return [g.grid_function(self.context) for g in self.generators]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params.as_dict(),
            "context": self.context.describe(),
            "generators": [g.to_dict() for g in self.generators],
            "locus": [list(pt) for pt in self.vanishing_locus],
            "truncation_verified": self.truncation_verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def ideal_generators(kind: str, params: AlgebraParams, weak_subsets: bool = False, extra_j: int = 0):
    """Generator descriptors; ``extra_j`` extends the truncated j-families by that many steps."""
    n, r, s, p, m = params.n, params.r, params.s, params.p, params.m
    gens: list[IdealGenerator] = []
    if kind == "char0_rs":
        if p:
            raise ParameterError("char0_rs needs characteristic 0")
        params.require_rational()
        for i in range(n):
            gens.append(IdealGenerator("I1", _unit(n, i), lo=-r, hi=s))
        gens.append(IdealGenerator("sum", (1,) * n, -r + s, 1))
        limit = n // 2 if weak_subsets else None
        for vec in proper_subsets(n, limit):
            gens.append(IdealGenerator("subset", vec, lo=-r, hi=s))
        return gens
    if not p:
        raise ParameterError(f"{kind} needs characteristic p")
    top = m + params.t + extra_j
    if kind == "charp_d":
        d = params.d
        for i in range(n):
            for j in range(m, top + 1):
                gens.append(IdealGenerator("J", _unit(n, i), 0, p**j))
        for j in range(0, top + 1):
            gens.append(IdealGenerator("sum", (1,) * n, -d, p**j))
        return gens
    if kind == "charp_rs":
        params.require_rational()
        for i in range(n):
            for j in range(m, top + 1):
                gens.append(IdealGenerator("sigmaJ", _unit(n, i), s, p**j))
        for j in range(0, top + 1):
            gens.append(IdealGenerator("sum", (1,) * n, -r + s, p**j))
        for vec in proper_subsets(n):
            for j in range(m, top + 1):
                gens.append(IdealGenerator("subset", vec, s, p**j))
        return gens
    raise ParameterError(f"unknown ideal kind {kind!r}; expected one of {IDEAL_KINDS}")


def ideal_context(kind: str, params: AlgebraParams) -> TorusAlgebraContext:
    if kind == "char0_rs":
        return TorusAlgebraContext.char_zero(params.n, params.r, params.s)
    if kind == "charp_d":
        return TorusAlgebraContext.char_p(params.n, params.p, params.m)
    if kind == "charp_rs":
        return TorusAlgebraContext.char_p(params.n, params.p, params.m, shift=params.s)
    raise ParameterError(f"unknown ideal kind {kind!r}; expected one of {IDEAL_KINDS}")


def build_ideal(kind: str, params: AlgebraParams, weak_subsets: bool = False) -> IdealDescriptor:
    """Generators of I0 on the matching grid, with the exact vanishing locus.

    Infinite j-families are cut at j <= m + t; in characteristic p the next
    exponent j = m + t + 1 is also scanned and must not shrink the locus.
    """
    if kind not in IDEAL_KINDS:
        raise ParameterError(f"unknown ideal kind {kind!r}; expected one of {IDEAL_KINDS}")
    ctx = ideal_context(kind, params)
    gens = tuple(ideal_generators(kind, params, weak_subsets))
    locus = vanishing_locus(ctx, gens)
    extra: tuple[IdealGenerator, ...] = ()
    verified = None
    if kind != "char0_rs":
        longer = ideal_generators(kind, params, extra_j=1)
        have = set(gens)
        extra = tuple(g for g in longer if g not in have)
        verified = vanishing_locus(ctx, gens + extra) == locus
    return IdealDescriptor(kind, params, ctx, gens, locus, extra, verified)


def quotient_dimension(ideal: IdealDescriptor) -> int:
    return len(ideal.vanishing_locus)
