"""Exact matrices for the action of Dist(G) on E^(x)r (x) (E*)^(x)s.

Basis vectors are pairs (covariant indices, contravariant indices) in
lexicographic order, covariant block first.  The matrix unit e_ij acts on E by
v_l -> delta_jl v_i and on the dual by v*_l -> -delta_il v*_j.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import prod

from .errors import ParameterError, ResourceCapExceeded
from .exact_arith import Field, field_binomial
from .generators import (
    BinomialH,
    BinomialLinearForm,
    DividedPower,
    Expr,
    LinearFormProduct,
    RelationInstance,
    Symbol,
)

Weight = tuple[int, ...]


@dataclass(frozen=True, order=True)
class TensorBasisIndex:
    covariant: tuple[int, ...]
    contravariant: tuple[int, ...] = ()


def basis(n: int, r: int, s: int = 0) -> list[TensorBasisIndex]:
    letters = range(1, n + 1)
    return [
        TensorBasisIndex(cov, con)
        for cov in itertools.product(letters, repeat=r)
        for con in itertools.product(letters, repeat=s)
    ]


def weight_of(idx: TensorBasisIndex, n: int) -> Weight:
    w = [0] * n
    for i in idx.covariant:
        w[i - 1] += 1
    for i in idx.contravariant:
        w[i - 1] -= 1
    return tuple(w)


class SparseMatrix:
    """Square matrix over a :class:`Field`, stored as ``{row: {col: raw value}}``."""

    __slots__ = ("dim", "field", "rows")

    def __init__(self, dim: int, field: Field, rows=None):
        self.dim = dim
        self.field = field
        clean = {}
        for r, row in (rows or {}).items():
            kept = {}
            for c, v in row.items():
                v = field.reduce(v)
                if v != 0:
                    kept[c] = v
            if kept:
                clean[r] = kept
        self.rows = clean

    @classmethod
    def identity(cls, dim: int, field: Field) -> "SparseMatrix":
        return cls(dim, field, {i: {i: 1} for i in range(dim)})

    @classmethod
    def zero(cls, dim: int, field: Field) -> "SparseMatrix":
        return cls(dim, field)

    @classmethod
    def diagonal(cls, values, field: Field) -> "SparseMatrix":
        values = list(values)
        return cls(len(values), field, {i: {i: v} for i, v in enumerate(values)})

    def _check(self, other: "SparseMatrix"):
        if other.dim != self.dim or other.field != self.field:
            raise ValueError("matrix shape or field mismatch")

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        out = {}
        for r, row in self.rows.items():
            acc: dict[int, object] = {}
            for k, v in row.items():
                orow = other.rows.get(k)
                if not orow:
                    continue
                for c, w in orow.items():
                    acc[c] = acc.get(c, 0) + v * w
            out[r] = acc
        return SparseMatrix(self.dim, self.field, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            tgt = out.setdefault(r, {})
            for c, v in row.items():
                tgt[c] = tgt.get(c, 0) + v
        return SparseMatrix(self.dim, self.field, out)

    def scale(self, c) -> "SparseMatrix":
        c = self.field.reduce(c)
        return SparseMatrix(self.dim, self.field, {r: {k: v * c for k, v in row.items()} for r, row in self.rows.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.dim == other.dim and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.entries()))))

    def is_zero(self) -> bool:
        return not self.rows

    def entries(self):
        for r in sorted(self.rows):
            for c in sorted(self.rows[r]):
                yield r, c, self.rows[r][c]

    def get(self, r: int, c: int):
        return self.field.element(self.rows.get(r, {}).get(c, 0))

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector ``{index: value}``."""
        out: dict[int, object] = {}
        for r, row in self.rows.items():
            acc = 0
            for c, v in row.items():
                if c in vec:
                    acc += v * vec[c]
            acc = self.field.reduce(acc)
            if acc != 0:
                out[r] = acc
        return out

    def to_dict(self) -> dict:
        return {"dim": self.dim, "entries": [[r, c, str(v)] for r, c, v in self.entries()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __repr__(self):
        return f"SparseMatrix(dim={self.dim}, nnz={sum(len(r) for r in self.rows.values())})"


class _SymbolEvaluator:
    """Shared expression-to-matrix plumbing; subclasses supply the symbol images."""

    dim: int
    field: Field

    def symbol_matrix(self, sym: Symbol) -> SparseMatrix:
        raise NotImplementedError

    def word_matrix(self, word) -> SparseMatrix:
        m = SparseMatrix.identity(self.dim, self.field)
        for sym in word:
            m = m @ self.symbol_matrix(sym)
        return m

    def expr_matrix(self, e: Expr) -> SparseMatrix:
        acc = SparseMatrix.zero(self.dim, self.field)
        for c, w in e:
            acc = acc + self.word_matrix(w).scale(c)
        return acc

    def torus_value(self, sym: Symbol, weight: Weight):
        """Raw scalar by which a torus symbol acts on a weight vector."""
        w = tuple(x + self.torus_shift for x in weight)
        f = self.field
        if isinstance(sym, BinomialH):
            return field_binomial(w[sym.axis - 1] + sym.shift, sym.a, f)
        if isinstance(sym, BinomialLinearForm):
            return field_binomial(sum(a * x for a, x in zip(sym.coeffs, w)) + sym.c, sym.j, f)
        if isinstance(sym, LinearFormProduct):
            u = sum(a * x for a, x in zip(sym.coeffs, w))
            return f.reduce(prod(u + k for k in range(sym.lo, sym.hi + 1)))
        raise TypeError(f"{sym!r} is not a torus symbol")


class TensorRepresentation(_SymbolEvaluator):
    """rho_{r,s} on mixed tensor space (s = 0 gives rho_d on E^(x)d).

    ``torus_shift`` makes every torus symbol read the shifted variables
    H'_i = H_i + torus_shift, as used by the primed presentation.
    """

    def __init__(self, n: int, r: int, s: int = 0, field: Field = Field(0), torus_shift: int = 0):
        if n < 1 or r < 0 or s < 0:
            raise ParameterError(f"invalid tensor space parameters n={n}, r={r}, s={s}")
        self.n, self.r, self.s = n, r, s
        self.field = field
        self.torus_shift = torus_shift
        self.basis = basis(n, r, s)
        self.dim = len(self.basis)
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.weights = [weight_of(b, n) for b in self.basis]
        self._cache: dict[Symbol, SparseMatrix] = {}

    def _check_root(self, root):
        i, j = root
        if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
            raise ValueError(f"{root} is not a root for n={self.n}")

    def matrix_divided_power(self, root, k: int) -> SparseMatrix:
        """Sum over k-subsets of tensor positions of the single-factor actions."""
        self._check_root(root)
        key = DividedPower(tuple(root), k)
        if key in self._cache:
            return self._cache[key]
        i, j = root
        r = self.r
        rows: dict[int, dict[int, int]] = {}
        for col, b in enumerate(self.basis):
            active = [p for p, x in enumerate(b.covariant) if x == j]
            active += [r + p for p, x in enumerate(b.contravariant) if x == i]
            for subset in itertools.combinations(active, k):
                cov = list(b.covariant)
                con = list(b.contravariant)
                sign = 1
                for pos in subset:
                    if pos < r:
                        cov[pos] = i
                    else:
                        con[pos - r] = j
                        sign = -sign
                row = self.index[TensorBasisIndex(tuple(cov), tuple(con))]
                rows.setdefault(row, {})
                rows[row][col] = rows[row].get(col, 0) + sign
        m = SparseMatrix(self.dim, self.field, rows)
        self._cache[key] = m
        return m

    def _diagonal(self, sym) -> SparseMatrix:
        if sym not in self._cache:
            self._cache[sym] = SparseMatrix.diagonal(
                (self.torus_value(sym, w) for w in self.weights), self.field
            )
        return self._cache[sym]

    def matrix_binomial_H(self, i: int, a: int, shift: int = 0) -> SparseMatrix:
        if not 1 <= i <= self.n:
            raise ValueError(f"axis {i} out of range 1..{self.n}")
        return self._diagonal(BinomialH(i, a, shift))

    def matrix_linear_form_binomial(self, coeffs, c: int, j: int) -> SparseMatrix:
        return self._diagonal(BinomialLinearForm(tuple(coeffs), c, j))

    def matrix_linear_form_product(self, coeffs, lo: int, hi: int) -> SparseMatrix:
        return self._diagonal(LinearFormProduct(tuple(coeffs), lo, hi))

    def symbol_matrix(self, sym: Symbol) -> SparseMatrix:
        if isinstance(sym, DividedPower):
            return self.matrix_divided_power(sym.root, sym.k)
        if isinstance(sym, BinomialH):
            return self.matrix_binomial_H(sym.axis, sym.a, sym.shift)
        return self._diagonal(sym)

    def distinct_weights(self) -> list[Weight]:
        return sorted(set(self.weights), reverse=True)


class ScalarWeightModule(_SymbolEvaluator):
    """One-dimensional module: every x^(k), k >= 1, acts by 0 and the torus by a weight.

    Used to certify that a relation set admits a module its algebra should not have.
    """

    torus_shift = 0

    def __init__(self, weight: Weight, field: Field):
        # the weight is read in the presentation's own torus variables
        self.weight = tuple(weight)
        self.n = len(self.weight)
        self.field = field
        self.dim = 1

    def symbol_matrix(self, sym: Symbol) -> SparseMatrix:
        if isinstance(sym, DividedPower):
            return SparseMatrix.identity(1, self.field) if sym.k == 0 else SparseMatrix.zero(1, self.field)
        return SparseMatrix.diagonal([self.torus_value(sym, self.weight)], self.field)


def verify_relation_instance(rel: RelationInstance, module: _SymbolEvaluator) -> bool:
    """Both sides as exact matrices on ``module``; True iff equal."""
    return module.expr_matrix(rel.lhs) == module.expr_matrix(rel.rhs)


def s0_dimension(n: int, r: int, s: int = 0) -> int:
    """Number of distinct weights of E^(x)r (x) (E*)^(x)s, read off the tensor basis."""
    return len({weight_of(b, n) for b in basis(n, r, s)})


class _Echelon:
    """Incremental row echelon form over a field; pivots are lowest nonzero indices."""

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict[int, dict[int, object]] = {}

    def reduce(self, vec: dict) -> dict:
        f = self.field
        vec = {k: v for k, v in vec.items() if v != 0}
        while vec:
            lead = min(vec)
            prow = self.pivots.get(lead)
            if prow is None:
                return vec
            factor = vec[lead]
            for k, v in prow.items():
                nv = f.reduce(vec.get(k, 0) - factor * v)
                if nv == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = nv
        return vec

    def add(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        lead = min(vec)
        inv = self.field.inv(vec[lead])
        self.pivots[lead] = {k: self.field.reduce(v * inv) for k, v in vec.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _flatten(m: SparseMatrix) -> dict:
    return {r * m.dim + c: v for r, c, v in m.entries()}


def algebra_closure_dimension(generators, cap: int = 5000) -> int:
    """Dimension of the unital algebra generated by the matrices.

    Breadth-first over products ``g * b`` of generators with already accepted
    spanning elements; each candidate is reduced against the running echelon
    form.  Raises :class:`ResourceCapExceeded` once the span exceeds ``cap``.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator to fix size and field")
    dim, field = generators[0].dim, generators[0].field
    for g in generators:
        if g.dim != dim or g.field != field:
            raise ValueError("generators must share size and field")
    ech = _Echelon(field)
    ident = SparseMatrix.identity(dim, field)
    ech.add(_flatten(ident))
    queue = [ident]
    while queue:
        nxt = []
        for b in queue:
            for g in generators:
                prod_m = g @ b
                if ech.add(_flatten(prod_m)):
                    if ech.rank > cap:
                        raise ResourceCapExceeded(f"closure dimension exceeds cap {cap}")
                    nxt.append(prod_m)
        queue = nxt
    return ech.rank


def cyclic_submodule_dimension(generators, vector: dict, cap: int = 5000) -> int:
    """Dimension of the smallest subspace containing ``vector`` and stable under the generators."""
    generators = list(generators)
    field = generators[0].field
    ech = _Echelon(field)
    ech.add(dict(vector))
    queue = [dict(vector)]
    while queue:
        nxt = []
        for v in queue:
            for g in generators:
                w = g.apply(v)
                if ech.add(w):
                    if ech.rank > cap:
                        raise ResourceCapExceeded(f"submodule dimension exceeds cap {cap}")
                    nxt.append(w)
        queue = nxt
    return ech.rank


@dataclass(frozen=True)
class KernelCheck:
    generator: str
    passed: bool
    failing_weights: tuple[Weight, ...]

    def to_dict(self) -> dict:
        return {
            "generator": self.generator,
            "pass": self.passed,
            "failing_weights": [list(w) for w in self.failing_weights],
        }


@dataclass(frozen=True)
class KernelReport:
    kind: str
    checks: tuple[KernelCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "pass": self.passed, "checks": [c.to_dict() for c in self.checks]}


def kernel_vanishing_report(ideal, generators=None) -> KernelReport:
    """Evaluate every ideal generator on the matching tensor space; each must act as 0.

    ``generators`` overrides the ideal's own list (to test ad hoc candidates).
    """
    p = ideal.params
    s = p.s if ideal.kind != "charp_d" else 0
    r = p.r if ideal.kind != "charp_d" else p.d
    rep = TensorRepresentation(p.n, r, s, p.field)
    checks = []
    for g in ideal.generators if generators is None else generators:
        if g.kind == "binomial":
            m = rep.matrix_linear_form_binomial(g.coeffs, g.c, g.j)
        else:
            m = rep.matrix_linear_form_product(g.coeffs, g.lo, g.hi)
        bad = tuple(sorted({rep.weights[row] for row in m.rows}, reverse=True))
        checks.append(KernelCheck(g.render(), m.is_zero(), bad))
    return KernelReport(ideal.kind, tuple(checks))
