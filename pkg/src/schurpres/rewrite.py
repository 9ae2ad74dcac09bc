"""Straightening words in Dist(G_m) into PBW normal form.

Normal form: positive divided powers in a fixed root order, then one torus
monomial prod binom(H_i, b_i), then negative divided powers in a fixed order,
all exponents in [0, q).  Words are rewritten at the leftmost adjacent pair
that is out of order, using the commutation and merge rules of Dist(G_m).

Termination: every step strictly decreases the triple
(total root exponent, number of letters, number of out-of-order pairs) in
lexicographic order.  This is asserted at runtime.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from math import comb

from .errors import ParameterError, RewriteStepCapExceeded
from .exact_arith import Field, require_prime, shift_expansion
from .generators import BinomialH, DividedPower, Symbol
from .tensor_rep import SparseMatrix, _SymbolEvaluator
from .torus import TorusAlgebraContext, TorusElement, binomial_of_difference, multiply

Root = tuple[int, int]
Letter = tuple  # (rank, k) for roots, (torus_rank, exponents) for the torus
STEP_CAP = 10**6


def root_order(n: int) -> tuple[list[Root], list[Root]]:
    """Positive roots (i, j), i < j, by first index then second ascending; negative
    roots (j, k), j > k, in blocks j = 2..n with k descending inside a block."""
    if n < 2:
        raise ParameterError("root_order needs n >= 2")
    positive = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    negative = [(j, k) for j in range(2, n + 1) for k in range(j - 1, 0, -1)]
    return positive, negative


@dataclass(frozen=True, order=True)
class PBWMonomial:
    positive: tuple[int, ...]
    torus: tuple[int, ...]
    negative: tuple[int, ...]

    def is_unit(self) -> bool:
        return not any(self.positive) and not any(self.torus) and not any(self.negative)


class RewriteContext:
    def __init__(self, n: int, p: int, m: int):
        require_prime(p)
        if n < 1 or m < 1:
            raise ParameterError("need n >= 1 and m >= 1")
        self.n, self.p, self.m = n, p, m
        self.q = p**m
        self.field = Field(p)
        if n >= 2:
            self.positive, self.negative = root_order(n)
        else:
            self.positive, self.negative = [], []
        self.roots = self.positive + self.negative
        self.torus_rank = len(self.positive)
        self.rank_of = {}
        for k, a in enumerate(self.positive):
            self.rank_of[a] = k
        for k, a in enumerate(self.negative):
            self.rank_of[a] = self.torus_rank + 1 + k
        self.root_of = {v: k for k, v in self.rank_of.items()}
        self.torus = TorusAlgebraContext.char_p(n, p, m)
        self._torus_products: dict = {}
        self._torus_shifts: dict = {}

    def __repr__(self):
        return f"RewriteContext(n={self.n}, p={self.p}, m={self.m})"

    # -- letters -------------------------------------------------------
    def letter(self, sym: Symbol) -> Letter:
        if isinstance(sym, DividedPower):
            if sym.root not in self.rank_of:
                raise ValueError(f"{sym.root} is not a root for n={self.n}")
            if not 0 <= sym.k < self.q:
                raise ValueError(f"exponent {sym.k} outside [0, {self.q})")
            return (self.rank_of[sym.root], sym.k)
        if isinstance(sym, BinomialH):
            if sym.shift:
                raise ValueError("words use unshifted binomials binom(H_i, a)")
            if not 1 <= sym.axis <= self.n or not 0 <= sym.a < self.q:
                raise ValueError(f"{sym} outside the generator range")
            exps = [0] * self.n
            exps[sym.axis - 1] = sym.a
            return (self.torus_rank, tuple(exps))
        raise TypeError(f"{sym!r} is not a Dist(G_m) generator")

    def is_trivial(self, letter: Letter) -> bool:
        rank, payload = letter
        if rank == self.torus_rank:
            return not any(payload)
        return payload == 0

    def letter_symbols(self, letter: Letter) -> list[Symbol]:
        rank, payload = letter
        if rank == self.torus_rank:
            return [BinomialH(i + 1, b) for i, b in enumerate(payload) if b]
        return [DividedPower(self.root_of[rank], payload)]

    # -- torus arithmetic ---------------------------------------------
    def torus_product(self, a, b) -> tuple[tuple[tuple[int, ...], int], ...]:
        key = (a, b)
        if key not in self._torus_products:
            x = TorusElement.monomial(self.torus, a)
            y = TorusElement.monomial(self.torus, b)
            self._torus_products[key] = tuple(sorted(multiply(x, y).terms.items()))
        return self._torus_products[key]

    def torus_shift(self, exps, shifts) -> tuple[tuple[tuple[int, ...], int], ...]:
        """prod_l binom(H_l + shifts[l], exps[l]) in the monomial basis."""
        key = (exps, shifts)
        if key not in self._torus_shifts:
            acc = {(): 1}
            for b, c in zip(exps, shifts):
                nxt = {}
                for e, v in acc.items():
                    for t, k in shift_expansion(c, b):
                        nxt[e + (t,)] = nxt.get(e + (t,), 0) + v * k
                acc = nxt
            p = self.p
            self._torus_shifts[key] = tuple(sorted((e, v % p) for e, v in acc.items() if v % p))
        return self._torus_shifts[key]

    def root_vector(self, root: Root) -> tuple[int, ...]:
        i, j = root
        return tuple(1 if l == i else -1 if l == j else 0 for l in range(1, self.n + 1))


def _sum_root(a: Root, b: Root):
    """alpha + beta as a root, or None (also None when it is zero)."""
    (i, j), (k, l) = a, b
    if j == k and i != l:
        return (i, l)
    if l == i and j != k:
        return (k, j)
    return None


def _structure_sign(a: Root, b: Root) -> int:
    (i, j), (k, l) = a, b
    return 1 if j == k else -1


class NormalFormElement:
    """Linear combination of PBW monomials with coefficients in F_p."""

    __slots__ = ("context", "terms")

    def __init__(self, context: RewriteContext, terms=None):
        p = context.p
        self.context = context
        self.terms = {mono: c % p for mono, c in (terms or {}).items() if c % p}

    def __eq__(self, other):
        if not isinstance(other, NormalFormElement):
            return NotImplemented
        return self.terms == other.terms and (self.context.n, self.context.q) == (other.context.n, other.context.q)

    def __repr__(self):
        return f"NormalFormElement({self.to_text()})"

    def words(self):
        """Each term as (coefficient, word of generator symbols)."""
        ctx = self.context
        for mono in sorted(self.terms):
            yield self.terms[mono], monomial_word(ctx, mono)

    def to_text(self) -> str:
        from .generators import render_word

        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{render_word(tuple(w))}" for c, w in self.words())

    def to_dict(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": str(self.terms[mono]),
                    "positive": list(mono.positive),
                    "torus": list(mono.torus),
                    "negative": list(mono.negative),
                }
                for mono in sorted(self.terms)
            ]
        }


def monomial_word(ctx: RewriteContext, mono: PBWMonomial) -> list[Symbol]:
    word: list[Symbol] = []
    for root, k in zip(ctx.positive, mono.positive):
        if k:
            word.append(DividedPower(root, k))
    word += [BinomialH(i + 1, b) for i, b in enumerate(mono.torus) if b]
    for root, k in zip(ctx.negative, mono.negative):
        if k:
            word.append(DividedPower(root, k))
    return word


def pbw_monomial(ctx: RewriteContext, positive=None, torus=None, negative=None) -> PBWMonomial:
    return PBWMonomial(
        tuple(positive or (0,) * len(ctx.positive)),
        tuple(torus or (0,) * ctx.n),
        tuple(negative or (0,) * len(ctx.negative)),
    )


def measure(ctx: RewriteContext, word) -> tuple[int, int, int]:
    tr = ctx.torus_rank
    degree = sum(payload for rank, payload in word if rank != tr)
    ranks = [rank for rank, _ in word]
    inversions = sum(
        1 for a in range(len(ranks)) for b in range(a + 1, len(ranks)) if ranks[a] >= ranks[b]
    )
    return degree, len(word), inversions


def _neg(m):
    return tuple(-x for x in m)


def _find_violation(word) -> int:
    for k in range(len(word) - 1):
        if word[k][0] >= word[k + 1][0]:
            return k
    return -1


def _rewrite_pair(ctx: RewriteContext, u: Letter, v: Letter):
    """Replacement terms ``[(coeff, letters), ...]`` for an out-of-order pair u v."""
    tr, p, q = ctx.torus_rank, ctx.p, ctx.q
    ru, pu = u
    rv, pv = v
    if ru == rv == tr:
        return [(c, ((tr, e),)) for e, c in ctx.torus_product(pu, pv)]
    if ru == rv:
        # same root: x^(k) x^(l) = binom(k+l, k) x^(k+l); a carry kills the term
        c = comb(pu + pv, pu) % p
        if c == 0:
            return []
        if pu + pv >= q:
            raise AssertionError("binom(k+l, k) must vanish mod p when k + l >= q")
        return [(c, ((ru, pu + pv),))]
    if ru == tr:
        # binom(H, b) x_alpha^(k) = x_alpha^(k) prod_l binom(H_l + k alpha_l, b_l)
        vec = ctx.root_vector(ctx.root_of[rv])
        shifts = tuple(pv * a for a in vec)
        return [(c, ((rv, pv), (tr, e))) for e, c in ctx.torus_shift(pu, shifts)]
    if rv == tr:
        # x_beta^(k) binom(H, b) = prod_l binom(H_l - k beta_l, b_l) x_beta^(k)
        vec = ctx.root_vector(ctx.root_of[ru])
        shifts = tuple(-pu * a for a in vec)
        return [(c, ((tr, e), (ru, pu))) for e, c in ctx.torus_shift(pv, shifts)]
    alpha, beta = ctx.root_of[ru], ctx.root_of[rv]
    k, l = pu, pv
    if alpha == (beta[1], beta[0]):
        # x_alpha^(k) x_-alpha^(l) = sum_a x_-alpha^(l-a) binom(H_alpha - k - l + 2a, a) x_alpha^(k-a)
        out = []
        for a in range(min(k, l) + 1):
            factor = binomial_of_difference(ctx.torus, alpha[0], alpha[1], -k - l + 2 * a, a)
            for e, c in factor.terms.items():
                out.append((c, ((rv, l - a), (tr, e), (ru, k - a))))
        return out
    gamma = _sum_root(alpha, beta)
    if gamma is None:
        return [(1, (v, u))]
    sign = _structure_sign(alpha, beta)
    rg = ctx.rank_of[gamma]
    return [
        (sign**a % p, ((rv, l - a), (rg, a), (ru, k - a)))
        for a in range(min(k, l) + 1)
    ]


def _normalize(ctx: RewriteContext, letters) -> tuple:
    return tuple(x for x in letters if not ctx.is_trivial(x))


def _to_monomial(ctx: RewriteContext, word) -> PBWMonomial:
    pos = [0] * len(ctx.positive)
    neg = [0] * len(ctx.negative)
    tor = (0,) * ctx.n
    tr = ctx.torus_rank
    for rank, payload in word:
        if rank < tr:
            pos[rank] = payload
        elif rank == tr:
            tor = payload
        else:
            neg[rank - tr - 1] = payload
    return PBWMonomial(tuple(pos), tor, tuple(neg))


def pbw_rewrite(word, context: RewriteContext, step_cap: int = STEP_CAP, trace: list | None = None) -> NormalFormElement:
    """Normal form of a word of generator symbols.

    ``trace``, if given, receives ``(measure_before, measure_after)`` for every
    rewritten term so callers can audit termination independently.
    """
    start = _normalize(context, [context.letter(s) for s in word])
    # Work on the pending word of largest measure first.  Every rewrite lowers
    # the measure, so by the time a word is popped all of its contributions
    # have been merged and it is expanded exactly once.
    pending: dict[tuple, int] = {start: 1}
    heap = [(_neg(measure(context, start)), 0, start)]
    counter = 1
    done: dict[PBWMonomial, int] = {}
    p = context.p
    steps = 0
    while heap:
        _, _, w = heapq.heappop(heap)
        coeff = pending.pop(w)
        if coeff == 0:
            continue
        pos = _find_violation(w)
        if pos < 0:
            mono = _to_monomial(context, w)
            done[mono] = (done.get(mono, 0) + coeff) % p
            continue
        steps += 1
        if steps > step_cap:
            raise RewriteStepCapExceeded(list(word), step_cap)
        before = measure(context, w)
        for c, repl in _rewrite_pair(context, w[pos], w[pos + 1]):
            new = _normalize(context, w[:pos] + tuple(repl) + w[pos + 2:])
            after = measure(context, new)
            if not after < before:
                raise AssertionError(f"termination measure did not drop: {before} -> {after}")
            if trace is not None:
                trace.append((before, after))
            if new not in pending:
                pending[new] = 0
                heapq.heappush(heap, (_neg(after), counter, new))
                counter += 1
            pending[new] = (pending[new] + coeff * c) % p
    return NormalFormElement(context, done)


def normal_form_matrix(nf: NormalFormElement, module: _SymbolEvaluator) -> SparseMatrix:
    acc = SparseMatrix.zero(module.dim, module.field)
    for c, w in nf.words():
        acc = acc + module.word_matrix(w).scale(c)
    return acc


def certify_rewrite(word, nf: NormalFormElement, module: _SymbolEvaluator) -> bool:
    """Compare the images of the word and of its normal form on ``module``."""
    return module.word_matrix(list(word)) == normal_form_matrix(nf, module)


def multiply_normal_forms(x: NormalFormElement, y: NormalFormElement) -> NormalFormElement:
    ctx = x.context
    acc: dict[PBWMonomial, int] = {}
    for cx, wx in x.words():
        for cy, wy in y.words():
            for mono, c in pbw_rewrite(wx + wy, ctx).terms.items():
                acc[mono] = acc.get(mono, 0) + cx * cy * c
    return NormalFormElement(ctx, acc)


def random_word(context: RewriteContext, length: int, rng: random.Random) -> list[Symbol]:
    """Random letters: divided powers and torus binomials with exponents in [1, q)."""
    out: list[Symbol] = []
    for _ in range(length):
        if context.roots and rng.random() < 0.7:
            out.append(DividedPower(rng.choice(context.roots), rng.randrange(1, context.q)))
        else:
            out.append(BinomialH(rng.randrange(1, context.n + 1), rng.randrange(1, context.q)))
    return out
