"""Generator symbols, words, linear combinations and relation instances.

A word is a tuple of symbols read left to right as an operator product.  An
expression is a tuple of ``(integer coefficient, word)`` terms; the empty
word is the unit.  Relation instances pair two expressions and carry the
family tag and concrete indices they were instantiated from.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .torus import format_linear_form

Root = tuple[int, int]


@dataclass(frozen=True, order=True)
class DividedPower:
    """x_alpha^(k) for the root alpha = eps_i - eps_j, written as the pair (i, j)."""

    root: Root
    k: int

    def __post_init__(self):
        i, j = self.root
        if i == j:
            raise ValueError(f"{self.root} is not a root (use BinomialH for the torus)")
        if self.k < 0:
            raise ValueError("divided power exponent must be >= 0")


@dataclass(frozen=True, order=True)
class BinomialH:
    """binom(H_axis + shift, a)."""

    axis: int
    a: int
    shift: int = 0

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("binomial exponent must be >= 0")


@dataclass(frozen=True, order=True)
class BinomialLinearForm:
    """binom(sum_i coeffs[i] H_i + c, j)."""

    coeffs: tuple[int, ...]
    c: int
    j: int


@dataclass(frozen=True, order=True)
class LinearFormProduct:
    """prod_{k=lo}^{hi} (sum_i coeffs[i] H_i + k)."""

    coeffs: tuple[int, ...]
    lo: int
    hi: int


Symbol = Union[DividedPower, BinomialH, BinomialLinearForm, LinearFormProduct]
Word = tuple[Symbol, ...]
Expr = tuple[tuple[int, Word], ...]

TORUS_SYMBOLS = (BinomialH, BinomialLinearForm, LinearFormProduct)


def is_torus(sym: Symbol) -> bool:
    return isinstance(sym, TORUS_SYMBOLS)


def expr(*terms) -> Expr:
    """Build an expression from ``(coeff, word)`` pairs, dropping zero coefficients."""
    return tuple((c, tuple(w)) for c, w in terms if c != 0)


def word_expr(*symbols: Symbol) -> Expr:
    return ((1, tuple(symbols)),)


ZERO: Expr = ()
ONE: Expr = ((1, ()),)


@dataclass(frozen=True)
class RelationInstance:
    family: str
    indices: tuple
    exponents: tuple
    lhs: Expr
    rhs: Expr

    def symbols(self):
        for _, w in self.lhs + self.rhs:
            yield from w

    def to_dict(self, style: "RenderStyle | None" = None) -> dict:
        return {
            "family": self.family,
            "indices": _jsonable(self.indices),
            "exponents": list(self.exponents),
            "text": render_relation(self, style or RenderStyle()),
        }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


@dataclass(frozen=True)
class RenderStyle:
    """``suffix="'"`` renders primed torus variables; ``chevalley`` uses e_i, f_i, H_i."""

    var: str = "H"
    suffix: str = ""
    chevalley: bool = False


def render_symbol(sym: Symbol, style: RenderStyle = RenderStyle()) -> str:
    v, sfx = style.var, style.suffix
    if isinstance(sym, DividedPower):
        i, j = sym.root
        if style.chevalley and sym.k == 1 and abs(i - j) == 1:
            return f"e{i}" if j == i + 1 else f"f{j}"
        return f"x_({i},{j})^({sym.k})"
    if isinstance(sym, BinomialH):
        if style.chevalley and sym.a == 1 and sym.shift == 0:
            return f"{v}{sym.axis}{sfx}"
        coeffs = tuple(1 if k == sym.axis else 0 for k in range(1, sym.axis + 1))
        return f"binom({format_linear_form(coeffs, sym.shift, v, sfx)}, {sym.a})"
    if isinstance(sym, BinomialLinearForm):
        return f"binom({format_linear_form(sym.coeffs, sym.c, v, sfx)}, {sym.j})"
    if isinstance(sym, LinearFormProduct):
        form = format_linear_form(sym.coeffs, 0, v, sfx)
        return f"prod_{{k={sym.lo}}}^{{{sym.hi}}} ({form}+k)"
    raise TypeError(f"not a generator symbol: {sym!r}")


def render_word(word: Word, style: RenderStyle = RenderStyle()) -> str:
    if not word:
        return "1"
    return " * ".join(render_symbol(s, style) for s in word)


def render_expr(e: Expr, style: RenderStyle = RenderStyle()) -> str:
    if not e:
        return "0"
    out = []
    for idx, (c, w) in enumerate(e):
        body = render_word(w, style)
        mag = abs(c)
        if mag != 1:
            body = f"{mag}" if not w else f"{mag}*{body}"
        sign = "-" if c < 0 else "+"
        if idx == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def render_relation(rel: RelationInstance, style: RenderStyle = RenderStyle()) -> str:
    return f"{render_expr(rel.lhs, style)} = {render_expr(rel.rhs, style)}"


def symbol_to_dict(sym: Symbol) -> dict:
    if isinstance(sym, DividedPower):
        return {"type": "divided_power", "root": list(sym.root), "k": sym.k}
    if isinstance(sym, BinomialH):
        out = {"type": "binomial_H", "axis": sym.axis, "a": sym.a}
        if sym.shift:
            out["shift"] = sym.shift
        return out
    if isinstance(sym, BinomialLinearForm):
        return {"type": "binomial_linear_form", "coeffs": list(sym.coeffs), "c": sym.c, "j": sym.j}
    if isinstance(sym, LinearFormProduct):
        return {"type": "linear_form_product", "coeffs": list(sym.coeffs), "lo": sym.lo, "hi": sym.hi}
    raise TypeError(f"not a generator symbol: {sym!r}")


def symbol_from_dict(d: dict) -> Symbol:
    kind = d["type"]
    if kind == "divided_power":
        return DividedPower(tuple(d["root"]), d["k"])
    if kind == "binomial_H":
        return BinomialH(d["axis"], d["a"], d.get("shift", 0))
    if kind == "binomial_linear_form":
        return BinomialLinearForm(tuple(d["coeffs"]), d["c"], d["j"])
    if kind == "linear_form_product":
        return LinearFormProduct(tuple(d["coeffs"]), d["lo"], d["hi"])
    raise ValueError(f"unknown symbol type {kind!r}")
