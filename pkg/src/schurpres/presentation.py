"""Finite generator/relation presentations, their verification and export.

Three presentations are materialised as data:

* ``char0_rational`` -- S(n,r,s) over Q by e_i, f_i, H_i;
* ``charp_schur``    -- S(n,d) in characteristic p as a quotient of Dist(G_m);
* ``charp_rational`` -- S(n,r,s) in characteristic p, in the shifted torus
  variables H'_i = H_i + s.

``literal=True`` reproduces the printed index ranges and commutation signs
verbatim; the default uses the corrected forms (see the project notes).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import ParameterError
from .exact_arith import QQ, Field, shift_expansion
from .generators import (
    ONE,
    ZERO,
    BinomialH,
    BinomialLinearForm,
    DividedPower,
    LinearFormProduct,
    RelationInstance,
    RenderStyle,
    expr,
    render_relation,
    symbol_to_dict,
    word_expr,
)
from .params import AlgebraParams
from .tensor_rep import (
    ScalarWeightModule,
    TensorRepresentation,
    algebra_closure_dimension,
    kernel_vanishing_report,
    s0_dimension,
    verify_relation_instance,
)
from .torus import (
    IdealGenerator,
    TorusAlgebraContext,
    build_ideal,
    proper_subsets,
    quotient_dimension,
    vanishing_locus,
)
from .weights import (
    RSParams,
    enumerate_lambda,
    enumerate_lambda_plus_rs,
    enumerate_lambda_rs,
    in_lambda_rs_by_t,
    lambda_rs_condition,
    pi_double_prime_membership,
    pi_prime_membership,
    sign_support,
    sum_weyl_dimension_squares,
)

LABELS = ("char0_rational", "charp_schur", "charp_rational")

Root = tuple[int, int]


@dataclass(frozen=True)
class Presentation:
    label: str
    params: AlgebraParams
    generators: tuple
    relations: tuple[RelationInstance, ...]
    derived_relations: tuple[RelationInstance, ...] = ()
    torus_shift: int = 0
    literal: bool = False
    weak: bool = False
    style: RenderStyle = dc_field(default_factory=RenderStyle)

    def family_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for rel in self.relations:
            out[rel.family] = out.get(rel.family, 0) + 1
        return dict(sorted(out.items()))

    def module(self) -> TensorRepresentation:
        p = self.params
        if self.label == "charp_schur":
            return TensorRepresentation(p.n, p.d, 0, p.field)
        return TensorRepresentation(p.n, p.r, p.s, p.field, torus_shift=self.torus_shift)

    def torus_only(self, families) -> list[RelationInstance]:
        return [rel for rel in self.relations if rel.family in families]


# ---------------------------------------------------------------------------
# Root combinatorics


def roots(n: int) -> list[Root]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def root_sum(a: Root, b: Root):
    (i, j), (k, l) = a, b
    if j == k and i != l:
        return (i, l)
    if l == i and j != k:
        return (k, j)
    return None


def structure_constant(a: Root, b: Root) -> int:
    """c_{alpha,beta}: +1 for (i,j),(j,l); -1 for (i,j),(k,i)."""
    return 1 if a[1] == b[0] else -1


def _root_coeff(root: Root, axis: int) -> int:
    return 1 if axis == root[0] else -1 if axis == root[1] else 0


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(1, n + 1))


def _word(*symbols):
    """Word with trivial letters (x^(0), binom(., 0)) dropped."""
    out = []
    for s in symbols:
        if isinstance(s, DividedPower) and s.k == 0:
            continue
        if isinstance(s, (BinomialLinearForm,)) and s.j == 0:
            continue
        out.append(s)
    return tuple(out)


# ---------------------------------------------------------------------------
# Relation families of Dist(G_m)


def _pairs(exps, same_only: bool):
    if same_only:
        return [(e, e) for e in exps]
    return list(itertools.product(exps, repeat=2))


def dist_gm_relations(n: int, p: int, m: int, *, primed: bool, literal: bool, same_exponent_de: bool = False):
    """Relations (a)-(h) with (c)-(h) at exponents p^u, p^v, 0 <= u, v < m."""
    q = p**m
    pw = [p**u for u in range(m)]
    prime = "'" if primed else ""
    rels: list[RelationInstance] = []

    for i in range(1, n + 1):
        for a in range(q):
            for b in range(q):
                rhs = []
                for j in range(min(a, b) + 1):
                    c = comb(a + b - j, a - j) * comb(b, b - j) % p
                    if c:
                        assert a + b - j < q, "coefficients of exponents >= q vanish mod p"
                        rhs.append((c, _word(BinomialH(i, a + b - j))))
                rels.append(RelationInstance(
                    f"a{prime}", (i,), (a, b),
                    word_expr(BinomialH(i, a), BinomialH(i, b)), expr(*rhs)))
    for alpha in roots(n):
        for k in range(q):
            for l in range(q):
                c = comb(k + l, k) % p
                rhs = expr((c, _word(DividedPower(alpha, k + l)))) if c else ZERO
                if c:
                    assert k + l < q
                rels.append(RelationInstance(
                    "b", (alpha,), (k, l),
                    expr((1, _word(DividedPower(alpha, k), DividedPower(alpha, l)))), rhs))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for a, b in _pairs(pw, False):
                rels.append(RelationInstance(
                    f"c{prime}", (i, j), (a, b),
                    word_expr(BinomialH(i, a), BinomialH(j, b)),
                    word_expr(BinomialH(j, b), BinomialH(i, a))))
    for alpha in roots(n):
        for beta in roots(n):
            gamma = root_sum(alpha, beta)
            if gamma is None:
                continue
            cst = structure_constant(alpha, beta)
            for k, l in _pairs(pw, same_exponent_de):
                rhs = [
                    (cst**a % p, _word(DividedPower(beta, l - a), DividedPower(gamma, a), DividedPower(alpha, k - a)))
                    for a in range(min(k, l) + 1)
                ]
                rels.append(RelationInstance(
                    "d", (alpha, beta), (k, l),
                    expr((1, _word(DividedPower(alpha, k), DividedPower(beta, l)))), expr(*rhs)))
    for alpha in roots(n):
        neg = (alpha[1], alpha[0])
        coeffs = tuple(_root_coeff(alpha, ax) for ax in range(1, n + 1))
        for k, l in _pairs(pw, same_exponent_de):
            rhs = [
                (1, _word(DividedPower(neg, l - a), BinomialLinearForm(coeffs, -k - l + 2 * a, a), DividedPower(alpha, k - a)))
                for a in range(min(k, l) + 1)
            ]
            rels.append(RelationInstance(
                f"e{prime}", (alpha,), (k, l),
                expr((1, _word(DividedPower(alpha, k), DividedPower(neg, l)))), expr(*rhs)))
    for alpha in roots(n):
        for beta in roots(n):
            if beta == (alpha[1], alpha[0]) or root_sum(alpha, beta) is not None:
                continue
            for k, l in _pairs(pw, False):
                rels.append(RelationInstance(
                    "f", (alpha, beta), (k, l),
                    expr((1, _word(DividedPower(alpha, k), DividedPower(beta, l)))),
                    expr((1, _word(DividedPower(beta, l), DividedPower(alpha, k))))))
    # (g): binom(H_l, a) x^(k) = x^(k) binom(H_l + k alpha_l, a)
    # (h): x^(k) binom(H_l, a) = binom(H_l - k alpha_l, a) x^(k)
    # The printed forms carry the opposite signs; ``literal`` reproduces them.
    sign = -1 if literal else 1
    for alpha in roots(n):
        for k, a in _pairs(pw, False):
            for ax in range(1, n + 1):
                shift = sign * k * _root_coeff(alpha, ax)
                rhs = [(c % p, _word(DividedPower(alpha, k), BinomialH(ax, t))) for t, c in shift_expansion(shift, a)]
                rels.append(RelationInstance(
                    f"g{prime}", (alpha, ax), (k, a),
                    word_expr(BinomialH(ax, a), DividedPower(alpha, k)), expr(*rhs)))
            for ax in alpha:
                shift = -sign * k * _root_coeff(alpha, ax)
                rhs = [(c % p, _word(BinomialH(ax, t), DividedPower(alpha, k))) for t, c in shift_expansion(shift, a)]
                rels.append(RelationInstance(
                    f"h{prime}", (alpha, ax), (k, a),
                    word_expr(DividedPower(alpha, k), BinomialH(ax, a)), expr(*rhs)))
    return rels


def _subset_members(vec) -> tuple[int, ...]:
    return tuple(i + 1 for i, x in enumerate(vec) if x)


def build_presentation(label: str, params: AlgebraParams, literal: bool = False, weak: bool = False) -> Presentation:
    if label not in LABELS:
        raise ParameterError(f"unknown presentation {label!r}; expected one of {LABELS}")
    n = params.n
    if label == "char0_rational":
        if params.p:
            raise ParameterError("char0_rational needs characteristic 0")
        params.require_rational()
        return _char0_rational(params, weak)
    if not params.p:
        raise ParameterError(f"{label} needs a prime p and m with d < p^m")
    p, m, t = params.p, params.m, params.t
    if label == "charp_schur":
        if params.s:
            raise ParameterError("charp_schur takes polynomial parameters (s = 0, r = d)")
        d = params.d
        rels = dist_gm_relations(n, p, m, primed=False, literal=literal, same_exponent_de=literal)
        top = m + t - 1 if literal else m + t
        for j in range(0, top + 1):
            rels.append(RelationInstance(
                "i", (j,), (p**j,), word_expr(BinomialLinearForm((1,) * n, -d, p**j)), ZERO))
        gens = _charp_generators(n, p**m)
        return Presentation(label, params, gens, tuple(rels), (), 0, literal, weak, RenderStyle())
    params.require_rational()
    r, s, d = params.r, params.s, params.d
    rels = dist_gm_relations(n, p, m, primed=True, literal=literal)
    for j in range(0, m + t + 1):
        rels.append(RelationInstance(
            "i'", (j,), (p**j,), word_expr(BinomialLinearForm((1,) * n, -d, p**j)), ZERO))
    low = 0 if literal else m
    for vec in proper_subsets(n):
        size = sum(vec)
        for j in range(low, m + t + 1):
            rels.append(RelationInstance(
                "j", (_subset_members(vec), j), (p**j,),
                word_expr(BinomialLinearForm(vec, -size * s + s, p**j)), ZERO))
    gens = _charp_generators(n, p**m)
    return Presentation(label, params, gens, tuple(rels), (), s, literal, weak, RenderStyle(suffix="'"))


def _charp_generators(n: int, q: int) -> tuple:
    gens = [BinomialH(i, a) for i in range(1, n + 1) for a in range(1, q)]
    gens += [DividedPower(alpha, k) for alpha in roots(n) for k in range(1, q)]
    return tuple(gens)


def _char0_rational(params: AlgebraParams, weak: bool) -> Presentation:
    n, r, s = params.n, params.r, params.s
    e = {i: DividedPower((i, i + 1), 1) for i in range(1, n)}
    f = {i: DividedPower((i + 1, i), 1) for i in range(1, n)}
    H = {i: BinomialH(i, 1) for i in range(1, n + 1)}
    rels: list[RelationInstance] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(RelationInstance("a", (i, j), (), word_expr(H[i], H[j]), word_expr(H[j], H[i])))
    for i in range(1, n):
        for j in range(1, n):
            rhs = expr((1, (H[j],)), (-1, (H[j + 1],))) if i == j else ZERO
            rels.append(RelationInstance("b", (i, j), (), expr((1, (e[i], f[j])), (-1, (f[j], e[i]))), rhs))
    for i in range(1, n + 1):
        for j in range(1, n):
            pair = (1 if i == j else 0) - (1 if i == j + 1 else 0)
            rels.append(RelationInstance(
                "c", (i, j, "e"), (), expr((1, (H[i], e[j])), (-1, (e[j], H[i]))), expr((pair, (e[j],)))))
            rels.append(RelationInstance(
                "c", (i, j, "f"), (), expr((1, (H[i], f[j])), (-1, (f[j], H[i]))), expr((-pair, (f[j],)))))
    rels.append(RelationInstance(
        "d", (), (), expr(*((1, (H[i],)) for i in range(1, n + 1))), expr((r - s, ()))))
    limit = n // 2 if weak else None
    for vec in proper_subsets(n, limit):
        rels.append(RelationInstance(
            "e'" if weak else "e", (_subset_members(vec),), (),
            word_expr(LinearFormProduct(vec, -r, s)), ZERO))
    serre = []
    for kind, gen in (("serre_e", e), ("serre_f", f)):
        for i in range(1, n):
            for j in range(1, n):
                if i == j:
                    continue
                if abs(i - j) == 1:
                    lhs = expr((1, (gen[i], gen[i], gen[j])), (-2, (gen[i], gen[j], gen[i])), (1, (gen[j], gen[i], gen[i])))
                else:
                    lhs = expr((1, (gen[i], gen[j])), (-1, (gen[j], gen[i])))
                serre.append(RelationInstance(kind, (i, j), (), lhs, ZERO))
    gens = tuple([e[i] for i in range(1, n)] + [f[i] for i in range(1, n)] + [H[i] for i in range(1, n + 1)])
    return Presentation("char0_rational", params, gens, tuple(rels), tuple(serre), 0, False, weak,
                        RenderStyle(chevalley=True))


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class CheckItem:
    check: str
    name: str
    passed: bool
    detail: dict

    def to_dict(self) -> dict:
        return {"check": self.check, "name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    label: str
    params: AlgebraParams
    literal: bool
    items: tuple[CheckItem, ...]
    findings: tuple[dict, ...] = ()

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if not item.passed]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "params": self.params.as_dict(),
            "literal": self.literal,
            "pass": self.passed,
            "items": [item.to_dict() for item in self.items],
            "findings": list(self.findings),
        }


IDEAL_FOR_LABEL = {"char0_rational": "char0_rs", "charp_schur": "charp_d", "charp_rational": "charp_rs"}


def _relation_items(pres: Presentation, rels, module, check: str) -> list[CheckItem]:
    by_family: dict[str, list[RelationInstance]] = {}
    for rel in rels:
        by_family.setdefault(rel.family, []).append(rel)
    items = []
    for fam in sorted(by_family):
        failed = [render_relation(rel, pres.style) for rel in by_family[fam] if not verify_relation_instance(rel, module)]
        items.append(CheckItem(check, fam, not failed, {"instances": len(by_family[fam]), "failed": failed[:10], "failed_count": len(failed)}))
    return items


def torus_relation_locus(pres: Presentation, families) -> tuple[tuple[int, ...], ...]:
    """Common zeros of the torus-only relations on the presentation's own grid [0, q)^n."""
    p = pres.params
    ctx = TorusAlgebraContext.char_p(p.n, p.p, p.m)
    gens = []
    for rel in pres.torus_only(families):
        (_, word), = rel.lhs
        sym, = word
        gens.append(IdealGenerator(rel.family, sym.coeffs, sym.c, sym.j))
    return vanishing_locus(ctx, gens)


def _lambda_set(pres: Presentation):
    p = pres.params
    if pres.label == "charp_schur":
        return enumerate_lambda(p.n, p.d)
    return enumerate_lambda_rs(p.rs)


def verify_presentation(pres: Presentation, closure_cap: int = 5000) -> VerificationReport:
    p = pres.params
    module = pres.module()
    items = _relation_items(pres, pres.relations, module, "relation")
    if pres.derived_relations:
        items += _relation_items(pres, pres.derived_relations, module, "derived")

    ideal = build_ideal(IDEAL_FOR_LABEL[pres.label], p, weak_subsets=pres.weak)
    kernel = kernel_vanishing_report(ideal)
    items.append(CheckItem("kernel", ideal.kind, kernel.passed, kernel.to_dict()))
    if ideal.truncation_verified is not None:
        items.append(CheckItem("truncation", "j=m+t+1 adds nothing", ideal.truncation_verified, {}))

    lam = _lambda_set(pres)
    qdim = quotient_dimension(ideal)
    if pres.label == "charp_schur":
        s0 = s0_dimension(p.n, p.d, 0)
    else:
        s0 = s0_dimension(p.n, p.r, p.s)
    items.append(CheckItem(
        "dimension", "quotient = |Lambda| = S0",
        qdim == len(lam) == s0 and set(ideal.vanishing_locus) == set(lam.members),
        {"quotient_dimension": qdim, "lambda_count": len(lam), "s0_dimension": s0},
    ))

    if pres.label == "char0_rational":
        gens = [module.symbol_matrix(g) for g in pres.generators]
        closure = algebra_closure_dimension(gens, cap=closure_cap)
        expected = sum_weyl_dimension_squares(enumerate_lambda_plus_rs(p.rs))
        items.append(CheckItem("closure", "dim S(n,r,s)", closure == expected,
                               {"closure_dimension": closure, "weyl_sum": expected}))

    findings: list[dict] = []
    if pres.label == "charp_schur":
        locus = torus_relation_locus(pres, ("i",))
        items.append(CheckItem("locus", "(i_j) locus = I0(n,d) locus", locus == ideal.vanishing_locus,
                               {"locus_size": len(locus), "ideal_size": len(ideal.vanishing_locus)}))
        findings += _printed_range_findings(pres, ideal)
    elif pres.label == "charp_rational":
        locus = torus_relation_locus(pres, ("i'", "j"))
        shifted = tuple(sorted(tuple(x - p.s for x in pt) for pt in locus))
        items.append(CheckItem("locus", "(i'_j),(j_j) locus shifted by -s = I0(n,r,s) locus",
                               shifted == tuple(sorted(ideal.vanishing_locus)),
                               {"locus_size": len(locus), "ideal_size": len(ideal.vanishing_locus)}))
        findings += _printed_range_findings(pres, ideal)
    return VerificationReport(pres.label, p, pres.literal, tuple(items), tuple(findings))


def _printed_range_findings(pres: Presentation, ideal) -> list[dict]:
    """Non-gating comparison with the printed ranges and signs."""
    if pres.literal:
        return []
    p = pres.params
    printed = build_presentation(pres.label, p, literal=True)
    module = printed.module()
    out = []
    for fam in ("g", "h") if pres.label == "charp_schur" else ("g'", "h'"):
        bad = sum(1 for rel in printed.relations if rel.family == fam and not verify_relation_instance(rel, module))
        out.append({"finding": f"printed sign of ({fam})", "failing_instances": bad, "holds": bad == 0})
    if pres.label == "charp_schur":
        locus = torus_relation_locus(printed, ("i",))
        extra = sorted(set(locus) - set(ideal.vanishing_locus))
        finding = {"finding": "printed range 0 <= j < m+t for (i_j)", "locus_size": len(locus),
                   "expected_size": len(ideal.vanishing_locus), "extra_points": [list(x) for x in extra[:10]],
                   "holds": not extra}
        if extra:
            witness = extra[0]
            mod = ScalarWeightModule(witness, p.field)
            ok = all(verify_relation_instance(rel, mod) for rel in printed.relations if rel.family not in ("g", "h"))
            finding["witness"] = {"weight": list(witness), "all_other_relations_hold": ok}
        out.append(finding)
    else:
        bad = [render_relation(rel, printed.style) for rel in printed.relations
               if rel.family == "j" and not verify_relation_instance(rel, module)]
        out.append({"finding": "printed range 0 <= j <= m+t for (j_j)", "failing_instances": len(bad),
                    "holds": not bad, "examples": bad[:3]})
    return out


# ---------------------------------------------------------------------------
# Export


def export_presentation(pres: Presentation, fmt: str = "json") -> str:
    if fmt == "json":
        doc = {
            "label": pres.label,
            "params": pres.params.as_dict(),
            "literal": pres.literal,
            "weak": pres.weak,
            "generators": [symbol_to_dict(g) for g in pres.generators],
            "relations": [rel.to_dict(pres.style) for rel in pres.relations],
            "derived_relations": [rel.to_dict(pres.style) for rel in pres.derived_relations],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "text":
        from .generators import render_symbol

        lines = [f"# {pres.label} {json.dumps(pres.params.as_dict(), sort_keys=True)}"]
        lines.append("generators: " + ", ".join(render_symbol(g, pres.style) for g in pres.generators))
        for rel in pres.relations:
            lines.append(f"({rel.family}) {render_relation(rel, pres.style)}")
        for rel in pres.derived_relations:
            lines.append(f"[{rel.family}] {render_relation(rel, pres.style)}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unsupported export format {fmt!r}")


# ---------------------------------------------------------------------------
# The (4,1,1) counterexample


def donkin_report() -> dict:
    """lambda = (2,2,0,0) for (n,r,s) = (4,1,1): in pi' but not pi''; its shift is not a weight."""
    rs = RSParams(4, 1, 1)
    lam = (2, 2, 0, 0)
    support = sign_support(lam, rs.s)
    above = sorted(support.above_s_positions)
    lhs = sum(lam[i] for i in above)
    rhs = rs.r + len(above) * rs.s
    mu = tuple(x - rs.s for x in lam)
    ideal = build_ideal("char0_rs", AlgebraParams(4, 1, 1))
    subset_sum = mu[0] + mu[1]
    report = {
        "params": {"n": 4, "r": 1, "s": 1},
        "lambda": list(lam),
        "in_pi_prime": pi_prime_membership(lam, rs),
        "in_pi_double_prime": pi_double_prime_membership(lam, rs),
        "R_plus": [i + 1 for i in above],
        "inequality": f"{' + '.join(f'lambda_{i + 1}' for i in above)} = {lhs} > {rhs} = r + |R+|s",
        "mu": list(mu),
        "mu_in_lambda_rs": in_lambda_rs_by_t(mu, rs),
        "mu_condition_b": lambda_rs_condition(mu, rs, "b"),
        "mu_S12_sum": subset_sum,
        "mu_in_I0_locus": mu in set(ideal.vanishing_locus),
    }
    report["pass"] = (
        report["in_pi_prime"]
        and not report["in_pi_double_prime"]
        and lhs == 4 and rhs == 3
        and not report["mu_in_lambda_rs"]
        and not report["mu_condition_b"]
        and subset_sum == 2 > rs.r
        and not report["mu_in_I0_locus"]
    )
    return report
