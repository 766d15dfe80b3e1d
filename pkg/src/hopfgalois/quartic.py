"""Exact arithmetic in the splitting field of the generic quartic

    P(X) = X^4 - b1 X^3 + b2 X^2 - b3 X + b4

with roots a1..a4, the S_4 action on the roots, and the Hopf action of
K̃[N]^G on K = K̃^{G'}.

Elements are kept in the basis a4^i4 a3^i3 a2^i2 (i4 <= 3, i3 <= 2,
i2 <= 1) over Q(b1..b4).  The reduction rules are the cofactor
relations obtained by dividing P by (X - a4) and then by (X - a3); they
are derived at import time, not transcribed.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .permcore import Perm, PermError, conjugate, invert

VARS = ("b1", "b2", "b3", "b4", "a1", "a2", "a3", "a4")
NV = len(VARS)
A1, A2, A3, A4 = 4, 5, 6, 7
B_VARS = range(4)
ZERO_EXP = (0,) * NV


class Poly:
    """Sparse polynomial over Q in b1..b4, a1..a4.

    A Poly involving only b1..b4 plays the role of a coefficient
    (``CoefPoly``).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> Poly:
        return cls({ZERO_EXP: Fraction(c)})

    @classmethod
    def var(cls, name: str) -> Poly:
        e = [0] * NV
        e[VARS.index(name)] = 1
        return cls({tuple(e): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _from_clean(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return _from_clean({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other) -> Poly:
        other = _as_poly(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, exp: tuple, coef: Fraction) -> Poly:
        return _from_clean({tuple(x + y for x, y in zip(e, exp)): c * coef for e, c in self.terms.items()})

    def degree_in(self, v: int) -> int:
        return max((e[v] for e in self.terms), default=0)

    def is_coefficient(self) -> bool:
        """True when only b1..b4 occur."""
        return all(not any(e[4:]) for e in self.terms)

    def permute_roots(self, g: Perm) -> Poly:
        """Substitute a_i -> a_{g(i)}."""
        out = {}
        for e, c in self.terms.items():
            new = list(e)
            for i in range(4):
                new[A1 + g[i]] = e[A1 + i]
            out[tuple(new)] = c
        return _from_clean(out)

    def substitute_b(self, values: Iterable) -> Poly:
        vals = [Fraction(v) for v in values]
        out: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            f = c
            for i in B_VARS:
                f *= vals[i] ** e[i]
            key = (0, 0, 0, 0) + e[4:]
            out[key] = out.get(key, 0) + f
        return Poly(out)

    def sort_key(self):
        return sorted(self.terms, reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


CoefPoly = Poly


def _from_clean(terms: dict) -> Poly:
    p = Poly.__new__(Poly)
    p.terms = terms
    return p


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


# ---------------------------------------------------------------------------
# Text form

def _format_monomial(e: tuple) -> str:
    parts = []
    for v, k in zip(VARS, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def _format_terms(items: list[tuple[Fraction, str]]) -> str:
    if not items:
        return "0"
    out = []
    for k, (c, mono) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_poly(p: Poly) -> str:
    """Terms in descending lexicographic order of exponent tuples (b1 first)."""
    return _format_terms([(p.terms[e], _format_monomial(e)) for e in sorted(p.terms, reverse=True)])


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([ab][1-4])|(\*\*|[-+*^()]))")


def parse_poly(text: str) -> Poly:
    """Parse ``+ - * ^ ( )`` expressions over integers/fractions and a1..a4, b1..b4."""
    tokens = []
    pos = 0
    text = text.replace("α", "a")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        num, name, op = m.groups()
        tokens.append(("num", Fraction(num)) if num else ("var", name) if name else ("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    k = 0

    def peek():
        return tokens[k]

    def take():
        nonlocal k
        k += 1
        return tokens[k - 1]

    def expr():
        node = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            node = node + term() if op == "+" else node - term()
        return node

    def term():
        node = unary()
        while peek() == ("op", "*") or peek()[0] in ("num", "var") or peek() == ("op", "("):
            if peek() == ("op", "*"):
                take()
            node = node * unary()
        return node

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Poly.const(val)
        if kind == "var":
            return Poly.var(val)
        if (kind, val) == ("op", "("):
            node = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return node
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result


# ---------------------------------------------------------------------------
# Reduction relations

def quartic() -> list[Poly]:
    """Coefficients of P(X), lowest degree first."""
    b = [Poly.var(f"b{i}") for i in range(1, 5)]
    return [b[3], -b[2], b[1], -b[0], Poly.const(1)]


def eval_univariate(coeffs: list[Poly], x: Poly) -> Poly:
    out = Poly()
    for c in reversed(coeffs):
        out = out * x + c
    return out


def divide_linear(coeffs: list[Poly], root: Poly) -> tuple[list[Poly], Poly]:
    """Synthetic division by (X - root): quotient coefficients and remainder."""
    m = len(coeffs) - 1
    q = [Poly()] * m
    carry = coeffs[m]
    for k in range(m - 1, -1, -1):
        q[k] = carry
        carry = coeffs[k] + root * carry
    return q, carry


@functools.lru_cache(maxsize=None)
def cofactors() -> tuple[list[Poly], list[Poly], list[Poly]]:
    """P(X), P(X)/(X - a4), P(X)/((X - a4)(X - a3)) as coefficient lists."""
    p = quartic()
    c3, _ = divide_linear(p, Poly.var("a4"))
    q2, _ = divide_linear(c3, Poly.var("a3"))
    return p, c3, q2


@functools.lru_cache(maxsize=None)
def _rules() -> dict[int, tuple[int, Poly]]:
    p, c3, q2 = cofactors()

    def rule(coeffs, v):
        # monic: v^d = -(lower terms evaluated at v)
        d = len(coeffs) - 1
        return d, -eval_univariate(coeffs[:-1] + [Poly()], Poly.var(VARS[v]))

    return {A2: rule(q2, A2), A3: rule(c3, A3), A4: rule(p, A4)}


@functools.lru_cache(maxsize=None)
def _reduced_power(v: int, e: int) -> Poly:
    """v^e rewritten so that v's exponent is below its bound (other variables untouched)."""
    d, r = _rules()[v]
    if e < d:
        x = [0] * NV
        x[v] = e
        return _from_clean({tuple(x): Fraction(1)})
    if e == d:
        return r
    prev = _reduced_power(v, e - 1)
    unit = [0] * NV
    unit[v] = 1
    return _reduce_var(prev.mul_term(tuple(unit), Fraction(1)), v)


def _reduce_var(p: Poly, v: int) -> Poly:
    d = _rules()[v][0]
    keep: dict[tuple, Fraction] = {}
    out = Poly()
    for e, c in p.terms.items():
        if e[v] < d:
            keep[e] = keep.get(e, 0) + c
            continue
        rest = list(e)
        rest[v] = 0
        out = out + _reduced_power(v, e[v]).mul_term(tuple(rest), c)
    return out + Poly(keep)


@functools.lru_cache(maxsize=None)
def _a1_power(e: int) -> Poly:
    return (Poly.var("b1") - Poly.var("a2") - Poly.var("a3") - Poly.var("a4")) ** e


def _eliminate_a1(p: Poly) -> Poly:
    if all(e[A1] == 0 for e in p.terms):
        return p
    out = Poly()
    keep = {}
    for e, c in p.terms.items():
        if e[A1] == 0:
            keep[e] = c
            continue
        rest = list(e)
        rest[A1] = 0
        out = out + _a1_power(e[A1]).mul_term(tuple(rest), c)
    return out + Poly(keep)


def _reduce(p: Poly) -> Poly:
    p = _eliminate_a1(p)
    for v in (A2, A3, A4):
        p = _reduce_var(p, v)
    return p


def basis_monomials() -> list[tuple[int, int, int]]:
    """(i4, i3, i2) exponents, sorted descending."""
    return sorted(((i4, i3, i2) for i4 in range(4) for i3 in range(3) for i2 in range(2)), reverse=True)


class FieldElt:
    """An element of K̃ in normal form (immutable)."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly | str | int | Fraction = 0):
        if isinstance(poly, str):
            poly = parse_poly(poly)
        self.poly = _reduce(_as_poly(poly))

    @classmethod
    def _trusted(cls, poly: Poly) -> FieldElt:
        x = cls.__new__(cls)
        x.poly = poly
        return x

    @classmethod
    def alpha(cls, i: int) -> FieldElt:
        return cls(Poly.var(f"a{i}"))

    @classmethod
    def b(cls, i: int) -> FieldElt:
        return cls(Poly.var(f"b{i}"))

    def coefficients(self) -> dict[tuple[int, int, int], Poly]:
        """Basis monomial (i4, i3, i2) -> coefficient in b1..b4."""
        out: dict[tuple, dict] = {}
        for e, c in self.poly.terms.items():
            key = (e[A4], e[A3], e[A2])
            out.setdefault(key, {})[e[:4] + (0, 0, 0, 0)] = c
        return {k: Poly(v) for k, v in out.items()}

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_coefficient(self) -> bool:
        return self.poly.is_coefficient()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = FieldElt(other)
        if not isinstance(other, FieldElt):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __add__(self, other) -> FieldElt:
        return FieldElt._trusted(self.poly + _as_field(other).poly)

    __radd__ = __add__

    def __sub__(self, other) -> FieldElt:
        return FieldElt._trusted(self.poly - _as_field(other).poly)

    def __rsub__(self, other) -> FieldElt:
        return _as_field(other) - self

    def __neg__(self) -> FieldElt:
        return FieldElt._trusted(-self.poly)

    def __mul__(self, other) -> FieldElt:
        return FieldElt(self.poly * _as_field(other).poly)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> FieldElt:
        out = FieldElt(1)
        for _ in range(k):
            out = out * self
        return out

    def specialize(self, b_values: Iterable) -> FieldElt:
        """Substitute numbers for b1..b4 (coefficient maps are compared; no field claim)."""
        return FieldElt(self.poly.substitute_b(b_values))

    def __str__(self) -> str:
        return format_field(self)

    def __repr__(self) -> str:
        return f"FieldElt({str(self)!r})"


def _as_field(x) -> FieldElt:
    return x if isinstance(x, FieldElt) else FieldElt(x)


def format_field(x: FieldElt) -> str:
    """Canonical text: basis monomials by (i4, i3, i2) descending, coefficients in b."""
    coefs = x.coefficients()
    items = []
    for key in basis_monomials():
        c = coefs.get(key)
        if c is None:
            continue
        i4, i3, i2 = key
        mono = "*".join(p for p in (_pw("a4", i4), _pw("a3", i3), _pw("a2", i2)) if p)
        if len(c.terms) == 1:
            (e, q), = c.terms.items()
            bm = _format_monomial(e)
            full = "*".join(p for p in (bm, mono) if p)
            items.append((q, full))
        else:
            body = "(" + format_poly(c) + ")"
            items.append((Fraction(1), body + ("*" + mono if mono else "")))
    return _format_terms(items)


def _pw(v: str, k: int) -> str:
    return "" if k == 0 else v if k == 1 else f"{v}^{k}"


def normal_form(expr: Poly | str) -> FieldElt:
    return FieldElt(expr)


def alpha(i: int) -> FieldElt:
    return FieldElt.alpha(i)


def galois_act(g: Perm, x: FieldElt) -> FieldElt:
    """Apply the root permutation g (a_i -> a_{g(i)}) and renormalize."""
    if g.degree != 4:
        raise PermError("Galois action needs a permutation of the four roots")
    if g.is_identity():
        return x
    return FieldElt(x.poly.permute_roots(g))


@functools.lru_cache(maxsize=None)
def sqrt_disc() -> FieldElt:
    """Δ = ∏_{i<j} (a_i - a_j); Δ² is the discriminant."""
    out = FieldElt(1)
    for i in range(1, 5):
        for j in range(i + 1, 5):
            out = out * (alpha(i) - alpha(j))
    return out


def elementary_symmetric(k: int) -> Poly:
    from itertools import combinations

    out = Poly()
    for idx in combinations(range(1, 5), k):
        term = Poly.const(1)
        for i in idx:
            term = term * Poly.var(f"a{i}")
        out = out + term
    return out


def _self_check() -> None:
    p = quartic()
    for v in ("a2", "a3", "a4"):
        if not _reduce(eval_univariate(p, Poly.var(v))).is_zero():
            raise AssertionError(f"P({v}) does not reduce to zero")


_self_check()


# ---------------------------------------------------------------------------
# Group-algebra elements and the Hopf action

class AlgElt:
    """Finitely supported map N -> K̃, i.e. Σ a_n n in K̃[N]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Perm, FieldElt | Poly | str | int] | None = None):
        self.coeffs = {}
        for n, a in (coeffs or {}).items():
            a = FieldElt(a) if isinstance(a, str) else _as_field(a)
            if not a.is_zero():
                self.coeffs[n] = a

    def coef(self, n: Perm) -> FieldElt:
        return self.coeffs.get(n, FieldElt(0))

    def support(self) -> list[Perm]:
        return sorted(self.coeffs)

    def __add__(self, other: AlgElt) -> AlgElt:
        out = dict(self.coeffs)
        for n, a in other.coeffs.items():
            out[n] = out.get(n, FieldElt(0)) + a
        return AlgElt(out)

    def scale(self, c) -> AlgElt:
        c = _as_field(c)
        return AlgElt({n: c * a for n, a in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def map_group(self, phi: Mapping[Perm, Perm]) -> AlgElt:
        """Push forward along a group map (e.g. a G-isomorphism)."""
        return AlgElt({phi[n]: a for n, a in self.coeffs.items()})

    def act(self, ctx, g: Perm) -> AlgElt:
        """ᵍh = Σ g(a_n) λ(g) n λ(g)⁻¹."""
        lg = ctx.lam(g)
        return AlgElt({conjugate(lg, n): galois_act(g, a) for n, a in self.coeffs.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"({a})*{n}" for n, a in sorted(self.coeffs.items()))
        return f"AlgElt({body or '0'})"


def counit(h: AlgElt) -> FieldElt:
    out = FieldElt(0)
    for a in h.coeffs.values():
        out = out + a
    return out


def _check_support(H, h: AlgElt) -> None:
    bad = [n for n in h.coeffs if n not in H.N]
    if bad:
        raise ValueError(f"support outside {H.label}: {bad[0]}")


def is_fixed_by(ctx, x: FieldElt, group_gens) -> bool:
    return all(galois_act(g, x) == x for g in group_gens)


def preimage_point(n: Perm) -> int:
    """The point n⁻¹(1), i.e. the coset (n⁻¹)(1̄_G)."""
    return invert(n)(1)


def hopf_action(ctx, H, h: AlgElt, x: FieldElt) -> FieldElt:
    """(Σ a_n n)·x = Σ a_n g_i(x) where g_i represents the coset n⁻¹(1̄_G)."""
    _check_support(H, h)
    if not is_fixed_by(ctx, x, ctx.Gp.generators):
        raise ValueError("x is not fixed by G'; the action would depend on coset representatives")
    out = FieldElt(0)
    for n, a in h.coeffs.items():
        out = out + a * galois_act(ctx.rep(preimage_point(n)), x)
    return out


def is_in_H(ctx, H, h: AlgElt) -> bool:
    """h ∈ K̃[N]^G: the coefficient at λ(g) n λ(g)⁻¹ equals g(a_n) for generators g."""
    _check_support(H, h)
    for g, lg in zip(ctx.gens, ctx.lam_gens):
        for n in H.N:
            if h.coef(conjugate(lg, n)) != galois_act(g, h.coef(n)):
                return False
    return True


def g_trace(ctx, h: AlgElt) -> AlgElt:
    """Σ_{g∈G} ᵍh, which always lies in K̃[N]^G."""
    out = AlgElt()
    for g in ctx.G:
        out = out + h.act(ctx, g)
    return out


# ---------------------------------------------------------------------------
# The two actions of one Hopf algebra

@dataclass
class InequalityReport:
    expansions: list[dict]
    difference: str
    difference_nonzero: bool
    specialized_nonzero: bool
    h_in_source: bool
    image_in_target: bool
    mu_source: str
    mu_target: str
    mu_source_matches: bool
    mu_target_matches: bool
    mu_differ: bool

    @property
    def passed(self) -> bool:
        return (all(e["matches"] for e in self.expansions) and self.difference_nonzero
                and self.h_in_source and self.image_in_target and self.mu_source_matches
                and self.mu_target_matches and self.mu_differ)


def paper_inequality_check(ctx, source, target, phi: Mapping[Perm, Perm],
                           expected: Mapping | None = None,
                           specialize_at=(0, 0, 0, -1)) -> InequalityReport:
    """Evaluate h and Φ(h) on a1 through the two Hopf actions and compare.

    ``expected`` carries ``h`` (word -> coefficient), ``mu3``/``mu4`` and the
    two displayed ``expansions``; it defaults to the shipped example data.
    """
    if expected is None:
        from .paperdata import example
        expected = example()
    from .paperdata import parse_word

    expansions = []
    nfs = []
    for item in expected["expansions"]:
        nf = FieldElt(item["lhs"])
        shown = parse_poly(item["rhs"])
        in_basis = FieldElt._trusted(shown) == nf and _in_basis(shown)
        expansions.append({"lhs": item["lhs"], "normal_form": str(nf), "matches": in_basis})
        nfs.append(nf)
    diff = nfs[0] - nfs[1]
    h = AlgElt({parse_word(w, source.names): a for w, a in expected["h"].items()})
    image = h.map_group(phi)
    mu_s = hopf_action(ctx, source, h, alpha(1))
    mu_t = hopf_action(ctx, target, image, alpha(1))
    return InequalityReport(
        expansions=expansions,
        difference=str(diff),
        difference_nonzero=not diff.is_zero(),
        specialized_nonzero=not diff.specialize(specialize_at).is_zero(),
        h_in_source=is_in_H(ctx, source, h),
        image_in_target=is_in_H(ctx, target, image),
        mu_source=str(mu_s),
        mu_target=str(mu_t),
        mu_source_matches=mu_s == FieldElt(expected["mu3"]),
        mu_target_matches=mu_t == FieldElt(expected["mu4"]),
        mu_differ=mu_s != mu_t,
    )


def _in_basis(p: Poly) -> bool:
    return all(e[A1] == 0 and e[A2] <= 1 and e[A3] <= 2 and e[A4] <= 3 for e in p.terms)
