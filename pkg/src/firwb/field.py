"""Exact multivariate rational function arithmetic over Q or F_p.

Variables come in three indexed families, printed ``x1, x2, ...``,
``u1, u2, ...`` and ``t1, t2, ...``.  A polynomial maps monomials to
nonzero coefficients; a rational function is a gcd-reduced fraction of
polynomials whose denominator is monic under the graded-lexicographic
term order, so equal values always have identical representations and
equality is plain structural comparison.

The base field is either the rationals (``QQ``, coefficients are
``fractions.Fraction``) or a prime field ``F_p`` with p > 7
(coefficients are :class:`FpElem`).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Iterator, NamedTuple

from .errors import DenominatorVanishes, NonInjectiveMap, ParseError, ZeroDenominator

FAMILY_CHARS = ("x", "u", "t")
FAMILY_X, FAMILY_U, FAMILY_T = 0, 1, 2


class Var(NamedTuple):
    """An indexed variable.  Total order is family-major, then index."""

    family: int
    index: int

    def __str__(self) -> str:
        return f"{FAMILY_CHARS[self.family]}{self.index}"


def xvar(i: int) -> Var:
    if i < 1:
        raise ValueError(f"variable index must be >= 1, got {i}")
    return Var(FAMILY_X, i)


def uvar(i: int) -> Var:
    if i < 1:
        raise ValueError(f"variable index must be >= 1, got {i}")
    return Var(FAMILY_U, i)


def tvar(i: int) -> Var:
    if i < 1:
        raise ValueError(f"variable index must be >= 1, got {i}")
    return Var(FAMILY_T, i)


class FpElem:
    """Element of F_p, stored as the canonical representative in [0, p)."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other
        if isinstance(other, int):
            return FpElem(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else FpElem(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else FpElem(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else FpElem(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else FpElem(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.p, self.v * pow(o.v, -1, self.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElem(self.p, o.v * pow(self.v, -1, self.p))

    def __pow__(self, n: int):
        return FpElem(self.p, pow(self.v, n, self.p))

    def __neg__(self):
        return FpElem(self.p, -self.v)

    def __bool__(self) -> bool:
        return self.v != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FpElem):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.v))

    def __repr__(self) -> str:
        return f"FpElem({self.p}, {self.v})"

    def __str__(self) -> str:
        return str(self.v)


class RationalField:
    """The field Q with exact big-integer rationals."""

    p = None

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def points(self) -> Iterator[Fraction]:
        """Enumerate 0, 1, -1, 2, -2, ... for point-picking scans."""
        yield Fraction(0)
        k = 1
        while True:
            yield Fraction(k)
            yield Fraction(-k)
            k += 1

    @property
    def name(self) -> str:
        return "rat"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rat")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """The field F_p for a prime p > 7."""

    def __init__(self, p: int):
        if p <= 7:
            raise ValueError("prime fields are supported for p > 7 only")
        if any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def from_int(self, n: int) -> FpElem:
        return FpElem(self.p, n)

    @property
    def zero(self) -> FpElem:
        return FpElem(self.p, 0)

    @property
    def one(self) -> FpElem:
        return FpElem(self.p, 1)

    def points(self) -> Iterator[FpElem]:
        for v in range(self.p):
            yield FpElem(self.p, v)

    @property
    def name(self) -> str:
        return f"fp:{self.p}"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("fp", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


QQ = RationalField()


def field_by_name(name: str):
    """Parse a field spec of the form 'rat' or 'fp:<p>'."""
    if name == "rat":
        return QQ
    if name.startswith("fp:"):
        return PrimeField(int(name[3:]))
    raise ValueError(f"unknown field {name!r}")


# A monomial is a tuple of (Var, exponent) pairs sorted by variable,
# exponents positive.  The empty tuple is the constant monomial.
Mono = tuple

MONO_ONE: Mono = ()


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_expand(m: Mono) -> tuple:
    out = []
    for v, e in m:
        out.extend([v] * e)
    return tuple(out)


def mono_sort_key(m: Mono):
    """Sort key putting the graded-lex largest monomial first."""
    return (-mono_degree(m), _mono_expand(m))


class Poly:
    """A multivariate polynomial with coefficients in the base field.

    ``terms`` maps monomials to nonzero coefficients; the zero polynomial
    has no terms.  Instances are immutable by convention.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms: dict):
        self.field = field
        self.terms = terms
        self._hash = None

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, {})

    @classmethod
    def const(cls, field, c) -> "Poly":
        if isinstance(c, int):
            c = field.from_int(c)
        if not c:
            return cls(field, {})
        return cls(field, {MONO_ONE: c})

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, {MONO_ONE: field.one})

    @classmethod
    def variable(cls, field, v: Var) -> "Poly":
        return cls(field, {((v, 1),): field.one})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and MONO_ONE in self.terms)

    def const_value(self):
        if not self.terms:
            return self.field.zero
        return self.terms[MONO_ONE]

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(mono_degree(m) for m in self.terms)

    def degree_in(self, v: Var) -> int:
        d = 0
        for m in self.terms:
            for w, e in m:
                if w == v and e > d:
                    d = e
        return d

    def leading_mono(self) -> Mono:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return min(self.terms, key=mono_sort_key)

    def leading_coeff(self):
        return self.terms[self.leading_mono()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: mono_sort_key(kv[0]))

    def __add__(self, other: "Poly") -> "Poly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.field, out)

    def __neg__(self) -> "Poly":
        return Poly(self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = -c
            else:
                s = s - c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.field, out)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.terms or not other.terms:
            return Poly(self.field, {})
        if other.is_const:
            return self.scale(other.const_value())
        if self.is_const:
            return other.scale(self.const_value())
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                c = ca * cb
                s = out.get(m)
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Poly(self.field, out)

    def scale(self, c) -> "Poly":
        if not c:
            return Poly(self.field, {})
        return Poly(self.field, {m: co * c for m, co in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def subst_vars(self, mapping: dict) -> "Poly":
        """Replace variables per ``mapping`` (Var -> Var); collisions are the
        caller's responsibility."""
        if not mapping:
            return self
        out: dict = {}
        for m, c in self.terms.items():
            nm = tuple(sorted(((mapping.get(v, v), e) for v, e in m)))
            s = out.get(nm)
            if s is None:
                out[nm] = c
            else:
                s = s + c
                if s:
                    out[nm] = s
                else:
                    del out[nm]
        return Poly(self.field, out)

    def eval_partial(self, assignment: dict) -> "Poly":
        """Substitute field elements for a subset of the variables."""
        out: dict = {}
        for m, c in self.terms.items():
            rest = []
            for v, e in m:
                a = assignment.get(v)
                if a is None:
                    rest.append((v, e))
                else:
                    c = c * a**e
            if not c:
                continue
            nm = tuple(rest)
            s = out.get(nm)
            if s is None:
                out[nm] = c
            else:
                s = s + c
                if s:
                    out[nm] = s
                else:
                    del out[nm]
        return Poly(self.field, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono_txt = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)
            neg, mag = _coeff_sign_split(c)
            if mono_txt:
                body = mono_txt if mag == "1" else f"{mag}*{mono_txt}"
            else:
                body = mag
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _coeff_sign_split(c):
    """Return (is_negative, magnitude_string) for a coefficient."""
    if isinstance(c, Fraction):
        return (c < 0, str(abs(c)))
    return (False, str(c))


# ---------------------------------------------------------------------------
# gcd machinery: content/primitive-part recursion with a primitive
# pseudo-remainder sequence in the main variable.


def _as_univar(p: Poly, v: Var) -> dict:
    """View p as a univariate polynomial in v with Poly coefficients."""
    out: dict = {}
    for m, c in p.terms.items():
        e = 0
        rest = []
        for w, ew in m:
            if w == v:
                e = ew
            else:
                rest.append((w, ew))
        coeff = out.setdefault(e, {})
        coeff[tuple(rest)] = c
    return {e: Poly(p.field, terms) for e, terms in out.items()}


def _from_univar(field, v: Var, coeffs: dict) -> Poly:
    out: dict = {}
    for e, poly in coeffs.items():
        for m, c in poly.terms.items():
            nm = mono_mul(m, ((v, e),)) if e else m
            out[nm] = c
    return Poly(field, out)


def poly_divexact(f: Poly, g: Poly) -> Poly:
    """Exact division f / g; raises ArithmeticError if not divisible."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return f
    if g.is_const:
        c = g.const_value()
        return Poly(f.field, {m: co / c for m, co in f.terms.items()})
    gvars = sorted(g.variables())
    v = gvars[-1]
    fu = _as_univar(f, v)
    gu = _as_univar(g, v)
    dg = max(gu)
    glc = gu[dg]
    q: dict = {}
    while fu:
        df = max(fu)
        if df < dg:
            raise ArithmeticError("inexact polynomial division")
        c = poly_divexact(fu[df], glc)
        q[df - dg] = c
        for e, ge in gu.items():
            k = df - dg + e
            cur = fu.get(k, Poly.zero(f.field)) - c * ge
            if cur.is_zero:
                fu.pop(k, None)
            else:
                fu[k] = cur
    return _from_univar(f.field, v, q)


def _prem(fu: dict, gu: dict, field) -> dict:
    """Pseudo-remainder of univariate views (dicts exponent -> Poly)."""
    dg = max(gu)
    glc = gu[dg]
    r = dict(fu)
    while r:
        dr = max(r)
        if dr < dg:
            break
        rlc = r[dr]
        new: dict = {}
        for e, ce in r.items():
            if e == dr:
                continue
            new[e] = glc * ce
        for e, ge in gu.items():
            if e == dg:
                continue
            k = dr - dg + e
            cur = new.get(k, Poly.zero(field)) - rlc * ge
            if cur.is_zero:
                new.pop(k, None)
            else:
                new[k] = cur
        r = new
    return r


def _content(coeffs: Iterable[Poly], field) -> Poly:
    g = Poly.zero(field)
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_const and not g.is_zero:
            return Poly.one(field)
    return g


def _scalar_content_factor(coeffs) -> Fraction:
    num_gcd = 0
    den_lcm = 1
    for c in coeffs:
        num_gcd = _igcd(num_gcd, c.numerator)
        den_lcm = den_lcm // _igcd(den_lcm, c.denominator) * c.denominator
    return Fraction(den_lcm, num_gcd)


def _strip_scalar_content(p: Poly) -> Poly:
    """Rescale so integer coefficients are coprime (over Q).

    Gcd results are monicized at the end, so intermediate scaling is free;
    stripping it keeps pseudo-remainder coefficients from exploding.
    """
    if p.is_zero or not isinstance(p.field, RationalField):
        return p
    factor = _scalar_content_factor(p.terms.values())
    if factor == 1:
        return p
    return p.scale(factor)


def _strip_scalar_content_uni(r: dict, field) -> dict:
    """Strip one common rational factor from a univariate view."""
    if not r or not isinstance(field, RationalField):
        return r
    factor = _scalar_content_factor(c for p in r.values() for c in p.terms.values())
    if factor == 1:
        return r
    return {e: p.scale(factor) for e, p in r.items()}


def _mono_content(p: Poly) -> Mono:
    """The largest monomial dividing every term of p."""
    it = iter(p.terms)
    first = next(it)
    common = {v: e for v, e in first}
    for m in it:
        if not common:
            break
        md = dict(m)
        for v in list(common):
            e = md.get(v, 0)
            if e == 0:
                del common[v]
            elif e < common[v]:
                common[v] = e
    return tuple(sorted(common.items()))


def _mono_gcd(a: Mono, b: Mono) -> Mono:
    da, db = dict(a), dict(b)
    out = []
    for v in sorted(set(da) & set(db)):
        out.append((v, min(da[v], db[v])))
    return tuple(out)


def _monicize(p: Poly) -> Poly:
    if p.is_zero:
        return p
    lc = p.leading_coeff()
    if lc == p.field.one:
        return p
    return p.scale(p.field.one / lc)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd of two polynomials over the base field."""
    if f.is_zero:
        return _monicize(g)
    if g.is_zero:
        return _monicize(f)
    if f.is_const or g.is_const:
        return Poly.one(f.field)
    if len(f.terms) == 1 or len(g.terms) == 1:
        m = _mono_gcd(_mono_content(f), _mono_content(g))
        return Poly(f.field, {m: f.field.one})
    fvars = f.variables()
    gvars = g.variables()
    if fvars.isdisjoint(gvars):
        return Poly.one(f.field)
    v = max(fvars | gvars)
    if v not in fvars:
        gu = _as_univar(g, v)
        return poly_gcd(f, _content(gu.values(), f.field))
    if v not in gvars:
        fu = _as_univar(f, v)
        return poly_gcd(_content(fu.values(), f.field), g)
    field = f.field
    f = _strip_scalar_content(f)
    g = _strip_scalar_content(g)
    fu = _as_univar(f, v)
    gu = _as_univar(g, v)
    cf = _content(fu.values(), field)
    cg = _content(gu.values(), field)
    c = poly_gcd(cf, cg)
    fp = {e: poly_divexact(p, cf) for e, p in fu.items()}
    gp = {e: poly_divexact(p, cg) for e, p in gu.items()}
    if max(fp) < max(gp):
        fp, gp = gp, fp
    # subresultant pseudo-remainder sequence on the primitive parts;
    # scalar rescaling never affects polynomial divisibility, so content
    # extraction can wait until the very end.
    g_coef = Poly.one(field)
    h_coef = Poly.one(field)
    while True:
        delta = max(fp) - max(gp)
        r = _prem(fp, gp, field)
        if not r:
            break
        divisor = g_coef * h_coef**delta
        if not (divisor.is_const and divisor.const_value() == field.one):
            r = {e: poly_divexact(p, divisor) for e, p in r.items()}
        r = _strip_scalar_content_uni(r, field)
        fp, gp = gp, r
        g_coef = fp[max(fp)]
        if delta == 1:
            h_coef = g_coef
        elif delta > 1:
            h_coef = poly_divexact(g_coef**delta, h_coef ** (delta - 1))
        h_coef = _strip_scalar_content(h_coef)
        g_coef = _strip_scalar_content(g_coef)
    prim = _from_univar(field, v, gp)
    cont = _content(gp.values(), field)
    if not cont.is_const:
        prim = poly_divexact(prim, cont)
    if prim.degree_in(v) == 0:
        prim = Poly.one(field)
    return _monicize(c * prim)


# ---------------------------------------------------------------------------
# Rational functions.


class RatFunc:
    """A canonical fraction of polynomials: reduced, monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly):
        # trusted constructor: inputs must already be canonical
        self.num = num
        self.den = den
        self._hash = None

    @property
    def field(self):
        return self.num.field

    @classmethod
    def zero(cls, field) -> "RatFunc":
        return cls(Poly.zero(field), Poly.one(field))

    @classmethod
    def one(cls, field) -> "RatFunc":
        return cls(Poly.one(field), Poly.one(field))

    @classmethod
    def const(cls, field, c) -> "RatFunc":
        return cls(Poly.const(field, c), Poly.one(field))

    @classmethod
    def variable(cls, field, v: Var) -> "RatFunc":
        return cls(Poly.variable(field, v), Poly.one(field))

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.field))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_const and self.den.is_const and self.num.const_value() == self.field.one

    @property
    def is_poly(self) -> bool:
        return self.den.is_const

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.num.is_zero:
            return other
        if other.num.is_zero:
            return self
        if self.den == other.den:
            return normalize(self.num + other.num, self.den)
        return normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero:
            return self
        if self.num.is_zero:
            return -other
        if self.den == other.den:
            return normalize(self.num - other.num, self.den)
        return normalize(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.num.is_zero or other.num.is_zero:
            return RatFunc.zero(self.field)
        # cross-reduce so the final gcd is trivial
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num if g1.is_const else poly_divexact(self.num, g1)
        oden = other.den if g1.is_const else poly_divexact(other.den, g1)
        onum = other.num if g2.is_const else poly_divexact(other.num, g2)
        den = self.den if g2.is_const else poly_divexact(self.den, g2)
        n = num * onum
        d = den * oden
        if d.is_const:
            c = d.const_value()
            return RatFunc(n if c == n.field.one else n.scale(n.field.one / c), Poly.one(n.field))
        lc = d.leading_coeff()
        if lc != d.field.one:
            inv = d.field.one / lc
            n = n.scale(inv)
            d = d.scale(inv)
        return RatFunc(n, d)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero:
            raise ZeroDenominator("division by zero rational function")
        return self * RatFunc(other.den, other.num)._renormalized()

    def _renormalized(self) -> "RatFunc":
        return normalize(self.num, self.den)

    def __pow__(self, n: int) -> "RatFunc":
        if n == 0:
            return RatFunc.one(self.field)
        if n < 0:
            if self.num.is_zero:
                raise ZeroDenominator("negative power of zero")
            return normalize(self.den**-n, self.num**-n)
        num = self.num**n
        den = self.den**n
        return RatFunc(num, den)  # reduced & monic powers stay reduced & monic

    def __eq__(self, other) -> bool:
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def rename(self, family: int, index_map: dict) -> "RatFunc":
        """Apply an injective index map to one variable family."""
        support = sorted(i for (fam, i) in self.variables() if fam == family)
        images = [index_map.get(i, i) for i in support]
        if len(set(images)) != len(images):
            raise NonInjectiveMap(f"index map repeats a value on support {support}")
        mapping = {Var(family, i): Var(family, j) for i, j in zip(support, images) if i != j}
        return self.subst_vars(mapping)

    def subst_vars(self, mapping: dict) -> "RatFunc":
        """Injective variable-for-variable substitution (checked on support)."""
        if not mapping:
            return self
        support = self.variables()
        relevant = {v: w for v, w in mapping.items() if v in support}
        if not relevant:
            return self
        targets = [relevant.get(v, v) for v in support]
        if len(set(targets)) != len(targets):
            raise NonInjectiveMap("variable substitution repeats a value on support")
        num = self.num.subst_vars(relevant)
        den = self.den.subst_vars(relevant)
        # coprimality survives an injective renaming; only monicness can break
        lc = den.leading_coeff()
        if lc != den.field.one:
            inv = den.field.one / lc
            num = num.scale(inv)
            den = den.scale(inv)
        return RatFunc(num, den)

    def eval_at(self, assignment: dict) -> "RatFunc":
        """Substitute field elements for a subset of the variables."""
        if not assignment:
            return self
        den = self.den.eval_partial(assignment)
        if den.is_zero:
            raise DenominatorVanishes("substitution zeroes the denominator")
        num = self.num.eval_partial(assignment)
        return normalize(num, den)

    def __str__(self) -> str:
        if self.den.is_const and not self.den.is_zero and self.den.const_value() == self.field.one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def normalize(num: Poly, den: Poly) -> RatFunc:
    """Canonicalize num/den: reduced, denominator monic, zero as 0/1."""
    if den.is_zero:
        raise ZeroDenominator("denominator is zero")
    if num.is_zero:
        return RatFunc(num, Poly.one(num.field))
    if den.is_const:
        c = den.const_value()
        if c == num.field.one:
            return RatFunc(num, den)
        return RatFunc(num.scale(num.field.one / c), Poly.one(num.field))
    g = poly_gcd(num, den)
    if not g.is_const:
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    if den.is_const:
        c = den.const_value()
        return RatFunc(num.scale(num.field.one / c), Poly.one(num.field))
    lc = den.leading_coeff()
    if lc != den.field.one:
        inv = den.field.one / lc
        num = num.scale(inv)
        den = den.scale(inv)
    return RatFunc(num, den)


# ---------------------------------------------------------------------------
# Text grammar: variables x<k>, u<k>, t<k>; integer literals; + - * / ^ ( ).

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xut])(\d+)|([()+\-*/^]))")


def _tokenize(s: str):
    pos = 0
    tokens = []
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if m is None:
            if s[pos:].strip() == "":
                break
            raise ParseError(f"bad character at position {pos}: {s[pos:pos + 10]!r}")
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            idx = int(m.group(3))
            if idx < 1:
                raise ParseError(f"variable index must be >= 1: {m.group(0)!r}")
            tokens.append(("var", Var(FAMILY_CHARS.index(m.group(2)), idx)))
        else:
            tokens.append((m.group(4), None))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, field):
        self.tokens = tokens
        self.pos = 0
        self.field = field

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self) -> RatFunc:
        val = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RatFunc:
        val = self.unary()
        while self.peek() in ("*", "/"):
            op, _ = self.next()
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self) -> RatFunc:
        if self.peek() == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            neg = False
            if kind == "-":
                neg = True
                kind, val = self.next()
            if kind != "int":
                raise ParseError("exponent must be an integer literal")
            return base ** (-val if neg else val)
        return base

    def atom(self) -> RatFunc:
        kind, val = self.next()
        if kind == "int":
            return RatFunc.const(self.field, val)
        if kind == "var":
            return RatFunc.variable(self.field, val)
        if kind == "(":
            inner = self.expr()
            kind, _ = self.next()
            if kind != ")":
                raise ParseError("missing closing parenthesis")
            return inner
        raise ParseError(f"unexpected token {kind!r}")


def parse_ratfunc(s: str, field=QQ) -> RatFunc:
    """Parse the text grammar into a canonical rational function."""
    parser = _Parser(_tokenize(s), field)
    val = parser.expr()
    if parser.peek() != "end":
        raise ParseError(f"trailing input near token {parser.pos}")
    return val
