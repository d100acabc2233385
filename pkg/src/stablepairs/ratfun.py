"""Exact multivariate polynomial and rational-function arithmetic over Q.

Values live in the field of rational functions in equivariant parameters
l0, l1, l2, l3 (or a prefix/extension of that list).  Everything is exact:
coefficients are arbitrary-precision :class:`fractions.Fraction`, there is no
floating point anywhere, and every value has a single canonical form so that
printed output is reproducible byte-for-byte.

Canonical forms
---------------
* ``Poly``: sparse map from exponent tuples to nonzero Fractions; term order
  is graded lexicographic with l0 > l1 > l2 > l3.
* ``RatFun``: reduced fraction num/den with gcd(num, den) = 1, denominator an
  integer-primitive polynomial with positive leading coefficient (rational
  content is pushed into the numerator).

A factored fast path (:class:`FactoredRatFun`, :func:`sum_factored`) handles
the hot loops, where every factor is a linear form: products are kept as
multisets of primitive linear forms plus a rational scalar, and sums are
combined over a common denominator with trial division instead of generic
polynomial gcd.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _int_gcd, lcm as _int_lcm

__all__ = [
    "Poly",
    "RatFun",
    "FactoredRatFun",
    "PoleOrderError",
    "poly_gcd",
    "specialize",
    "residue_at",
    "sum_factored",
    "poly_str",
    "poly_parse",
    "ratfun_str",
    "ratfun_parse",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PoleOrderError(ArithmeticError):
    """Raised when a residue is requested at a pole of order two or more."""


def _grlex_key(mono):
    """Sort key for graded lex order with variable 0 highest.

    Within a fixed total degree, the tuple itself compares lexicographically;
    a larger exponent on an earlier variable wins, which is exactly lex with
    l0 > l1 > l2 > l3.
    """
    return (sum(mono), mono)


class Poly:
    """Multivariate polynomial over Q with a fixed number of variables.

    Immutable by convention: no method mutates ``self``; the coefficient map
    must not be modified after construction.
    """

    __slots__ = ("arity", "coeffs", "_hash")

    def __init__(self, arity, coeffs=None):
        self.arity = int(arity)
        clean = {}
        if coeffs:
            for mono, c in coeffs.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if len(mono) != self.arity:
                    raise ValueError(
                        f"monomial {mono} has arity {len(mono)}, expected {self.arity}"
                    )
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in monomial {mono}")
                clean[tuple(mono)] = c
        self.coeffs = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, arity):
        return cls(arity)

    @classmethod
    def constant(cls, value, arity):
        value = Fraction(value)
        if value == 0:
            return cls(arity)
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def one(cls, arity):
        return cls.constant(1, arity)

    @classmethod
    def variable(cls, index, arity):
        if not 0 <= index < arity:
            raise ValueError(f"variable index {index} out of range for arity {arity}")
        mono = tuple(1 if i == index else 0 for i in range(arity))
        return cls(arity, {mono: _ONE})

    @classmethod
    def linear_form(cls, coefficients, arity=None):
        """The linear polynomial sum_i coefficients[i] * l_i."""
        coefficients = tuple(coefficients)
        if arity is None:
            arity = len(coefficients)
        if len(coefficients) != arity:
            raise ValueError("coefficient vector length must match arity")
        coeffs = {}
        for i, c in enumerate(coefficients):
            c = Fraction(c)
            if c != 0:
                mono = tuple(1 if j == i else 0 for j in range(arity))
                coeffs[mono] = c
        return cls(arity, coeffs)

    # -- basic structure ----------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self):
        return all(sum(m) == 0 for m in self.coeffs)

    def constant_value(self):
        if not self.coeffs:
            return _ZERO
        [(mono, c)] = self.coeffs.items()
        if sum(mono) != 0:
            raise ValueError("polynomial is not constant")
        return c

    def total_degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    def leading_monomial(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.coeffs, key=_grlex_key)

    def leading_coeff(self):
        return self.coeffs[self.leading_monomial()]

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.arity == other.arity
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({poly_str(self)})"

    # -- ring operations ----------------------------------------------------

    def _check_arity(self, other):
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        self._check_arity(other)
        coeffs = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            s = coeffs.get(mono, _ZERO) + c
            if s == 0:
                coeffs.pop(mono, None)
            else:
                coeffs[mono] = s
        out = Poly.__new__(Poly)
        out.arity = self.arity
        out.coeffs = coeffs
        out._hash = None
        return out

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.arity = self.arity
        out.coeffs = {m: -c for m, c in self.coeffs.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_arity(other)
        coeffs = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = coeffs.get(mono, _ZERO) + c1 * c2
                if s == 0:
                    coeffs.pop(mono, None)
                else:
                    coeffs[mono] = s
        out = Poly.__new__(Poly)
        out.arity = self.arity
        out.coeffs = coeffs
        out._hash = None
        return out

    __rmul__ = __mul__

    def scale(self, factor):
        factor = Fraction(factor)
        if factor == 0:
            return Poly(self.arity)
        out = Poly.__new__(Poly)
        out.arity = self.arity
        out.coeffs = {m: c * factor for m, c in self.coeffs.items()}
        out._hash = None
        return out

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.arity)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- content / primitive part -------------------------------------------

    def content(self):
        """Positive rational content: gcd of numerators / lcm of denominators."""
        if not self.coeffs:
            return _ZERO
        num = 0
        den = 1
        for c in self.coeffs.values():
            num = _int_gcd(num, abs(c.numerator))
            den = _int_lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """self / content(): integer coefficients with gcd one, sign kept."""
        cont = self.content()
        if cont in (0, 1):
            return self
        return self.scale(1 / cont)

    def monic_sign(self):
        """+1 or -1: the sign of the leading coefficient (0 for zero)."""
        if not self.coeffs:
            return 0
        return 1 if self.leading_coeff() > 0 else -1

    # -- substitution ---------------------------------------------------------

    def subs(self, assignments):
        """Substitute variables by Fractions or same-arity polynomials."""
        if not assignments:
            return self
        for v in assignments:
            if not 0 <= v < self.arity:
                raise ValueError(f"assignment for variable {v} out of range")
        result = Poly(self.arity)
        for mono, c in self.coeffs.items():
            scalar = c
            poly_factor = None
            residual = list(mono)
            for v, value in assignments.items():
                e = mono[v]
                if e == 0:
                    continue
                residual[v] = 0
                if isinstance(value, Poly):
                    if value.arity != self.arity:
                        raise ValueError("substituted polynomial has wrong arity")
                    piece = value**e
                    poly_factor = piece if poly_factor is None else poly_factor * piece
                else:
                    scalar = scalar * (Fraction(value) ** e)
            term = Poly(self.arity, {tuple(residual): scalar})
            if poly_factor is not None:
                term = term * poly_factor
            result = result + term
        return result

    def extended(self, new_arity):
        """Embed into a ring with more variables (same variable indices)."""
        if new_arity < self.arity:
            raise ValueError("cannot shrink arity")
        if new_arity == self.arity:
            return self
        pad = (0,) * (new_arity - self.arity)
        return Poly(new_arity, {m + pad: c for m, c in self.coeffs.items()})

    # -- division --------------------------------------------------------------

    def try_divide(self, divisor):
        """Exact quotient self/divisor, or None when divisor does not divide."""
        self._check_arity(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        lead_d = divisor.leading_monomial()
        lc_d = divisor.coeffs[lead_d]
        remainder = dict(self.coeffs)
        quotient = {}
        while remainder:
            lead_r = max(remainder, key=_grlex_key)
            shift = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(e < 0 for e in shift):
                return None
            factor = remainder[lead_r] / lc_d
            quotient[shift] = factor
            for m, c in divisor.coeffs.items():
                mono = tuple(a + b for a, b in zip(m, shift))
                s = remainder.get(mono, _ZERO) - factor * c
                if s == 0:
                    remainder.pop(mono, None)
                else:
                    remainder[mono] = s
        return Poly(self.arity, quotient)

    def exact_div(self, divisor):
        q = self.try_divide(divisor)
        if q is None:
            raise ValueError("inexact polynomial division")
        return q

    # -- univariate view along one variable --------------------------------------

    def degree_in(self, var):
        if not self.coeffs:
            return -1
        return max(m[var] for m in self.coeffs)

    def coeff_in(self, var, power):
        """Coefficient of l_var**power, as a Poly with exponent zero on var."""
        coeffs = {}
        for m, c in self.coeffs.items():
            if m[var] == power:
                mono = tuple(0 if i == var else e for i, e in enumerate(m))
                coeffs[mono] = coeffs.get(mono, _ZERO) + c
        return Poly(self.arity, coeffs)

    def used_variables(self):
        used = set()
        for m in self.coeffs:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def shift_var(self, var, amount):
        """Multiply by l_var**amount (amount >= 0)."""
        if amount == 0:
            return self
        coeffs = {}
        for m, c in self.coeffs.items():
            mono = tuple(e + amount if i == var else e for i, e in enumerate(m))
            coeffs[mono] = c
        return Poly(self.arity, coeffs)


def _poly_str_terms(p, names):
    parts = []
    for mono in sorted(p.coeffs, key=_grlex_key, reverse=True):
        c = p.coeffs[mono]
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        parts.append((c < 0, text))
    return parts


def poly_str(p, prefix="l"):
    """Canonical text form: graded-lex descending terms, coefficients p/q."""
    if p.is_zero():
        return "0"
    names = [f"{prefix}{i}" for i in range(p.arity)]
    parts = _poly_str_terms(p, names)
    out = []
    for idx, (negative, text) in enumerate(parts):
        if idx == 0:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)


_TERM_SPLIT = re.compile(r"(?=[+-])")
_FACTOR_RE = re.compile(r"^([a-zA-Z]+)(\d+)(?:\^(-?\d+))?$")


def poly_parse(text, arity=4, prefix="l"):
    """Parse the canonical polynomial text form (inverse of poly_str)."""
    text = text.strip()
    if text in ("0", "-0", "+0"):
        return Poly(arity)
    compact = text.replace(" ", "")
    result = Poly(arity)
    for chunk in _TERM_SPLIT.split(compact):
        if not chunk:
            continue
        sign = _ONE
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -_ONE
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in polynomial text {text!r}")
        coeff = sign
        mono = [0] * arity
        factors = chunk.split("*")
        start = 0
        # Leading numeric factor (possibly p/q).
        if factors and re.fullmatch(r"\d+(?:/\d+)?", factors[0]):
            coeff *= Fraction(factors[0])
            start = 1
        for factor in factors[start:]:
            m = _FACTOR_RE.match(factor)
            if not m or m.group(1) != prefix:
                raise ValueError(f"bad factor {factor!r} in polynomial text {text!r}")
            index = int(m.group(2))
            exponent = int(m.group(3)) if m.group(3) else 1
            if exponent < 0:
                raise ValueError("negative exponents are not polynomial")
            if index >= arity:
                raise ValueError(f"variable {prefix}{index} exceeds arity {arity}")
            mono[index] += exponent
        result = result + Poly(arity, {tuple(mono): coeff})
    return result


# -- polynomial gcd ------------------------------------------------------------


def _content_gcd(a, b):
    """gcd of two nonnegative rationals: gcd(p1/q1, p2/q2) = gcd(p1,p2)/lcm(q1,q2)."""
    if a == 0:
        return b
    if b == 0:
        return a
    return Fraction(
        _int_gcd(a.numerator, b.numerator), _int_lcm(a.denominator, b.denominator)
    )


def _pseudo_rem(f, g, var):
    """Pseudo-remainder of f by g in the main variable var.

    Returns r with lc(g)**(deg f - deg g + 1) * f = q*g + r and deg_var r < deg_var g.
    Coefficients stay in the subring generated by those of f and g.
    """
    dg = g.degree_in(var)
    lc_g = g.coeff_in(var, dg)
    r = f
    owed = f.degree_in(var) - dg + 1
    while not r.is_zero() and r.degree_in(var) >= dg:
        dr = r.degree_in(var)
        lc_r = r.coeff_in(var, dr)
        r = lc_g * r - (lc_r * g).shift_var(var, dr - dg)
        owed -= 1
    # When the degree drops by more than one per step, the identity still owes
    # factors of lc_g on the remainder.
    for _ in range(max(owed, 0)):
        r = lc_g * r
    return r


def _univariate_content(p, var):
    """gcd of the coefficient polynomials of p viewed in the variable var."""
    cont = None
    for power in range(p.degree_in(var) + 1):
        c = p.coeff_in(var, power)
        if c.is_zero():
            continue
        cont = c if cont is None else poly_gcd(cont, c)
        if cont.is_constant():
            break
    return cont


def _primitive_part_in(p, var):
    cont = _univariate_content(p, var)
    return p.exact_div(cont), cont


def _subresultant_gcd(a, b, var):
    """gcd of a, b (both primitive in var, positive degree), via the
    subresultant polynomial remainder sequence."""
    arity = a.arity
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    f, g = a, b
    g_coeff = None  # lc of previous divisor; None means 1 (first round)
    h_coeff = None
    while True:
        delta = f.degree_in(var) - g.degree_in(var)
        rem = _pseudo_rem(f, g, var)
        if rem.is_zero():
            pp, _ = _primitive_part_in(g, var)
            return pp
        if rem.degree_in(var) == 0:
            return Poly.one(arity)
        if g_coeff is None:
            divisor = None
        else:
            divisor = g_coeff
            for _ in range(delta):
                divisor = divisor * h_coeff
        f, g = g, (rem if divisor is None else rem.exact_div(divisor))
        g_coeff = f.coeff_in(var, f.degree_in(var))
        if h_coeff is None:
            h_coeff = g_coeff**delta if delta > 0 else Poly.one(arity)
        elif delta == 1:
            h_coeff = g_coeff
        elif delta > 1:
            h_coeff = (g_coeff**delta).exact_div(h_coeff ** (delta - 1))
        # delta == 0 leaves h unchanged


def poly_gcd(a, b):
    """A gcd of a and b, normalized to positive leading coefficient.

    The rational contents contribute gcd(c_a, c_b) = gcd of numerators over
    lcm of denominators, so e.g. gcd(2*l0*l3, 4*l0^2) = 2*l0.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.arity != b.arity:
        raise ValueError("arity mismatch in poly_gcd")
    if a.is_zero():
        return _normalize_gcd(b)
    if b.is_zero():
        return _normalize_gcd(a)
    cont = _content_gcd(a.content(), b.content())
    pa = a.primitive()
    pb = b.primitive()
    if pa.is_constant() or pb.is_constant():
        return Poly.constant(cont, a.arity)
    used = pa.used_variables() | pb.used_variables()
    var = min(used)
    if pa.degree_in(var) == 0 or pb.degree_in(var) == 0:
        # The main variable is missing from one input: gcd lives in the
        # coefficient ring of that input.
        if pa.degree_in(var) != 0:
            pa, pb = pb, pa
        g = pa
        for power in range(pb.degree_in(var) + 1):
            c = pb.coeff_in(var, power)
            if c.is_zero():
                continue
            g = poly_gcd(g, c)
            if g.is_constant():
                break
        return _normalize_gcd(g.scale(cont / g.content()))
    ppa, conta = _primitive_part_in(pa, var)
    ppb, contb = _primitive_part_in(pb, var)
    cont_part = poly_gcd(conta, contb)
    gcd_part = _subresultant_gcd(ppa, ppb, var)
    gcd_part, _ = _primitive_part_in(gcd_part, var)
    g = cont_part * gcd_part
    return _normalize_gcd(g.scale(cont / g.content()))


def _normalize_gcd(p):
    """Scale to positive leading coefficient (gcd is defined up to units)."""
    if p.is_zero():
        raise ValueError("gcd normalization of zero")
    if p.monic_sign() < 0:
        return -p
    return p


# -- rational functions ---------------------------------------------------------


class RatFun:
    """Reduced fraction of polynomials with canonical denominator.

    Invariants: den != 0; gcd(num, den) = 1 (poly part and content); den is an
    integer-primitive polynomial with positive leading coefficient.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.arity)
        reduced = _reduce_fraction(num, den)
        self.num, self.den = reduced
        self._hash = None

    @classmethod
    def _trusted(cls, num, den):
        """Internal: build without gcd reduction (num/den already coprime).

        Still normalizes the denominator to integer-primitive positive-leading
        form so equality and printing stay canonical.
        """
        out = cls.__new__(cls)
        if num.is_zero():
            out.num = Poly(num.arity)
            out.den = Poly.one(num.arity)
            out._hash = None
            return out
        scale = den.content() * den.monic_sign()
        if scale != 1:
            den = den.scale(1 / scale)
            num = num.scale(1 / scale)
        out.num = num
        out.den = den
        out._hash = None
        return out

    @classmethod
    def zero(cls, arity=4):
        return cls(Poly(arity))

    @classmethod
    def one(cls, arity=4):
        return cls(Poly.one(arity))

    @classmethod
    def constant(cls, value, arity=4):
        return cls(Poly.constant(value, arity))

    @classmethod
    def variable(cls, index, arity=4):
        return cls(Poly.variable(index, arity))

    @property
    def arity(self):
        return self.num.arity

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.constant(other, self.arity)
        return (
            isinstance(other, RatFun)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFun({ratfun_str(self)})"

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFun.constant(other, self.arity)
        if isinstance(other, Poly):
            return RatFun(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        num = self.num * other.den + other.num * self.den
        return RatFun(num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFun.__new__(RatFun)
        out.num = -self.num
        out.den = self.den
        out._hash = None
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent):
        if exponent < 0:
            return (RatFun.one(self.arity) / self) ** (-exponent)
        out = RatFun.one(self.arity)
        for _ in range(exponent):
            out = out * self
        return out

    def extended(self, new_arity):
        return RatFun._trusted(self.num.extended(new_arity), self.den.extended(new_arity))

    def as_fraction(self):
        """The value as a Fraction, when constant."""
        return self.num.constant_value() / self.den.constant_value()


def _reduce_fraction(num, den):
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.arity != den.arity:
        raise ValueError("arity mismatch between numerator and denominator")
    if num.is_zero():
        return Poly(num.arity), Poly.one(num.arity)
    g = poly_gcd(num, den)
    if not (g.is_constant() and g.constant_value() == 1):
        num = num.exact_div(g)
        den = den.exact_div(g)
    scale = den.content() * den.monic_sign()
    if scale != 1:
        den = den.scale(1 / scale)
        num = num.scale(1 / scale)
    return num, den


def specialize(f, assignments):
    """Substitute variables of a RatFun by rationals or polynomials.

    Raises ZeroDivisionError when the denominator vanishes identically under
    the substitution.
    """
    num = f.num.subs(assignments)
    den = f.den.subs(assignments)
    if den.is_zero():
        raise ZeroDivisionError("denominator vanishes identically under substitution")
    return RatFun(num, den)


def _linear_multiplicity(p, var, pole):
    """Largest k with (l_var - pole)**k dividing p, plus the cofactor."""
    k = 0
    while not p.is_zero() and p.subs({var: pole}).is_zero():
        p = _div_linear_exact(p, var, pole)
        k += 1
    return k, p


def _div_linear_exact(p, var, pole):
    """Exact division of p by (l_var - pole) via synthetic (Horner) division."""
    degree = p.degree_in(var)
    coeffs = [p.coeff_in(var, power) for power in range(degree + 1)]
    quotient = [None] * degree
    carry = coeffs[degree]
    for power in range(degree - 1, -1, -1):
        quotient[power] = carry
        carry = coeffs[power] + carry.scale(pole)
    if not carry.is_zero():
        raise ValueError("inexact division by linear factor")
    out = Poly(p.arity)
    for power, c in enumerate(quotient):
        out = out + c.shift_var(var, power)
    return out


def residue_at(f, pole, var=0):
    """Residue of f at l_var = pole, as a RatFun in the remaining variables.

    Zero when there is no pole; PoleOrderError when the pole order is two or
    more (the caller must fall back to full simplification).
    """
    pole = Fraction(pole)
    order, den_rest = _linear_multiplicity(f.den, var, pole)
    if order == 0:
        return RatFun.zero(f.arity)
    if order >= 2:
        raise PoleOrderError(
            f"pole of order {order} at variable {var} = {pole}; residue undefined"
        )
    num_at = f.num.subs({var: pole})
    den_at = den_rest.subs({var: pole})
    return RatFun(num_at, den_at)


# -- factored fast path ----------------------------------------------------------


def _normalize_form(coefficients):
    """Normalize a linear form to primitive integers with positive first entry.

    Returns (unit, form) with  sum(coefficients[i] * l_i) == unit * form·l,
    where form is an integer tuple with content one and positive first nonzero
    entry.  The zero form is rejected.
    """
    fracs = [Fraction(c) for c in coefficients]
    if all(c == 0 for c in fracs):
        raise ValueError("zero linear form has no normalization")
    den_lcm = 1
    for c in fracs:
        den_lcm = _int_lcm(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in fracs]
    g = 0
    for v in ints:
        g = _int_gcd(g, abs(v))
    lead = next(v for v in ints if v != 0)
    sign = 1 if lead > 0 else -1
    form = tuple(v // (g * sign) for v in ints)
    unit = Fraction(g * sign, den_lcm)
    return unit, form


class FactoredRatFun:
    """A rational function kept as scalar * prod(linear_form ** exponent).

    Forms are primitive integer tuples (see _normalize_form); exponents are
    nonzero integers, negative for denominator factors.  This is the value
    representation for individual fixed-point contributions, where every
    factor of the equivariant Euler class is a linear form.
    """

    __slots__ = ("scalar", "forms")

    def __init__(self, scalar=_ONE, forms=None):
        self.scalar = Fraction(scalar)
        self.forms = dict(forms) if forms else {}

    @classmethod
    def one(cls):
        return cls()

    def times_scalar(self, value):
        return FactoredRatFun(self.scalar * value, self.forms)

    def times_form(self, coefficients, exponent=1):
        """Multiply by (linear form)**exponent, normalizing the form."""
        if exponent == 0:
            return self
        unit, form = _normalize_form(coefficients)
        forms = dict(self.forms)
        e = forms.get(form, 0) + exponent
        if e == 0:
            forms.pop(form, None)
        else:
            forms[form] = e
        return FactoredRatFun(self.scalar * unit**exponent, forms)

    def is_zero(self):
        return self.scalar == 0

    def to_ratfun(self, arity):
        if self.scalar == 0:
            return RatFun.zero(arity)
        num = {(0,) * arity: 1}
        den = {(0,) * arity: 1}
        for form, e in sorted(self.forms.items()):
            target = num if e > 0 else den
            expanded = _expand_form_power(target, form, abs(e), arity)
            if e > 0:
                num = expanded
            else:
                den = expanded
        num_poly = Poly(arity, {m: self.scalar * c for m, c in num.items()})
        den_poly = Poly(arity, {m: Fraction(c) for m, c in den.items()})
        return RatFun._trusted(num_poly, den_poly)

    def __repr__(self):
        return f"FactoredRatFun({self.scalar}, {self.forms})"


def _expand_form_power(acc, form, power, arity):
    """Multiply an integer-coefficient monomial dict by (form)**power."""
    unit_monos = []
    for i, c in enumerate(form):
        if c:
            mono = tuple(1 if j == i else 0 for j in range(arity))
            unit_monos.append((mono, c))
    for _ in range(power):
        nxt = {}
        for m1, c1 in acc.items():
            for m2, c2 in unit_monos:
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = nxt.get(mono, 0) + c1 * c2
                if s:
                    nxt[mono] = s
                elif mono in nxt:
                    del nxt[mono]
        acc = nxt
    return acc


def sum_factored(terms, arity):
    """Sum FactoredRatFun terms over a common denominator, fully reduced.

    Because all denominator factors are irreducible linear forms, reducing by
    trial division against each form is a complete reduction; no generic gcd
    runs in this path.
    """
    terms = [t for t in terms if not t.is_zero()]
    if not terms:
        return RatFun.zero(arity)
    need = {}
    for t in terms:
        for form, e in t.forms.items():
            if e < 0:
                need[form] = max(need.get(form, 0), -e)
    den_order = sorted(need)
    total = {}
    for t in terms:
        numer = {(0,) * arity: 1}
        for form, e in sorted(t.forms.items()):
            lift = e + need.get(form, 0)
            if lift < 0:
                raise AssertionError("common denominator failed to clear a pole")
            if lift:
                numer = _expand_form_power(numer, form, lift, arity)
        for form in den_order:
            if form not in t.forms and need[form]:
                numer = _expand_form_power(numer, form, need[form], arity)
        # fold the scalar in while accumulating as Fractions
        for mono, c in numer.items():
            s = total.get(mono, _ZERO) + t.scalar * c
            if s == 0:
                total.pop(mono, None)
            else:
                total[mono] = s
    if not total:
        return RatFun.zero(arity)
    num_poly = Poly(arity, total)
    remaining = dict(need)
    for form in den_order:
        form_poly = Poly.linear_form(form, arity)
        while remaining[form] > 0:
            q = num_poly.try_divide(form_poly)
            if q is None:
                break
            num_poly = q
            remaining[form] -= 1
    den = {(0,) * arity: 1}
    for form in den_order:
        if remaining[form]:
            den = _expand_form_power(den, form, remaining[form], arity)
    den_poly = Poly(arity, {m: Fraction(c) for m, c in den.items()})
    return RatFun._trusted(num_poly, den_poly)


# -- text format -------------------------------------------------------------------


def ratfun_str(f, prefix="l"):
    """Canonical text: "0", "(num)" for polynomials, else "(num)/(den)"."""
    if f.is_zero():
        return "0"
    num = poly_str(f.num, prefix)
    if f.den.is_constant() and f.den.constant_value() == 1:
        return f"({num})"
    return f"({num})/({poly_str(f.den, prefix)})"


def ratfun_parse(text, arity=4, prefix="l"):
    """Parse the canonical rational-function text form (inverse of ratfun_str)."""
    text = text.strip()
    if text == "0":
        return RatFun.zero(arity)
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
    if m:
        num = poly_parse(m.group(1), arity, prefix)
        den = poly_parse(m.group(2), arity, prefix)
        return RatFun(num, den)
    m = re.fullmatch(r"\((.*)\)", text)
    if m:
        return RatFun(poly_parse(m.group(1), arity, prefix))
    return RatFun(poly_parse(text, arity, prefix))
