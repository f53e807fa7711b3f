"""Polynomials and rational functions in one variable over a finite field.

Coefficients are stored ascending with no trailing zeros; the zero
polynomial is the empty tuple.  Rational functions are kept in lowest
terms with a monic denominator, so valuations can be read off from
multiplicities.  Everything downstream (places, curves, local expansions)
speaks these two types.
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import ValidationError


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [field.one()])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def from_ints(cls, field, int_coeffs):
        return cls(field, [field.from_int(c) for c in int_coeffs])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self):
        if self.is_zero():
            raise ValidationError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else self.field.zero()

    def __eq__(self, other):
        return (isinstance(other, Poly) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [f.zero()] * (n - len(self.coeffs))
        b = list(other.coeffs) + [f.zero()] * (n - len(other.coeffs))
        return Poly(f, [f.add(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(f)
        out = [f.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if f.is_zero(x):
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(x, y))
        return Poly(f, out)

    def scale(self, c):
        f = self.field
        return Poly(f, [f.mul(c, x) for x in self.coeffs])

    def __pow__(self, e):
        result = Poly.one(self.field)
        cur = self
        while e:
            if e & 1:
                result = result * cur
            cur = cur * cur
            e >>= 1
        return result

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(f), self
        quo = [f.zero()] * (dq + 1)
        inv_lead = f.inv(other.leading())
        for shift in range(dq, -1, -1):
            top = shift + other.degree
            if top >= len(rem) or f.is_zero(rem[top]):
                continue
            c = f.mul(rem[top], inv_lead)
            quo[shift] = c
            for i, oc in enumerate(other.coeffs):
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, oc))
        return Poly(f, quo), Poly(f, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def invmod(self, mod: "Poly") -> "Poly":
        """Inverse of self modulo mod, when gcd(self, mod) = 1."""
        f = self.field
        r0, r1 = mod, self % mod
        s0, s1 = Poly.zero(f), Poly.one(f)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise ValidationError("element is not invertible modulo the modulus")
        return (s0.scale(f.inv(r0.constant_term()))) % mod

    def evaluate(self, point, target_field=None):
        """Horner evaluation; coefficients are embedded into target_field
        when one is supplied (it must extend the coefficient field)."""
        tf = target_field or self.field
        acc = tf.zero()
        for c in reversed(self.coeffs):
            cc = tf.embed(c) if (target_field is not None and tf != self.field) else c
            acc = tf.add(tf.mul(acc, point), cc)
        return acc

    def map_coefficients(self, fn, new_field):
        return Poly(new_field, [fn(c) for c in self.coeffs])

    def valuation(self, pi: "Poly") -> int:
        """Multiplicity of the irreducible pi in self (self nonzero)."""
        if self.is_zero():
            raise ValidationError("valuation of the zero polynomial")
        v = 0
        cur = self
        while True:
            q, r = cur.divmod(pi)
            if not r.is_zero():
                return v
            v += 1
            cur = q

    def reversed_coeffs(self):
        """x^deg * self(1/x); nonzero constant term when self is nonzero."""
        return Poly(self.field, list(reversed(self.coeffs)))

    def __repr__(self):
        return f"Poly({render_poly(self)})"


def render_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    field = p.field
    parts = []
    for j in range(p.degree, -1, -1):
        c = p.coeffs[j]
        if field.is_zero(c):
            continue
        idx = field.element_index(c)
        if j == 0:
            parts.append(str(idx))
        else:
            tpow = var if j == 1 else f"{var}^{j}"
            parts.append(tpow if idx == 1 else f"{idx}*{tpow}")
    return "+".join(parts)


def parse_poly(field, text: str, var: str = "t") -> Poly:
    """Inverse of render_poly: integer coefficients index field elements."""
    text = text.replace(" ", "").replace("-", "+-")
    if not text:
        raise ValidationError("empty polynomial")
    coeffs: dict[int, int] = {}
    for part in text.split("+"):
        if not part:
            continue
        neg = part.startswith("-")
        if neg:
            part = part[1:]
        if var in part:
            coef_s, _, pow_s = part.partition(var)
            coef = int(coef_s.rstrip("*")) if coef_s else 1
            power = int(pow_s[1:]) if pow_s.startswith("^") else (1 if not pow_s else None)
            if power is None:
                raise ValidationError(f"cannot parse term {part!r}")
        else:
            coef = int(part)
            power = 0
        if neg:
            coef = -coef
        coeffs[power] = coeffs.get(power, 0) + coef
    size = max(coeffs) + 1 if coeffs else 0
    out = [field.zero()] * size
    for power, c in coeffs.items():
        if c < 0:
            out[power] = field.neg(field.element_from_index((-c) % field.order))
        else:
            out[power] = field.element_from_index(c % field.order)
    return Poly(field, out)


class RationalFunc:
    """num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        field = num.field
        if not num.is_zero():
            g = num.gcd(den)
            if g.degree > 0:
                num = num // g
                den = den // g
        else:
            den = Poly.one(field)
        lead = den.leading()
        if lead != field.one():
            inv = field.inv(lead)
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def of(cls, num: Poly, den: Poly | None = None):
        return cls(num, den if den is not None else Poly.one(num.field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def __eq__(self, other):
        return (isinstance(other, RationalFunc) and other.num == self.num
                and other.den == self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RationalFunc(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    def __neg__(self):
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RationalFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, e):
        if e < 0:
            return RationalFunc(self.den**(-e), self.num**(-e))
        return RationalFunc(self.num**e, self.den**e)

    def valuation_at(self, pi: Poly) -> int:
        """Order at the finite place pi (num and den are coprime)."""
        if self.is_zero():
            raise ValidationError("valuation of zero")
        v = self.num.valuation(pi)
        if v:
            return v
        return -self.den.valuation(pi)

    def valuation_at_infinity(self) -> int:
        if self.is_zero():
            raise ValidationError("valuation of zero")
        return self.den.degree - self.num.degree

    def reciprocal_substitution(self) -> "RationalFunc":
        """The same function written in u = 1/t, i.e. f(1/u)."""
        dn, dd = self.num.degree, self.den.degree
        num_u = self.num.reversed_coeffs()
        den_u = self.den.reversed_coeffs()
        u = Poly.x(self.field)
        if dd >= dn:
            return RationalFunc(num_u * u**(dd - dn), den_u)
        return RationalFunc(num_u, den_u * u**(dn - dd))

    def evaluate(self, point, target_field=None):
        tf = target_field or self.field
        den_val = self.den.evaluate(point, target_field)
        if tf.is_zero(den_val):
            raise ZeroDivisionError("evaluation at a pole")
        return tf.div(self.num.evaluate(point, target_field), den_val)

    def __repr__(self):
        if self.den.degree == 0:
            return f"({render_poly(self.num)})"
        return f"({render_poly(self.num)})/({render_poly(self.den)})"


# ---------------------------------------------------------------------------
# irreducible enumeration (the finite places of F_q(t))

@lru_cache(maxsize=None)
def _monic_irreducibles_cached(field, degree):
    """All monic irreducibles of exact degree, in element-index order."""
    out = []
    total = field.order**degree
    for val in range(total):
        v = val
        coeffs = []
        for _ in range(degree):
            coeffs.append(field.element_from_index(v % field.order))
            v //= field.order
        coeffs.append(field.one())
        poly = Poly(field, coeffs)
        if _is_irreducible(poly):
            out.append(poly)
    return tuple(out)


def monic_irreducibles(field, degree: int):
    return list(_monic_irreducibles_cached(field, degree))


def monic_irreducibles_up_to(field, max_degree: int):
    out = []
    for d in range(1, max_degree + 1):
        out.extend(monic_irreducibles(field, d))
    return out


def _is_irreducible(poly: Poly) -> bool:
    d = poly.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    field = poly.field
    x = Poly.x(field)
    # x^(q^d) = x mod poly, and gcd(x^(q^(d/l)) - x, poly) = 1 for primes l | d
    def x_q_power(levels):
        cur = x % poly
        for _ in range(levels):
            cur = _pow_mod(cur, field.order, poly)
        return cur

    if not (x_q_power(d) - x % poly).is_zero():
        return False
    dd = d
    primes = set()
    t = 2
    while t * t <= dd:
        if dd % t == 0:
            primes.add(t)
            while dd % t == 0:
                dd //= t
        t += 1
    if dd > 1:
        primes.add(dd)
    for ell in primes:
        g = (x_q_power(d // ell) - x % poly).gcd(poly)
        if g.degree > 0:
            return False
    return True


def _pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.field)
    cur = base % mod
    while e:
        if e & 1:
            result = (result * cur) % mod
        cur = (cur * cur) % mod
        e >>= 1
    return result


def factor_with_bounded_degree(poly: Poly, max_degree: int):
    """Trial division by irreducibles of degree <= max_degree.

    Returns (unit constant, {irreducible: multiplicity}, cofactor); the
    cofactor is monic and carries whatever was not split off (1 when the
    factorization is complete within the bound).
    """
    if poly.is_zero():
        raise ValidationError("cannot factor the zero polynomial")
    field = poly.field
    unit = poly.leading()
    rest = poly.monic()
    factors = {}
    for d in range(1, max_degree + 1):
        if rest.degree < d:
            break
        for pi in monic_irreducibles(field, d):
            if rest.degree < d:
                break
            mult = 0
            while True:
                q, r = rest.divmod(pi)
                if not r.is_zero():
                    break
                rest = q
                mult += 1
            if mult:
                factors[pi] = mult
    return unit, factors, rest
