"""Exact finite field arithmetic for the function-field oracle.

Fields are towers: GF(p) is a prime field whose elements are plain ints;
an extension field holds a monic irreducible modulus over its base field
and represents elements as coefficient tuples over the base.  Residue
fields of places reuse the same machinery with the place's own polynomial
as modulus, so evaluation "mod pi" needs no change of basis.

Moduli for the standard extensions GF(p^k) are shipped as a fixed table
(the lexicographically smallest monic irreducible, coefficient vector read
as a base-p integer), so arithmetic is reproducible run to run; moduli over
non-prime bases are derived at runtime by the same minimality rule and
cached.  Field sizes are capped at 4096 by default.
"""

from __future__ import annotations

from ..arith import is_prime
from ..errors import ResourceError, UnsupportedError, ValidationError

MAX_FIELD_SIZE = 4096

# (p, k) -> ascending coefficients of the canonical degree-k irreducible
# over GF(p), leading 1 included
IRREDUCIBLE_TABLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 1, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (3, 7): (2, 0, 1, 0, 0, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (5, 5): (1, 4, 0, 0, 0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (2, 0, 0, 1),
    (7, 4): (1, 1, 0, 0, 1),
    (11, 2): (1, 0, 1),
    (11, 3): (4, 1, 0, 1),
    (13, 2): (2, 0, 1),
    (13, 3): (2, 0, 0, 1),
}


class PrimeField:
    """GF(p) with elements represented as ints in 0..p-1."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
        self.char = p
        self.order = p
        self.degree_over_prime = 1

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k: int):
        return k % self.char

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return (a + b) % self.char

    def sub(self, a, b):
        return (a - b) % self.char

    def neg(self, a):
        return (-a) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def inv(self, a):
        if a % self.char == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.char - 2, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        return pow(a, e, self.char)

    def elements(self):
        return list(range(self.char))

    def element_index(self, a):
        return a % self.char

    def element_from_index(self, i):
        if not 0 <= i < self.order:
            raise ValidationError("element index out of range")
        return i

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("PrimeField", self.char))

    def __repr__(self):
        return f"GF({self.char})"


class ExtField:
    """Extension of a base field by a monic irreducible modulus.

    Elements are tuples of base-field elements of length = degree, in
    ascending powers of the generator.
    """

    def __init__(self, base, modulus):
        self.base = base
        mod = tuple(modulus)
        if len(mod) < 3 or mod[-1] != base.one():
            raise ValidationError("modulus must be monic of degree >= 2")
        self.modulus = mod
        self.degree = len(mod) - 1
        self.char = base.char
        self.order = base.order**self.degree
        self.degree_over_prime = base.degree_over_prime * self.degree

    def zero(self):
        return tuple([self.base.zero()] * self.degree)

    def one(self):
        return tuple([self.base.one()] + [self.base.zero()] * (self.degree - 1))

    def from_int(self, k: int):
        return self.embed(self.base.from_int(k))

    def embed(self, base_elem):
        return tuple([base_elem] + [self.base.zero()] * (self.degree - 1))

    def generator(self):
        zero, one = self.base.zero(), self.base.one()
        return tuple([zero, one] + [zero] * (self.degree - 2))

    def is_zero(self, a):
        return all(self.base.is_zero(c) for c in a)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        d = self.degree
        prod = [base.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        # reduce by the monic modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if base.is_zero(c):
                continue
            prod[k] = base.zero()
            for j in range(self.degree):
                prod[k - d + j] = base.sub(prod[k - d + j], base.mul(c, self.modulus[j]))
        return tuple(prod[:d])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        # extended euclid on coefficient lists over the base field
        base = self.base

        def deg(v):
            for i in range(len(v) - 1, -1, -1):
                if not base.is_zero(v[i]):
                    return i
            return -1

        def scale(v, c):
            return [base.mul(x, c) for x in v]

        def addmul(u, v, c, shift):
            out = list(u)
            while len(out) < len(v) + shift:
                out.append(base.zero())
            for i, x in enumerate(v):
                out[i + shift] = base.add(out[i + shift], base.mul(c, x))
            return out

        r0, r1 = list(self.modulus), list(a)
        s0, s1 = [base.zero()], [base.one()]
        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            c = base.neg(base.div(r0[d0], r1[d1]))
            r0 = addmul(r0, r1, c, d0 - d1)
            s0 = addmul(s0, s1, c, d0 - d1)
            if deg(r0) < deg(r1):
                r0, r1, s0, s1 = r1, r0, s1, s0
        if deg(r1) != 0:
            raise ValidationError("modulus is not irreducible")
        c = base.inv(r1[0])
        out = scale(s1, c)
        out = out[: self.degree] + [base.zero()] * max(0, self.degree - len(out))
        return tuple(out[: self.degree])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one()
        cur = a
        while e:
            if e & 1:
                result = self.mul(result, cur)
            cur = self.mul(cur, cur)
            e >>= 1
        return result

    def elements(self):
        out = [()]
        for _ in range(self.degree):
            out = [e + (c,) for e in out for c in self.base.elements()]
        # ascending index order: least-significant coordinate first
        return [tuple(e) for e in sorted(out, key=self._index_key)]

    def _index_key(self, a):
        return tuple(self.base.element_index(c) for c in reversed(a))

    def element_index(self, a):
        idx = 0
        for c in reversed(a):
            idx = idx * self.base.order + self.base.element_index(c)
        return idx

    def element_from_index(self, i):
        if not 0 <= i < self.order:
            raise ValidationError("element index out of range")
        coords = []
        for _ in range(self.degree):
            coords.append(self.base.element_from_index(i % self.base.order))
            i //= self.base.order
        return tuple(coords)

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("ExtField", self.base, self.modulus))

    def __repr__(self):
        return f"GF({self.order})"


def frobenius(field, a, power=1):
    """a^(p^power), the absolute Frobenius iterated."""
    return field.pow(a, field.char**power)


def absolute_trace(field, a) -> int:
    """Trace down to the prime field, returned as an int in 0..p-1."""
    total = field.zero()
    cur = a
    for _ in range(field.degree_over_prime):
        total = field.add(total, cur)
        cur = field.pow(cur, field.char)
    return _prime_component(field, total)


def _prime_component(field, a) -> int:
    while not isinstance(field, PrimeField):
        if any(not field.base.is_zero(c) for c in a[1:]):
            raise ValidationError("element is not in the prime subfield")
        a = a[0]
        field = field.base
    return a


def pth_root(field, a):
    """The unique p-th root in a finite field: a^(order/p)."""
    return field.pow(a, field.order // field.char)


def is_power_residue(field, a, ell: int) -> bool:
    """Whether a nonzero element is an ell-th power; needs ell | order - 1."""
    if field.is_zero(a):
        raise ValidationError("power residue test needs a nonzero element")
    if (field.order - 1) % ell:
        raise ValidationError(f"{ell} does not divide |F*| = {field.order - 1}")
    return field.pow(a, (field.order - 1) // ell) == field.one()


def multiplicative_order(field, a) -> int:
    if field.is_zero(a):
        raise ValidationError("zero has no multiplicative order")
    n = field.order - 1
    order = n
    d = 2
    remaining = n
    primes = []
    while d * d <= remaining:
        if remaining % d == 0:
            primes.append(d)
            while remaining % d == 0:
                remaining //= d
        d += 1
    if remaining > 1:
        primes.append(remaining)
    for p in primes:
        while order % p == 0 and field.pow(a, order // p) == field.one():
            order //= p
    return order


def primitive_root_of_unity(field, ell: int):
    """First element (in enumeration order) of multiplicative order ell."""
    if (field.order - 1) % ell:
        raise ValidationError(f"no {ell}-th roots of unity in {field!r}")
    for a in field.elements():
        if not field.is_zero(a) and multiplicative_order(field, a) == ell:
            return a
    raise ValidationError("unreachable: cyclic group has elements of every dividing order")


_field_cache: dict = {}


def GF(q: int, max_size: int = MAX_FIELD_SIZE):
    """The finite field with q elements (q a prime power up to the cap)."""
    if q in _field_cache:
        return _field_cache[q]
    if q > max_size:
        raise ResourceError(f"field size {q} exceeds the cap {max_size}")
    p, k = _prime_power(q)
    if k == 1:
        field = PrimeField(p)
    else:
        if (p, k) not in IRREDUCIBLE_TABLE:
            raise UnsupportedError(f"no shipped modulus for GF({p}^{k})")
        field = ExtField(PrimeField(p), [PrimeField(p).from_int(c)
                                         for c in IRREDUCIBLE_TABLE[(p, k)]])
    _field_cache[q] = field
    return field


def extension(field, degree: int, max_size: int = MAX_FIELD_SIZE):
    """Degree-m extension of a field, with deterministic modulus choice."""
    if degree == 1:
        return field
    if field.order**degree > max_size:
        raise ResourceError(
            f"field size {field.order}^{degree} exceeds the cap {max_size}")
    key = ("ext", field, degree)
    if key in _field_cache:
        return _field_cache[key]
    if isinstance(field, PrimeField) and (field.char, degree) in IRREDUCIBLE_TABLE:
        mod = [field.from_int(c) for c in IRREDUCIBLE_TABLE[(field.char, degree)]]
    else:
        mod = _canonical_irreducible(field, degree)
    ext = ExtField(field, mod)
    _field_cache[key] = ext
    return ext


def _prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise ValidationError("not a prime power")
            return p, k
    raise ValidationError("not a prime power")


def _canonical_irreducible(field, degree):
    """Smallest monic irreducible of the given degree, by element index."""
    indices = [0] * degree
    total = field.order**degree
    for val in range(total):
        v = val
        coeffs = []
        for _ in range(degree):
            coeffs.append(field.element_from_index(v % field.order))
            v //= field.order
        coeffs.append(field.one())
        if _is_irreducible_over(field, coeffs):
            return coeffs
    raise ValidationError("unreachable: irreducibles of every degree exist")


def _is_irreducible_over(field, coeffs):
    # x^(q^d) == x mod f, and x^(q^(d/l)) != x for prime l | d
    d = len(coeffs) - 1
    if d == 1:
        return True

    def polmod_pow_x(e_levels):
        # compute x^(q^e_levels) mod f by repeated q-power
        cur = [field.zero(), field.one()]
        for _ in range(e_levels):
            cur = _polmod_pow(field, cur, field.order, coeffs)
        return cur

    x = [field.zero(), field.one()]
    if _trim(field, _polsub(field, polmod_pow_x(d), x)):
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
        diff = _trim(field, _polsub(field, polmod_pow_x(d // ell), x))
        if not diff:
            return False
        if _poly_gcd_is_nonconstant(field, diff, coeffs):
            return False
    return True


def _trim(field, v):
    v = list(v)
    while v and field.is_zero(v[-1]):
        v.pop()
    return v


def _polsub(field, a, b):
    n = max(len(a), len(b))
    a = list(a) + [field.zero()] * (n - len(a))
    b = list(b) + [field.zero()] * (n - len(b))
    return [field.sub(x, y) for x, y in zip(a, b)]


def _polmulmod(field, a, b, mod):
    res = [field.zero()] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            res[i + j] = field.add(res[i + j], field.mul(x, y))
    return _polrem(field, res, mod)


def _polrem(field, a, mod):
    a = list(a)
    dm = len(mod) - 1
    lead_inv = field.inv(mod[-1])
    while True:
        a = _trim(field, a)
        if len(a) - 1 < dm:
            break
        c = field.mul(a[-1], lead_inv)
        shift = len(a) - 1 - dm
        for i, mc in enumerate(mod):
            a[shift + i] = field.sub(a[shift + i], field.mul(c, mc))
    return a


def _polmod_pow(field, base, e, mod):
    result = [field.one()]
    cur = _polrem(field, base, mod)
    while e:
        if e & 1:
            result = _polmulmod(field, result, cur, mod)
        cur = _polmulmod(field, cur, cur, mod)
        e >>= 1
    return result


def _poly_gcd_is_nonconstant(field, a, b):
    a, b = _trim(field, a), _trim(field, b)
    while b:
        a = _polrem(field, a, b)
        a, b = b, _trim(field, a)
    return len(a) - 1 > 0
