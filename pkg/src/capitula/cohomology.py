"""Group cohomology of finite abelian groups acting on finite abelian groups.

For a cyclic group of order n generated by s, the Tate groups are computed
from the two-term periodic resolution: with N = 1 + s + ... + s^(n-1),

    H^0_hat = ker(s - 1) / N M,      H^1 = ker N / (s - 1) M,

and H^2 is isomorphic to H^0_hat by periodicity.  For small non-cyclic
abelian groups, H^1 and H^2 come from the bar resolution: cochains are
functions G -> M (or G x G -> M) and the cocycle and coboundary conditions
are integer linear systems solved by lattice arithmetic, never by
enumerating maps.  The cost grows steeply with |G|, which is why the group
order is capped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .abelian import (
    FinAbGroup,
    diagonal_columns,
    finite_quotient,
    identity_matrix,
    mat_mul,
    preimage_generators,
)
from .errors import ResourceError, UnsupportedError, ValidationError

DEFAULT_GROUP_BOUND = 64


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("cyclic group order must be positive")

    @property
    def order(self):
        return self.n

    @property
    def generator_orders(self):
        return (self.n,)


@dataclass(frozen=True)
class AbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(x) for x in self.orders)
        if any(x < 1 for x in orders):
            raise ValidationError("generator orders must be positive")
        object.__setattr__(self, "orders", orders)

    @property
    def order(self):
        return prod(self.orders)

    @property
    def generator_orders(self):
        return self.orders


def _reduce_rows(mat, factors):
    return tuple(
        tuple(mat[i][j] % factors[i] for j in range(len(factors)))
        for i in range(len(factors))
    )


def _mat_eq_mod(a, b, factors):
    return all(
        (a[i][j] - b[i][j]) % factors[i] == 0
        for i in range(len(factors))
        for j in range(len(factors))
    )


def _mat_pow_mod(a, e, factors):
    k = len(factors)
    result = identity_matrix(k)
    base = [list(r) for r in a]
    while e:
        if e & 1:
            result = [list(r) for r in _reduce_rows(mat_mul(result, base), factors)]
        base = [list(r) for r in _reduce_rows(mat_mul(base, base), factors)]
        e >>= 1
    return result


@dataclass(frozen=True)
class GModule:
    """A finite abelian group with an action of a finite abelian group.

    action holds one integer matrix per group generator, acting on the
    module presentation Z^k / diag(d).  Each matrix must define an
    automorphism, the matrices must commute, and each must satisfy its
    generator order.
    """

    group: Cyclic | AbelianGroup
    module: FinAbGroup
    action: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        gens = self.group.generator_orders
        k = self.module.rank
        fs = self.module.invariant_factors
        mats = tuple(
            tuple(tuple(int(x) for x in row) for row in m) for m in self.action
        )
        if len(mats) != len(gens):
            raise ValidationError("need exactly one action matrix per group generator")
        reduced = []
        for m in mats:
            if len(m) != k or any(len(r) != k for r in m):
                raise ValidationError("action matrix has wrong shape")
            for i in range(k):
                for j in range(k):
                    if (fs[j] * m[i][j]) % fs[i]:
                        raise ValidationError("action matrix is not well-defined on the module")
            reduced.append(_reduce_rows(m, fs))
        ident = identity_matrix(k)
        for m, order in zip(reduced, gens):
            # satisfying the generator order forces invertibility: the
            # inverse automorphism is the (order-1)-th power
            if not _mat_eq_mod(_mat_pow_mod(m, order, fs), ident, fs):
                raise ValidationError("action matrix does not satisfy its generator order")
        for a in reduced:
            for b in reduced:
                if not _mat_eq_mod(_reduce_rows(mat_mul(a, b), fs),
                                   _reduce_rows(mat_mul(b, a), fs), fs):
                    raise ValidationError("generator actions do not commute")
        object.__setattr__(self, "action", tuple(reduced))

    @classmethod
    def trivial_action(cls, group, module: FinAbGroup) -> "GModule":
        k = module.rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
        return cls(group, module, tuple(ident for _ in group.generator_orders))

    @classmethod
    def cyclic(cls, n: int, module: FinAbGroup, matrix) -> "GModule":
        return cls(Cyclic(n), module, (tuple(tuple(r) for r in matrix),))

    def sigma(self):
        if not isinstance(self.group, Cyclic):
            raise UnsupportedError("cyclic-only operation; use h_general")
        return [list(r) for r in self.action[0]]


def multiplicative_group_module(q: int, n: int) -> GModule:
    """The multiplicative group of F_{q^n} as a module over Gal = Z/n.

    Constructed as the cyclic group of order q^n - 1 with the Frobenius
    acting by multiplication by q; exact, no discrete logs involved.
    """
    order = q**n - 1
    module = FinAbGroup.of(order)
    if module.is_trivial():
        return GModule.trivial_action(Cyclic(n), module)
    return GModule.cyclic(n, module, ((q % order,),))


def _norm_matrix(m: GModule):
    fs = m.module.invariant_factors
    k = m.module.rank
    sigma = m.sigma()
    total = [[0] * k for _ in range(k)]
    power = identity_matrix(k)
    for _ in range(m.group.order):
        for i in range(k):
            for j in range(k):
                total[i][j] = (total[i][j] + power[i][j]) % fs[i]
        power = [list(r) for r in _reduce_rows(mat_mul(sigma, power), fs)]
    return total


def _sigma_minus_one(m: GModule):
    sigma = m.sigma()
    k = m.module.rank
    return [[sigma[i][j] - (1 if i == j else 0) for j in range(k)] for i in range(k)]


def tate_h0(m: GModule) -> FinAbGroup:
    """H^0_hat(G, M) = M^G / N M for cyclic G."""
    if m.module.is_trivial():
        return FinAbGroup.trivial()
    k = m.module.rank
    lam = m.module.relation_columns()
    invariants = preimage_generators(_sigma_minus_one(m), lam, k)
    norm = _norm_matrix(m)
    norm_cols = [[norm[i][j] for i in range(k)] for j in range(k)]
    return finite_quotient(invariants + norm_cols + lam, norm_cols + lam, k)


def h1_cyclic(m: GModule) -> FinAbGroup:
    """H^1(G, M) = ker N / (sigma - 1) M for cyclic G."""
    if m.module.is_trivial():
        return FinAbGroup.trivial()
    k = m.module.rank
    lam = m.module.relation_columns()
    norm_kernel = preimage_generators(_norm_matrix(m), lam, k)
    smo = _sigma_minus_one(m)
    smo_cols = [[smo[i][j] for i in range(k)] for j in range(k)]
    return finite_quotient(norm_kernel + smo_cols + lam, smo_cols + lam, k)


def h2_cyclic(m: GModule) -> FinAbGroup:
    """H^2(G, M) for cyclic G, via two-periodicity: same group as H^0_hat."""
    return tate_h0(m)


def herbrand_quotient(m: GModule) -> Fraction:
    """|H^0_hat| / |H^1| as an exact rational; 1 for every finite module."""
    return Fraction(tate_h0(m).order, h1_cyclic(m).order)


# ---------------------------------------------------------------------------
# bar-resolution cohomology for small (possibly non-cyclic) abelian groups

def _group_elements(group):
    if isinstance(group, Cyclic):
        return [(i,) for i in range(group.n)], (group.n,)
    return _product_tuples(group.orders), group.orders


def _product_tuples(orders):
    elems = [()]
    for m in orders:
        elems = [e + (i,) for e in elems for i in range(m)]
    return elems


def _element_action(m: GModule, elem, cache):
    if elem in cache:
        return cache[elem]
    fs = m.module.invariant_factors
    k = m.module.rank
    result = identity_matrix(k)
    for mat, power in zip(m.action, elem):
        result = [list(r) for r in _reduce_rows(
            mat_mul(result, _mat_pow_mod([list(r) for r in mat], power, fs)), fs)]
    cache[elem] = result
    return result


def h_general(m: GModule, degree: int, group_bound: int = DEFAULT_GROUP_BOUND) -> FinAbGroup:
    """H^degree(G, M) for degree 1 or 2 via the bar resolution.

    Cochains are functions G -> M resp. G x G -> M; cocycles and
    coboundaries are integer lattices cut out by the standard differential
    and the whole computation is one lattice quotient.
    """
    if degree not in (1, 2):
        raise ValidationError("only degrees 1 and 2 are supported")
    if m.group.order > group_bound:
        raise ResourceError(
            f"group order {m.group.order} exceeds the configured bound {group_bound}"
        )
    if m.module.is_trivial() or m.group.order == 1:
        return FinAbGroup.trivial()

    elems, orders = _group_elements(m.group)
    fs = m.module.invariant_factors
    k = m.module.rank
    cache: dict = {}

    def mul(a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, orders))

    if degree == 1:
        keys = elems
    else:
        keys = [(g, h) for g in elems for h in elems]
    index = {key: i for i, key in enumerate(keys)}
    nvars = len(keys) * k

    rows = []
    moduli = []

    def block(row, key, mat, sign):
        base = index[key] * k
        for i in range(k):
            for j in range(k):
                row[i][base + j] += sign * mat[i][j]

    ident = identity_matrix(k)
    if degree == 1:
        for g in elems:
            act_g = _element_action(m, g, cache)
            for h in elems:
                row = [[0] * nvars for _ in range(k)]
                block(row, g, ident, 1)
                block(row, h, act_g, 1)
                block(row, mul(g, h), ident, -1)
                rows.extend(row)
                moduli.extend(fs)
    else:
        for g in elems:
            act_g = _element_action(m, g, cache)
            for h in elems:
                gh = mul(g, h)
                for l in elems:
                    row = [[0] * nvars for _ in range(k)]
                    block(row, (h, l), act_g, 1)
                    block(row, (gh, l), ident, -1)
                    block(row, (g, mul(h, l)), ident, 1)
                    block(row, (g, h), ident, -1)
                    rows.extend(row)
                    moduli.extend(fs)

    seen = set()
    dedup_rows = []
    dedup_moduli = []
    for row, mod in zip(rows, moduli):
        t = tuple(x % mod for x in row)
        if any(t) and (t, mod) not in seen:
            seen.add((t, mod))
            dedup_rows.append(list(t))
            dedup_moduli.append(mod)

    cocycles = preimage_generators(dedup_rows, diagonal_columns(dedup_moduli), nvars)

    lam_cols = []
    for v in range(len(keys)):
        for i in range(k):
            col = [0] * nvars
            col[v * k + i] = fs[i]
            lam_cols.append(col)

    cob_cols = []
    if degree == 1:
        for i in range(k):
            col = [0] * nvars
            for g in elems:
                act_g = _element_action(m, g, cache)
                base = index[g] * k
                for r in range(k):
                    col[base + r] += act_g[r][i] - (1 if r == i else 0)
            cob_cols.append(col)
    else:
        for gg in elems:
            for i in range(k):
                col = [0] * nvars
                for g in elems:
                    act_g = _element_action(m, g, cache)
                    for h in elems:
                        base = index[(g, h)] * k
                        if h == gg:
                            for r in range(k):
                                col[base + r] += act_g[r][i]
                        if mul(g, h) == gg:
                            col[base + i] -= 1
                        if g == gg:
                            col[base + i] += 1
                cob_cols.append(col)

    den = cob_cols + lam_cols
    return finite_quotient(cocycles + den, den, nvars)


def hom_g_dual(a: GModule, mu: GModule) -> FinAbGroup:
    """The group of g-equivariant homomorphisms A -> mu.

    Both modules must carry an action of the same acting group; the result
    is the kernel of the equivariance conditions f(g.x) = g.f(x) inside
    Hom(A, mu), computed as a lattice quotient.
    """
    if a.group != mu.group:
        raise ValidationError("mismatched acting groups")
    ka = a.module.rank
    km = mu.module.rank
    if ka == 0 or km == 0:
        return FinAbGroup.trivial()
    afs = a.module.invariant_factors
    mfs = mu.module.invariant_factors
    nvars = km * ka

    def vidx(i, j):
        return i * ka + j

    rows = []
    moduli = []
    for i in range(km):
        for j in range(ka):
            row = [0] * nvars
            row[vidx(i, j)] = afs[j]
            rows.append(row)
            moduli.append(mfs[i])
    for p_mat, q_mat in zip(a.action, mu.action):
        for i in range(km):
            for j in range(ka):
                row = [0] * nvars
                for t in range(ka):
                    row[vidx(i, t)] += p_mat[t][j]
                for t in range(km):
                    row[vidx(t, j)] -= q_mat[i][t]
                rows.append(row)
                moduli.append(mfs[i])

    valid = preimage_generators(rows, diagonal_columns(moduli), nvars)
    lam_cols = []
    for i in range(km):
        for j in range(ka):
            col = [0] * nvars
            col[vidx(i, j)] = mfs[i]
            lam_cols.append(col)
    return finite_quotient(valid + lam_cols, lam_cols, nvars)
