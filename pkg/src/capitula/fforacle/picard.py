"""Explicit divisor class groups of the oracle curves, with Galois action.

The presentation is concrete: the free abelian group on a factor base of
low-degree places of K, modulo relations given by principal divisors.
Relations are harvested from the base-field places themselves and from
functions in Riemann-Roch spaces L(m P0) of a fixed rational place P0,
computed by linear algebra over F_q in the monomial basis y^i t^j.  The
degree-zero part of the quotient must have order exactly h = L(1); when
it does not, the degree bound and the function-degree bound escalate
(+1 resp. x2) until the presentation is certified or a cap is hit.

Valuations are exact.  At the (totally) ramified places of these
prime-degree covers the n residues i*v_w(y) mod n are distinct, so
v_w(sum a_i y^i) = min_i (n v(a_i) + i v_w(y)) with no cancellation; at
inert places the basis y^i stays a unit basis and the minimum of the
coefficient valuations wins; at split places the root of the defining
equation is Hensel-lifted to F_q[t]/pi^N and the combination is evaluated
there.  The infinite place runs through the same code in the u = 1/t
model.  Every divisor computation is cross-checked against the valuation
of the norm, place by place.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from ..abelian import (
    AbHom,
    FinAbGroup,
    QuotientPresentation,
    kernel,
    kernel_basis,
    preimage_generators,
)
from ..arith import gcd_list
from ..errors import InconsistencyError, ResourceError, UnsupportedError, ValidationError
from ..profile import CYCLIC, ExtensionProfile, FunctionField, PlaceProfile
from .curves import (
    BasePlace,
    INFINITE,
    ResiduePoint,
    _reject_constant_ext,
    defining_valuation,
    local_invariants,
    ramification_data,
)
from .gf import primitive_root_of_unity
from .poly import Poly, RationalFunc, factor_with_bounded_degree, monic_irreducibles_up_to
from .zeta import l_polynomial


@dataclass(frozen=True)
class OracleConfig:
    max_degree_bound: int = 8
    max_rr_degree: int = 96
    max_candidates: int = 8000
    max_field_size: int = 4096
    max_genus: int = 5
    max_precision: int = 512


DEFAULT_CONFIG = OracleConfig()


@dataclass(frozen=True)
class PlaceAbove:
    """A place of K, identified by its base place and (when split) the
    residue of y that cuts it out."""

    base: BasePlace
    kind: str
    e: int
    f: int
    label_index: int  # -1 unless split
    deg: int

    @property
    def id(self):
        if self.kind == "split":
            return f"{self.base.id}#{self.label_index}"
        return self.base.id

    def sort_key(self):
        return (self.deg,) + self.base.sort_key() + (self.label_index,)

    def __repr__(self):
        return f"PlaceAbove({self.id})"


class _SplitLifter:
    """Hensel lifting of one root of the local defining equation."""

    def __init__(self, engine, residue):
        self.engine = engine
        self.residue = residue
        self._root = engine.model_point.lift(residue)
        self._precision = 1

    def root_mod(self, precision: int) -> Poly:
        eng = self.engine
        modulus = eng.pi**precision
        r = self._root % modulus
        if precision <= self._precision:
            return r
        d_hat = eng.defining_mod(precision)
        curve = eng.arith.curve
        if curve.kind == "artin_schreier":
            p = curve.p
            while True:
                g = (r**p - r - d_hat) % modulus
                if g.is_zero():
                    break
                r = (r + g) % modulus  # G' = -1
        else:
            ell = curve.ell
            ell_c = Poly(curve.field, [curve.field.from_int(ell)])
            while True:
                g = (r**ell - d_hat) % modulus
                if g.is_zero():
                    break
                deriv = (ell_c * r ** (ell - 1)) % modulus
                r = (r - g * deriv.invmod(modulus)) % modulus
        self._root = r
        self._precision = precision
        return r


class LocalEngine:
    """All places of K above one base place, with exact valuations."""

    def __init__(self, arith: "CurveArithmetic", base: BasePlace):
        self.arith = arith
        self.base = base
        curve = arith.curve
        field = curve.field
        self.field = field
        self.is_inf = base.is_infinite
        self.pi = Poly.x(field) if self.is_inf else base.pi
        self.model_point = ResiduePoint(
            field, BasePlace(self.pi) if self.is_inf else base)
        defining = curve.Q if curve.kind == "artin_schreier" else curve.f
        self.model_defining = defining.reciprocal_substitution() if self.is_inf else defining
        self.data = local_invariants(curve, base)
        self.def_val = defining_valuation(curve, base)
        n = curve.n

        if curve.kind == "artin_schreier":
            self.sigma_shift = 0
            self.s_y = self.def_val if self.data.kind == "ramified" else 0
        else:
            if self.data.kind == "ramified":
                self.s_y = self.def_val
                self.sigma_shift = 0
            else:
                self.sigma_shift = self.def_val // curve.ell
                self.s_y = self.sigma_shift

        self.lifters: list[_SplitLifter] = []
        labels = []
        if self.data.kind == "split":
            kappa = self.model_point.kappa
            if curve.kind == "kummer":
                unit = self.model_defining * RationalFunc.of(self.pi)**(-self.def_val)
            else:
                unit = self.model_defining
            ubar = self.model_point.reduce_rational(unit)
            base_root = None
            if curve.kind == "artin_schreier":
                for cand in kappa.elements():
                    if kappa.sub(kappa.pow(cand, curve.p), cand) == ubar:
                        base_root = cand
                        break
                steps = [kappa.from_int(j) for j in range(curve.p)]
                labels = [kappa.add(base_root, s) for s in steps]
            else:
                for cand in kappa.elements():
                    if kappa.pow(cand, curve.ell) == ubar:
                        base_root = cand
                        break
                zeta = primitive_root_of_unity(field, curve.ell)
                zeta_k = self.model_point.embed(zeta)
                labels = [base_root]
                for _ in range(curve.ell - 1):
                    labels.append(kappa.mul(labels[-1], zeta_k))
            if base_root is None:
                raise InconsistencyError("split place has no residual root")
            order = sorted(range(len(labels)),
                           key=lambda i: kappa.element_index(labels[i]))
            labels = [labels[i] for i in order]
            self.lifters = [_SplitLifter(self, lab) for lab in labels]
        self.labels = labels

        deg_base = base.degree
        d = self.data
        if d.kind == "split":
            self.places = [
                PlaceAbove(base, "split", d.e, d.f,
                           self.model_point.kappa.element_index(lab), d.f * deg_base)
                for lab in labels
            ]
        else:
            self.places = [PlaceAbove(base, d.kind, d.e, d.f, -1, d.f * deg_base)]

    # -- model-side helpers ------------------------------------------------

    def defining_mod(self, precision: int) -> Poly:
        """Q (resp. the unit part of f) as an element of F_q[x]/pi^N."""
        curve = self.arith.curve
        modulus = self.pi**precision
        if curve.kind == "artin_schreier":
            rat = self.model_defining
        else:
            rat = self.model_defining * RationalFunc.of(self.pi)**(-self.def_val)
        num = rat.num % modulus
        den_inv = rat.den.invmod(modulus)
        return (num * den_inv) % modulus

    def model_coeffs(self, coeffs):
        if not self.is_inf:
            return coeffs
        return [c if c.is_zero() else c.reciprocal_substitution() for c in coeffs]

    def _model_val(self, rat: RationalFunc) -> int:
        return rat.valuation_at(self.pi)

    def valuations(self, coeffs) -> list[int]:
        """v_w(z) for every place w above the base, z = sum coeffs[i] y^i."""
        mc = self.model_coeffs(coeffs)
        if all(c.is_zero() for c in mc):
            raise ValidationError("valuation of the zero function")
        kind = self.data.kind
        n = self.arith.curve.n
        if kind == "ramified":
            return [min(n * self._model_val(c) + i * self.s_y
                        for i, c in enumerate(mc) if not c.is_zero())]
        if kind == "inert":
            return [min(self._model_val(c) + i * self.sigma_shift
                        for i, c in enumerate(mc) if not c.is_zero())]
        # split: evaluate at each lifted root
        shift = self.sigma_shift
        pi_rat = RationalFunc.of(self.pi)
        shifted = [c if c.is_zero() else c * pi_rat**(i * shift)
                   for i, c in enumerate(mc)]
        w0 = min(self._model_val(c) for c in shifted if not c.is_zero())
        integral = [c if c.is_zero() else c * pi_rat**(-w0) for c in shifted]
        out = []
        precision = 8
        cap = self.arith.config.max_precision
        for lifter in self.lifters:
            while True:
                val = self._split_val(integral, lifter, precision)
                if val is not None:
                    out.append(w0 + val)
                    break
                precision *= 2
                if precision > cap:
                    raise ResourceError("local expansion precision cap exceeded")
        return out

    def _split_val(self, integral_coeffs, lifter, precision):
        modulus = self.pi**precision
        root = lifter.root_mod(precision)
        total = Poly.zero(self.field)
        power = Poly.one(self.field)
        for c in integral_coeffs:
            if not c.is_zero():
                den_inv = c.den.invmod(modulus)
                total = (total + (c.num % modulus) * den_inv * power) % modulus
            power = (power * root) % modulus
        if total.is_zero():
            return None
        v = total.valuation(self.pi)
        return v if v < precision else None


class CurveArithmetic:
    """Multiplication, norms and local engines for one cover."""

    def __init__(self, curve, config: OracleConfig = DEFAULT_CONFIG):
        _reject_constant_ext(curve)
        self.curve = curve
        self.config = config
        field = curve.field
        n = curve.n
        self.zero_rat = RationalFunc.of(Poly.zero(field))
        one = RationalFunc.of(Poly.one(field))
        # y^k in the basis 1, y, ..., y^(n-1) for k up to 2n-2
        reps = [[self.zero_rat] * n for _ in range(2 * n - 1)]
        for k in range(n):
            reps[k][k] = one
        for k in range(n, 2 * n - 1):
            prev = reps[k - 1]
            vec = [self.zero_rat] + prev[: n - 1]
            top = prev[n - 1]
            if not top.is_zero():
                if curve.kind == "artin_schreier":
                    vec[1] = vec[1] + top
                    vec[0] = vec[0] + top * curve.Q
                else:
                    vec[0] = vec[0] + top * curve.f
            reps[k] = vec
        self.y_reps = reps
        self._engines: dict[BasePlace, LocalEngine] = {}

    def engine(self, base: BasePlace) -> LocalEngine:
        if base not in self._engines:
            self._engines[base] = LocalEngine(self, base)
        return self._engines[base]

    def places_above(self, base: BasePlace) -> list[PlaceAbove]:
        return list(self.engine(base).places)

    def norm(self, coeffs) -> RationalFunc:
        """Norm to F_q(t): determinant of multiplication by z."""
        n = self.curve.n
        if n == 2:
            a, b = coeffs
            if self.curve.kind == "artin_schreier":
                # (a + by)(a + b(y+1)) in characteristic 2
                return a * a + a * b + b * b * self.curve.Q
            return a * a - b * b * self.curve.f
        cols = []
        for j in range(n):
            col = [self.zero_rat] * n
            for i, c in enumerate(coeffs):
                if c.is_zero():
                    continue
                rep = self.y_reps[i + j]
                for r in range(n):
                    if not rep[r].is_zero():
                        col[r] = col[r] + c * rep[r]
            cols.append(col)
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        return self._det(mat)

    def _det(self, mat):
        n = len(mat)
        if n == 1:
            return mat[0][0]
        total = self.zero_rat
        sign = 1
        for j in range(n):
            if not mat[0][j].is_zero():
                minor = [[mat[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
                term = mat[0][j] * self._det(minor)
                total = total + term if sign > 0 else total - term
            sign = -sign
        return total

    def divisor_of(self, coeffs, smooth_bound: int | None, extra_bases=()):
        """The principal divisor of z as {place: order}.

        When smooth_bound is given, None is returned as soon as the
        support needs a base place of degree above the bound.  The sum
        of f_w v_w over each base place is checked against the valuation
        of the norm, and the total degree against zero.
        """
        nrm = self.norm(coeffs)
        if nrm.is_zero():
            raise ValidationError("norm of a zero function")
        candidates: dict[BasePlace, None] = {}
        bound = smooth_bound if smooth_bound is not None else max(
            nrm.num.degree, nrm.den.degree, 1)
        for polynomial in (nrm.num, nrm.den):
            if polynomial.degree < 1:
                continue
            _, factors, rest = factor_with_bounded_degree(polynomial, bound)
            if not rest.is_constant():
                return None
            for pi in factors:
                candidates[BasePlace(pi)] = None
        candidates[INFINITE] = None
        for base in self._critical_bases():
            candidates[base] = None
        for base in extra_bases:
            candidates[base] = None
        # coefficient denominators can hide poles that cancel in the norm
        for c in coeffs:
            if not c.is_zero() and c.den.degree >= 1:
                _, factors, rest = factor_with_bounded_degree(c.den, c.den.degree)
                if not rest.is_constant():
                    raise InconsistencyError("coefficient denominator did not factor")
                for pi in factors:
                    candidates[BasePlace(pi)] = None

        out: dict[PlaceAbove, int] = {}
        total_degree = 0
        for base in candidates:
            eng = self.engine(base)
            vals = eng.valuations(coeffs)
            norm_val = nrm.valuation_at_infinity() if base.is_infinite \
                else nrm.valuation_at(base.pi)
            check = sum(f_w * v for f_w, v in zip((w.f for w in eng.places), vals))
            if check != norm_val:
                raise InconsistencyError(
                    f"norm valuation mismatch above {base.id}: {check} != {norm_val}")
            for w, v in zip(eng.places, vals):
                if v:
                    out[w] = v
                    total_degree += v * w.deg
        if total_degree != 0:
            raise InconsistencyError("principal divisor has nonzero degree")
        return out

    def _critical_bases(self):
        """Base places where a monomial y^i t^j can have a pole: infinity
        plus the poles of the defining function (zeros of a normalized
        Kummer f only give y positive valuation and never threaten)."""
        curve = self.curve
        data = curve.Q if curve.kind == "artin_schreier" else curve.f
        bases = [INFINITE]
        if data.den.degree >= 1:
            _, factors, rest = factor_with_bounded_degree(data.den, data.den.degree)
            if not rest.is_constant():
                raise InconsistencyError("defining data factorization left a cofactor")
            bases.extend(BasePlace(pi) for pi in factors)
        return bases


# ---------------------------------------------------------------------------
# Riemann-Roch spaces

def riemann_roch_basis(arith: CurveArithmetic, p0: PlaceAbove, m: int, genus: int):
    """Basis of L(m P0) for a degree-one place P0, as lists of y^i coefficients.

    Candidate functions are spanned by t^j E_i(t) y^i / D(t), where the
    denominator D collects the pole place (pi0^s) together with the poles
    that y^i is allowed to cancel at ramified zeros of a Kummer defining
    function: at a zero of order a the coefficient of y^i may carry a
    denominator of order floor(i a / n) (the valuation of y there is a).
    Linear constraints at the finitely many places where a monomial can
    have a pole cut out exactly L(m P0); completeness is certified by
    dim = m + 1 - genus, with the t-degree window growing until that
    dimension is reached.
    """
    if p0.deg != 1:
        raise ValidationError("the pole place must have degree one")
    if m < max(2 * genus - 1, 1):
        raise ValidationError("pole order below the Riemann-Roch range")
    curve = arith.curve
    field = curve.field
    n = curve.n
    expected = m + 1 - genus

    p0_finite = not p0.base.is_infinite
    s = -(-m // p0.e) if p0_finite else 0  # ceil(m / e)

    # denominator exponents: {base: multiplicity in D}, per-i reduction k
    den_mults: dict[BasePlace, int] = {}
    per_i_reduction: dict[BasePlace, list[int]] = {}
    if curve.kind == "kummer":
        for base in _kummer_zero_bases(arith):
            a = defining_valuation(curve, base)
            ks = [(i * a) // n for i in range(n)]
            if max(ks):
                per_i_reduction[base] = ks
                den_mults[base] = max(ks)
    if p0_finite:
        den_mults[p0.base] = den_mults.get(p0.base, 0) + s

    multipliers = []
    for i in range(n):
        e_i = Poly.one(field)
        for base, ks in per_i_reduction.items():
            power = den_mults[base] - ks[i] - (s if p0_finite and base == p0.base else 0)
            # the pi0^s part stays in the denominator for every i
            power = max(power, 0)
            if power:
                e_i = e_i * base.pi**power
        multipliers.append(e_i)
    den_poly = Poly.one(field)
    for base, mult in den_mults.items():
        den_poly = den_poly * base.pi**mult
    den_degree = den_poly.degree

    constraint_bases = {INFINITE: None}
    for base in arith._critical_bases():
        constraint_bases[base] = None
    for base in den_mults:
        constraint_bases[base] = None

    j_max = m + 2 * genus + 2
    while True:
        nvars = n * (j_max + 1)
        rows = []
        for base in constraint_bases:
            eng = arith.engine(base)
            for w, lifter_idx in _places_with_lifters(eng):
                lreq = -m if w == p0 else 0
                if base in den_mults:
                    lreq += w.e * den_mults[base]
                elif base.is_infinite:
                    lreq += -w.e * den_degree
                rows.extend(_constraint_rows(eng, lifter_idx, lreq, j_max, multipliers))
        basis = _nullspace(field, rows, nvars)
        if len(basis) == expected:
            break
        if len(basis) > expected:
            raise InconsistencyError(
                f"Riemann-Roch space dimension {len(basis)} exceeds {expected}")
        j_max *= 2
        if j_max > 4 * (m + 2 * genus + 2) + 64:
            raise ResourceError("could not reach the Riemann-Roch dimension")

    den_rat = RationalFunc.of(den_poly)
    out = []
    for vec in basis:
        coeffs = []
        for i in range(n):
            poly = Poly(field, vec[i * (j_max + 1): (i + 1) * (j_max + 1)])
            rat = RationalFunc.of(poly * multipliers[i]) / den_rat
            coeffs.append(rat)
        out.append(coeffs)
    return out


def _kummer_zero_bases(arith) -> list[BasePlace]:
    """Finite ramified bases of a normalized Kummer cover (zeros of f)."""
    f_num = arith.curve.f.num
    if f_num.degree < 1:
        return []
    _, factors, rest = factor_with_bounded_degree(f_num, f_num.degree)
    if not rest.is_constant():
        raise InconsistencyError("defining numerator did not factor")
    out = []
    for pi in factors:
        if defining_valuation(arith.curve, BasePlace(pi)) % arith.curve.ell:
            out.append(BasePlace(pi))
    return out


def _places_with_lifters(eng: LocalEngine):
    if eng.data.kind == "split":
        return [(w, i) for i, w in enumerate(eng.places)]
    return [(eng.places[0], -1)]


def _constraint_rows(eng: LocalEngine, lifter_idx: int, lreq: int, j_max: int,
                     multipliers):
    """F_q-linear conditions forcing v_w(sum_ij c_ij t^j E_i y^i) >= lreq."""
    field = eng.field
    curve = eng.arith.curve
    n = curve.n
    nvars = n * (j_max + 1)
    rows = []
    kind = eng.data.kind

    if kind in ("ramified", "inert"):
        e_w = eng.data.e if kind == "ramified" else 1
        s_y = eng.s_y
        for i in range(n):
            k_i = -(-(lreq - i * s_y) // e_w)  # ceil
            mult = multipliers[i]
            if eng.is_inf:
                # v_inf(t^j E_i) = -(j + deg E_i) >= k_i
                for j in range(j_max + 1):
                    if j + mult.degree > -k_i:
                        row = [field.zero()] * nvars
                        row[i * (j_max + 1) + j] = field.one()
                        rows.append(row)
            else:
                drop = mult.valuation(eng.pi) if not mult.is_constant() else 0
                if k_i - drop < 1:
                    continue
                modulus = eng.pi**k_i
                width = eng.pi.degree * k_i
                pows = _power_residues(field, Poly.x(field), j_max, modulus, width,
                                       start=mult % modulus)
                for r in range(width):
                    row = [field.zero()] * nvars
                    for j in range(j_max + 1):
                        row[i * (j_max + 1) + j] = pows[j][r]
                    rows.append(row)
        return rows

    # split place
    lifter = eng.lifters[lifter_idx]
    shift = eng.sigma_shift
    max_mult_deg = max(mult.degree for mult in multipliers)
    if eng.is_inf:
        offset = j_max + max_mult_deg + (n - 1) * max(0, -shift)
        depth = lreq + offset
        if depth < 1:
            return rows
        modulus = eng.pi**depth
        width = depth
        root = lifter.root_mod(depth)
        root_pows = [Poly.one(field)]
        for _ in range(n - 1):
            root_pows.append((root_pows[-1] * root) % modulus)
        u = Poly.x(field)
        for r in range(width):
            row = [field.zero()] * nvars
            for i in range(n):
                rev_mult = multipliers[i].reversed_coeffs()
                for j in range(j_max + 1):
                    exp = offset - j - multipliers[i].degree + i * shift
                    mono = (u**exp * rev_mult * root_pows[i]) % modulus
                    cs = mono.coeffs
                    row[i * (j_max + 1) + j] = cs[r] if r < len(cs) else field.zero()
            rows.append(row)
        return rows

    if lreq < 1:
        return rows
    modulus = eng.pi**lreq
    width = eng.pi.degree * lreq
    root = lifter.root_mod(lreq)
    root_pows = [Poly.one(field)]
    for _ in range(n - 1):
        root_pows.append((root_pows[-1] * root) % modulus)
    for r in range(width):
        row = [field.zero()] * nvars
        for i in range(n):
            base_mono = (multipliers[i] * root_pows[i]) % modulus
            cur = base_mono
            for j in range(j_max + 1):
                cs = cur.coeffs
                row[i * (j_max + 1) + j] = cs[r] if r < len(cs) else field.zero()
                cur = (cur * Poly.x(field)) % modulus
        rows.append(row)
    return rows


def _power_residues(field, base_poly, j_max, modulus, width, start=None):
    out = []
    cur = start if start is not None else Poly.one(field)
    for _ in range(j_max + 1):
        cs = list(cur.coeffs) + [field.zero()] * (width - len(cur.coeffs))
        out.append(cs[:width])
        cur = (cur * base_poly) % modulus
    return out


def _nullspace(field, rows, nvars):
    """Right nullspace basis of the row system over a finite field."""
    mat = [list(r) for r in rows if any(not field.is_zero(x) for x in r)]
    pivots = {}
    row_idx = 0
    for col in range(nvars):
        sel = None
        for r in range(row_idx, len(mat)):
            if not field.is_zero(mat[r][col]):
                sel = r
                break
        if sel is None:
            continue
        mat[row_idx], mat[sel] = mat[sel], mat[row_idx]
        inv = field.inv(mat[row_idx][col])
        mat[row_idx] = [field.mul(inv, x) for x in mat[row_idx]]
        for r in range(len(mat)):
            if r != row_idx and not field.is_zero(mat[r][col]):
                c = mat[r][col]
                mat[r] = [field.sub(x, field.mul(c, y))
                          for x, y in zip(mat[r], mat[row_idx])]
        pivots[col] = row_idx
        row_idx += 1
    free_cols = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [field.zero()] * nvars
        vec[fc] = field.one()
        for col, r in pivots.items():
            vec[col] = field.neg(mat[r][fc])
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# the certified presentation

@dataclass
class PicardData:
    """Certified presentation of Pic^0 with the Galois action.

    group is Pic^0 in invariant-factor form, generators are divisor
    representatives on the factor base, sigma_action the induced matrix of
    the chosen Galois generator, and h = L(1) the certifying class number.
    """

    group: FinAbGroup
    generators: list[dict]
    sigma_action: AbHom
    degree_map: dict
    h: int
    l_poly: list[int]
    factor_base: list[PlaceAbove] = dataclass_field(repr=False, default_factory=list)
    _relations: list = dataclass_field(repr=False, default_factory=list)
    _perm: list = dataclass_field(repr=False, default_factory=list)
    _pres0: object = dataclass_field(repr=False, default=None)
    _arith: object = dataclass_field(repr=False, default=None)
    _ram: list = dataclass_field(repr=False, default_factory=list)

    def place_index(self, place: PlaceAbove) -> int:
        return self.factor_base.index(place)

    def places_above(self, base: BasePlace) -> list[PlaceAbove]:
        return [w for w in self.factor_base if w.base == base]


def _candidate_functions(field, basis, cap):
    """Projective points of the span of the basis, deterministically."""
    elements = field.elements()
    one = field.one()
    dim = len(basis)
    count = 0
    idx = [0] * dim
    total = field.order**dim
    for flat in range(1, total):
        v = flat
        for slot in range(dim):
            idx[slot] = v % field.order
            v //= field.order
        first = next(i for i in range(dim) if idx[i] != 0)
        if elements[idx[first]] != one:
            continue
        coeffs = None
        for slot in range(dim):
            if idx[slot] == 0:
                continue
            c = elements[idx[slot]]
            term = [rat if field.is_zero(c) or c == one
                    else rat * RationalFunc.of(Poly(field, [c]))
                    for rat in basis[slot]]
            coeffs = term if coeffs is None else [a + b for a, b in zip(coeffs, term)]
        count += 1
        if count > cap:
            return
        yield coeffs


def picard_group(curve, degree_bound: int | None = None, extra_base_places=(),
                 config: OracleConfig = DEFAULT_CONFIG) -> PicardData:
    """Certified Pic^0 presentation; escalates bounds until |Pic^0| = L(1)."""
    arith = CurveArithmetic(curve, config)
    ram, genus = ramification_data(curve)
    if genus > config.max_genus:
        raise ResourceError(f"genus {genus} exceeds the cap {config.max_genus}")
    l_coeffs, h = l_polynomial(curve, config.max_field_size)
    b_bound = degree_bound if degree_bound is not None else 1
    if b_bound < 1:
        raise ValidationError("degree bound must be at least 1")
    m_bound = max(2 * genus + 1, 1)
    while True:
        built = _try_presentation(arith, ram, genus, h, l_coeffs, b_bound, m_bound,
                                  tuple(extra_base_places), config)
        if built is not None:
            return built
        # widen the factor base and the function space together: the former
        # fixes generation failures cheaply, the latter adds relations
        grew = False
        if b_bound < config.max_degree_bound:
            b_bound += 1
            grew = True
        if 2 * m_bound <= config.max_rr_degree:
            m_bound *= 2
            grew = True
        if not grew:
            raise ResourceError(
                "presentation never certified within the configured bounds")


def _try_presentation(arith, ram, genus, h, l_coeffs, b_bound, m_bound,
                      extra_bases, config):
    curve = arith.curve
    field = curve.field
    bases: dict[BasePlace, None] = {}
    for base in arith._critical_bases():
        bases[base] = None
    for base in extra_bases:
        bases[base] = None
    for pi in monic_irreducibles_up_to(field, b_bound):
        bases[BasePlace(pi)] = None

    critical = set(arith._critical_bases()) | set(extra_bases)
    fb: list[PlaceAbove] = []
    for base in bases:
        for w in arith.places_above(base):
            if w.deg <= b_bound or base in critical:
                fb.append(w)
    fb.sort(key=lambda w: w.sort_key())
    index = {w: i for i, w in enumerate(fb)}

    p0 = next((w for w in fb if w.deg == 1), None)
    if p0 is None:
        raise UnsupportedError("the cover has no rational place in the factor base")

    k = len(fb)
    deg_row = [[w.deg for w in fb]]
    l0_basis = kernel_basis(deg_row)

    relations: list[list[int]] = []
    seen: set[tuple] = set()

    def add_relation(div: dict[PlaceAbove, int]) -> bool:
        if any(w not in index for w in div):
            return False
        vec = [0] * k
        for w, v in div.items():
            vec[index[w]] = v
        key = tuple(vec)
        if key in seen or not any(vec):
            return False
        seen.add(key)
        relations.append(vec)
        return True

    def certified():
        if len(relations) < k - 1:
            return None
        try:
            pres = QuotientPresentation(l0_basis, [list(r) for r in relations], k)
        except ValidationError:
            return None
        return pres if pres.group.order == h else None

    one = Poly.one(field)
    for pi in monic_irreducibles_up_to(field, b_bound):
        coeffs = [RationalFunc.of(pi)] + [arith.zero_rat] * (curve.n - 1)
        div = arith.divisor_of(coeffs, b_bound)
        if div is not None:
            add_relation(div)

    pres = certified()
    basis = None
    if pres is None:
        basis = riemann_roch_basis(arith, p0, m_bound, genus)
        for cand in _candidate_functions(field, basis, config.max_candidates):
            div = arith.divisor_of(cand, b_bound, extra_bases=critical)
            if div is not None and add_relation(div):
                if len(relations) >= k - 1:
                    pres = certified()
                    if pres is not None:
                        break
        if pres is None:
            pres = certified()
    if pres is None:
        return None

    perm = _sigma_permutation(arith, fb)
    perm_rows = [[0] * k for _ in range(k)]
    for i, target in enumerate(perm):
        perm_rows[target][i] = 1
    sigma_matrix = pres.induced_matrix(perm_rows)
    group = pres.group
    sigma = AbHom(group, group, sigma_matrix)
    generators = [
        {fb[i].id: int(v) for i, v in enumerate(lift) if v}
        for lift in pres.lifts
    ]
    return PicardData(
        group=group,
        generators=generators,
        sigma_action=sigma,
        degree_map={w.id: w.deg for w in fb},
        h=h,
        l_poly=list(l_coeffs),
        factor_base=fb,
        _relations=[list(r) for r in relations],
        _perm=perm,
        _pres0=pres,
        _arith=arith,
        _ram=list(ram),
    )


def _sigma_permutation(arith, fb):
    """Index map w -> sigma(w) on the factor base.

    The generator acts by y -> y+1 (Artin-Schreier) or y -> zeta y
    (Kummer); on a split place labelled by the residue r of y this moves
    the label to r-1 resp. zeta^(-1) r, and fixes every non-split place.
    """
    curve = arith.curve
    index = {(w.base, w.label_index): i for i, w in enumerate(fb)}
    perm = [0] * len(fb)
    for i, w in enumerate(fb):
        if w.kind != "split":
            perm[i] = i
            continue
        eng = arith.engine(w.base)
        kappa = eng.model_point.kappa
        label = kappa.element_from_index(w.label_index)
        if curve.kind == "artin_schreier":
            new_label = kappa.sub(label, kappa.one())
        else:
            zeta = primitive_root_of_unity(curve.field, curve.ell)
            zeta_k = eng.model_point.embed(zeta)
            new_label = kappa.div(label, zeta_k)
        j = index.get((w.base, kappa.element_index(new_label)))
        if j is None:
            raise InconsistencyError("factor base is not Galois stable")
        perm[i] = j
    return perm


# ---------------------------------------------------------------------------
# derived quantities

def galois_invariants(pd: PicardData) -> FinAbGroup:
    """J_K^G: the kernel of (sigma - 1) on the certified Pic^0."""
    group = pd.group
    kmat = [list(r) for r in pd.sigma_action.matrix]
    for i in range(group.rank):
        kmat[i][i] -= 1
    hom = AbHom(group, group, tuple(tuple(r) for r in kmat))
    inv, _ = kernel(hom)
    return inv


def invariants_of(group: FinAbGroup, action: AbHom) -> FinAbGroup:
    mat = [list(r) for r in action.matrix]
    for i in range(group.rank):
        mat[i][i] -= 1
    inv, _ = kernel(AbHom(group, group, tuple(tuple(r) for r in mat)))
    return inv


def s_class_group(pd: PicardData, s_places) -> tuple[FinAbGroup, AbHom]:
    """Pic modulo the classes of the places in S_K, with the induced action.

    The set must be Galois stable and inside the factor base presentation.
    """
    s_list = list(s_places)
    if not s_list:
        raise ValidationError("S_K must be nonempty")
    k = len(pd.factor_base)
    idx = []
    for w in s_list:
        if w not in pd.factor_base:
            raise UnsupportedError(
                f"place {w.id} is outside the presentation; raise the degree bound")
        idx.append(pd.place_index(w))
    for i in idx:
        if pd._perm[i] not in idx:
            raise ValidationError("S_K is not Galois stable")
    num = [[1 if r == i else 0 for r in range(k)] for i in range(k)]
    den = [list(r) for r in pd._relations]
    for i in idx:
        den.append([1 if r == i else 0 for r in range(k)])
    pres = QuotientPresentation(num, den, k)
    perm_rows = [[0] * k for _ in range(k)]
    for i, target in enumerate(pd._perm):
        perm_rows[target][i] = 1
    action = AbHom(pres.group, pres.group, pres.induced_matrix(perm_rows))
    return pres.group, action


def delta_prime(pd: PicardData) -> int:
    """gcd of the degrees of Galois-invariant classes in the full Pic."""
    k = len(pd.factor_base)
    perm_minus_id = [[0] * k for _ in range(k)]
    for i, target in enumerate(pd._perm):
        perm_minus_id[target][i] += 1
        perm_minus_id[i][i] -= 1
    rel_cols = [list(r) for r in pd._relations]
    gens = preimage_generators(perm_minus_id, rel_cols, k)
    degs = [sum(v * w.deg for v, w in zip(g, pd.factor_base)) for g in gens]
    degs = [d for d in degs if d]
    if not degs:
        raise InconsistencyError("no invariant classes of nonzero degree found")
    dp = gcd_list(degs)
    n = pd._arith.curve.n
    from ..formulas import delta_index
    delta = delta_index(n, [(r.e, r.place.degree) for r in pd._ram])
    if delta % dp or n % delta:
        raise InconsistencyError(
            f"period/index chain broken: delta'={dp}, delta={delta}, n={n}")
    return dp


def base_class_number(s_bases) -> int:
    """h_{F,S} over the rational base: Pic(P^1) = Z modulo the degrees of S."""
    degs = [b.degree for b in s_bases]
    if not degs:
        raise ValidationError("S must be nonempty")
    return gcd_list(degs)


def strongly_ambiguous_order(pd: PicardData, s_places) -> int:
    """Order of the subgroup of C_{K,S} generated by classes of
    Galois-invariant divisors (the transgressive ambiguous classes)."""
    k = len(pd.factor_base)
    den = [list(r) for r in pd._relations]
    s_idx = {pd.place_index(w) for w in s_places}
    for i in s_idx:
        den.append([1 if r == i else 0 for r in range(k)])
    quotient_order = QuotientPresentation(
        [[1 if r == i else 0 for r in range(k)] for i in range(k)], den, k
    ).group.order
    orbit_cols = []
    seen = set()
    for i in range(k):
        if i in seen:
            continue
        orbit = [i]
        j = pd._perm[i]
        while j != i:
            orbit.append(j)
            j = pd._perm[j]
        seen.update(orbit)
        col = [0] * k
        for idx in orbit:
            col[idx] = 1
        orbit_cols.append(col)
    with_orbits = QuotientPresentation(
        [[1 if r == i else 0 for r in range(k)] for i in range(k)],
        den + orbit_cols, k
    ).group.order
    return quotient_order // with_orbits


def capitulation_kernel_order(pd: PicardData, s_bases, s_places) -> int:
    """|ker j|: classes of the base S-class group that die when extended.

    C_{F,S} is cyclic of order gcd(deg v : v in S); the generator extends
    to the e-weighted sum of the places above a degree-gcd combination.
    """
    h_fs = base_class_number(s_bases)
    if h_fs == 1:
        return 1
    degs = [b.degree for b in s_bases]
    combo = _gcd_combination(degs)
    k = len(pd.factor_base)
    vec = [0] * k
    for coef, base in zip(combo, s_bases):
        if coef == 0:
            continue
        for w in pd.places_above(base):
            vec[pd.place_index(w)] += coef * w.e
    den = [list(r) for r in pd._relations]
    for w in s_places:
        i = pd.place_index(w)
        den.append([1 if r == i else 0 for r in range(k)])
    base_order = QuotientPresentation(
        [[1 if r == i else 0 for r in range(k)] for i in range(k)], den, k
    ).group.order
    with_gen = QuotientPresentation(
        [[1 if r == i else 0 for r in range(k)] for i in range(k)],
        den + [vec], k
    ).group.order
    image_order = base_order // with_gen
    return h_fs // image_order


def _gcd_combination(values):
    """Integer coefficients c with sum c_i values_i = gcd(values)."""
    coefs = [0] * len(values)
    g = 0
    for i, v in enumerate(values):
        if g == 0:
            g, coefs[i] = v, 1
            continue
        g, x, y = _ext_gcd(g, v)
        coefs = [c * x for c in coefs]
        coefs[i] = y
    return coefs


def _ext_gcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def realize_profile(curve, s_bases, degree_bound: int | None = None,
                    config: OracleConfig = DEFAULT_CONFIG,
                    pd: PicardData | None = None) -> tuple[ExtensionProfile, PicardData]:
    """Emit the ExtensionProfile of the cover for a base place set S.

    Local data comes from the splitting machinery, h_KS from the certified
    S-class group; the constant field is preserved for every supported
    cover, so q' = q, and h_FS is the class number of the rational base
    relative to S (the gcd of the S-degrees).
    """
    s_bases = list(s_bases)
    if not s_bases:
        raise ValidationError("S must be nonempty")
    if pd is None:
        pd = picard_group(curve, degree_bound, extra_base_places=s_bases, config=config)
    ram, _ = ramification_data(curve)
    ram_bases = {r.place for r in ram}
    places = []
    seen = set()
    for base in s_bases:
        data = local_invariants(curve, base)
        places.append(PlaceProfile(
            id=base.id, in_S=True, e=data.e, f=data.f, deg=base.degree))
        seen.add(base)
    for r in sorted(ram_bases - seen, key=lambda b: b.sort_key()):
        data = local_invariants(curve, r)
        places.append(PlaceProfile(
            id=r.id, in_S=False, e=data.e, f=data.f, deg=r.degree))
    s_k = []
    for base in s_bases:
        s_k.extend(pd.places_above(base))
    group, _ = s_class_group(pd, s_k)
    profile = ExtensionProfile(
        base=FunctionField(curve.field.order),
        n=curve.n,
        group=CYCLIC,
        places=tuple(places),
        h_FS=base_class_number(s_bases),
        h_KS=group.order,
        q_prime=curve.field.order,
    )
    return profile, pd
