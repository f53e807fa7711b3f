"""Exact arithmetic on finitely generated abelian groups.

Everything here is integer linear algebra: Smith normal form with its
unimodular transforms, kernels/cokernels of maps between finite abelian
groups, and quotients of integer lattices.  A finite abelian group is
always carried around in invariant-factor normal form d1 | d2 | ... | dk
(each factor at least 2, the empty list being the trivial group); the
relation lattice of that presentation is diag(d1, ..., dk) Z^k.

All arithmetic is arbitrary precision: class numbers and L-polynomial
coefficients overflow fixed width quickly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .arith import is_prime, lcm_list
from .errors import ValidationError


# ---------------------------------------------------------------------------
# integer matrix helpers (dense lists of lists, arbitrary precision)

def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise ValidationError("matrix dimension mismatch in product")
    cols = len(b[0]) if b else 0
    return [
        [sum(arow[t] * b[t][j] for t in range(len(b))) for j in range(cols)]
        for arow in a
    ]


def mat_vec(a, v):
    if a and len(a[0]) != len(v):
        raise ValidationError("matrix/vector dimension mismatch")
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(a):
    if not a:
        return []
    return [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]


def columns(a):
    return transpose(a)


def from_columns(cols, nrows=None):
    if not cols:
        return [[] for _ in range(nrows or 0)]
    return [[col[i] for col in cols] for i in range(len(cols[0]))]


def mat_add_cols(a, b):
    """Horizontal concatenation [a | b]."""
    if not a:
        return [list(r) for r in b]
    if not b:
        return [list(r) for r in a]
    return [list(ra) + list(rb) for ra, rb in zip(a, b)]


def _swap_rows(a, u, i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _addmul_row(a, u, i, j, c):
    """row_i += c * row_j on a, mirrored on u."""
    ai, aj = a[i], a[j]
    for t in range(len(ai)):
        ai[t] += c * aj[t]
    ui, uj = u[i], u[j]
    for t in range(len(ui)):
        ui[t] += c * uj[t]


def _addmul_col(a, v, j, i, c):
    """col_j += c * col_i on a, mirrored on v."""
    for row in a:
        row[j] += c * row[i]
    for row in v:
        row[j] += c * row[i]


def _negate_row(a, u, i):
    a[i] = [-x for x in a[i]]
    u[i] = [-x for x in u[i]]


def smith_normal_form(matrix):
    """Smith normal form with transforms: returns (U, S, V) with U*M*V = S.

    U and V are unimodular; S is diagonal with non-negative entries forming
    a divisibility chain s1 | s2 | ...  Total on integer matrices, including
    empty and rectangular ones.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    for r in matrix:
        if len(r) != cols:
            raise ValidationError("ragged matrix")
    a = [[int(x) for x in r] for r in matrix]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    t = 0
    while t < min(rows, cols):
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            _swap_rows(a, u, t, piv[0])
        if piv[1] != t:
            _swap_cols(a, v, t, piv[1])

        while True:
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    _addmul_row(a, u, i, t, -q)
                    if a[i][t]:
                        _swap_rows(a, u, t, i)
                        clean = False
            if not clean:
                continue
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    _addmul_col(a, v, j, t, -q)
                    if a[t][j]:
                        _swap_cols(a, v, t, j)
                        clean = False
            if not clean:
                continue
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _addmul_row(a, u, t, offender, 1)
        if a[t][t] < 0:
            _negate_row(a, u, t)
        t += 1
    return u, a, v


def snf_diagonal(matrix):
    """Just the diagonal of the Smith form, as a list of length min(m, n)."""
    _, s, _ = smith_normal_form(matrix)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


def invert_unimodular(u):
    """Exact inverse of a unimodular integer matrix."""
    u1, s, v1 = smith_normal_form(u)
    n = len(u)
    if any(s[i][i] != 1 for i in range(n)):
        raise ValidationError("matrix is not unimodular")
    return mat_mul(v1, u1)


def _column_echelon(matrix, track):
    """Integer column echelon form by gcd elimination.

    Returns (echelon, v, pivots) where echelon = M*v, v unimodular (or None
    when track is false) and pivots lists (row, col) staircase positions.
    Columns beyond the last pivot are identically zero.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(r) for r in matrix]
    v = identity_matrix(cols) if track else None
    pivots = []
    pc = 0
    for r in range(rows):
        if pc >= cols:
            break
        while True:
            best = None
            for j in range(pc, cols):
                x = a[r][j]
                if x != 0 and (best is None or abs(x) < abs(a[r][best])):
                    best = j
            if best is None:
                break
            if best != pc:
                for row in a:
                    row[pc], row[best] = row[best], row[pc]
                if track:
                    for row in v:
                        row[pc], row[best] = row[best], row[pc]
            done = True
            p = a[r][pc]
            for j in range(pc + 1, cols):
                if a[r][j]:
                    q = a[r][j] // p
                    for row in a:
                        row[j] -= q * row[pc]
                    if track:
                        for row in v:
                            row[j] -= q * row[pc]
                    if a[r][j]:
                        done = False
            if done:
                break
        if pc < cols and a[r][pc] != 0:
            if a[r][pc] < 0:
                for row in a:
                    row[pc] = -row[pc]
                if track:
                    for row in v:
                        row[pc] = -row[pc]
            pivots.append((r, pc))
            pc += 1
    return a, v, pivots


def kernel_basis(matrix):
    """Basis (as a list of column vectors) of the integer kernel of M."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    _, v, pivots = _column_echelon(matrix, track=True)
    rank = len(pivots)
    return [[v[i][j] for i in range(cols)] for j in range(rank, cols)]


def solve_integer(matrix, rhs):
    """One integer solution x of M x = rhs, or None if none exists."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    u, s, v = smith_normal_form(matrix)
    ub = mat_vec(u, rhs)
    y = [0] * cols
    for i in range(rows):
        si = s[i][i] if i < min(rows, cols) else 0
        if si == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % si:
                return None
            y[i] = ub[i] // si
    return mat_vec(v, y)


def column_lattice_basis(gen_cols, ambient_dim):
    """Basis of the lattice spanned by the given columns of Z^ambient_dim.

    The basis comes back in staircase form: the j-th basis vector is zero
    at the pivot rows of the earlier ones, which makes membership solvable
    by forward substitution (see solve_staircase).
    """
    cols = [c for c in gen_cols if any(c)]
    if not cols:
        return [], []
    m = from_columns(cols, ambient_dim)
    ech, _, pivots = _column_echelon(m, track=False)
    basis = [[ech[i][j] for i in range(ambient_dim)] for (_, j) in pivots]
    return basis, pivots


def solve_staircase(basis, pivots, rhs):
    """Coordinates of rhs in a staircase lattice basis, or None."""
    coords = [0] * len(basis)
    residual = list(rhs)
    for idx, (r, _) in enumerate(pivots):
        p = basis[idx][r]
        if residual[r] % p:
            return None
        c = residual[r] // p
        coords[idx] = c
        if c:
            col = basis[idx]
            for i in range(len(residual)):
                residual[i] -= c * col[i]
    if any(residual):
        return None
    return coords


def preimage_generators(matrix, lattice_cols, domain_dim=None):
    """Generators of {x : M x lies in the lattice spanned by lattice_cols}.

    The target lattice lives in Z^m where m is the row count of M.  For a
    map into Z^0 the matrix carries no column count, so domain_dim must be
    supplied whenever it can be zero-row.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else domain_dim
    if cols is None:
        raise ValidationError("domain dimension of an empty matrix is unknown")
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    stacked = mat_add_cols(matrix, from_columns(lattice_cols, rows))
    ker = kernel_basis(stacked)
    gens = [vec[:cols] for vec in ker]
    return [g for g in gens if any(g)]


def diagonal_columns(diag):
    return [[diag[i] if r == i else 0 for r in range(len(diag))] for i in range(len(diag))]


class QuotientPresentation:
    """A finite quotient L1/L2 of integer lattices, with generator lifts.

    Carries enough of the SNF transforms to express any lattice element in
    quotient coordinates, which is what lets Galois actions and subgroup
    inclusions descend to computed quotients.
    """

    def __init__(self, num_cols, den_cols, ambient_dim):
        basis, pivots = column_lattice_basis(num_cols, ambient_dim)
        rho = len(basis)
        bmat = from_columns(basis, ambient_dim)
        x_cols = []
        for d in den_cols:
            sol = solve_staircase(basis, pivots, d)
            if sol is None:
                raise ValidationError("denominator lattice not contained in numerator lattice")
            x_cols.append(sol)
        x = from_columns(x_cols, rho)
        u2, s2, _ = smith_normal_form(x)
        factors = []
        for i in range(rho):
            si = s2[i][i] if i < min(rho, len(x_cols)) else 0
            if si == 0:
                raise ValidationError("quotient is infinite")
            factors.append(si)
        self.ambient_dim = ambient_dim
        self._basis = basis
        self._pivots = pivots
        self._u2 = u2
        self._all_factors = factors
        self._kept = [i for i, f in enumerate(factors) if f != 1]
        self.group = FinAbGroup(tuple(factors[i] for i in self._kept))
        u2inv = invert_unimodular(u2) if self._kept else []
        self.lifts = [
            mat_vec(bmat, [u2inv[r][i] for r in range(rho)]) for i in self._kept
        ]

    def coords(self, vec):
        """Quotient coordinates of a lattice vector, one per invariant factor."""
        sol = solve_staircase(self._basis, self._pivots, vec)
        if sol is None:
            raise ValidationError("vector is not in the presented lattice")
        y = mat_vec(self._u2, sol)
        return tuple(y[i] % self._all_factors[i] for i in self._kept)

    def induced_matrix(self, endo_rows):
        """Matrix of an ambient endomorphism on the quotient generators.

        The endomorphism must map both lattices into themselves.
        """
        cols = [self.coords(mat_vec(endo_rows, lift)) for lift in self.lifts]
        k = len(self._kept)
        return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


def finite_quotient(num_cols, den_cols, ambient_dim) -> FinAbGroup:
    return QuotientPresentation(num_cols, den_cols, ambient_dim).group


# ---------------------------------------------------------------------------
# finite abelian groups and their homomorphisms

@dataclass(frozen=True)
class FinAbGroup:
    """A finite abelian group in invariant-factor normal form.

    invariant_factors is a tuple d1 | d2 | ... | dk with every di >= 2;
    the empty tuple is the trivial group.  The group is presented as
    Z^k / diag(d) Z^k throughout the package.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for d in fs:
            if d < 2:
                raise ValidationError(f"invariant factor {d} is < 2")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValidationError(f"invariant factors {a}, {b} violate divisibility")

    @classmethod
    def of(cls, *cyclic_orders) -> "FinAbGroup":
        """The direct sum of Z/m for the given orders, normalized."""
        orders = [int(m) for m in cyclic_orders]
        for m in orders:
            if m < 1:
                raise ValidationError("cyclic orders must be positive")
        orders = [m for m in orders if m > 1]
        if not orders:
            return cls()
        diag = snf_diagonal(
            [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        )
        return cls(tuple(d for d in diag if d > 1))

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls()

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def relation_columns(self):
        return diagonal_columns(list(self.invariant_factors))

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.of(*(self.invariant_factors + other.invariant_factors))

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def ell_rank(group: FinAbGroup, ell: int) -> int:
    """Number of invariant factors divisible by the prime ell."""
    if not is_prime(ell):
        raise ValidationError(f"{ell} is not prime")
    return sum(1 for d in group.invariant_factors if d % ell == 0)


@dataclass(frozen=True)
class AbHom:
    """A homomorphism between finite abelian groups as an integer matrix.

    matrix[i][j] is the coefficient of the i-th target generator in the
    image of the j-th source generator.  Well-definedness means every
    column j is annihilated by the j-th source invariant factor modulo the
    target relation lattice.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = self.target.rank
        k = self.source.rank
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        if len(rows) != m or any(len(r) != k for r in rows):
            raise ValidationError(
                f"malformed hom: matrix must be {m}x{k}, got "
                f"{len(rows)}x{len(rows[0]) if rows else 0}"
            )
        tf = self.target.invariant_factors
        sf = self.source.invariant_factors
        reduced = tuple(
            tuple(rows[i][j] % tf[i] for j in range(k)) for i in range(m)
        )
        for i in range(m):
            for j in range(k):
                if (sf[j] * reduced[i][j]) % tf[i]:
                    raise ValidationError(
                        f"malformed hom: column {j} is not annihilated by {sf[j]}"
                    )
        object.__setattr__(self, "matrix", reduced)

    @classmethod
    def identity(cls, group: FinAbGroup) -> "AbHom":
        n = group.rank
        return cls(group, group, tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
        ))

    def matrix_rows(self):
        return [list(r) for r in self.matrix]

    def __call__(self, element):
        """Image of an element given in source coordinates."""
        if len(element) != self.source.rank:
            raise ValidationError("element has wrong length")
        img = mat_vec(self.matrix_rows(), list(element))
        tf = self.target.invariant_factors
        return tuple(img[i] % tf[i] for i in range(self.target.rank))

    def compose(self, other: "AbHom") -> "AbHom":
        """self after other."""
        if other.target != self.source:
            raise ValidationError("homs are not composable")
        return AbHom(other.source, self.target,
                     tuple(tuple(r) for r in mat_mul(self.matrix_rows(), other.matrix_rows())))


def kernel(h: AbHom) -> tuple[FinAbGroup, AbHom]:
    """Kernel of a hom, with its inclusion back into the source."""
    k = h.source.rank
    gens = preimage_generators(h.matrix_rows(), h.target.relation_columns(), k)
    pres = QuotientPresentation(
        gens + h.source.relation_columns(), h.source.relation_columns(), k
    )
    sf = h.source.invariant_factors
    incl_cols = [[lift[i] % sf[i] for i in range(k)] for lift in pres.lifts]
    incl = AbHom(pres.group, h.source, tuple(
        tuple(col[i] for col in incl_cols) for i in range(k)
    ))
    return pres.group, incl


def cokernel(h: AbHom) -> FinAbGroup:
    m = h.target.rank
    num = [[1 if r == i else 0 for r in range(m)] for i in range(m)]
    den = columns(h.matrix_rows()) + h.target.relation_columns()
    return finite_quotient(num, den, m)


def image_order(h: AbHom) -> int:
    return h.target.order // cokernel(h).order


def sum_map_kernel(d_values, big_d: int) -> FinAbGroup:
    """Kernel of the summation map on ⊕ Z/d_v into Z/D.

    The v-th generator is sent to D/d_v mod D, which is the additive model
    of (x_v) -> sum x_v on the union of the d_v-torsion subgroups of Q/Z.
    The order of the kernel is (prod d_v)/D.  Requires D = lcm(d_v);
    entries equal to 1 contribute trivial summands.
    """
    d = [int(x) for x in d_values]
    if not d:
        raise ValidationError("empty d-vector")
    if any(x < 1 for x in d):
        raise ValidationError("d-values must be positive")
    if big_d != lcm_list(d):
        raise ValidationError(f"D={big_d} is not lcm{tuple(d)}")
    r = len(d)
    row = [[big_d // dv for dv in d]]
    gens = preimage_generators(row, [[big_d]])
    den = diagonal_columns(d)
    group = finite_quotient(gens + den, den, r)
    expected = prod(d) // big_d
    if group.order != expected:
        raise ValidationError("internal error: kernel order does not match (prod d)/D")
    return group
