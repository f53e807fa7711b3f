import random
from math import gcd, lcm, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capitula.abelian import (
    AbHom,
    FinAbGroup,
    cokernel,
    ell_rank,
    image_order,
    invert_unimodular,
    kernel,
    kernel_basis,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve_integer,
    sum_map_kernel,
)
from capitula.errors import ValidationError

from enum_oracle import (
    det_bareiss,
    hom_images,
    structure_by_enumeration,
    sum_map_kernel_elements,
    tuple_adder,
)


def snf_is_valid(m, u, s, v):
    assert mat_mul(mat_mul(u, m), v) == s
    assert det_bareiss(u) in (1, -1)
    assert det_bareiss(v) in (1, -1)
    rows, cols = len(s), len(s[0]) if s else 0
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert s[i][j] == 0
    diag = [s[i][i] for i in range(min(rows, cols))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0


class TestSmithNormalForm:
    def test_diag_2_3_normalizes_to_1_6(self):
        _, s, _ = smith_normal_form([[2, 0], [0, 3]])
        assert [s[0][0], s[1][1]] == [1, 6]

    def test_zero_matrix(self):
        u, s, v = smith_normal_form([[0, 0], [0, 0]])
        assert s == [[0, 0], [0, 0]]

    def test_hand_reduced_example(self):
        # gcd of entries 2, |det| = 8, so the form is diag(2, 4)
        m = [[2, 4], [6, 8]]
        u, s, v = smith_normal_form(m)
        assert [s[0][0], s[1][1]] == [2, 4]
        snf_is_valid(m, u, s, v)

    def test_idempotent_on_normal_forms(self):
        s0 = [[2, 0, 0], [0, 4, 0], [0, 0, 0]]
        _, s, _ = smith_normal_form(s0)
        assert s == s0

    def test_rectangular_and_empty(self):
        u, s, v = smith_normal_form([[3, 6, 9]])
        snf_is_valid([[3, 6, 9]], u, s, v)
        assert s[0][0] == 3
        u, s, v = smith_normal_form([])
        assert s == []

    @settings(max_examples=150, deadline=None)
    @given(st.lists(
        st.lists(st.integers(min_value=-30, max_value=30), min_size=1, max_size=4),
        min_size=1, max_size=4,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1))
    def test_transforms_commute_with_reduction(self, rows):
        u, s, v = smith_normal_form(rows)
        snf_is_valid(rows, u, s, v)

    @settings(max_examples=80, deadline=None)
    @given(st.lists(
        st.lists(st.integers(min_value=-20, max_value=20), min_size=2, max_size=3),
        min_size=2, max_size=3,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1))
    def test_matches_sympy_diagonal(self, rows):
        sympy = pytest.importorskip("sympy")
        from sympy.matrices.normalforms import smith_normal_form as sympy_snf
        _, s, _ = smith_normal_form(rows)
        ours = [abs(s[i][i]) for i in range(min(len(s), len(s[0])))]
        theirs_m = sympy_snf(sympy.Matrix(rows))
        theirs = [abs(int(theirs_m[i, i])) for i in range(min(theirs_m.rows, theirs_m.cols))]
        assert sorted(d for d in ours if d) == sorted(d for d in theirs if d)

    def test_kernel_and_solve(self):
        m = [[2, 4, 6], [1, 2, 3]]
        for col in kernel_basis(m):
            assert mat_vec(m, col) == [0, 0]
        assert solve_integer(m, [2, 1]) is not None
        assert solve_integer(m, [1, 1]) is None

    def test_invert_unimodular(self):
        u = [[1, 2], [0, 1]]
        assert mat_mul(u, invert_unimodular(u)) == [[1, 0], [0, 1]]
        with pytest.raises(ValidationError):
            invert_unimodular([[2, 0], [0, 1]])


class TestFinAbGroup:
    def test_normalization(self):
        assert FinAbGroup.of(2, 3).invariant_factors == (6,)
        assert FinAbGroup.of(4, 6).invariant_factors == (2, 12)
        assert FinAbGroup.of(1, 1).is_trivial()
        assert FinAbGroup.trivial().order == 1

    def test_invariants_enforced(self):
        with pytest.raises(ValidationError):
            FinAbGroup((1, 2))
        with pytest.raises(ValidationError):
            FinAbGroup((4, 6))

    def test_order_and_exponent(self):
        g = FinAbGroup((2, 4))
        assert g.order == 8
        assert g.exponent == 4

    def test_ell_rank(self):
        assert ell_rank(FinAbGroup((2, 2, 2)), 2) == 3
        assert ell_rank(FinAbGroup.of(6), 5) == 0
        assert ell_rank(FinAbGroup.of(2, 4, 3), 2) == 2
        with pytest.raises(ValidationError):
            ell_rank(FinAbGroup.of(6), 4)


class TestHoms:
    def test_mult_by_two_on_z4(self):
        h = AbHom(FinAbGroup.of(4), FinAbGroup.of(4), ((2,),))
        k, incl = kernel(h)
        assert k.invariant_factors == (2,)
        assert cokernel(h).invariant_factors == (2,)
        # the kernel generator really maps to an order-2 element killed by h
        gen = tuple(col for col in zip(*incl.matrix))[0]
        assert h(gen) == (0,)

    def test_identity_on_z6(self):
        h = AbHom.identity(FinAbGroup.of(6))
        k, _ = kernel(h)
        assert k.is_trivial()
        assert cokernel(h).is_trivial()

    def test_mixed_source_example(self):
        # (a, b) -> 4a + 2b from Z/2 + Z/4 into Z/8: kernel order 2, coker Z/2
        src = FinAbGroup((2, 4))
        tgt = FinAbGroup((8,))
        h = AbHom(src, tgt, ((4, 2),))
        k, _ = kernel(h)
        assert k.order == 2
        assert cokernel(h).invariant_factors == (2,)
        assert image_order(h) == len(hom_images((2, 4), (8,), [[4, 2]]))

    def test_malformed_hom_rejected(self):
        with pytest.raises(ValidationError):
            AbHom(FinAbGroup.of(2), FinAbGroup.of(4), ((1,),))
        with pytest.raises(ValidationError):
            AbHom(FinAbGroup.of(2), FinAbGroup.of(4), ((1, 1),))

    def test_order_bookkeeping_random_homs(self):
        rng = random.Random(7)
        for _ in range(60):
            sf = FinAbGroup.of(*[rng.choice([1, 2, 3, 4, 6, 8, 12]) for _ in range(rng.randint(0, 3))])
            tf = FinAbGroup.of(*[rng.choice([1, 2, 3, 4, 6, 9]) for _ in range(rng.randint(0, 3))])
            rows = []
            for i in range(tf.rank):
                row = []
                for j in range(sf.rank):
                    step = tf.invariant_factors[i] // gcd(tf.invariant_factors[i], sf.invariant_factors[j])
                    row.append(step * rng.randrange(0, tf.invariant_factors[i] // step + 1))
                rows.append(tuple(row))
            h = AbHom(sf, tf, tuple(rows))
            k, _ = kernel(h)
            cok = cokernel(h)
            # |ker h| * |target| == |coker h| * |source|, asserted exactly
            assert k.order * tf.order == cok.order * sf.order
            assert k.order * image_order(h) == sf.order
            assert cok.order * image_order(h) == tf.order


class TestSumMapKernel:
    def test_coprime_pair_is_trivial(self):
        assert sum_map_kernel([2, 3], 6).is_trivial()

    def test_two_twos(self):
        assert sum_map_kernel([2, 2], 2).invariant_factors == (2,)

    def test_442(self):
        g = sum_map_kernel([4, 4, 2], 4)
        assert g.order == 8
        elems = sum_map_kernel_elements([4, 4, 2], 4)
        assert g.invariant_factors == structure_by_enumeration(
            elems, tuple_adder([4, 4, 2]), (0, 0, 0)
        )

    def test_rejects_wrong_lcm(self):
        with pytest.raises(ValidationError):
            sum_map_kernel([2, 3], 12)
        with pytest.raises(ValidationError):
            sum_map_kernel([], 1)

    def test_exhaustive_small_vectors(self):
        # order law and structure match enumeration for all short d-vectors
        for r in range(1, 4):
            vectors = [[]]
            for _ in range(r):
                vectors = [v + [d] for v in vectors for d in range(1, 7)]
            for d in vectors:
                big_d = lcm(*d) if len(d) > 1 else d[0]
                g = sum_map_kernel(d, big_d)
                assert g.order == prod(d) // big_d
                elems = sum_map_kernel_elements(d, big_d)
                assert len(elems) == g.order
                assert g.invariant_factors == structure_by_enumeration(
                    elems, tuple_adder(d), tuple([0] * r)
                )
