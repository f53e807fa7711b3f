import pytest

from capitula.abelian import AbHom, FinAbGroup
from capitula.cohomology import Cyclic, GModule, h1_cyclic
from capitula.errors import (
    DegenerateExtensionError,
    UnsupportedError,
    ValidationError,
)
from capitula.fforacle import (
    ASCurve,
    BasePlace,
    GF,
    INFINITE,
    KummerCurve,
    Poly,
    RationalFunc,
    as_reduce,
    base_change,
    corpus,
    corpus_entry,
    count_points,
    curve_from_json,
    curve_to_json,
    delta_prime,
    extension,
    galois_invariants,
    invariants_of,
    l_polynomial,
    local_invariants,
    monic_irreducibles,
    parse_base_place,
    parse_poly,
    picard_group,
    ramification_data,
    realize_profile,
    render_poly,
    s_class_group,
    splitting,
    zeta_functional_equation_holds,
)
from capitula.fforacle.gf import (
    IRREDUCIBLE_TABLE,
    PrimeField,
    absolute_trace,
    multiplicative_order,
    pth_root,
)
from capitula.fforacle.poly import _is_irreducible


F2, F3, F4 = GF(2), GF(3), GF(4)
T2, T3, T4 = Poly.x(F2), Poly.x(F3), Poly.x(F4)
ONE2, ONE3 = Poly.one(F2), Poly.one(F3)


class TestFiniteFields:
    def test_shipped_table_entries_are_irreducible(self):
        for (p, k), coeffs in IRREDUCIBLE_TABLE.items():
            base = PrimeField(p)
            poly = Poly.from_ints(base, coeffs)
            assert poly.degree == k
            assert _is_irreducible(poly)

    def test_field_orders_and_arithmetic(self):
        for q in (2, 3, 4, 5, 8, 9):
            field = GF(q)
            assert field.order == q
            elems = field.elements()
            assert len(elems) == q
            for a in elems:
                if not field.is_zero(a):
                    assert field.mul(a, field.inv(a)) == field.one()

    def test_tower_extension(self):
        f16 = extension(F4, 2)
        assert f16.order == 16
        a = f16.generator()
        assert f16.mul(a, f16.inv(a)) == f16.one()
        assert all(f16.pow(pth_root(f16, e), 2) == e for e in f16.elements())

    def test_trace_is_additive_and_onto(self):
        for field in (F4, GF(8), GF(9)):
            values = {absolute_trace(field, e) for e in field.elements()}
            assert values == set(range(field.char))

    def test_multiplicative_order(self):
        f8 = GF(8)
        orders = sorted({multiplicative_order(f8, e)
                         for e in f8.elements() if not f8.is_zero(e)})
        assert orders == [1, 7]


class TestPolyLayer:
    def test_irreducible_counts(self):
        # number of monic irreducibles of degree d over F_q
        assert len(monic_irreducibles(F2, 1)) == 2
        assert len(monic_irreducibles(F2, 2)) == 1
        assert len(monic_irreducibles(F2, 3)) == 2
        assert len(monic_irreducibles(F2, 4)) == 3
        assert len(monic_irreducibles(F3, 2)) == 3
        assert len(monic_irreducibles(F4, 2)) == 6

    def test_render_parse_roundtrip(self):
        for text in ("t", "t+1", "t^2+t+1", "t^3+2*t+1"):
            poly = parse_poly(F3, text)
            assert render_poly(poly) == text

    def test_rational_reciprocal_matches_infinity(self):
        rat = RationalFunc(T3**3 + ONE3, T3**2 + T3)
        assert rat.reciprocal_substitution().valuation_at(Poly.x(F3)) \
            == rat.valuation_at_infinity()


class TestReduction:
    def test_odd_pole_untouched(self):
        assert as_reduce(RationalFunc.of(T2**3), F2) == RationalFunc.of(T2**3)

    def test_even_pole_reduced(self):
        assert as_reduce(RationalFunc.of(T2**2), F2) == RationalFunc.of(T2)

    def test_wirtinger_trick_finite_pole(self):
        # 1/t^2 reduces to 1/t via h = 1/t
        reduced = as_reduce(RationalFunc(ONE2, T2**2), F2)
        poles = reduced.den
        assert poles.degree == 1
        assert reduced.valuation_at(T2) == -1

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateExtensionError):
            as_reduce(RationalFunc.of(T2**2 + T2), F2)
        with pytest.raises(DegenerateExtensionError):
            as_reduce(RationalFunc.of(Poly.zero(F2)), F2)

    def test_constant_extension_flagged(self):
        curve = ASCurve.make(F2, RationalFunc.of(ONE2))
        assert curve.constant_ext
        with pytest.raises(UnsupportedError):
            ramification_data(curve)

    def test_kummer_normalization(self):
        curve = KummerCurve.make(F3, 2, RationalFunc.of(T3**3))
        # multiplicity 3 reduces to 1
        assert curve.f == RationalFunc.of(T3)
        with pytest.raises(DegenerateExtensionError):
            KummerCurve.make(F3, 2, RationalFunc.of(T3**2))
        nonsquare = Poly(F3, [F3.from_int(-1)])
        assert KummerCurve.make(F3, 2, RationalFunc.of(nonsquare)).constant_ext

    def test_kummer_needs_roots_of_unity(self):
        with pytest.raises(ValidationError):
            KummerCurve.make(F2, 2, RationalFunc.of(T2))


class TestRamification:
    def test_elliptic_as(self):
        curve = ASCurve.make(F2, RationalFunc.of(T2**3))
        ram, genus = ramification_data(curve)
        assert genus == 1
        assert [(r.place.id, r.e, r.different_exponent) for r in ram] == [("inf", 2, 4)]

    def test_genus_two_as(self):
        curve = ASCurve.make(F2, RationalFunc(T2**4 + ONE2, T2))
        ram, genus = ramification_data(curve)
        assert genus == 2
        assert {(r.place.id, r.different_exponent) for r in ram} == {("inf", 4), ("t", 2)}

    def test_kummer_genus_zero(self):
        curve = KummerCurve.make(F3, 2, RationalFunc.of(T3))
        ram, genus = ramification_data(curve)
        assert genus == 0
        assert {r.place.id for r in ram} == {"inf", "t"}
        assert all(r.different_exponent == 1 for r in ram)

    def test_splitting_examples(self):
        curve = ASCurve.make(F2, RationalFunc.of(T2**3))
        assert splitting(curve, BasePlace(T2)).kind == "split"
        assert splitting(curve, BasePlace(T2**2 + T2 + ONE2)).kind == "split"
        assert splitting(curve, BasePlace(T2 + ONE2)).kind == "inert"
        assert splitting(curve, INFINITE).kind == "ramified"
        kummer = KummerCurve.make(F3, 2, RationalFunc.of(T3))
        assert splitting(kummer, BasePlace(parse_poly(F3, "t+2"))).kind == "split"

    def test_splitting_consistency_efg(self):
        for entry in corpus():
            curve = entry.curve
            bases = [INFINITE] + [BasePlace(pi) for pi in monic_irreducibles(curve.field, 1)]
            for base in bases:
                data = local_invariants(curve, base)
                assert data.e * data.f * data.g == curve.n


class TestZeta:
    def test_elliptic_count_and_l(self):
        curve = ASCurve.make(F2, RationalFunc.of(T2**3))
        assert count_points(curve, 1) == 3
        coeffs, h = l_polynomial(curve)
        assert coeffs == [1, 0, 2]
        assert h == 3

    def test_genus_zero(self):
        curve = KummerCurve.make(F3, 2, RationalFunc.of(T3))
        assert l_polynomial(curve) == ([1], 1)

    def test_genus_two_regression(self):
        # recorded oracle value for y^2+y = t^3 + 1/t over F_2
        curve = ASCurve.make(F2, RationalFunc(T2**4 + ONE2, T2))
        coeffs, h = l_polynomial(curve)
        assert h == 8
        assert coeffs == [1, 1, 0, 2, 4]

    def test_functional_equation_all_corpus(self):
        for entry in corpus():
            coeffs, _ = l_polynomial(entry.curve)
            _, genus = ramification_data(entry.curve)
            assert zeta_functional_equation_holds(coeffs, genus, entry.curve.field.order)

    def test_base_change_preserves_counts(self):
        curve = ASCurve.make(F2, RationalFunc.of(T2**3))
        assert count_points(curve, 2) == count_points(base_change(curve, 2), 1)


class TestPicard:
    def test_elliptic_certified(self):
        pd = picard_group(corpus_entry("as_f2_r0").curve)
        assert pd.group.invariant_factors == (3,)
        assert pd.group.order == pd.h

    def test_genus_zero_trivial(self):
        pd = picard_group(corpus_entry("kummer_f3_g0").curve)
        assert pd.group.is_trivial()

    def test_r1_invariants(self):
        pd = picard_group(corpus_entry("as_f2_r1").curve)
        assert pd.group.invariant_factors == (8,)
        assert galois_invariants(pd).invariant_factors == (2,)

    def test_sigma_has_order_dividing_n(self):
        for entry in corpus():
            pd = picard_group(entry.curve)
            power = AbHom.identity(pd.group)
            for _ in range(entry.curve.n):
                power = pd.sigma_action.compose(power)
            assert power.matrix == AbHom.identity(pd.group).matrix

    def test_invariants_examples(self):
        # sigma = -1 on Z/3: no invariants
        g3 = FinAbGroup.of(3)
        minus = AbHom(g3, g3, ((-1,),))
        assert invariants_of(g3, minus).is_trivial()
        # trivial action: everything
        assert invariants_of(g3, AbHom.identity(g3)).invariant_factors == (3,)
        # swap on (Z/2)^2: the diagonal
        klein = FinAbGroup((2, 2))
        swap = AbHom(klein, klein, ((0, 1), (1, 0)))
        assert invariants_of(klein, swap).invariant_factors == (2,)

    def test_s_class_group_imaginary_equals_pic0(self):
        pd = picard_group(corpus_entry("as_f2_r1").curve)
        group, _ = s_class_group(pd, pd.places_above(INFINITE))
        assert group.invariant_factors == pd.group.invariant_factors

    def test_s_class_group_all_rational_places_of_p1_cover(self):
        # genus 0: killing the classes of both degree-one ramified places
        pd = picard_group(corpus_entry("kummer_f3_g0").curve)
        s_k = pd.places_above(INFINITE) + pd.places_above(
            BasePlace(Poly.x(F3)))
        group, _ = s_class_group(pd, s_k)
        assert group.is_trivial()

    def test_s_class_group_with_split_place(self):
        # genus 1, S = {inf, t}: t splits on y^2+y=t^3, its classes generate
        pd = picard_group(corpus_entry("as_f2_r0").curve,
                          extra_base_places=[BasePlace(T2)])
        s_k = pd.places_above(INFINITE) + pd.places_above(BasePlace(T2))
        group, _ = s_class_group(pd, s_k)
        assert group.is_trivial()  # order h / ord(class difference) = 3/3

    def test_delta_prime_examples(self):
        assert delta_prime(picard_group(corpus_entry("kummer_f3_g0").curve)) == 1
        assert delta_prime(picard_group(corpus_entry("as_f2_r0").curve)) == 1
        # regression: quartic Kummer cover with no odd-degree invariant class
        assert delta_prime(picard_group(corpus_entry("kummer_f3_dp2").curve)) == 2

    def test_degree_map_is_galois_invariant(self):
        pd = picard_group(corpus_entry("as_f4_g1").curve)
        for i, w in enumerate(pd.factor_base):
            assert pd.factor_base[pd._perm[i]].deg == w.deg

    def test_realize_profile_examples(self):
        profile, pd = realize_profile(corpus_entry("as_f2_r0").curve, [INFINITE])
        assert profile.n == 2
        assert profile.h_KS == 3
        inf = profile.place("inf")
        assert (inf.e, inf.f, inf.in_S) == (2, 1, True)
        assert not profile.ramified_outside_s

        profile2, _ = realize_profile(corpus_entry("as_f2_r1").curve, [INFINITE])
        ram = profile2.ramified_outside_s
        assert [(p.id, p.e) for p in ram] == [("t", 2)]

        profile3, _ = realize_profile(corpus_entry("kummer_f3_g0").curve, [INFINITE])
        assert profile3.place("inf").e == 2
        assert [(p.id, p.e) for p in profile3.ramified_outside_s] == [("t", 2)]

    def test_unsupported_without_rational_place_is_an_error_path(self):
        # quadratic base place S: h_FS = gcd of S-degrees = 2
        curve = corpus_entry("as_f2_r0").curve
        pi = T2**2 + T2 + ONE2
        profile, pd = realize_profile(curve, [BasePlace(pi)])
        assert profile.h_FS == 2


class TestCurveJson:
    def test_roundtrip(self):
        raw = {"kind": "artin_schreier", "q": 2, "p_or_l": 2,
               "Q_or_f": {"num": [0, 0, 0, 1], "den": [1]}}
        curve = curve_from_json(raw)
        assert curve_to_json(curve) == raw

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError):
            curve_from_json({"kind": "kummer", "q": 3, "p_or_l": 2,
                             "Q_or_f": {"num": [0, 1]}, "extra": 1})

    def test_wrong_characteristic_rejected(self):
        with pytest.raises(ValidationError):
            curve_from_json({"kind": "artin_schreier", "q": 3, "p_or_l": 2,
                             "Q_or_f": {"num": [0, 1]}})

    def test_parse_base_place(self):
        assert parse_base_place(F3, "inf").is_infinite
        place = parse_base_place(F3, "t^2+1")
        assert place.degree == 2
        with pytest.raises(ValidationError):
            parse_base_place(F3, "2*t+1")
