import json

import pytest

from capitula.errors import HypothesisError, ValidationError
from capitula.profile import (
    CYCLIC,
    GENERAL,
    ExtensionProfile,
    FunctionField,
    NumberField,
    PlaceProfile,
    abelian_shape,
    compute_D_n0,
    compute_dv,
    d_prime_values,
    profile_from_json,
    profile_to_json,
    validate,
)


def cyclic_profile(n, places, **kw):
    return ExtensionProfile(base=NumberField(), n=n, group=CYCLIC, places=tuple(places), **kw)


class TestComputeDv:
    def test_ramified_outside_s_cyclic(self):
        p = cyclic_profile(4, [
            PlaceProfile("s0", True, 1, 1),
            PlaceProfile("v", False, 2, 1),
        ])
        assert compute_dv(p)["v"] == 2

    def test_s_place_uses_local_degree(self):
        p = cyclic_profile(4, [PlaceProfile("v", True, 2, 2)])
        assert compute_dv(p)["v"] == 4

    def test_ramified_s_place_uses_s_branch(self):
        p = cyclic_profile(4, [PlaceProfile("v", True, 2, 2)])
        # in R ∩ S the S-branch wins: local degree, not e
        assert compute_dv(p)["v"] == 4

    def test_general_group_needs_h2(self):
        p = ExtensionProfile(NumberField(), 4, GENERAL, (
            PlaceProfile("s0", True, 1, 1),
            PlaceProfile("v", False, 2, 2),
        ))
        with pytest.raises(ValidationError):
            compute_dv(p)
        p2 = ExtensionProfile(NumberField(), 4, GENERAL, (
            PlaceProfile("s0", True, 1, 1),
            PlaceProfile("v", False, 2, 2, h2_local_order=4),
        ))
        assert compute_dv(p2)["v"] == 4

    def test_order_independent(self):
        places = [
            PlaceProfile("a", True, 1, 2),
            PlaceProfile("b", False, 3, 1),
            PlaceProfile("c", True, 1, 1),
        ]
        p1 = cyclic_profile(6, places)
        p2 = cyclic_profile(6, list(reversed(places)))
        assert compute_dv(p1) == compute_dv(p2)

    def test_dv_divides_n_enforced(self):
        p = cyclic_profile(5, [PlaceProfile("v", True, 2, 1)])
        with pytest.raises(ValidationError):
            compute_dv(p)


class TestDn0:
    def test_basic(self):
        p = cyclic_profile(6, [
            PlaceProfile("a", True, 1, 2),
            PlaceProfile("b", True, 3, 1),
        ])
        assert compute_D_n0(p) == (6, 1)

    def test_all_split(self):
        p = cyclic_profile(5, [PlaceProfile("a", True, 1, 1)])
        assert compute_D_n0(p) == (1, 5)

    def test_three_one_one(self):
        p = cyclic_profile(9, [
            PlaceProfile("a", True, 3, 1),
            PlaceProfile("b", True, 1, 1),
            PlaceProfile("c", True, 1, 1),
        ])
        assert compute_D_n0(p) == (3, 3)

    def test_non_cyclic_rejected(self):
        p = ExtensionProfile(NumberField(), 4, abelian_shape(2, 2),
                             (PlaceProfile("a", True, 1, 1),))
        with pytest.raises(HypothesisError):
            compute_D_n0(p)


class TestValidate:
    def test_well_formed(self):
        p = cyclic_profile(4, [
            PlaceProfile("s0", True, 1, 2),
            PlaceProfile("v", False, 2, 1, h2_local_order=2),
        ])
        report = validate(p)
        assert report.ok
        assert report.d_map == {"s0": 2, "v": 2}

    def test_h2_exceeding_e_squared(self):
        p = ExtensionProfile(NumberField(), 8, GENERAL, (
            PlaceProfile("s0", True, 1, 1),
            PlaceProfile("v", False, 2, 2, h2_local_order=8),
        ))
        report = validate(p)
        assert any(v.rule == "local-h2-upper" for v in report.violations)

    def test_h2_missing_gcd_factor(self):
        p = ExtensionProfile(NumberField(), 8, GENERAL, (
            PlaceProfile("s0", True, 1, 1),
            PlaceProfile("v", False, 2, 2, h2_local_order=3),
        ))
        report = validate(p)
        assert any(v.rule == "local-h2-lower" for v in report.violations)

    def test_cyclic_h2_must_equal_e(self):
        p = cyclic_profile(4, [
            PlaceProfile("s0", True, 1, 1),
            PlaceProfile("v", False, 4, 1, h2_local_order=2),
        ])
        report = validate(p)
        assert any(v.rule == "local-h2-cyclic" for v in report.violations)

    def test_empty_s_flagged(self):
        p = cyclic_profile(2, [PlaceProfile("v", False, 2, 1)])
        report = validate(p)
        assert any(v.rule == "nonempty-S" for v in report.violations)

    def test_duplicate_ids(self):
        p = cyclic_profile(2, [
            PlaceProfile("v", True, 1, 1),
            PlaceProfile("v", True, 2, 1),
        ])
        assert any(v.rule == "unique-ids" for v in validate(p).violations)

    def test_inert_nonsplit_outside_s(self):
        p = cyclic_profile(2, [
            PlaceProfile("s0", True, 1, 1),
            PlaceProfile("v", False, 1, 2),
        ])
        assert any(v.rule == "outside-S-prime" for v in validate(p).violations)

    def test_d_prime_report(self):
        p = cyclic_profile(6, [
            PlaceProfile("a", True, 1, 2),
            PlaceProfile("b", False, 3, 1),
        ])
        report = validate(p)
        assert report.d_prime == {"a": 2, "b": 3}
        assert report.d_prime_pairwise_coprime
        assert report.d_pairwise_coprime


class TestJson:
    def test_roundtrip(self):
        raw = {
            "base": {"function": {"q": 3}},
            "n": 2,
            "group": "cyclic",
            "q_prime": 3,
            "h_KS": 1,
            "places": [
                {"id": "inf", "in_S": True, "e": 2, "f": 1, "deg": 1},
                {"id": "t", "in_S": False, "e": 2, "f": 1, "deg": 1},
            ],
        }
        p = profile_from_json(raw)
        assert p.base == FunctionField(3)
        assert p.place("t").ramified
        again = profile_from_json(profile_to_json(p))
        assert again == p

    def test_unknown_top_key_rejected(self):
        with pytest.raises(ValidationError):
            profile_from_json({"base": "number", "n": 2, "group": "cyclic", "extra": 1})

    def test_unknown_place_key_rejected(self):
        with pytest.raises(ValidationError):
            profile_from_json({
                "base": "number", "n": 2, "group": "cyclic",
                "places": [{"id": "v", "in_S": True, "e": 1, "f": 1, "bogus": 2}],
            })

    def test_abelian_group_parse(self):
        p = profile_from_json({
            "base": "number", "n": 4, "group": {"abelian": [2, 2]},
            "places": [{"id": "v", "in_S": True, "e": 1, "f": 1}],
        })
        assert p.group == abelian_shape(2, 2)

    def test_parse_from_string(self):
        text = json.dumps({"base": "number", "n": 2, "group": "cyclic", "places": []})
        assert profile_from_json(text).n == 2

    def test_malformed_base(self):
        with pytest.raises(ValidationError):
            profile_from_json({"base": "padic", "n": 2, "group": "cyclic"})
