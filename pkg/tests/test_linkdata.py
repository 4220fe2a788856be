"""Tests for the linking invariant container and its derived matrices."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primelink.linkdata import (
    LinkingData,
    RelationSystem,
    as_relation_system,
    build_linking_data,
    m_matrix,
    rescale_columns,
)
from primelink.modarith import linking_number, make_prime_record


class TestBuild:
    def test_p3_pair(self):
        ld = build_linking_data(3, [7, 31])
        assert ld.d == 2
        assert ld.c == (2, 1)
        assert ld.ell[1][0] == 2  # l(31, 7) = 2
        assert ld.ell[0][0] == 0 and ld.ell[1][1] == 0

    def test_p5_triple_c_values(self):
        ld = build_linking_data(5, [11, 31, 1021])
        assert ld.d == 3
        assert ld.c == (2, 1, 4)

    def test_rejects_one_mod_p_squared(self):
        with pytest.raises(ValueError, match="19"):
            build_linking_data(3, [7, 19])

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="duplicate"):
            build_linking_data(3, [7, 7])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            build_linking_data(3, [])

    def test_rejects_even_p(self):
        with pytest.raises(ValueError):
            build_linking_data(4, [5])

    def test_entries_rederivable_from_raw_arithmetic(self):
        ld = build_linking_data(3, [7, 13, 31, 61])
        for i in range(ld.d):
            for j in range(ld.d):
                if i != j:
                    assert ld.ell[i][j] == linking_number(
                        ld.primes[i].q, ld.primes[j], 3
                    )


class TestRelationSystem:
    def test_canonicalizes_residues(self):
        sys_ = RelationSystem(p=5, d=2, c=(-1, 6), ell=((0, 7), (-3, 0)))
        assert sys_.c == (4, 1)
        assert sys_.ell == ((0, 2), (2, 0))

    def test_rejects_zero_c(self):
        with pytest.raises(ValueError):
            RelationSystem(p=3, d=2, c=(1, 3), ell=((0, 1), (1, 0)))

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError):
            RelationSystem(p=3, d=2, c=(1, 1), ell=((1, 1), (1, 0)))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            RelationSystem(p=3, d=3, c=(1, 1), ell=((0, 1), (1, 0)))

    def test_as_relation_system(self):
        ld = build_linking_data(3, [7, 31])
        sys_ = as_relation_system(ld)
        assert (sys_.p, sys_.d, sys_.c, sys_.ell) == (3, 2, ld.c, ld.ell)
        assert as_relation_system(sys_) is sys_


class TestMMatrix:
    def test_zero_scales_to_zero(self):
        sys_ = RelationSystem(p=5, d=2, c=(2, 3), ell=((0, 0), (1, 0)))
        assert m_matrix(sys_)[0][1] == 0

    def test_worked_example(self):
        # p=3, c_i=2, l_ij=2: m = -2 * inv(2) = -1 = 2 mod 3
        sys_ = RelationSystem(p=3, d=2, c=(2, 1), ell=((0, 2), (1, 0)))
        assert m_matrix(sys_)[0][1] == 2

    def test_unit_divisor_negates(self):
        sys_ = RelationSystem(p=7, d=2, c=(1, 1), ell=((0, 3), (5, 0)))
        m = m_matrix(sys_)
        assert m[0][1] == (-3) % 7
        assert m[1][0] == (-5) % 7

    def test_row_scaling_recovers_ell(self):
        ld = build_linking_data(3, [7, 13, 31])
        m = m_matrix(ld)
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert (-m[i][j] * ld.c[i]) % 3 == ld.ell[i][j]


class TestRescaleColumns:
    def test_identity_scaling(self):
        ld = build_linking_data(3, [7, 31])
        assert rescale_columns(ld, [1, 1]).ell == ld.ell

    def test_single_column_negation(self):
        ld = build_linking_data(3, [7, 13, 31])
        scaled = rescale_columns(ld, [1, 1, -1])
        for i in range(3):
            for j in range(3):
                expected = ld.ell[i][j] * (2 if j == 2 else 1) % 3
                assert scaled.ell[i][j] == expected

    def test_zero_scalar_rejected(self):
        ld = build_linking_data(3, [7, 31])
        with pytest.raises(ValueError):
            rescale_columns(ld, [1, 0])
        with pytest.raises(ValueError):
            rescale_columns(ld, [1, 3])

    def test_preserves_type(self):
        sys_ = RelationSystem(p=3, d=2, c=(1, 1), ell=((0, 1), (1, 0)))
        assert isinstance(rescale_columns(sys_, [2, 2]), RelationSystem)
        ld = build_linking_data(3, [7, 31])
        assert isinstance(rescale_columns(ld, [2, 2]), LinkingData)

    @given(
        st.lists(st.integers(min_value=1, max_value=6), min_size=3, max_size=3),
        st.lists(st.integers(min_value=1, max_value=6), min_size=3, max_size=3),
    )
    @settings(max_examples=40)
    def test_group_action(self, s1, s2):
        sys_ = RelationSystem(
            p=7, d=3, c=(1, 2, 3), ell=((0, 1, 2), (3, 0, 4), (5, 6, 0))
        )
        combined = [a * b % 7 for a, b in zip(s1, s2)]
        assert rescale_columns(rescale_columns(sys_, s1), s2) == rescale_columns(
            sys_, combined
        )

    def test_alternate_roots_equal_some_rescaling(self):
        ld = build_linking_data(3, [7, 13, 31])
        # raise each root to a power coprime to q-1
        us = (5, 7, 11)
        roots = [pow(rec.g, u, rec.q) for rec, u in zip(ld.primes, us)]
        alt = build_linking_data(3, [7, 13, 31], roots=roots)
        # column j of alt must equal column j of ld times inv(u_j) mod p
        scalars = [pow(u, -1, 3) for u in us]
        assert alt.ell == rescale_columns(ld, scalars).ell


class TestJson:
    def test_round_trip(self):
        ld = build_linking_data(3, [7, 31, 229])
        obj = json.loads(ld.to_json())
        back = LinkingData.from_json_dict(obj)
        assert back == ld

    def test_schema_fields(self):
        ld = build_linking_data(5, [11, 31])
        obj = ld.to_json_dict()
        assert list(obj) == ["p", "primes", "roots", "c", "ell"]
        assert obj["primes"] == [11, 31]
        assert obj["roots"] == [rec.g for rec in ld.primes]

    def test_from_json_rejects_wrong_c(self):
        obj = build_linking_data(3, [7, 31]).to_json_dict()
        obj["c"] = [1, 1]
        with pytest.raises(ValueError):
            LinkingData.from_json_dict(obj)

    def test_from_json_rejects_bad_root(self):
        obj = build_linking_data(3, [7, 31]).to_json_dict()
        obj["roots"] = [2, 3]  # 2 is not a primitive root mod 7
        with pytest.raises(ValueError):
            LinkingData.from_json_dict(obj)

    def test_from_json_rejects_nonzero_diagonal(self):
        obj = build_linking_data(3, [7, 31]).to_json_dict()
        obj["ell"][0][0] = 1
        with pytest.raises(ValueError):
            LinkingData.from_json_dict(obj)

    def test_from_json_preserves_nonsmallest_roots(self):
        rec = make_prime_record(7, 3, root=5)
        ld = build_linking_data(3, [7, 31], roots=[5, 3])
        back = LinkingData.from_json_dict(ld.to_json_dict())
        assert back.primes[0].g == 5
        assert back.primes[0].zeta == rec.zeta
