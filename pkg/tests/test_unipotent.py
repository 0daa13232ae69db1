import json

import pytest

from u2factor.field import GF, rationals
from u2factor.linalg import Matrix, identity, diagonal, jordan_block
from u2factor.unipotent import (is_unipotent_index, is_u2, commutator,
                                classify_u2_sl2, CommutatorPair,
                                Factorization, verify, NotU2,
                                invert_factorization, conjugate_factorization,
                                direct_sum_factorization,
                                identity_factorization, embed_factorization,
                                concat_factorizations, expand_to_u2_product,
                                factorization_to_json, factorization_from_json,
                                factorization_to_dict)
from u2factor.factor_sl2 import factor_sl2


def u2_census(f):
    """All U2-matrices in SL_2(F) via the (a, b, c) parameterization."""
    out = set()
    one = f.one()
    for a in f.elements():
        for b in f.elements():
            for c in f.elements():
                if not (a * a + b * c).is_zero():
                    continue
                A = Matrix(f, [[one + a, b], [c, one - a]])
                if not A.is_identity():
                    out.add(A)
    return out


class TestPredicates:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
    def test_census_matches_predicate(self, q):
        f = GF(q)
        census = u2_census(f)
        assert len(census) == q * q - 1
        assert all(is_u2(A) for A in census)
        assert all(A.det() == f.one() for A in census)

    def test_index_edge_cases(self):
        f = GF(5)
        assert not is_u2(identity(f, 2))
        assert is_unipotent_index(identity(f, 3), 1)
        assert is_u2(jordan_block(f, 2, f.one()))
        J3 = jordan_block(f, 3, f.one())
        assert not is_u2(J3) and is_unipotent_index(J3, 3)

    def test_classification(self):
        f = GF(7)
        upper = Matrix.from_ints(f, [[1, 3], [0, 1]])
        lower = Matrix.from_ints(f, [[1, 0], [2, 1]])
        assert classify_u2_sl2(upper).tag == "type_i_upper"
        assert classify_u2_sl2(lower).tag == "type_i_lower"
        # a = 1, bc = -1
        mixed = Matrix.from_ints(f, [[2, 1], [-1, 0]])
        assert classify_u2_sl2(mixed).tag == "type_ii"
        with pytest.raises(NotU2):
            classify_u2_sl2(identity(f, 2))
        with pytest.raises(NotU2):
            classify_u2_sl2(Matrix.from_ints(f, [[2, 0], [0, 4]]))

    def test_pair_validation(self):
        f = GF(5)
        good = jordan_block(f, 2, f.one())
        bad = diagonal(f, [f.element(2), f.element(3)])
        with pytest.raises(NotU2):
            CommutatorPair(good, bad)


def sample_cert(f):
    return factor_sl2(Matrix.from_ints(f, [[0, -1], [1, 3]]))


class TestTransports:
    def test_invert(self):
        f = GF(7)
        cert = sample_cert(f)
        inv = invert_factorization(cert)
        assert inv.target == cert.target.inverse()
        assert verify(inv).passed
        # involution up to route trail
        back = invert_factorization(inv)
        assert back.target == cert.target and back.pairs == cert.pairs

    def test_conjugate(self):
        f = GF(7)
        cert = sample_cert(f)
        P = Matrix.from_ints(f, [[1, 2], [1, 3]])
        conj = conjugate_factorization(cert, P)
        assert conj.target == P @ cert.target @ P.inverse()
        assert verify(conj).passed

    def test_direct_sum_pads_to_max(self):
        f = GF(7)
        one_pair = sample_cert(f)
        empty = identity_factorization(f, 2)
        both = direct_sum_factorization(one_pair, empty)
        assert both.pair_count() == 1  # max(1, 0), not 1 + 0 stacking
        assert verify(both).passed
        assert both.target.n == 4
        other = direct_sum_factorization(one_pair, sample_cert(f))
        assert other.pair_count() == 1
        assert verify(other).passed

    def test_embed(self):
        f = GF(5)
        cert = sample_cert(f)
        emb = embed_factorization(cert, 2, 1)
        assert emb.target.n == 5
        assert emb.target[0, 0] == f.one() and emb.target[1, 1] == f.one()
        assert verify(emb).passed

    def test_concat_checks_product(self):
        f = GF(7)
        cert = sample_cert(f)
        target = cert.target @ cert.target
        combined = concat_factorizations(target, [cert, cert])
        assert combined.pair_count() == 2
        assert verify(combined).passed
        with pytest.raises(AssertionError):
            concat_factorizations(cert.target, [cert, cert])

    def test_expand_to_u2_product(self):
        f = GF(7)
        cert = sample_cert(f)
        factors = expand_to_u2_product(cert)
        assert len(factors) == 2 * cert.pair_count()
        acc = identity(f, 2)
        for X in factors:
            assert is_u2(X)
            acc = acc @ X
        assert acc == cert.target


class TestVerification:
    def test_detects_tampering(self):
        f = GF(7)
        cert = sample_cert(f)
        bad = Factorization(cert.target @ cert.target, cert.pairs, cert.route)
        report = verify(bad)
        assert not report.passed
        assert any("product" in name for name, _ in report.failures())

    def test_report_text(self):
        report = verify(sample_cert(GF(7)))
        text = report.text()
        assert text.endswith("PASS")
        assert "is U2" in text


class TestJson:
    @pytest.mark.parametrize("field", [GF(7), GF(9), rationals()])
    def test_round_trip_byte_exact(self, field):
        if field.is_finite:
            cert = sample_cert(field)
        else:
            cert = factor_sl2(Matrix(field, [
                [field.element(4), field.zero()],
                [field.zero(), field.element(4).inverse()]]))
        payload = factorization_to_json(cert)
        again = factorization_from_json(payload)
        assert factorization_to_json(again) == payload
        assert again.target == cert.target and again.pairs == cert.pairs

    def test_schema(self):
        cert = sample_cert(GF(7))
        d = factorization_to_dict(cert)
        assert set(d) == {"field", "n", "target", "pairs", "route"}
        assert d["field"] == "GF(7)"
        assert all(set(p) == {"x", "y"} for p in d["pairs"])
        json.dumps(d)  # serializable

    def test_corrupt_json_rejected(self):
        cert = sample_cert(GF(7))
        d = factorization_to_dict(cert)
        d["pairs"][0]["x"][0][0] = "3"  # no longer U2
        with pytest.raises(NotU2):
            factorization_from_json(json.dumps(d))
