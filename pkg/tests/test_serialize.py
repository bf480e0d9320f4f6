import json

import pytest

from hadalg import algebra as alg
from hadalg import matalg as ma
from hadalg import serialize as ser
from hadalg.coeffseq import EPSeq, GenSeq
from hadalg.errors import SchemaError
from hadalg.weights import FACTORIAL

from conftest import exact_divisor, gauss_int, rand_element

W = FACTORIAL


class TestEPSeq:
    def test_round_trip(self, rng):
        for _ in range(30):
            f = rand_element(rng, exact_divisor)
            doc = json.loads(json.dumps(ser.epseq_to_json(f.u)))
            assert ser.epseq_from_json(doc) == f.u

    def test_bare_reals_accepted(self):
        s = ser.epseq_from_json({"prefix": [2], "cycle": [[1, 0]]})
        assert s == EPSeq((2.0,), (1.0,))

    def test_missing_cycle_rejected(self):
        with pytest.raises(SchemaError):
            ser.epseq_from_json({"prefix": []})
        with pytest.raises(SchemaError):
            ser.epseq_from_json({"prefix": [], "cycle": []})


class TestElement:
    def test_round_trip_bit_faithful(self, rng):
        for _ in range(30):
            f = rand_element(rng, lambda r: complex(r.random(), r.random()))
            doc = json.loads(json.dumps(ser.element_to_json(f)))
            g = ser.element_from_json(doc)
            assert alg.equal(f, g)

    def test_raw_form(self):
        f = ser.element_from_json({"weight": "factorial",
                                   "raw_prefix": [1, 1, 1], "tail": "zero"})
        assert f.u.value(2) == 2.0 and f.u.value(3) == 0.0

    def test_gen_backed_not_serializable(self):
        g = alg.Element(W, GenSeq(rule=lambda n: 0.0, horizon=4,
                                  certified_bound=1.0))
        with pytest.raises(SchemaError):
            ser.element_to_json(g)


class TestMatrix:
    def test_round_trip(self, rng):
        import numpy as np
        nr = np.random.default_rng(3)
        stack = nr.standard_normal((3, 2, 2)) + 1j * nr.standard_normal((3, 2, 2))
        A = ma.from_ustack(W, 1, stack)
        doc = json.loads(json.dumps(ser.matrix_to_json(A)))
        B = ser.matrix_from_json(doc)
        assert A.entries == B.entries

    def test_declared_shape_checked(self):
        doc = ser.matrix_to_json(ma.mat_identity(W, 2))
        doc["rows"] = 3
        with pytest.raises(SchemaError):
            ser.matrix_from_json(doc)


class TestFactors:
    def test_round_trip(self):
        A = ma.MatElement(W, ((alg.Element(W, EPSeq((), (2.0,))), alg.zero(W)),
                              (alg.zero(W), alg.Element(W, EPSeq((), (0.5,))))))
        factors = ma.sl_factor(A)
        doc = json.loads(json.dumps(ser.factors_to_json(factors)))
        back = ser.factors_from_json(doc)
        assert [(f.i, f.j) for f in back] == [(f.i, f.j) for f in factors]
        for a, b in zip(back, factors):
            assert alg.equal(a.alpha, b.alpha)
