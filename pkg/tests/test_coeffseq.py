import math

import pytest
from hypothesis import given, strategies as st

from hadalg.coeffseq import (EPSeq, GenSeq, ZERO, ONE, ep_map, ep_zip,
                             gen_window, inf_abs, joint_values, sup_abs)
from hadalg.errors import HorizonExceeded, PointwiseDomainError

finite_complex = st.complex_numbers(allow_nan=False, allow_infinity=False,
                                    max_magnitude=1e6)
small_ints = st.integers(min_value=-3, max_value=3)
int_complex = st.builds(complex, small_ints, small_ints)


def seqs(values=int_complex, max_prefix=4, max_cycle=4):
    return st.builds(
        EPSeq,
        st.lists(values, max_size=max_prefix).map(tuple),
        st.lists(values, min_size=1, max_size=max_cycle).map(tuple))


class TestCanonicalization:
    def test_constant(self):
        s = EPSeq((), (2.0,))
        assert s.prefix == () and s.cycle == (2 + 0j,)

    def test_primitive_cycle(self):
        assert EPSeq((), (1, 2, 1, 2)).cycle == (1 + 0j, 2 + 0j)

    def test_prefix_absorption_rotates(self):
        # prefix (5, 2) over cycle (1, 2): the trailing 2 shadows the cycle
        s = EPSeq((5, 2), (1, 2))
        assert s.prefix == (5 + 0j,)
        assert s.cycle == (2 + 0j, 1 + 0j)
        for n in range(12):
            assert s.value(n) == EPSeq((5, 2), (1, 2, 1, 2)).value(n)

    def test_fully_periodic_collapse(self):
        assert EPSeq((1, 2), (1, 2)) == EPSeq((), (1, 2))

    @given(seqs())
    def test_idempotent(self, s):
        assert EPSeq(s.prefix, s.cycle) == s

    @given(seqs(), st.integers(min_value=0, max_value=40))
    def test_values_survive_canonicalization(self, s, n):
        raw_prefix = s.prefix + s.cycle
        again = EPSeq(raw_prefix, s.cycle)
        assert again.value(n) == s.value(n)

    @given(seqs(), seqs())
    def test_equality_decides_pointwise_equality(self, a, b):
        window = a.rep_len + b.rep_len + a.rep_len * b.rep_len
        same = all(a.value(n) == b.value(n) for n in range(window))
        assert (a == b) == same

    def test_empty_cycle_rejected(self):
        with pytest.raises(ValueError):
            EPSeq((1,), ())


class TestPointwise:
    @given(seqs(), seqs())
    def test_ep_zip_matches_pointwise(self, a, b):
        c = ep_zip(a, b, lambda x, y: x + y)
        for n in range(40):
            assert c.value(n) == a.value(n) + b.value(n)

    @given(seqs())
    def test_ep_map_matches_pointwise(self, a):
        c = ep_map(a, lambda x: 3 * x)
        for n in range(40):
            assert c.value(n) == 3 * a.value(n)

    def test_domain_error_carries_index(self):
        a = EPSeq((1, 0), (1,))
        with pytest.raises(PointwiseDomainError) as ei:
            ep_map(a, lambda v: 1 / v)
        assert ei.value.index == 1

    @given(st.lists(seqs(), min_size=1, max_size=4))
    def test_joint_window_determines_tail(self, ss):
        pl, cl, rows = joint_values(*ss)
        for n in range(pl + cl, pl + 3 * cl):
            expect = rows[pl + (n - pl) % cl]
            assert [s.value(n) for s in ss] == expect


class TestExtremes:
    @given(seqs())
    def test_sup_inf_attained(self, a):
        vals = [abs(a.value(n)) for n in range(a.rep_len + 20)]
        assert sup_abs(a) == max(vals)
        assert inf_abs(a) == min(vals)

    def test_constants(self):
        assert sup_abs(ZERO) == 0.0
        assert inf_abs(ONE) == 1.0


class TestGenSeq:
    def test_value_and_horizon(self):
        g = GenSeq(rule=lambda n: n * 1.0, horizon=10, certified_bound=10.0)
        assert g.value(10) == 10.0
        with pytest.raises(HorizonExceeded):
            g.value(11)

    def test_window(self):
        g = GenSeq(rule=lambda n: n * 1.0, horizon=10, certified_bound=10.0)
        assert gen_window(g, 2, 4) == [2.0, 3.0, 4.0]
        with pytest.raises(ValueError):
            gen_window(g, 4, 2)
        with pytest.raises(HorizonExceeded):
            gen_window(g, 0, 11)
