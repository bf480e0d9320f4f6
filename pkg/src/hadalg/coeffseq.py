"""Eventually periodic complex sequences and horizon-limited generated ones.

``EPSeq`` is the workhorse representation: a finite prefix followed by a
repeating cycle.  The class is closed under every pointwise operation used
downstream, and suprema / infima / run lengths over all of N_0 reduce to
finite scans, so criteria phrased "for all n" become decidable.

``GenSeq`` holds non-periodic witnesses (rule + horizon + declared bound);
anything computed from one is advisory, never a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Sequence

from .errors import HorizonExceeded, PointwiseDomainError


def _primitive_cycle(cycle: tuple) -> tuple:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d:
            continue
        if cycle == cycle[:d] * (n // d):
            return cycle[:d]
    return cycle


@dataclass(frozen=True)
class EPSeq:
    """Eventually periodic sequence: value(n) = prefix[n] for n < |prefix|,
    then cycle[(n - |prefix|) mod |cycle|].

    Instances are canonical: the cycle is primitive and no trailing prefix
    entry merely shadows the cycle value it would have anyway.  Equality of
    canonical forms therefore decides equality of the sequences.  Values are
    compared with exact ``==``; no approximate deduplication ever happens.
    """

    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        prefix = tuple(complex(v) for v in self.prefix)
        cycle = tuple(complex(v) for v in self.cycle)
        if not cycle:
            raise ValueError("cycle must be nonempty")
        cycle = _primitive_cycle(cycle)
        # absorb prefix entries that equal the cycle value they would shadow;
        # absorbing rotates the cycle right by one to keep later values fixed
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = cycle[-1:] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    # -- indexing ----------------------------------------------------------

    def value(self, n: int) -> complex:
        if n < 0:
            raise IndexError(n)
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def __call__(self, n: int) -> complex:
        return self.value(n)

    def values(self, count: int) -> list:
        return [self.value(n) for n in range(count)]

    @property
    def period_start(self) -> int:
        return len(self.prefix)

    @property
    def rep_len(self) -> int:
        """Number of positions whose values determine the whole sequence."""
        return len(self.prefix) + len(self.cycle)

    def rep_values(self) -> list:
        return list(self.prefix) + list(self.cycle)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(v) -> "EPSeq":
        return EPSeq((), (v,))

    @staticmethod
    def from_values(values: Sequence, period_start: int) -> "EPSeq":
        return EPSeq(tuple(values[:period_start]), tuple(values[period_start:]))


ZERO = EPSeq((), (0.0,))
ONE = EPSeq((), (1.0,))


def joint_shape(*seqs: EPSeq) -> tuple[int, int]:
    """Common (prefix length, cycle length) refining every argument."""
    pl = max((len(s.prefix) for s in seqs), default=0)
    cl = lcm(*(len(s.cycle) for s in seqs)) if seqs else 1
    return pl, cl


def joint_values(*seqs: EPSeq) -> tuple[int, int, list[list[complex]]]:
    """Materialize all sequences over one shared representative window.

    Returns (prefix length L, cycle length c, rows); row n holds the values
    of every sequence at index n, for n < L + c.  Index n >= L repeats with
    period c, so any pointwise predicate checked on the window holds on all
    of N_0.
    """
    pl, cl = joint_shape(*seqs)
    rows = [[s.value(n) for s in seqs] for n in range(pl + cl)]
    return pl, cl, rows


def ep_zip(a: EPSeq, b: EPSeq, op: Callable[[complex, complex], complex]) -> EPSeq:
    """Pointwise binary combination; result is canonical."""
    pl, cl, rows = joint_values(a, b)
    out = []
    for n, (va, vb) in enumerate(rows):
        try:
            out.append(op(va, vb))
        except (ZeroDivisionError, ValueError) as exc:
            raise PointwiseDomainError(n, str(exc) or "pointwise operation undefined") from exc
    return EPSeq.from_values(out, pl)


def ep_map(a: EPSeq, op: Callable[[complex], complex]) -> EPSeq:
    pl = len(a.prefix)
    out = []
    for n, v in enumerate(a.rep_values()):
        try:
            out.append(op(v))
        except (ZeroDivisionError, ValueError) as exc:
            raise PointwiseDomainError(n, str(exc) or "pointwise operation undefined") from exc
    return EPSeq.from_values(out, pl)


def sup_abs(a: EPSeq) -> float:
    """sup_n |a(n)|, exact: the sup over N_0 is attained on the window."""
    return max(abs(v) for v in a.rep_values())


def inf_abs(a: EPSeq) -> float:
    """inf_n |a(n)|, exact."""
    return min(abs(v) for v in a.rep_values())


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenSeq:
    """Rule-generated sequence, trusted only up to ``horizon``.

    ``certified_bound`` is a declared bound on |rule(n)| for every n; it is
    spot-checkable below the horizon but otherwise taken on faith.  Results
    derived from a GenSeq are labeled horizon-certified downstream.
    """

    rule: Callable[[int], complex] = field(compare=False)
    horizon: int
    certified_bound: float

    def value(self, n: int) -> complex:
        if n < 0:
            raise IndexError(n)
        if n > self.horizon:
            raise HorizonExceeded(n, self.horizon)
        return complex(self.rule(n))

    def __call__(self, n: int) -> complex:
        return self.value(n)


def gen_window(g: GenSeq, lo: int, hi: int) -> list:
    """Values rule(lo..hi) inclusive; horizon-certified by construction."""
    if lo < 0 or lo > hi:
        raise ValueError(f"invalid window [{lo}, {hi}]")
    if hi > g.horizon:
        raise HorizonExceeded(hi, g.horizon)
    return [g.value(n) for n in range(lo, hi + 1)]
