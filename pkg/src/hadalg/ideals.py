"""Index-order machinery, Krull-dimension witnesses, chain witnesses, and the
coherence annihilator.

Membership in the limit-defined ideals (the I_n / M_n families and the
non-fixed ideal of subsequence type) is *not* decidable from finitely many
coefficients; this module reports trajectories flagged exact or
horizon-certified and never fakes a boolean where only a sample exists.
The one genuinely decidable case (an EPSeq sampled along a single cycle
residue) gets an exact verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import algebra
from .algebra import Element
from .coeffseq import EPSeq, GenSeq, ep_map
from .errors import HorizonCertifiedOnly, HorizonExceeded
from .weights import Weight

INFINITE = math.inf


@dataclass(frozen=True)
class IndexOrderReport:
    """Length of the vanishing-coefficient run starting at index k.

    ``m`` is the run length (0 when u(k) != 0, inf for an everywhere-zero
    tail); ``flag`` is "exact" when decided from the sequence structure and
    "horizon" when the run was still open at the horizon (then
    m = horizon - k + 1 is only a lower bound).
    """

    k: int
    m: float
    horizon: int
    flag: str  # "exact" | "horizon"

    def to_json(self) -> dict:
        return {"k": self.k,
                "m": "inf" if math.isinf(self.m) else int(self.m),
                "flag": self.flag}


def index_order(f: Element, k: int, horizon: int = 1 << 14) -> IndexOrderReport:
    """m(f, k): maximal m with u(k + l) = 0 for 0 <= l <= m - 1.

    Exact for EPSeq input (the run either terminates inside the window or the
    cycle is identically zero, giving infinity).  GenSeq input is scanned up
    to the horizon and flagged when the run is still open there.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    u = f.u
    if isinstance(u, EPSeq):
        # the run either hits a nonzero within one full cycle past the
        # prefix, or the cycle is identically zero and the run is infinite
        bound = max(k, u.period_start) + len(u.cycle)
        for n in range(k, bound):
            if u.value(n) != 0:
                return IndexOrderReport(k, n - k, horizon, "exact")
        return IndexOrderReport(k, INFINITE, horizon, "exact")
    if k > u.horizon:
        raise HorizonExceeded(k, u.horizon)
    n = k
    while n <= u.horizon:
        if u.value(n) != 0:
            return IndexOrderReport(k, n - k, horizon, "exact")
        n += 1
    return IndexOrderReport(k, u.horizon - k + 1, u.horizon, "horizon")


# ---------------------------------------------------------------------------
# the Krull-dimension witness family


def _block_cover(n: int, horizon: int):
    """Intervals [2^k, 2^k + k^(n+1)] for 2^k <= horizon."""
    k = 0
    while (1 << k) <= horizon:
        yield k, 1 << k, (1 << k) + k ** (n + 1)
        k += 1


def krull_family(w: Weight, n: int, horizon: int = 1 << 14) -> Element:
    """The witness f_n: u(m) = 0 on the blocks {2^k + l : 0 <= l <= k^(n+1)},
    u(m) = 1 elsewhere.  GenSeq-backed (the zero set is not periodic)."""
    if n < 1:
        raise ValueError("n must be positive")
    if horizon < 4:
        raise ValueError("horizon must be at least 4")
    blocks = [(lo, hi) for _, lo, hi in _block_cover(n, horizon)]

    def rule(m: int) -> complex:
        for lo, hi in blocks:
            if lo <= m <= hi:
                return 0.0
        return 1.0

    return Element(w, GenSeq(rule=rule, horizon=horizon, certified_bound=1.0))


def growth_trajectory(f: Element, n: int, horizon: int = 1 << 14
                      ) -> list[tuple[int, float]]:
    """Ratios m(f, 2^k) / k^n for k >= 1 with 2^k <= horizon.

    Advisory diagnostics for the limit/sup criteria defining the ideal I_n
    and multiplicative set M_n; the limits themselves are not decided.
    """
    out = []
    k = 1
    while (1 << k) <= horizon:
        rep = index_order(f, 1 << k, horizon)
        ratio = math.inf if math.isinf(rep.m) else rep.m / (k ** n)
        out.append((k, ratio))
        k += 1
    return out


def p1_p2_check(f: Element, g: Element, k: int, horizon: int = 1 << 14) -> bool:
    """Check m(f+g, k) >= min(m(f,k), m(g,k)) and
    m(f*g, k) >= max(m(f,k), m(g,k)) with horizon-limited index orders."""
    mf = index_order(f, k, horizon).m
    mg = index_order(g, k, horizon).m
    ms = index_order(algebra.add(f, g), k, horizon).m
    mp = index_order(algebra.star(f, g), k, horizon).m
    return ms >= min(mf, mg) and mp >= max(mf, mg)


# ---------------------------------------------------------------------------
# coherence


def annihilator_generator(f: Element) -> Element:
    """The generator chi of the annihilator ideal {h : f * h = 0}:
    u_chi = indicator of the zero set of u_f.  Then f * chi = 0 exactly and
    every annihilating h is a multiple of chi with constant ||h||."""
    if not f.exact:
        raise HorizonCertifiedOnly(
            "annihilator generator requires an eventually periodic element")
    chi = ep_map(f.u, lambda v: 1.0 if v == 0 else 0.0)
    return Element(f.weight, chi)


# ---------------------------------------------------------------------------
# chain witnesses


@dataclass(frozen=True)
class ChainReport:
    kind: str
    n: int
    witness_degree: int
    in_larger: bool      # f_n lies in the ideal it should
    outside_smaller: bool

    @property
    def ok(self) -> bool:
        return self.in_larger and self.outside_smaller

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n,
                "witness": f"z^{self.witness_degree}",
                "in_larger": self.in_larger,
                "outside_smaller": self.outside_smaller}


def chain_witness(kind: str, n: int, w: Weight) -> tuple[Element, ChainReport]:
    """Monomial witnesses for the strict ideal chains.

    Ascending ("noetherian"): with I_n = {f : fhat(k) = 0 for k >= n},
    f_n = z^n lies in I_{n+1} but not I_n.  Descending ("artinian"): with
    I_n = {f : fhat(k) = 0 for k <= n}, f_n = z^{n+1} lies in I_n but not
    I_{n+1}.  The report verifies both memberships by coefficient scans.
    """
    if n < 1:
        raise ValueError("n must be positive")
    kind = kind.lower()
    if kind not in ("noetherian", "artinian"):
        raise ValueError("kind must be 'noetherian' or 'artinian'")
    if kind == "noetherian":
        deg = n
        f = algebra.monomial(w, deg)
        # f in I_{n+1}: coefficients vanish from n+1 on (scan one past the window)
        in_larger = all(f.u.value(k) == 0
                        for k in range(n + 1, f.u.rep_len + 2))
        outside = f.u.value(n) != 0
    else:
        deg = n + 1
        f = algebra.monomial(w, deg)
        in_larger = all(f.u.value(k) == 0 for k in range(0, n + 1))
        outside = f.u.value(n + 1) != 0
    return f, ChainReport(kind, n, deg, in_larger, outside)


# ---------------------------------------------------------------------------
# non-fixed ideal diagnostics


@dataclass(frozen=True)
class TrajectoryReport:
    values: list[float]
    certified: str            # "exact" | "horizon"
    verdict: Optional[bool]   # in the ideal? None when undecidable

    def to_json(self) -> dict:
        return {"values": self.values, "certified": self.certified,
                "verdict": self.verdict}


def nonfixed_ideal_trajectory(f: Element, ks: Sequence[int]) -> TrajectoryReport:
    """|u_f(k_n)| along a subsequence: the quantity whose vanishing limit
    defines membership in the subsequence ideal.

    Advisory in general.  For an EPSeq sampled at indices that eventually
    stay on one cycle residue the limit is the constant cycle value, so an
    exact verdict is emitted.
    """
    ks = list(ks)
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("indices must be strictly increasing")
    u = f.u
    if isinstance(u, GenSeq):
        if ks and ks[-1] > u.horizon:
            raise HorizonExceeded(ks[-1], u.horizon)
        vals = [abs(u.value(k)) for k in ks]
        return TrajectoryReport(vals, "horizon", None)
    vals = [abs(u.value(k)) for k in ks]
    tail = [k for k in ks if k >= u.period_start]
    verdict = None
    if tail:
        residues = {(k - u.period_start) % len(u.cycle) for k in tail}
        if len(residues) == 1:
            limit = abs(u.cycle[residues.pop()])
            verdict = (limit == 0.0)
    return TrajectoryReport(vals, "exact", verdict)
