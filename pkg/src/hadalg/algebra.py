"""Scalar algebra of entire functions under weighted Hadamard multiplication.

Everything works in normalized coordinates u(n) = p(n) * fhat(n).  In these
coordinates the multiplication is pointwise, the norm is sup |u|, the unit is
the all-ones sequence, and every criterion implemented below (divisibility,
invertibility, ideal membership, the corona condition, idempotency, exp/log)
is a finite scan over the representative window of an EPSeq.  Raw Taylor
coefficients fhat(n) = u(n)/p(n) appear only at the serialization boundary
and inside point evaluation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .coeffseq import (EPSeq, GenSeq, ep_map, ep_zip, inf_abs, joint_values,
                       sup_abs)
from .errors import (BadMask, BoundUnavailable, CoronaFails,
                     HorizonCertifiedOnly, NotDivisible, NotInIdeal,
                     NotInvertible, PreconditionFailed, WeightMismatch)
from .weights import Weight

Coeffs = Union[EPSeq, GenSeq]


@dataclass(frozen=True)
class Element:
    """Member of the algebra: a weight and the normalized coefficients u.

    Boundedness of u *is* membership (fhat(n) = O(1/p(n)) iff sup |u| < oo);
    it is automatic for an EPSeq and declared for a GenSeq.
    """

    weight: Weight
    u: Coeffs

    @property
    def exact(self) -> bool:
        return isinstance(self.u, EPSeq)

    def __repr__(self):
        return f"Element({self.weight.name}, {self.u!r})"


def _same_weight(*els: Element) -> Weight:
    w = els[0].weight
    for e in els[1:]:
        if e.weight != w:
            raise WeightMismatch(f"{e.weight.name} vs {w.name}")
    return w


def _require_exact(*els: Element) -> None:
    for e in els:
        if not e.exact:
            raise HorizonCertifiedOnly(
                "operation requires an eventually periodic element; "
                "a generated sequence only supports horizon-certified queries")


# ---------------------------------------------------------------------------
# construction and arithmetic


def unit(w: Weight) -> Element:
    """The identity element: u == 1 (raw form: sum z^n / p(n))."""
    return Element(w, EPSeq.constant(1.0))


def zero(w: Weight) -> Element:
    return Element(w, EPSeq.constant(0.0))


def monomial(w: Weight, m: int) -> Element:
    """z^m as an element: u(m) = p(m), zero elsewhere."""
    vals = [0.0] * m + [w.p_eval(m), 0.0]
    return Element(w, EPSeq.from_values(vals, m + 1))


def from_normalized(w: Weight, u: Coeffs) -> Element:
    return Element(w, u)


def from_raw_coeffs(w: Weight, raw_prefix: Sequence[complex]) -> Element:
    """Finite raw Taylor coefficients (zero tail): u(n) = p(n) * fhat(n)."""
    vals = [w.p_eval(n) * complex(c) for n, c in enumerate(raw_prefix)]
    return Element(w, EPSeq.from_values(vals + [0.0], len(vals)))


def add(f: Element, g: Element) -> Element:
    _same_weight(f, g)
    _require_exact(f, g)
    return Element(f.weight, ep_zip(f.u, g.u, lambda a, b: a + b))


def sub(f: Element, g: Element) -> Element:
    _same_weight(f, g)
    _require_exact(f, g)
    return Element(f.weight, ep_zip(f.u, g.u, lambda a, b: a - b))


def scalar_mul(c: complex, f: Element) -> Element:
    _require_exact(f)
    return Element(f.weight, ep_map(f.u, lambda v: c * v))


def star(f: Element, g: Element) -> Element:
    """Weighted Hadamard product: pointwise product of normalized coefficients."""
    _same_weight(f, g)
    _require_exact(f, g)
    return Element(f.weight, ep_zip(f.u, g.u, lambda a, b: a * b))


def norm(f: Element) -> float:
    """sup_n p(n) |fhat(n)| = sup |u|; horizon-certified for a GenSeq."""
    if f.exact:
        return sup_abs(f.u)
    return max(abs(f.u.value(n)) for n in range(f.u.horizon + 1))


def equal(f: Element, g: Element) -> bool:
    """Exact equality via canonical forms (EPSeq-backed only)."""
    _require_exact(f, g)
    return f.weight == g.weight and f.u == g.u


# ---------------------------------------------------------------------------
# point evaluation


@dataclass(frozen=True)
class EvalResult:
    value: complex
    error_bound: float
    terms: int


def eval_at(f: Element, z: complex, tol: float = 1e-12) -> EvalResult:
    """Certified partial sum of f(z) = sum u(n)/p(n) z^n.

    The truncation index N is chosen so that sup|u| * tail_bound(N, |z|)
    <= tol.  Terms are accumulated through the incremental ratio
    t_{n+1} = t_n * z * p(n)/p(n+1), avoiding raw weight values.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = f.weight
    r = abs(z)
    if f.exact:
        sup = sup_abs(f.u)
        nmax = 100_000
    else:
        sup = f.u.certified_bound
        nmax = f.u.horizon
    N = 0
    bound = None
    while True:
        try:
            t = w.tail_bound(N, r)
            if sup * t <= tol:
                bound = sup * t
                break
        except BoundUnavailable:
            pass
        N += 1
        if N > nmax:
            raise BoundUnavailable(
                f"no truncation index up to {nmax} certifies tolerance {tol} "
                f"at |z| = {r}")
    s = 0.0 + 0.0j
    t = cmath.exp(-w.log_p(0))  # z^0 / p(0)
    for n in range(N + 1):
        s += f.u.value(n) * t
        t *= z * math.exp(w.log_p(n) - w.log_p(n + 1))
    return EvalResult(value=s, error_bound=bound, terms=N + 1)


# ---------------------------------------------------------------------------
# divisibility, gcd, ideals, corona


def invertible(f: Element) -> Optional[tuple[float, Element]]:
    """(delta, inverse) when inf |u| = delta > 0, else None.

    The inverse has u_inv(n) = 1/u(n), so star(f, inverse) is the unit.
    """
    _require_exact(f)
    delta = inf_abs(f.u)
    if delta == 0.0:
        return None
    inv = ep_map(f.u, lambda v: 1.0 / v)
    return delta, Element(f.weight, inv)


def divide(f: Element, g: Element) -> tuple[float, Element]:
    """Decide whether g divides f; return the least constant C and quotient h.

    Succeeds iff |u_f(n)| <= C |u_g(n)| for all n for some C, which on the
    joint window means: wherever u_g vanishes u_f must too.  Raises
    NotDivisible with the first violating index otherwise.
    """
    _same_weight(f, g)
    _require_exact(f, g)
    pl, cl, rows = joint_values(f.u, g.u)
    C = 0.0
    hvals = []
    for n, (uf, ug) in enumerate(rows):
        if ug == 0:
            if uf != 0:
                raise NotDivisible(n)
            hvals.append(0.0)
        else:
            C = max(C, abs(uf) / abs(ug))
            hvals.append(uf / ug)
    return C, Element(f.weight, EPSeq.from_values(hvals, pl))


def gcd(fs: Sequence[Element]) -> Element:
    """Canonical greatest common divisor: u_d(n) = max_k |u_k(n)|.

    A gcd is unique only up to invertible factors; this fixes the real
    nonnegative representative.
    """
    if not fs:
        raise ValueError("gcd needs at least one element")
    w = _same_weight(*fs)
    _require_exact(*fs)
    pl, cl, rows = joint_values(*(f.u for f in fs))
    vals = [max(abs(v) for v in row) for row in rows]
    return Element(w, EPSeq.from_values(vals, pl))


def in_ideal(f: Element, gens: Sequence[Element]) -> tuple[float, list[Element]]:
    """Membership of f in the ideal generated by gens, with Bezout witnesses.

    Succeeds iff |u_f(n)| <= C sum_k |u_gk(n)| for all n.  The witnesses use
    the least-squares formula h_k = u_f * conj(u_gk) / sum_j |u_gj|^2 (zero
    where the denominator vanishes), so sum_k h_k * u_gk reproduces u_f.
    """
    if not gens:
        raise ValueError("need at least one generator")
    w = _same_weight(f, *gens)
    _require_exact(f, *gens)
    pl, cl, rows = joint_values(f.u, *(g.u for g in gens))
    C = 0.0
    hvals = [[] for _ in gens]
    for n, row in enumerate(rows):
        uf, ugs = row[0], row[1:]
        s = sum(abs(v) for v in ugs)
        if s == 0.0:
            if uf != 0:
                raise NotInIdeal(n)
            for col in hvals:
                col.append(0.0)
            continue
        C = max(C, abs(uf) / s)
        denom = sum(v.conjugate() * v for v in ugs).real
        for col, v in zip(hvals, ugs):
            col.append(uf * v.conjugate() / denom)
    coeffs = [Element(w, EPSeq.from_values(col, pl)) for col in hvals]
    return C, coeffs


def corona_solve(fs: Sequence[Element]) -> tuple[float, list[Element]]:
    """Bezout identity sum g_i * f_i = unit under the corona condition.

    Succeeds iff delta := inf_n sum_i |u_fi(n)| > 0 (decided exactly on the
    window); the solution g_i = conj(u_fi) / sum_j |u_fj|^2 satisfies
    ||g_i|| <= n/delta (Cauchy-Schwarz; 1/delta alone fails already for
    constant moduli (2, 1)).
    """
    if not fs:
        raise ValueError("need at least one element")
    w = _same_weight(*fs)
    _require_exact(*fs)
    pl, cl, rows = joint_values(*(f.u for f in fs))
    delta = math.inf
    gvals = [[] for _ in fs]
    for n, row in enumerate(rows):
        s = sum(abs(v) for v in row)
        if s == 0.0:
            raise CoronaFails(n)
        delta = min(delta, s)
        denom = sum(v.conjugate() * v for v in row).real
        for col, v in zip(gvals, row):
            col.append(v.conjugate() / denom)
    gs = [Element(w, EPSeq.from_values(col, pl)) for col in gvals]
    return delta, gs


# ---------------------------------------------------------------------------
# stable-rank constructions


def approx_invertible(f: Element, eps: float) -> Element:
    """Invertible g with ||g - f|| <= 2 eps, by thresholding small u-values.

    Positions with |u(n)| <= eps are replaced by eps, so inf |u_g| >= eps.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    _require_exact(f)
    g = ep_map(f.u, lambda v: v if abs(v) > eps else complex(eps))
    return Element(f.weight, g)


def bass_reduce(f1: Element, f2: Element, g1: Element, g2: Element,
                eps: float = 0.25) -> tuple[Element, Element]:
    """Reduce the unimodular pair (f1, f2): find h with f1 + h*f2 invertible.

    Requires the Bezout identity g1*f1 + g2*f2 = unit to hold exactly.
    The chain: u = 1 + |u_f1| (invertible), F1 = f1 * u^-1 (norm <= 1),
    G1 = g1 * u, H1 = thresholding of G1 at eps, h = H1^-1 * u * g2.
    Then f1 + h*f2 = H1^-1 * u * (unit + (H1 - G1) * F1) is invertible since
    ||(H1 - G1) * F1|| <= 2 eps < 1.
    """
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    w = _same_weight(f1, f2, g1, g2)
    _require_exact(f1, f2, g1, g2)
    bezout = add(star(g1, f1), star(g2, f2))
    if bezout.u != EPSeq.constant(1.0):
        raise PreconditionFailed("g1*f1 + g2*f2 is not exactly the unit")
    u_el = Element(w, ep_map(f1.u, lambda v: 1.0 + abs(v)))
    _, u_inv = invertible(u_el)
    g1u = star(g1, u_el)
    h1 = approx_invertible(g1u, eps)
    inv_h1 = invertible(h1)
    if inv_h1 is None:  # cannot happen: thresholding guarantees inf >= eps
        raise PreconditionFailed("thresholded element unexpectedly singular")
    _, h1_inv = inv_h1
    h = star(star(h1_inv, u_el), g2)
    witness = add(f1, star(h, f2))
    delta = inf_abs(witness.u)
    if delta <= 0.0:
        raise PreconditionFailed(
            "construction produced a non-invertible witness; "
            "the input identity was not a valid Bezout identity")
    return h, witness


# ---------------------------------------------------------------------------
# idempotents, exponentials, logarithms


def is_idempotent(f: Element) -> bool:
    """f * f == f, equivalently u(n) in {0, 1} for every n (exact)."""
    _require_exact(f)
    return all(v == 0 or v == 1 for v in f.u.rep_values())


def idempotent_from_mask(w: Weight, mask: EPSeq) -> Element:
    """Element with u = mask; requires mask values exactly 0 or 1."""
    for n, v in enumerate(mask.rep_values()):
        if v != 0 and v != 1:
            raise BadMask(n, v)
    return Element(w, mask)


def exp_el(f: Element) -> Element:
    """Exponential: u_{exp f}(k) = e^{u_f(k)}; invertible with
    inf |u| >= e^{-||f||}."""
    _require_exact(f)
    return Element(f.weight, ep_map(f.u, cmath.exp))


def log_el(g: Element) -> Element:
    """Principal logarithm of an invertible element: u_f(k) = Log u_g(k)
    with imaginary part in (-pi, pi].  exp_el(log_el(g)) recovers g and
    ||f|| <= sqrt(max(|log delta|, |log ||g|| |)^2 + pi^2).
    """
    _require_exact(g)
    inv = invertible(g)
    if inv is None:
        bad = min(enumerate(g.u.rep_values()), key=lambda kv: abs(kv[1]))
        raise NotInvertible(bad[0], bad[1])
    return Element(g.weight, ep_map(g.u, cmath.log))
