"""Weight sequences p : N_0 -> (0, oo) with super-exponential growth.

The defining growth condition lim p(n)^(1/n) = oo cannot be verified from
finitely many values; it is trusted for the presets and declared for custom
weights.  All internal arithmetic is in log-space (log p(n)); raw values are
materialized only on demand and report overflow explicitly.

Each weight kind carries its own certified tail-bound rule for sums
sum_{n>N} r^n / p(n); custom weights without one refuse to certify.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import BoundUnavailable, OverflowAtIndex, SchemaError

_LOG_MAX_DOUBLE = math.log(1.7976931348623157e308)


@dataclass(frozen=True)
class Weight:
    """A named weight sequence.  Immutable; all methods are pure."""

    name: str
    kind: str  # "factorial" | "superexp" | "custom"
    base: float = 0.0   # superexp only
    power: int = 0      # superexp only
    rule: Optional[Callable[[int], float]] = field(default=None, compare=False)
    tail_rule: Optional[Callable[[int, float], float]] = field(default=None, compare=False)

    # -- evaluation --------------------------------------------------------

    def log_p(self, n: int) -> float:
        if n < 0:
            raise ValueError("index must be nonnegative")
        if self.kind == "factorial":
            return math.lgamma(n + 1)
        if self.kind == "superexp":
            return (n ** self.power) * math.log(self.base)
        v = self.rule(n)
        if v <= 0:
            raise SchemaError(f"custom weight {self.name!r} returned "
                              f"nonpositive value at n={n}")
        return math.log(v)

    def p_eval(self, n: int) -> float:
        """p(n) as a double.  Presets are exact while representable."""
        if n < 0:
            raise ValueError("index must be nonnegative")
        if self.kind == "factorial":
            if n > 170:  # 171! overflows the double range
                raise OverflowAtIndex(n)
            return float(math.factorial(n))
        if self.kind == "superexp":
            if self.log_p(n) > _LOG_MAX_DOUBLE:
                raise OverflowAtIndex(n)
            return float(self.base) ** (n ** self.power)
        v = float(self.rule(n))
        if v <= 0:
            raise SchemaError(f"custom weight {self.name!r} returned "
                              f"nonpositive value at n={n}")
        if math.isinf(v):
            raise OverflowAtIndex(n)
        return v

    # -- tail bounds -------------------------------------------------------

    def tail_bound(self, N: int, r: float) -> float:
        """A certified T with sum_{n>N} r^n / p(n) <= T.

        Factorial: once r/(N+2) <= 1/2 the tail is dominated by the geometric
        series with ratio 1/2, giving T = 2 r^(N+1)/(N+1)!.  Super-exponential
        b^(n^q): consecutive term ratios r / b^((n+1)^q - n^q) decrease, so the
        same doubling trick applies once the first ratio is <= 1/2.  Raises
        BoundUnavailable below the ratio threshold (raise N and retry).
        """
        if r < 0:
            raise ValueError("radius must be nonnegative")
        if N < 0:
            raise ValueError("index must be nonnegative")
        if r == 0.0:
            return 0.0
        if self.kind == "factorial":
            if r / (N + 2) > 0.5:
                raise BoundUnavailable(
                    f"factorial tail bound needs r/(N+2) <= 1/2; got "
                    f"r={r}, N={N}")
            return 2.0 * math.exp((N + 1) * math.log(r) - math.lgamma(N + 2))
        if self.kind == "superexp":
            logb = math.log(self.base)
            gap = (N + 2) ** self.power - (N + 1) ** self.power
            if math.log(r) - gap * logb > math.log(0.5):
                raise BoundUnavailable(
                    f"superexp tail bound needs r/b^((N+2)^q-(N+1)^q) <= 1/2; "
                    f"got r={r}, N={N}")
            return 2.0 * math.exp((N + 1) * math.log(r)
                                  - ((N + 1) ** self.power) * logb)
        if self.tail_rule is None:
            raise BoundUnavailable(
                f"custom weight {self.name!r} declares no tail-bound rule; "
                "evaluation cannot be certified")
        return self.tail_rule(N, r)


FACTORIAL = Weight(name="factorial", kind="factorial")


def superexp(base: float = 2.0, power: int = 2) -> Weight:
    if base <= 1.0:
        raise SchemaError("superexp base must exceed 1")
    if power < 2:
        raise SchemaError("superexp power must be at least 2")
    # strip a trailing ".0" so superexp:b=2,q=2 round-trips through its name
    b = int(base) if float(base).is_integer() else base
    return Weight(name=f"superexp:b={b},q={power}", kind="superexp",
                  base=float(base), power=int(power))


_CUSTOM_REGISTRY: dict[str, Weight] = {}


def register_custom(ident: str,
                    rule: Callable[[int], float],
                    tail_rule: Optional[Callable[[int, float], float]] = None) -> Weight:
    """Register a custom weight addressable as ``custom:<ident>``.

    The growth condition is declared by the caller, not checked.
    """
    w = Weight(name=f"custom:{ident}", kind="custom", rule=rule, tail_rule=tail_rule)
    _CUSTOM_REGISTRY[ident] = w
    return w


_SUPEREXP_RE = re.compile(r"^superexp:b=([0-9.]+),q=([0-9]+)$")


def from_name(name: str) -> Weight:
    if name == "factorial":
        return FACTORIAL
    m = _SUPEREXP_RE.match(name)
    if m:
        return superexp(float(m.group(1)), int(m.group(2)))
    if name.startswith("custom:"):
        ident = name[len("custom:"):]
        try:
            return _CUSTOM_REGISTRY[ident]
        except KeyError:
            raise SchemaError(f"unknown custom weight {ident!r}") from None
    raise SchemaError(f"unknown weight name {name!r}")


def known_weights() -> list[str]:
    return ["factorial", "superexp:b=<base>,q=<power>",
            *(f"custom:{k}" for k in sorted(_CUSTOM_REGISTRY))]
