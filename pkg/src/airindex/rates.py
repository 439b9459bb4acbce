"""Feasible-rate arithmetic for cyclic neighboring-interference broadcasting.

A problem instance is a triple (K, D, U): K messages arranged on a cycle,
with receiver k unable to cancel the D messages after and the U messages
before its wanted one (U <= D, D + U < K). Splitting every message into b
symbols and transmitting b*(D+1) + a coded symbols works whenever

    gcd(b*K, b*(D+1) + a) >= b*(U+1),

giving rate D + 1 + a/b symbols per message symbol. This module minimizes
a/b over that feasibility set three ways that must agree:

* :func:`find_min_rate` walks a = l*g for l = 1, 2, ... (g = gcd(K, D+1))
  and uses the Bezout coefficients of (K, D+1) to jump straight to the one
  candidate b in range for each l.
* :func:`find_min_rate_scan` does the same walk with an explicit bounded
  scan over the solution family instead of the closed-form jump.
* :func:`oracle_min_rate` brute-forces the predicate over a provably
  sufficient (a, b) box, as an independent reference.

Rates are exact :class:`fractions.Fraction` values end to end; decimals
are presentation only, truncated (never rounded) to three places.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "ProblemInstance",
    "BezoutTriple",
    "RateSolution",
    "extended_bezout",
    "is_feasible",
    "solution_for_pair",
    "find_min_rate",
    "find_min_rate_scan",
    "oracle_min_rate",
    "rate_upper_bound",
    "known_broadcast_rate",
    "truncated_decimal",
]


@dataclass(frozen=True)
class ProblemInstance:
    """A (K, D, U) instance of the cyclic interference layout."""

    K: int
    D: int
    U: int

    def __post_init__(self) -> None:
        if self.K < 1:
            raise ValueError(f"K must be positive, got K={self.K}")
        if self.D < 1:
            raise ValueError(f"D must be positive, got D={self.D}")
        if self.U < 0:
            raise ValueError(f"U must be nonnegative, got U={self.U}")
        if self.U > self.D:
            raise ValueError(f"U must not exceed D, got U={self.U}, D={self.D}")
        if self.D + self.U >= self.K:
            raise ValueError(
                f"D + U must be smaller than K, got D+U={self.D + self.U}, K={self.K}"
            )


@dataclass(frozen=True)
class BezoutTriple:
    """gcd certificate: g == m*K - n*(D+1)."""

    g: int
    m: int
    n: int


def extended_bezout(K: int, d_plus_1: int) -> BezoutTriple:
    """Extended Euclidean coefficients with g = m*K - n*(d_plus_1).

    Any valid triple works downstream; this returns the classic minimal
    pair produced by the iterative algorithm.
    """
    if K < 1 or d_plus_1 < 1:
        raise ValueError(f"arguments must be positive, got {K}, {d_plus_1}")
    old_r, r = K, d_plus_1
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return BezoutTriple(g=old_r, m=old_s, n=-old_t)


def _check_bezout(K: int, d_plus_1: int, bez: BezoutTriple) -> None:
    if bez.g != gcd(K, d_plus_1) or bez.m * K - bez.n * d_plus_1 != bez.g:
        raise ValueError(f"{bez} is not a valid Bezout triple for ({K}, {d_plus_1})")


def is_feasible(problem: ProblemInstance, a: int, b: int) -> bool:
    """Membership test for the (a, b) feasibility set.

    True iff gcd(b*K, b*(D+1) + a) >= b*(U+1), i.e. splitting messages
    into b symbols with a extra coded symbols admits the construction.
    """
    if a < 0:
        raise ValueError(f"a must be nonnegative, got {a}")
    if b < 1:
        raise ValueError(f"b must be positive, got {b}")
    return gcd(b * problem.K, b * (problem.D + 1) + a) >= b * (problem.U + 1)


@dataclass(frozen=True)
class RateSolution:
    """A feasible (a, b) pair with its exact rate and encoder dimensions.

    ``rate`` is (b*(D+1) + a) / b reduced; the encoder is the
    ``encoder_rows x encoder_cols`` matrix with rows = K*b and
    cols = b*(D+1) + a.
    """

    problem: ProblemInstance
    a_min: int
    b_min: int
    rate: Fraction
    encoder_rows: int
    encoder_cols: int
    source: str = "algorithm"

    def to_json(self) -> dict:
        return {
            "K": self.problem.K,
            "D": self.problem.D,
            "U": self.problem.U,
            "a_min": self.a_min,
            "b_min": self.b_min,
            "rate_num": self.rate.numerator,
            "rate_den": self.rate.denominator,
            "rate_decimal": truncated_decimal(self.rate),
            "encoder_rows": self.encoder_rows,
            "encoder_cols": self.encoder_cols,
            "source": self.source,
        }


def solution_for_pair(
    problem: ProblemInstance, a: int, b: int, source: str = "manual"
) -> RateSolution:
    """Package an explicit (a, b) choice without checking feasibility.

    Useful for negative controls; the encoder builder re-checks
    feasibility unless told otherwise.
    """
    if a < 0 or b < 1:
        raise ValueError(f"need a >= 0 and b >= 1, got a={a}, b={b}")
    cols = b * (problem.D + 1) + a
    return RateSolution(
        problem=problem,
        a_min=a,
        b_min=b,
        rate=Fraction(cols, b),
        encoder_rows=problem.K * b,
        encoder_cols=cols,
        source=source,
    )


def find_min_rate(
    problem: ProblemInstance, bezout: BezoutTriple | None = None
) -> RateSolution:
    """Minimize a/b over the feasibility set.

    With g = gcd(K, D+1) >= U+1 the scalar code (a=0, b=1) is already
    feasible and optimal (rate D+1 meets the general lower bound).
    Otherwise the minimizing pairs satisfy b*(D+1) + a == 0 (mod K) with
    b <= K // (U+1); for a = l*g the admissible b form one residue class
    modulo K // g, and since that step exceeds K // (U+1) whenever
    g <= U, each l admits at most a single candidate. Walking l upward
    and returning the first hit therefore yields the minimum. The walk
    always terminates by l = (K mod (D+1)) // g because
    a = K mod (D+1), b = K // (D+1) is feasible.

    The result does not depend on which valid Bezout triple is supplied:
    only bezout.n mod (K // g) enters the candidate formula.
    """
    K, D, U = problem.K, problem.D, problem.U
    g = gcd(K, D + 1)
    if U + 1 <= g:
        a, b = 0, 1
    else:
        bez = bezout if bezout is not None else extended_bezout(K, D + 1)
        _check_bezout(K, D + 1, bez)
        step = K // g
        b_cap = K // (U + 1)
        l_cap = (K % (D + 1)) // g
        a = b = 0
        for l in range(1, l_cap + 1):
            cand = (l * bez.n - 1) % step + 1
            if cand <= b_cap:
                a, b = l * g, cand
                break
        if b == 0:
            raise AssertionError(
                "candidate walk exhausted its bound; unreachable for a valid instance"
            )
        if (b * (D + 1) + a) % K != 0 or not is_feasible(problem, a, b):
            raise AssertionError(f"candidate (a={a}, b={b}) failed its own feasibility")
    cols = b * (D + 1) + a
    return RateSolution(
        problem=problem,
        a_min=a,
        b_min=b,
        rate=Fraction(cols, b),
        encoder_rows=K * b,
        encoder_cols=cols,
        source="algorithm",
    )


def find_min_rate_scan(
    problem: ProblemInstance, bezout: BezoutTriple | None = None
) -> RateSolution:
    """Same minimization via a bounded scan of the solution family.

    For each l the candidates b = l*n + t*(K // g) are enumerated for
    t in [-l, l] instead of being computed directly; kept alongside
    :func:`find_min_rate` so the closed-form jump can be cross-checked.
    Raises LookupError if the scan radius never produces a candidate in
    range within the l bound (which would indicate the radius is too
    narrow; no such case is known).
    """
    K, D, U = problem.K, problem.D, problem.U
    g = gcd(K, D + 1)
    if U + 1 <= g:
        return find_min_rate(problem)
    bez = bezout if bezout is not None else extended_bezout(K, D + 1)
    _check_bezout(K, D + 1, bez)
    step = K // g
    b_cap = K // (U + 1)
    l_cap = (K % (D + 1)) // g
    for l in range(1, l_cap + 1):
        for t in range(-l, l + 1):
            cand = l * bez.n + t * step
            if 1 <= cand <= b_cap:
                a, b = l * g, cand
                cols = b * (D + 1) + a
                return RateSolution(
                    problem=problem,
                    a_min=a,
                    b_min=b,
                    rate=Fraction(cols, b),
                    encoder_rows=K * b,
                    encoder_cols=cols,
                    source="algorithm",
                )
    raise LookupError(
        f"scan with t in [-l, l] found no candidate for {problem} within l <= {l_cap}"
    )


def oracle_min_rate(problem: ProblemInstance, b_max: int | None = None) -> RateSolution:
    """Brute-force reference minimizer, independent of the Bezout route.

    Evaluates the feasibility predicate directly for every b in
    [1, b_max] (default b_max = K) and a in [0, K mod (D+1)], keeping the
    smallest a/b with ties broken toward smaller b, then smaller a. The
    a range suffices because a = K mod (D+1) with b = K // (D+1) is
    always feasible, capping the minimum ratio.
    """
    K, D = problem.K, problem.D
    if b_max is None:
        b_max = K
    if b_max < 1:
        raise ValueError(f"b_max must be positive, got {b_max}")
    a_hi = K % (D + 1)
    best: tuple[int, int] | None = None
    best_key: tuple[Fraction, int, int] | None = None
    for b in range(1, b_max + 1):
        for a in range(a_hi + 1):
            if is_feasible(problem, a, b):
                key = (Fraction(a, b), b, a)
                if best_key is None or key < best_key:
                    best_key, best = key, (a, b)
    if best is None:
        raise LookupError(f"no feasible pair for {problem} with b <= {b_max}")
    a, b = best
    cols = b * (D + 1) + a
    return RateSolution(
        problem=problem,
        a_min=a,
        b_min=b,
        rate=Fraction(cols, b),
        encoder_rows=K * b,
        encoder_cols=cols,
        source="oracle",
    )


def rate_upper_bound(K: int, D: int) -> Fraction:
    """The always-achievable rate K / floor(K / (D+1)).

    Equals D + 1 + (K mod (D+1)) / floor(K / (D+1)) and so collapses to
    D + 1 exactly when (D+1) | K.
    """
    if K < 1 or D < 1:
        raise ValueError(f"K and D must be positive, got K={K}, D={D}")
    if D + 1 > K:
        raise ValueError(f"need D + 1 <= K, got D={D}, K={K}")
    return Fraction(K, K // (D + 1))


def known_broadcast_rate(problem: ProblemInstance) -> Fraction | None:
    """Exact optimal rate in the regimes where it is known, else None.

    U = D = 1 has rate K / floor(K/2); U = gcd(K, D+1) - 1 has rate
    D + 1 (a scalar code meets the lower bound there).
    """
    K, D, U = problem.K, problem.D, problem.U
    if D == 1 and U == 1:
        return Fraction(K, K // 2)
    if U == gcd(K, D + 1) - 1:
        return Fraction(D + 1)
    return None


def truncated_decimal(x: Fraction, places: int = 3) -> str:
    """Fixed-point rendering truncated (not rounded) to ``places`` digits.

    Matches the tabulation convention used throughout: 85/7 renders as
    12.142 even though it rounds to 12.143.
    """
    if x < 0:
        raise ValueError("only nonnegative values are rendered")
    scaled = x.numerator * 10**places // x.denominator
    digits = str(scaled).rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}"
