"""Construction and verification of adjacent-independent-row (AIR) matrices.

An AIR matrix is a binary m x n matrix (n <= m) assembled from identity
blocks whose shapes follow the Euclidean division chain of (m, n). The
construction alternates two moves on the shrinking unfilled bottom-right
corner: fill rows with vertically stacked d x d identities, then fill
columns with the transposed (side-by-side) version, until a remainder
hits zero. The family is designed so that every window of n adjacent
rows is nonsingular over every field; :func:`verify_adjacent_independence`
checks that claim window by window with an exact determinant and
independent per-prime rank computations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .linalg import det_exact, rank_mod_p, require_prime

__all__ = [
    "StructureChain",
    "structure_chain",
    "stacked_identity",
    "AirMatrix",
    "build_air",
    "VerificationReport",
    "verify_adjacent_independence",
]


@dataclass(frozen=True)
class StructureChain:
    """Euclidean quotient/remainder chain governing the block layout.

    ``lambdas[0]`` is n, ``lambdas[1]`` is m - n, and each further entry
    is the remainder of the previous division step:

        lambdas[i] = betas[i] * lambdas[i+1] + lambdas[i+2]

    with a virtual trailing zero remainder. ``length`` is the index of
    the last division (so ``len(lambdas) == length + 2`` and
    ``len(betas) == length + 1``). A square matrix has no chain; it is
    flagged with ``length == -1`` and empty ``betas``.
    """

    lambdas: tuple[int, ...]
    betas: tuple[int, ...]
    length: int

    @property
    def degenerate(self) -> bool:
        return self.length < 0


def structure_chain(m: int, n: int) -> StructureChain:
    """Division chain for the m x n construction (1 <= n <= m)."""
    if n < 1 or m < n:
        raise ValueError(f"need 1 <= n <= m, got m={m}, n={n}")
    if m == n:
        return StructureChain(lambdas=(n, 0), betas=(), length=-1)
    a, b = n, m - n
    lambdas = [a, b]
    betas = []
    while True:
        q, r = divmod(a, b)
        betas.append(q)
        if r == 0:
            break
        lambdas.append(r)
        a, b = b, r
    return StructureChain(tuple(lambdas), tuple(betas), len(betas) - 1)


def stacked_identity(c: int, d: int) -> np.ndarray:
    """c x d binary matrix of c // d identity blocks stacked vertically.

    Requires d | c; the transpose gives the side-by-side variant.
    """
    if c < 1 or d < 1 or c % d:
        raise ValueError(f"need positive c, d with d | c, got c={c}, d={d}")
    out = np.zeros((c, d), dtype=np.int64)
    idx = np.arange(c)
    out[idx, idx % d] = 1
    return out


def _fill_blocks(m: int, n: int) -> Iterator[tuple[int, int, np.ndarray]]:
    """Yield ``(top, left, block)`` rectangles tiling the m x n grid.

    Each step works on the unfilled corner of ``rows_left x cols_left``
    cells anchored at ``(top, left)``: a row fill covers the corner's
    full width with stacked identities, a column fill covers its full
    height with side-by-side identities. Divisions follow the Euclidean
    recursion on (m, n), so the corner shrinks strictly and the walk
    terminates with the grid exactly covered.
    """
    top = left = 0
    rows_left, cols_left = m, n
    while True:
        q, r = divmod(rows_left, cols_left)
        yield top, left, stacked_identity(q * cols_left, cols_left)
        top += q * cols_left
        if r == 0:
            return
        q2, r2 = divmod(cols_left, r)
        yield top, left, stacked_identity(q2 * r, r).T
        left += q2 * r
        if r2 == 0:
            return
        rows_left, cols_left = r, r2


@dataclass(frozen=True, eq=False)
class AirMatrix:
    """A built AIR matrix together with its structure chain.

    ``entries`` is an (m, n) array of 0/1 values, write-protected so the
    object can be shared freely after construction.
    """

    m: int
    n: int
    entries: np.ndarray
    chain: StructureChain

    def row_window(self, start: int, wrap: bool = False) -> np.ndarray:
        """The n x n window of rows ``start .. start+n-1``.

        With ``wrap`` the row indices are taken modulo m, so every start
        in ``[0, m)`` is valid; without it the window must fit.
        """
        if wrap:
            idx = np.arange(start, start + self.n) % self.m
            return self.entries[idx]
        if start < 0 or start + self.n > self.m:
            raise ValueError(
                f"window [{start}, {start + self.n}) does not fit in {self.m} rows"
            )
        return self.entries[start : start + self.n]

    def to_text(self) -> str:
        """m lines of n characters, '0'/'1' per cell."""
        return "\n".join("".join(str(int(v)) for v in row) for row in self.entries)

    def to_csv(self) -> str:
        """Comma-separated variant of :meth:`to_text`."""
        return "\n".join(",".join(str(int(v)) for v in row) for row in self.entries)


def build_air(m: int, n: int) -> AirMatrix:
    """Assemble the m x n AIR matrix (requires 1 <= n <= m).

    Deterministic: the same (m, n) always yields bit-identical entries.
    When n | m the result is m/n stacked identities; m == n gives the
    identity matrix.
    """
    if n < 1 or m < n:
        raise ValueError(f"need 1 <= n <= m, got m={m}, n={n}")
    grid = np.zeros((m, n), dtype=np.int64)
    for top, left, block in _fill_blocks(m, n):
        h, w = block.shape
        grid[top : top + h, left : left + w] = block
    grid.setflags(write=False)
    return AirMatrix(m=m, n=n, entries=grid, chain=structure_chain(m, n))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the adjacent-row independence check.

    ``failures`` lists the window start indices (ordered) where either
    the exact determinant was not +-1 or some prime saw a rank drop.
    Failures are report content, never exceptions.
    """

    m: int
    n: int
    wrap: bool
    windows_checked: int
    failures: tuple[int, ...]
    primes: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "wrap": self.wrap,
            "windows_checked": self.windows_checked,
            "failures": list(self.failures),
            "primes": list(self.primes),
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def verify_adjacent_independence(
    air: AirMatrix,
    primes: tuple[int, ...] = (2, 3, 5),
    wrap: bool = False,
) -> VerificationReport:
    """Check every n-row window of ``air`` for full rank.

    Each window must have exact determinant +-1 (nonsingular over every
    field) and, as an independent route, full rank over each requested
    prime. Window starts are ``0 .. m-n`` without wrap and ``0 .. m-1``
    with cyclic wrap.
    """
    primes = tuple(require_prime(q) for q in primes)
    starts = range(air.m) if wrap else range(air.m - air.n + 1)
    failures = []
    for s in starts:
        window = air.row_window(s, wrap=wrap)
        ok = det_exact(window) in (-1, 1) and all(
            rank_mod_p(window, q) == air.n for q in primes
        )
        if not ok:
            failures.append(s)
    return VerificationReport(
        m=air.m,
        n=air.n,
        wrap=wrap,
        windows_checked=len(starts),
        failures=tuple(failures),
        primes=primes,
    )
