"""Vector-linear encoding, decodability checks, decoding and simulation.

The encoder for a (K, D, U) instance with a feasible pair (a, b) over
GF(p) is the K*b x (b*(D+1)+a) AIR matrix; its 0/1 entries make the
construction field-agnostic. Message k owns the b consecutive encoder
rows starting at k*b, so receiver k's unknowns are the (D+U+1)*b rows of
the cyclic message window k-U .. k+D and its side information covers the
rest. A broadcast is c = x @ L; receiver k subtracts the known message
contributions and solves the remaining system, whose wanted coordinates
are unique exactly when

    rank([interference rows; wanted rows]) == rank(interference rows) + b

over GF(p). Per-receiver elimination state is computed once per encoder
and reused, which keeps repeated decodes and batched simulations cheap.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from ._echelon import stream_echelon
from .air import AirMatrix, build_air
from .linalg import require_prime
from .rates import ProblemInstance, RateSolution, is_feasible

__all__ = [
    "interference_set",
    "Encoder",
    "build_encoder",
    "encode",
    "decodable",
    "receiver_ranks",
    "decode",
    "SimReport",
    "simulate",
]


def interference_set(problem: ProblemInstance, k: int) -> set[int]:
    """The D+U message indices receiver k can neither cancel nor wants.

    These are the U messages before and D after message k on the cycle;
    side information is the complement of this set plus k itself.
    """
    if not 0 <= k < problem.K:
        raise ValueError(f"receiver index must be in [0, {problem.K}), got {k}")
    before = {(k - u) % problem.K for u in range(1, problem.U + 1)}
    after = {(k + d) % problem.K for d in range(1, problem.D + 1)}
    return before | after


@dataclass(frozen=True, eq=False)
class Encoder:
    """An instance bound to its AIR encoding matrix over GF(p).

    Immutable after construction; per-receiver elimination plans are
    cached internally and shared by decodability checks, decoding and
    simulation.
    """

    problem: ProblemInstance
    solution: RateSolution
    matrix: AirMatrix
    p: int
    _plans: dict = field(default_factory=dict, repr=False)

    @property
    def b(self) -> int:
        return self.solution.b_min

    @property
    def a(self) -> int:
        return self.solution.a_min

    @property
    def rows(self) -> int:
        return self.matrix.m

    @property
    def cols(self) -> int:
        return self.matrix.n


def build_encoder(
    problem: ProblemInstance,
    solution: RateSolution,
    p,
    allow_infeasible: bool = False,
) -> Encoder:
    """Build the K*b x (b*(D+1)+a) encoder for a feasible (a, b).

    Refuses an infeasible pair unless ``allow_infeasible`` is set (useful
    as a negative control: such encoders leave some receiver undecodable).
    """
    p = require_prime(p)
    if solution.problem != problem:
        raise ValueError(
            f"solution is for {solution.problem}, not for {problem}"
        )
    a, b = solution.a_min, solution.b_min
    if not allow_infeasible and not is_feasible(problem, a, b):
        raise ValueError(
            f"(a={a}, b={b}) is not feasible for {problem}; "
            "pass allow_infeasible=True to build a negative control"
        )
    rows = problem.K * b
    cols = b * (problem.D + 1) + a
    if cols > rows:
        raise ValueError(f"encoder would be wider than tall ({rows}x{cols})")
    return Encoder(problem=problem, solution=solution, matrix=build_air(rows, cols), p=p)


def encode(encoder: Encoder, x) -> np.ndarray:
    """Codeword x @ L over GF(p) for a length-K*b message vector."""
    xv = np.asarray(x, dtype=np.int64)
    if xv.ndim != 1 or xv.shape[0] != encoder.rows:
        raise ValueError(
            f"message vector must have length {encoder.rows}, got shape {xv.shape}"
        )
    return (xv % encoder.p) @ encoder.matrix.entries % encoder.p


class _ReceiverPlan:
    """Elimination state for one receiver, built once per encoder.

    Inserts the interference rows first and the wanted rows last into a
    streaming echelon, recording the rank after each phase; the rank
    criterion and the decoding map both fall out of that single pass.
    """

    def __init__(self, encoder: Encoder, k: int):
        problem = encoder.problem
        K, b = problem.K, encoder.b
        window = [(k - problem.U + i) % K for i in range(problem.D + problem.U + 1)]
        in_window = set(window)
        self.k = k
        self.known_messages = [j for j in range(K) if j not in in_window]
        self.known_rows = (
            np.concatenate([np.arange(j * b, (j + 1) * b) for j in self.known_messages])
            if self.known_messages
            else np.empty(0, dtype=np.int64)
        )
        L = encoder.matrix.entries
        ech = stream_echelon(encoder.cols, b, encoder.p)
        for j in window:
            if j == k:
                continue
            for r in range(j * b, (j + 1) * b):
                ech.insert(L[r])
        self.rank_interference = ech.rank
        eye = np.eye(b, dtype=np.int64)
        for i, r in enumerate(range(k * b, (k + 1) * b)):
            ech.insert(L[r], eye[i])
        self.rank_all = ech.rank
        self.decodable = self.rank_all == self.rank_interference + b
        self._echelon = ech
        self._maps: tuple[np.ndarray, np.ndarray] | None = None
        self._encoder = encoder

    def maps(self) -> tuple[np.ndarray, np.ndarray]:
        """(T, BT): wanted = c @ T - x_known @ BT over GF(p).

        T solves A @ T = E where A stacks the unknown rows and E marks
        the wanted ones, so c' @ T recovers the wanted symbols from the
        known-free codeword c'; BT folds the known rows through T so the
        subtraction happens in the small output space.
        """
        if not self.decodable:
            raise ValueError(f"receiver {self.k} is not decodable; no map exists")
        if self._maps is None:
            p = self._encoder.p
            b = self._encoder.b
            pivots, G = self._echelon.pivot_arrays()
            piv_cols = self._echelon.pivot_cols
            r = len(piv_cols)
            Q = pivots[:, piv_cols]  # unit upper triangular in insertion order
            t_piv = np.zeros((r, b), dtype=np.int64)
            for j in range(r - 1, -1, -1):
                t_piv[j] = (G[j] - Q[j, j + 1 :] @ t_piv[j + 1 :]) % p
            T = np.zeros((self._encoder.cols, b), dtype=np.int64)
            if r:
                T[np.asarray(piv_cols)] = t_piv
            L = self._encoder.matrix.entries
            BT = (
                (L[self.known_rows] @ T) % p
                if self.known_rows.size
                else np.zeros((0, b), dtype=np.int64)
            )
            self._maps = (T, BT)
        return self._maps


def _plan(encoder: Encoder, k: int) -> _ReceiverPlan:
    if not 0 <= k < encoder.problem.K:
        raise ValueError(f"receiver index must be in [0, {encoder.problem.K}), got {k}")
    plan = encoder._plans.get(k)
    if plan is None:
        plan = _ReceiverPlan(encoder, k)
        encoder._plans[k] = plan
    return plan


def decodable(encoder: Encoder, k: int) -> bool:
    """Rank criterion for receiver k.

    True iff stacking the wanted rows onto the interference rows raises
    the rank by exactly b over GF(p), which is equivalent to the wanted
    symbols being uniquely determined given the side information.
    """
    return _plan(encoder, k).decodable


def receiver_ranks(encoder: Encoder, k: int) -> tuple[int, int]:
    """(rank of interference rows, rank with wanted rows stacked on)."""
    plan = _plan(encoder, k)
    return plan.rank_interference, plan.rank_all


def decode(encoder: Encoder, k: int, codeword, side_info) -> np.ndarray:
    """Recover receiver k's b symbols from a codeword and side information.

    ``side_info`` maps message index j to its b symbols for every j the
    receiver knows (anything outside the interference window and k
    itself); extra entries are ignored. Raises if the receiver is not
    decodable or the codeword is inconsistent with the encoder rows (the
    latter cannot happen for genuine codewords).
    """
    plan = _plan(encoder, k)
    if not plan.decodable:
        raise ValueError(f"receiver {k} cannot decode with this encoder")
    p = encoder.p
    c = np.asarray(codeword, dtype=np.int64)
    if c.ndim != 1 or c.shape[0] != encoder.cols:
        raise ValueError(f"codeword must have length {encoder.cols}, got shape {c.shape}")
    c = c % p
    if plan.known_messages:
        parts = []
        for j in plan.known_messages:
            try:
                v = side_info[j]
            except (KeyError, TypeError, IndexError):
                raise ValueError(f"side information for message {j} is missing") from None
            v = np.asarray(v, dtype=np.int64)
            if v.shape != (encoder.b,):
                raise ValueError(
                    f"side information for message {j} must have length {encoder.b}"
                )
            parts.append(v)
        x_known = np.concatenate(parts) % p
        c = (c - x_known @ encoder.matrix.entries[plan.known_rows]) % p
    ok, aux = plan._echelon.reduce(c)
    if not ok:
        raise ArithmeticError(
            "codeword is not a combination of the unknown rows; "
            "it was not produced by this encoder"
        )
    return (-aux) % p


@dataclass(frozen=True)
class SimReport:
    """Result of a seeded encode/decode run.

    ``failures`` holds (trial, receiver) pairs in lexicographic order;
    empty failures means every decode returned the exact sent symbols.
    """

    problem: ProblemInstance
    a: int
    b: int
    p: int
    trials: int
    seed: int
    failures: tuple[tuple[int, int], ...]
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "K": self.problem.K,
            "D": self.problem.D,
            "U": self.problem.U,
            "a": self.a,
            "b": self.b,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "failures": [{"trial": t, "receiver": k} for t, k in self.failures],
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def simulate(
    problem: ProblemInstance,
    solution: RateSolution,
    p,
    trials: int = 100,
    seed: int = 0,
    encoder: Encoder | None = None,
) -> SimReport:
    """Encode/decode ``trials`` uniform random message vectors.

    Messages are drawn from a generator seeded with ``seed``, so reports
    are reproducible bit for bit. Every receiver decodes every trial; a
    mismatch (or an undecodable receiver) is recorded per (trial,
    receiver). Pass a prebuilt ``encoder`` to reuse its cached plans.
    """
    if trials < 0:
        raise ValueError(f"trials must be nonnegative, got {trials}")
    start = time.perf_counter()
    enc = encoder if encoder is not None else build_encoder(problem, solution, p)
    if enc.problem != problem or enc.solution != solution or enc.p != require_prime(p):
        raise ValueError("supplied encoder does not match the requested simulation")
    K, b = problem.K, enc.b
    rng = np.random.default_rng(seed)
    X = rng.integers(0, enc.p, size=(trials, K * b), dtype=np.int64)
    C = X @ enc.matrix.entries % enc.p
    failures: list[tuple[int, int]] = []
    for k in range(K):
        plan = _plan(enc, k)
        if not plan.decodable:
            failures.extend((t, k) for t in range(trials))
            continue
        T, BT = plan.maps()
        got = C @ T
        if plan.known_rows.size:
            got = got - X[:, plan.known_rows] @ BT
        got %= enc.p
        sent = X[:, k * b : (k + 1) * b]
        for t in np.nonzero(np.any(got != sent, axis=1))[0]:
            failures.append((int(t), k))
    failures.sort()
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return SimReport(
        problem=problem,
        a=enc.a,
        b=b,
        p=enc.p,
        trials=trials,
        seed=seed,
        failures=tuple(failures),
        elapsed_ms=round(elapsed_ms, 3),
    )
