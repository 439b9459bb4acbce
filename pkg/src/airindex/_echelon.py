"""Streaming row-echelon accumulators over small prime fields.

Rows are inserted one at a time and reduced against the pivots found so
far, so the rank of any prefix of the insertion order can be read off
mid-stream. Each row may carry auxiliary bookkeeping columns that ride
along under the same row operations; reducing a fresh vector against the
accumulated pivots reports whether it lies in their row space and what
auxiliary combination expresses it.

GF(2) rows are packed into single Python integers and GF(3) rows into two
bitplanes, so a whole-row operation costs a handful of big-int ops; other
primes use plain numpy vectors. All three give identical results.
"""

from __future__ import annotations

import numpy as np


def _pack_bits(bits: np.ndarray) -> int:
    # little-endian: bit i of the result is bits[i]
    packed = np.packbits(bits.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _unpack_bits(x: int, width: int) -> np.ndarray:
    nbytes = max(1, (width + 7) // 8)
    raw = np.frombuffer(x.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:width].astype(np.int64)


class _EchelonGF2:
    p = 2

    def __init__(self, main_cols: int, aux_cols: int):
        self.main_cols = main_cols
        self.aux_cols = aux_cols
        self._main_mask = (1 << main_cols) - 1
        self._rows: list[int] = []
        self.pivot_cols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _pack(self, main, aux) -> int:
        row = _pack_bits(np.asarray(main, dtype=np.int64) % 2)
        if aux is not None:
            row |= _pack_bits(np.asarray(aux, dtype=np.int64) % 2) << self.main_cols
        return row

    def _reduce_packed(self, row: int) -> int:
        for c, prow in zip(self.pivot_cols, self._rows):
            if (row >> c) & 1:
                row ^= prow
        return row

    def insert(self, main, aux=None) -> bool:
        row = self._reduce_packed(self._pack(main, aux))
        lead = row & self._main_mask
        if lead == 0:
            return False
        self.pivot_cols.append((lead & -lead).bit_length() - 1)
        self._rows.append(row)
        return True

    def reduce(self, main, aux=None) -> tuple[bool, np.ndarray]:
        row = self._reduce_packed(self._pack(main, aux))
        aux_out = _unpack_bits(row >> self.main_cols, self.aux_cols)
        return (row & self._main_mask) == 0, aux_out

    def pivot_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        width = self.main_cols + self.aux_cols
        arr = np.zeros((len(self._rows), width), dtype=np.int64)
        for i, r in enumerate(self._rows):
            arr[i] = _unpack_bits(r, width)
        return arr[:, : self.main_cols], arr[:, self.main_cols :]


class _EchelonGF3:
    # values live in two disjoint bitplanes: 1 -> lo bit, 2 -> hi bit
    p = 3

    def __init__(self, main_cols: int, aux_cols: int):
        self.main_cols = main_cols
        self.aux_cols = aux_cols
        self._main_mask = (1 << main_cols) - 1
        self._mask = (1 << (main_cols + aux_cols)) - 1
        self._rows: list[tuple[int, int]] = []
        self.pivot_cols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _pack(self, main, aux) -> tuple[int, int]:
        v = np.asarray(main, dtype=np.int64) % 3
        lo = _pack_bits(v == 1)
        hi = _pack_bits(v == 2)
        if aux is not None:
            w = np.asarray(aux, dtype=np.int64) % 3
            lo |= _pack_bits(w == 1) << self.main_cols
            hi |= _pack_bits(w == 2) << self.main_cols
        return lo, hi

    def _add(self, alo: int, ahi: int, blo: int, bhi: int) -> tuple[int, int]:
        # componentwise sum mod 3 of disjoint-bitplane words
        za = self._mask ^ (alo | ahi)
        zb = self._mask ^ (blo | bhi)
        lo = (alo & zb) | (za & blo) | (ahi & bhi)
        hi = (ahi & zb) | (za & bhi) | (alo & blo)
        return lo, hi

    def _reduce_packed(self, lo: int, hi: int) -> tuple[int, int]:
        for c, (plo, phi) in zip(self.pivot_cols, self._rows):
            if (lo >> c) & 1:
                # subtract the pivot row: add twice it (planes swapped)
                lo, hi = self._add(lo, hi, phi, plo)
            elif (hi >> c) & 1:
                # subtract twice the pivot row: add it once
                lo, hi = self._add(lo, hi, plo, phi)
        return lo, hi

    def insert(self, main, aux=None) -> bool:
        lo, hi = self._reduce_packed(*self._pack(main, aux))
        lead = (lo | hi) & self._main_mask
        if lead == 0:
            return False
        c = (lead & -lead).bit_length() - 1
        if (hi >> c) & 1:
            lo, hi = hi, lo  # scale by 2 so the pivot entry is 1
        self.pivot_cols.append(c)
        self._rows.append((lo, hi))
        return True

    def reduce(self, main, aux=None) -> tuple[bool, np.ndarray]:
        lo, hi = self._reduce_packed(*self._pack(main, aux))
        aux_out = _unpack_bits(lo >> self.main_cols, self.aux_cols) + 2 * _unpack_bits(
            hi >> self.main_cols, self.aux_cols
        )
        return ((lo | hi) & self._main_mask) == 0, aux_out

    def pivot_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        width = self.main_cols + self.aux_cols
        arr = np.zeros((len(self._rows), width), dtype=np.int64)
        for i, (lo, hi) in enumerate(self._rows):
            arr[i] = _unpack_bits(lo, width) + 2 * _unpack_bits(hi, width)
        return arr[:, : self.main_cols], arr[:, self.main_cols :]


class _EchelonGeneric:
    def __init__(self, main_cols: int, aux_cols: int, p: int):
        self.p = p
        self.main_cols = main_cols
        self.aux_cols = aux_cols
        self._rows: list[np.ndarray] = []
        self.pivot_cols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _vec(self, main, aux) -> np.ndarray:
        v = np.zeros(self.main_cols + self.aux_cols, dtype=np.int64)
        v[: self.main_cols] = np.asarray(main, dtype=np.int64)
        if aux is not None:
            v[self.main_cols :] = np.asarray(aux, dtype=np.int64)
        return v % self.p

    def _reduce_vec(self, v: np.ndarray) -> np.ndarray:
        for c, prow in zip(self.pivot_cols, self._rows):
            f = int(v[c])
            if f:
                v = (v - f * prow) % self.p
        return v

    def insert(self, main, aux=None) -> bool:
        v = self._reduce_vec(self._vec(main, aux))
        lead = np.nonzero(v[: self.main_cols])[0]
        if lead.size == 0:
            return False
        c = int(lead[0])
        v = v * pow(int(v[c]), -1, self.p) % self.p
        self.pivot_cols.append(c)
        self._rows.append(v)
        return True

    def reduce(self, main, aux=None) -> tuple[bool, np.ndarray]:
        v = self._reduce_vec(self._vec(main, aux))
        return not np.any(v[: self.main_cols]), v[self.main_cols :]

    def pivot_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        arr = (
            np.array(self._rows, dtype=np.int64)
            if self._rows
            else np.zeros((0, self.main_cols + self.aux_cols), dtype=np.int64)
        )
        return arr[:, : self.main_cols], arr[:, self.main_cols :]


def stream_echelon(main_cols: int, aux_cols: int, p: int):
    """Echelon accumulator for width ``main_cols`` rows over GF(p).

    ``aux_cols`` extra columns follow the same row operations. Picks the
    packed implementation for p in {2, 3}, numpy rows otherwise.
    """
    if p == 2:
        return _EchelonGF2(main_cols, aux_cols)
    if p == 3:
        return _EchelonGF3(main_cols, aux_cols)
    return _EchelonGeneric(main_cols, aux_cols, p)
