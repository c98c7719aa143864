"""Fibonacci LFSR keystream, running-key blocks and a Berlekamp-Massey baseline.

Conventions: the register holds the next `n` output bits a_t .. a_{t+n-1},
most significant bit first.  ``taps`` is a bitmask with bit ``e`` set for
every term x^e of the feedback polynomial except the constant 1, so
x^4 + x^3 + 1 is ``0b11000``.  The recurrence is
a_{t+n} = a_t xor (xor_{e in middle terms} a_{t+e}).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# primitive feedback polynomials, as exponent lists (constant term implied)
PRIMITIVE_EXPONENTS = {
    2: (2, 1),
    3: (3, 2),
    4: (4, 3),
    5: (5, 3),
    6: (6, 5),
    7: (7, 6),
    8: (8, 6, 5, 4),
    9: (9, 5),
    10: (10, 7),
    11: (11, 9),
    12: (12, 6, 4, 1),
    13: (13, 4, 3, 1),
    14: (14, 5, 3, 1),
    15: (15, 14),
    16: (16, 15, 13, 4),
    17: (17, 14),
    18: (18, 11),
    19: (19, 6, 2, 1),
    20: (20, 17),
    21: (21, 19),
    22: (22, 21),
    23: (23, 18),
    24: (24, 23, 22, 17),
    28: (28, 25),
    31: (31, 28),
    32: (32, 22, 2, 1),
}


def taps_from_exponents(exponents) -> int:
    mask = 0
    for e in exponents:
        if e <= 0:
            raise ValueError("list only the non-constant terms of the polynomial")
        mask |= 1 << e
    return mask


def primitive_taps(length: int) -> int:
    try:
        return taps_from_exponents(PRIMITIVE_EXPONENTS[length])
    except KeyError:
        raise ValueError(f"no tabulated primitive polynomial of degree {length}") from None


@dataclass(frozen=True)
class LfsrConfig:
    key_length_bits: int
    taps: int
    seed: int  # bit i of the seed vector (MSB-first) is bit (n-1-i) of this int

    def __post_init__(self):
        n = self.key_length_bits
        if n < 1:
            raise ValueError("key length must be positive")
        if self.taps.bit_length() != n + 1:
            raise ValueError(f"taps 0x{self.taps:x} do not describe a degree-{n} polynomial")
        if self.taps & 1:
            raise ValueError("bit 0 of taps is reserved (constant term is implied)")
        if not 0 < self.seed < (1 << n):
            raise ValueError("LFSR seed must be a non-zero vector of key_length_bits bits")

    @classmethod
    def primitive(cls, length: int, seed: int) -> "LfsrConfig":
        return cls(length, primitive_taps(length), seed)

    @classmethod
    def from_seed_bits(cls, seed_bits, taps: int) -> "LfsrConfig":
        bits = [int(b) for b in seed_bits]
        return cls(len(bits), taps, int("".join(map(str, bits)), 2) if bits else 0)

    def with_seed(self, seed: int) -> "LfsrConfig":
        return LfsrConfig(self.key_length_bits, self.taps, seed)

    @property
    def feedback_mask(self) -> int:
        """State bits whose parity gives the next input bit."""
        n = self.key_length_bits
        mask = 1 << (n - 1)  # a_t, the constant term
        for e in range(1, n):
            if self.taps >> e & 1:
                mask |= 1 << (n - 1 - e)
        return mask

    def seed_bits(self) -> np.ndarray:
        n = self.key_length_bits
        return np.array([(self.seed >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)


def lfsr_stream(cfg: LfsrConfig, n_bits: int) -> np.ndarray:
    if cfg.seed == 0:
        raise ValueError("all-zero LFSR seed is a fixed point")
    n = cfg.key_length_bits
    top = n - 1
    full = (1 << n) - 1
    fb = cfg.feedback_mask
    state = cfg.seed
    out = bytearray(n_bits)
    for t in range(n_bits):
        out[t] = state >> top
        state = ((state << 1) & full) | ((state & fb).bit_count() & 1)
    return np.frombuffer(bytes(out), dtype=np.uint8).copy()


def lfsr_streams(length: int, taps: int, seeds, n_bits: int) -> np.ndarray:
    """Streams for many seeds at once, shape (len(seeds), n_bits)."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    if np.any(seeds == 0):
        raise ValueError("all-zero LFSR seed is a fixed point")
    fb = np.uint64(LfsrConfig(length, taps, 1).feedback_mask)
    top = np.uint64(length - 1)
    full = np.uint64((1 << length) - 1)
    one = np.uint64(1)
    state = seeds.copy()
    out = np.empty((seeds.size, n_bits), dtype=np.uint8)
    for t in range(n_bits):
        out[:, t] = (state >> top).astype(np.uint8)
        par = (np.bitwise_count(state & fb) & 1).astype(np.uint64)
        state = ((state << one) & full) | par
    return out


def lfsr_period(cfg: LfsrConfig, limit: int | None = None) -> int:
    """Steps until the register returns to its seed (exhaustive walk)."""
    n = cfg.key_length_bits
    limit = limit or (1 << n)
    full = (1 << n) - 1
    fb = cfg.feedback_mask
    state = cfg.seed
    for step in range(1, limit + 1):
        state = ((state << 1) & full) | ((state & fb).bit_count() & 1)
        if state == cfg.seed:
            return step
    raise RuntimeError("period exceeds limit")


def block_width(m_bases: int) -> int:
    return math.ceil(math.log2(m_bases)) if m_bases > 1 else 0


@dataclass(frozen=True, eq=False)
class RunningKey:
    basis_numbers: np.ndarray
    parities: np.ndarray

    def __post_init__(self):
        if not np.array_equal(self.parities, self.basis_numbers % 2):
            raise ValueError("parities must equal basis numbers mod 2")

    def __len__(self):
        return self.basis_numbers.size


def bits_to_int(blocks: np.ndarray) -> np.ndarray:
    """Interpret the last axis as MSB-first binary numbers."""
    blocks = np.asarray(blocks, dtype=np.int64)
    w = blocks.shape[-1]
    if w == 0:
        return np.zeros(blocks.shape[:-1], dtype=np.int64)
    return blocks @ (1 << np.arange(w - 1, -1, -1, dtype=np.int64))


def running_key_blocks(bits, m_bases: int) -> RunningKey:
    """Cut the keystream into ceil(log2 M)-bit blocks, k_i = block mod M.

    A trailing partial block is dropped.  For M not a power of two the
    reduction mod M is slightly biased towards small basis numbers.
    """
    if m_bases < 2:
        raise ValueError("m_bases must be at least 2")
    w = block_width(m_bases)
    bits = np.asarray(bits, dtype=np.uint8)
    n = bits.size // w
    k = bits_to_int(bits[: n * w].reshape(n, w)) % m_bases
    return RunningKey(basis_numbers=k, parities=k % 2)


def berlekamp_massey(bits) -> tuple[list[int], int]:
    """Shortest LFSR generating `bits`: (connection polynomial C, linear complexity L).

    C[0] = 1 and s[t] = xor_{i=1..L} C[i] s[t-i] for t >= L.
    """
    s = [int(b) for b in bits]
    n = len(s)
    C = [1] + [0] * n
    B = [1] + [0] * n
    L, m = 0, 1
    for t in range(n):
        d = s[t]
        for i in range(1, L + 1):
            d ^= C[i] & s[t - i]
        if d:
            T = C[:]
            for i in range(n - m + 1):
                C[i + m] ^= B[i]
            if 2 * L <= t:
                L, B, m = t + 1 - L, T, 1
            else:
                m += 1
        else:
            m += 1
    return C[: L + 1], L


def recover_seed_berlekamp_massey(bits, key_length: int) -> LfsrConfig:
    """Classical baseline: noiseless keystream of length >= 2|K| gives the register.

    The connection polynomial maps to taps as x^L C(1/x).
    """
    C, L = berlekamp_massey(bits)
    if L != key_length:
        raise ValueError(f"linear complexity {L} differs from the key length {key_length}")
    taps = 1 << L
    for i in range(1, L):
        if C[L - i]:
            taps |= 1 << i
    seed = int("".join(str(int(b)) for b in bits[:L]), 2)
    return LfsrConfig(L, taps, seed)
