"""Y-00 transmitter/receiver pipeline.

PSK: 2M states radius * exp(i pi m / M).  A slot with basis k, data bit b
and OSK bit o sends index m = k + M * (1 xor b' xor (k mod 2)) with
b' = b xor o, which gives the half-plane table

    (up, even) -> 1   (up, odd) -> 0   (down, even) -> 0   (down, odd) -> 1

with "up" meaning phase in [0, pi).

IMDD: 2M real amplitude levels j * alpha_max / (2M), j = 1..2M.  Basis k
(1..M) uses the pair (level k, level M+k); OSK swaps the bit assignment and
the numbering flip reverses the level order.

One slot of the LFSR stream is laid out as
[basis block | OSK bit | numbering-flip bit | dither index bits], each field
present only when enabled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from .coherent import MixtureState, merge_components
from .detection import heterodyne, photon_counts
from .lfsr import LfsrConfig, RunningKey, bits_to_int, block_width, lfsr_stream, lfsr_streams

Scheme = Literal["psk", "imdd"]


@dataclass(frozen=True)
class Constellation:
    scheme: Scheme
    m_bases: int
    amplitude: float  # PSK radius |alpha|, or IMDD alpha_max

    def __post_init__(self):
        if self.scheme not in ("psk", "imdd"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.m_bases < 1:
            raise ValueError("m_bases must be >= 1")
        if not (self.amplitude >= 0 and math.isfinite(self.amplitude)):
            raise ValueError("amplitude must be finite and non-negative")

    @classmethod
    def psk(cls, m_bases: int, mean_photon: float) -> "Constellation":
        return cls("psk", m_bases, math.sqrt(mean_photon))

    @classmethod
    def imdd(cls, m_bases: int, max_amplitude: float) -> "Constellation":
        return cls("imdd", m_bases, max_amplitude)

    @property
    def n_states(self) -> int:
        return 2 * self.m_bases

    @property
    def mean_photon(self) -> float:
        """PSK photon number per state; IMDD: photon number of the top level."""
        return self.amplitude**2

    def phases(self) -> np.ndarray:
        return np.pi * np.arange(self.n_states) / self.m_bases

    def states(self) -> np.ndarray:
        if self.scheme == "psk":
            return self.amplitude * np.exp(1j * self.phases())
        j = np.arange(1, self.n_states + 1)
        return (j * self.amplitude / self.n_states).astype(complex)

    def state(self, index: int) -> complex:
        if not 0 <= index < self.n_states:
            raise IndexError(f"state index {index} outside [0, {self.n_states - 1}]")
        return complex(self.states()[index])


@dataclass(frozen=True)
class RandomizationConfig:
    osk_enabled: bool = False
    axis_dither_enabled: bool = False
    dither_angles: tuple[float, ...] = (0.0, math.pi)
    numbering_flip_enabled: bool = False

    def __post_init__(self):
        if self.axis_dither_enabled and len(self.dither_angles) < 1:
            raise ValueError("dither needs at least one angle")

    @classmethod
    def axis_osk(cls) -> "RandomizationConfig":
        """Keyed 0/pi swap of the fundamental axis."""
        return cls(axis_dither_enabled=True, dither_angles=(0.0, math.pi))

    def validate_for(self, cfg: Constellation) -> None:
        if cfg.scheme == "imdd" and self.axis_dither_enabled:
            raise ValueError("axis dither applies to PSK only")
        if cfg.scheme == "psk" and self.numbering_flip_enabled:
            raise ValueError("numbering flip applies to IMDD only")

    def dither_bits(self) -> int:
        return block_width(len(self.dither_angles)) if self.axis_dither_enabled else 0

    def slot_fields(self, m_bases: int) -> dict[str, slice]:
        """Positions of each field inside one slot of the keystream."""
        widths = [
            ("basis", block_width(m_bases)),
            ("osk", int(self.osk_enabled)),
            ("flip", int(self.numbering_flip_enabled)),
            ("dither", self.dither_bits()),
        ]
        out, pos = {}, 0
        for name, w in widths:
            out[name] = slice(pos, pos + w)
            pos += w
        return out

    def slot_width(self, m_bases: int) -> int:
        return block_width(m_bases) + int(self.osk_enabled) + int(self.numbering_flip_enabled) + self.dither_bits()


@dataclass(frozen=True, eq=False)
class SlotKeys:
    """Everything the key holder derives from the keystream for each slot."""

    running_key: RunningKey
    osk_bits: np.ndarray
    flip_bits: np.ndarray
    dither: np.ndarray  # angle per slot

    def __len__(self):
        return len(self.running_key)


def slot_keys_from_bits(bits: np.ndarray, m_bases: int, rnd: RandomizationConfig) -> SlotKeys:
    """Slot keys from keystream bits; the last axis is the stream (batched over seeds)."""
    w = rnd.slot_width(m_bases)
    bits = np.asarray(bits, dtype=np.uint8)
    n = bits.shape[-1] // w if w else 0
    per_slot = bits[..., : n * w].reshape(bits.shape[:-1] + (n, w))
    f = rnd.slot_fields(m_bases)
    k = bits_to_int(per_slot[..., f["basis"]]) % m_bases
    osk = per_slot[..., f["osk"]].reshape(per_slot.shape[:-1]) if rnd.osk_enabled else np.zeros(k.shape, np.uint8)
    flip = per_slot[..., f["flip"]].reshape(per_slot.shape[:-1]) if rnd.numbering_flip_enabled else np.zeros(k.shape, np.uint8)
    if rnd.axis_dither_enabled:
        idx = bits_to_int(per_slot[..., f["dither"]]) % len(rnd.dither_angles)
        dither = np.asarray(rnd.dither_angles, dtype=float)[idx]
    else:
        dither = np.zeros(k.shape)
    return SlotKeys(RunningKey(k, k % 2), osk.astype(np.uint8), flip.astype(np.uint8), dither)


def slot_keys(lfsr: LfsrConfig, m_bases: int, rnd: RandomizationConfig, n_slots: int) -> SlotKeys:
    w = rnd.slot_width(m_bases)
    if w == 0:
        z = np.zeros(n_slots, dtype=np.int64)
        return SlotKeys(RunningKey(z, z), z.astype(np.uint8), z.astype(np.uint8), np.zeros(n_slots))
    return slot_keys_from_bits(lfsr_stream(lfsr, w * n_slots), m_bases, rnd)


def candidate_slot_keys(lfsr: LfsrConfig, m_bases: int, rnd: RandomizationConfig, n_slots: int, seeds=None):
    """Slot keys for every candidate seed (default: all non-zero seeds)."""
    n = lfsr.key_length_bits
    if seeds is None:
        seeds = np.arange(1, 1 << n, dtype=np.uint64)
    w = rnd.slot_width(m_bases)
    bits = lfsr_streams(n, lfsr.taps, seeds, w * n_slots)
    return np.asarray(seeds), slot_keys_from_bits(bits, m_bases, rnd)


def psk_index(bit, basis, m_bases: int, osk_bit=0):
    b = np.bitwise_xor(bit, osk_bit)
    return basis + m_bases * (1 ^ b ^ (np.asarray(basis) % 2))


def psk_modulate(bit: int, basis: int, cfg: Constellation, osk_bit: int = 0, dither: float = 0.0) -> complex:
    if cfg.scheme != "psk":
        raise ValueError("psk_modulate needs a PSK constellation")
    if not 0 <= basis < cfg.m_bases:
        raise IndexError(f"basis {basis} outside [0, {cfg.m_bases - 1}]")
    m = int(psk_index(int(bit), int(basis), cfg.m_bases, int(osk_bit)))
    return cfg.state(m) * complex(np.exp(1j * dither))


def imdd_level(bit, basis, m_bases: int, osk_bit=0, flip=0):
    """1-based level sent for basis k in [1, M]."""
    b = np.bitwise_xor(bit, osk_bit)
    level = np.asarray(basis) + m_bases * b
    return np.where(np.asarray(flip) == 1, 2 * m_bases + 1 - level, level)


def imdd_modulate(bit: int, basis: int, cfg: Constellation, osk_bit: int = 0, flip_numbering: int = 0) -> complex:
    if cfg.scheme != "imdd":
        raise ValueError("imdd_modulate needs an IMDD constellation")
    if not 1 <= basis <= cfg.m_bases:
        raise IndexError(f"basis {basis} outside [1, {cfg.m_bases}]")
    level = int(imdd_level(int(bit), int(basis), cfg.m_bases, int(osk_bit), int(flip_numbering)))
    return cfg.state(level - 1)


def modulate(bits, keys: SlotKeys, cfg: Constellation):
    """Vectorised modulation: (state indices, amplitudes)."""
    bits = np.asarray(bits, dtype=np.int64)
    k = keys.running_key.basis_numbers
    o = keys.osk_bits.astype(np.int64)
    table = cfg.states()
    if cfg.scheme == "psk":
        idx = psk_index(bits, k, cfg.m_bases, o)
        amps = table[idx] * np.exp(1j * keys.dither)
    else:
        idx = imdd_level(bits, k + 1, cfg.m_bases, o, keys.flip_bits) - 1
        amps = table[idx]
    return idx, amps


def attenuate(state, kappa: float):
    if not 0 <= kappa <= 1:
        raise ValueError(f"kappa must lie in [0, 1], got {kappa}")
    return kappa * np.asarray(state, dtype=complex) if np.ndim(state) else kappa * complex(state)


def beam_split(state, n_copies: int, mode: Literal["linear", "unitary"] = "linear") -> list[complex]:
    """Split one coherent state into n copies.

    "linear" scales each copy by 1/n; "unitary" by 1/sqrt(n), which is what an
    equal n-port splitter does and conserves photon number.
    """
    if n_copies < 1:
        raise ValueError("n_copies must be >= 1")
    if mode == "linear":
        scale = 1.0 / n_copies
    elif mode == "unitary":
        scale = 1.0 / math.sqrt(n_copies)
    else:
        raise ValueError(f"unknown split mode {mode!r}")
    return [complex(state) * scale] * n_copies


def split_factor(n_copies: int, mode: str) -> float:
    return beam_split(1.0, n_copies, mode)[0].real


@dataclass(eq=False)
class SequenceTranscript:
    plaintext: np.ndarray
    keys: SlotKeys
    state_indices: np.ndarray
    transmitted_states: np.ndarray
    bob_outcomes: np.ndarray | None = None
    bob_bits: np.ndarray | None = None
    bob_errors: int | None = None
    eve_taps: list[np.ndarray] | None = field(default=None)

    def __post_init__(self):
        n = self.plaintext.size
        if not (len(self.keys) == self.state_indices.size == self.transmitted_states.size == n):
            raise ValueError("transcript fields must share one length")

    @property
    def running_key(self) -> RunningKey:
        return self.keys.running_key

    @property
    def osk_bits(self) -> np.ndarray:
        return self.keys.osk_bits

    def __len__(self):
        return self.plaintext.size

    @property
    def bob_ber(self) -> float:
        if self.bob_errors is None:
            raise ValueError("transcript has not been demodulated")
        return self.bob_errors / max(1, len(self))


def encrypt_sequence(plaintext, lfsr: LfsrConfig, cfg: Constellation, rnd: RandomizationConfig) -> SequenceTranscript:
    rnd.validate_for(cfg)
    x = np.asarray(plaintext, dtype=np.uint8)
    if x.ndim != 1 or np.any(x > 1):
        raise ValueError("plaintext must be a flat bit vector")
    keys = slot_keys(lfsr, cfg.m_bases, rnd, x.size)
    idx, amps = modulate(x, keys, cfg)
    return SequenceTranscript(x, keys, np.asarray(idx, dtype=np.int64), np.asarray(amps, dtype=complex))


def keyed_decision(outcomes, a0, a1, kappa: float, scheme: str, efficiency: float = 1.0) -> np.ndarray:
    """Binary decision between the two states the key holder expects."""
    if scheme == "psk":
        stat = np.real(np.conj(a1 - a0) * outcomes) - kappa * (np.abs(a1) ** 2 - np.abs(a0) ** 2) / 2
        return (stat > 0).astype(np.uint8)
    i0 = efficiency * kappa**2 * np.abs(a0) ** 2
    i1 = efficiency * kappa**2 * np.abs(a1) ** 2
    above = outcomes > (i0 + i1) / 2
    return np.where(i1 > i0, above, ~above).astype(np.uint8)


def bob_demodulate(
    transcript: SequenceTranscript,
    lfsr: LfsrConfig,
    cfg: Constellation,
    rnd: RandomizationConfig,
    kappa: float,
    rng: np.random.Generator | None,
    efficiency: float = 1.0,
    exact: bool = False,
) -> SequenceTranscript:
    """Bob's keyed receiver after a channel of amplitude transmission kappa.

    PSK: heterodyne, decision along the known basis axis.  IMDD: photon
    counting thresholded at the midpoint of the known pair.  ``exact`` swaps
    sampling for the mean outcome (noiseless limit).
    """
    n = len(transcript)
    keys = slot_keys(lfsr, cfg.m_bases, rnd, n)
    if not np.array_equal(keys.running_key.basis_numbers, transcript.running_key.basis_numbers):
        raise ValueError("transcript was not produced with this key")
    received = attenuate(transcript.transmitted_states, kappa)
    _, a0 = modulate(np.zeros(n, np.int64), keys, cfg)
    _, a1 = modulate(np.ones(n, np.int64), keys, cfg)
    if cfg.scheme == "psk":
        outcomes = received if exact else heterodyne(received, rng)
    else:
        outcomes = efficiency * np.abs(received) ** 2 if exact else photon_counts(received, efficiency, rng)
    bits = keyed_decision(outcomes, a0, a1, kappa, cfg.scheme, efficiency)
    errors = int(np.count_nonzero(bits != transcript.plaintext))
    return replace(transcript, bob_outcomes=outcomes, bob_bits=bits, bob_errors=errors)


def _key_grid(cfg: Constellation, rnd: RandomizationConfig):
    """Every (x, k, o, f, dither) combination with equal weight."""
    M = cfg.m_bases
    axes = [
        np.arange(2),
        np.arange(M),
        np.arange(2) if rnd.osk_enabled else np.zeros(1, np.int64),
        np.arange(2) if rnd.numbering_flip_enabled else np.zeros(1, np.int64),
        np.arange(len(rnd.dither_angles)) if rnd.axis_dither_enabled else np.zeros(1, np.int64),
    ]
    x, k, o, f, d = (g.ravel() for g in np.meshgrid(*axes, indexing="ij"))
    dither = np.asarray(rnd.dither_angles, dtype=float)[d] if rnd.axis_dither_enabled else np.zeros(x.size)
    keys = SlotKeys(RunningKey(k, k % 2), o.astype(np.uint8), f.astype(np.uint8), dither)
    _, amps = modulate(x, keys, cfg)
    return x, k, o, amps


def conditional_mixtures(cfg: Constellation, rnd: RandomizationConfig, label: str = "data"):
    """Eve's (rho0, rho1) without the key, conditioned on a binary label.

    label "data": the plaintext bit x.  label "indirect": the half-plane bit
    l = x xor (k mod 2) for PSK, or the pair element x xor o for IMDD.
    """
    rnd.validate_for(cfg)
    x, k, o, amps = _key_grid(cfg, rnd)
    if label == "data":
        lab = x
    elif label == "indirect":
        lab = x ^ (k % 2) if cfg.scheme == "psk" else x ^ o
    else:
        raise ValueError(f"unknown label {label!r}")
    out = []
    for value in (0, 1):
        sel = amps[lab == value]
        states, w = merge_components(sel, np.full(sel.size, 1.0 / sel.size))
        out.append(MixtureState(states, w / w.sum()))
    return out[0], out[1]


def mixture_average(rho0: MixtureState, rho1: MixtureState, p0: float = 0.5) -> MixtureState:
    states = np.concatenate([rho0.states, rho1.states])
    w = np.concatenate([p0 * rho0.weights, (1 - p0) * rho1.weights])
    s, w = merge_components(states, w)
    return MixtureState(s, w)
