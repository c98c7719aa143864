"""Line-oriented ``key = value`` scenario files.

Format: one key per line, ``#`` starts a comment, blank lines ignored.
Booleans are true/false/yes/no/on/off/1/0; lists are comma separated.
Integers accept 0x / 0b prefixes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from .attacks import MAX_LOKO_BITS, MAX_SEARCH_BITS, MAX_UNAMBIGUOUS_BITS
from .lfsr import LfsrConfig, primitive_taps
from .protocol import Constellation, RandomizationConfig

ATTACKS = (
    "ciphertext_data",
    "ciphertext_key",
    "indirect",
    "known_plaintext",
    "lo_ko",
    "modified_lo_ko",
    "unambiguous",
    "combined",
    "key_reuse",
)
KEYLESS_ATTACKS = ("lo_ko", "ciphertext_data", "ciphertext_key")
RECEIVERS = ("heterodyne", "noiseless", "photon-count", "bound-only")


class ScenarioError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class Scenario:
    scheme: str
    m_bases: int
    mean_photon: float | None = None
    max_amplitude: float | None = None
    lfsr_length: int = 16
    lfsr_taps: int | None = None
    lfsr_seed: int = 1
    osk: bool = False
    axis_dither: bool = False
    dither_angles: tuple[float, ...] = (0.0, math.pi)
    numbering_flip: bool = False
    kappa: float | None = None
    loss_db: float | None = None
    attack: str = "indirect"
    trials: int = 100
    n_bits: int = 1000
    rng_seed: int = 0
    amplitudes: tuple[float, ...] = (3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0)
    efficiency: float = 1.0
    target_error: float = 0.45
    penalty: float = 0.0
    resolution_db: float = 0.01
    eve_receiver: str = "heterodyne"
    eve_tap: str = "at-transmitter"
    eve_knows_axis: bool = False
    split_mode: str = "linear"
    plaintext_len: int | None = None
    exhaustive_search: bool = True
    injected_error: float | None = None
    seq_len: int = 8
    n_copies: int | None = None
    output_dir: str = "."

    @property
    def channel_kappa(self) -> float:
        if self.loss_db is not None:
            return 10 ** (-self.loss_db / 20)
        return 1.0 if self.kappa is None else self.kappa

    def constellation(self) -> Constellation:
        if self.scheme == "psk":
            return Constellation.psk(self.m_bases, self.mean_photon)
        return Constellation.imdd(self.m_bases, self.max_amplitude)

    def randomization(self) -> RandomizationConfig:
        return RandomizationConfig(
            osk_enabled=self.osk,
            axis_dither_enabled=self.axis_dither,
            dither_angles=self.dither_angles,
            numbering_flip_enabled=self.numbering_flip,
        )

    def lfsr(self) -> LfsrConfig:
        taps = self.lfsr_taps if self.lfsr_taps is not None else primitive_taps(self.lfsr_length)
        return LfsrConfig(self.lfsr_length, taps, self.lfsr_seed)

    def with_seed(self, seed: int) -> "Scenario":
        return replace(self, rng_seed=seed)

    def items(self):
        """(key, text) pairs in declaration order, for metadata trailers."""
        for f in fields(self):
            yield f.name, _render(getattr(self, f.name))


def _render(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        return ",".join(repr(x) for x in v)
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def _bool(text: str) -> bool:
    t = text.lower()
    if t in ("true", "yes", "on", "1"):
        return True
    if t in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _int(text: str) -> int:
    return int(text, 0)


def _floats(text: str) -> tuple[float, ...]:
    out = tuple(float(x) for x in text.split(",") if x.strip())
    if not out:
        raise ValueError("empty list")
    return out


def _choice(options):
    def conv(text: str) -> str:
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}, got {text!r}")
        return text

    return conv


CONVERTERS = {
    "scheme": _choice(("psk", "imdd")),
    "m_bases": _int,
    "mean_photon": float,
    "max_amplitude": float,
    "lfsr_length": _int,
    "lfsr_taps": _int,
    "lfsr_seed": _int,
    "osk": _bool,
    "axis_dither": _bool,
    "dither_angles": _floats,
    "numbering_flip": _bool,
    "kappa": float,
    "loss_db": float,
    "attack": _choice(ATTACKS),
    "trials": _int,
    "n_bits": _int,
    "rng_seed": _int,
    "amplitudes": _floats,
    "efficiency": float,
    "target_error": float,
    "penalty": float,
    "resolution_db": float,
    "eve_receiver": _choice(RECEIVERS),
    "eve_tap": _choice(("at-transmitter", "post-loss")),
    "eve_knows_axis": _bool,
    "split_mode": _choice(("linear", "unitary")),
    "plaintext_len": _int,
    "exhaustive_search": _bool,
    "injected_error": float,
    "seq_len": _int,
    "n_copies": _int,
    "output_dir": str,
}


def parse_scenario(text: str) -> Scenario:
    values: dict[str, object] = {}
    where: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, val = (p.strip() for p in line.partition("="))
        if key not in CONVERTERS:
            raise ScenarioError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ScenarioError(f"duplicate key {key!r} (first set on line {where[key]})", lineno)
        if not val:
            raise ScenarioError(f"missing value for {key!r}", lineno)
        try:
            values[key] = CONVERTERS[key](val)
        except ValueError as exc:
            raise ScenarioError(f"bad value for {key!r}: {exc}", lineno) from None
        where[key] = lineno
    return validate(values, where)


def validate(values: dict, where: dict | None = None) -> Scenario:
    where = where or {}

    def fail(msg, key=None):
        raise ScenarioError(msg, where.get(key))

    for key in ("scheme", "m_bases"):
        if key not in values:
            fail(f"required key {key!r} missing")
    if values["m_bases"] < 1:
        fail("m_bases must be >= 1", "m_bases")
    if values["scheme"] == "psk":
        if "mean_photon" not in values:
            fail("PSK scenarios need mean_photon")
        if "max_amplitude" in values:
            fail("max_amplitude applies to IMDD only", "max_amplitude")
        if values["mean_photon"] < 0:
            fail("mean_photon must be >= 0", "mean_photon")
        if values.get("numbering_flip"):
            fail("numbering_flip applies to IMDD only", "numbering_flip")
    else:
        if "max_amplitude" not in values:
            fail("IMDD scenarios need max_amplitude")
        if "mean_photon" in values:
            fail("mean_photon applies to PSK only", "mean_photon")
        if values["max_amplitude"] < 0:
            fail("max_amplitude must be >= 0", "max_amplitude")
        if values.get("axis_dither"):
            fail("axis_dither applies to PSK only", "axis_dither")
    if "kappa" in values and "loss_db" in values:
        fail("give kappa or loss_db, not both", "loss_db")
    if "kappa" in values and not 0 < values["kappa"] <= 1:
        fail(f"kappa must lie in (0, 1], got {values['kappa']}", "kappa")
    if "loss_db" in values and values["loss_db"] < 0:
        fail("loss_db must be >= 0", "loss_db")
    if values.get("lfsr_seed", 1) == 0:
        fail("all-zero LFSR seed is not allowed", "lfsr_seed")
    for key in ("trials", "n_bits", "seq_len", "n_copies", "plaintext_len", "lfsr_length"):
        if key in values and values[key] < 1:
            fail(f"{key} must be >= 1", key)
    if "rng_seed" in values and not 0 <= values["rng_seed"] < 2**64:
        fail("rng_seed must be an unsigned 64-bit integer", "rng_seed")
    if not 0 <= values.get("efficiency", 1.0) <= 1:
        fail("efficiency must lie in [0, 1]", "efficiency")
    if "injected_error" in values and not 0 <= values["injected_error"] <= 1:
        fail("injected_error must lie in [0, 1]", "injected_error")
    if any(a < 0 for a in values.get("amplitudes", ())):
        fail("amplitudes must be >= 0", "amplitudes")
    s = Scenario(**values)
    limits = {
        "indirect": MAX_SEARCH_BITS,
        "known_plaintext": MAX_SEARCH_BITS,
        "modified_lo_ko": MAX_LOKO_BITS,
        "unambiguous": MAX_UNAMBIGUOUS_BITS,
    }
    limit = limits.get(s.attack)
    if limit is not None and s.exhaustive_search and s.lfsr_length > limit:
        fail(
            f"attack {s.attack!r} with exhaustive search over 2^{s.lfsr_length} keys refused "
            f"(limit {limit} bits); set exhaustive_search = false",
            "lfsr_length",
        )
    # the Lo-Ko count and the pure bounds never build a register
    if s.attack not in KEYLESS_ATTACKS or "lfsr_taps" in values:
        try:
            s.lfsr()
        except ValueError as exc:
            fail(str(exc), "lfsr_taps" if "lfsr_taps" in values else "lfsr_length")
    return s


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())
