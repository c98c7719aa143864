"""Eavesdropper side: optimal-receiver bounds and Monte Carlo attack simulations.

Key lengths here are desk-sized (at most 20 bits for exhaustive search); the
exponential claims of the full-size system come out as workload estimates,
never as executed searches.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Literal

import numpy as np
from scipy import stats

from .coherent import gram_sqrt
from .detection import (
    BinaryDiscriminationProblem,
    helstrom_error,
    heterodyne,
    srm_symmetric_error,
    upper_half_plane,
)
from .lfsr import LfsrConfig, block_width, recover_seed_berlekamp_massey
from .protocol import (
    Constellation,
    RandomizationConfig,
    SlotKeys,
    candidate_slot_keys,
    conditional_mixtures,
    encrypt_sequence,
    keyed_decision,
    modulate,
    psk_index,
    slot_keys,
    split_factor,
)

MAX_SEARCH_BITS = 20
MAX_LOKO_BITS = 12
MAX_UNAMBIGUOUS_BITS = 10


class SearchRefused(ValueError):
    """An exhaustive search was requested beyond the desk-scale limit."""


@dataclass
class AttackReport:
    attack_name: str
    bound_error_probability: float | None = None
    simulated_error_rate: float | None = None
    stderr: float | None = None
    key_recovered: bool | None = None
    success_count: int | None = None
    candidate_set_size: int | None = None
    trials: int = 1
    workload_estimate: float = 1.0
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.simulated_error_rate is not None and not 0 <= self.simulated_error_rate <= 1:
            raise ValueError("simulated error rate outside [0, 1]")
        if self.stderr is not None and self.stderr < 0:
            raise ValueError("negative standard error")
        self.workload_estimate = max(1.0, self.workload_estimate)

    @property
    def success_rate(self) -> float | None:
        if self.success_count is None:
            return None
        return self.success_count / self.trials

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class EveChannelModel:
    tap_position: Literal["at-transmitter", "post-loss"] = "at-transmitter"
    kappa_to_bob: float = 1.0
    receiver: Literal["heterodyne", "photon-count", "bound-only", "noiseless"] = "heterodyne"
    knows_axis: bool = False

    def __post_init__(self):
        if not 0 <= self.kappa_to_bob <= 1:
            raise ValueError("kappa_to_bob must lie in [0, 1]")

    @property
    def eve_kappa(self) -> float:
        return 1.0 if self.tap_position == "at-transmitter" else self.kappa_to_bob


def binomial_stderr(p: float, n: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / max(n, 1))


def mutual_information(a, b) -> float:
    """Plug-in estimate of I(A;B) in bits from paired samples (biased upward by ~ (|A|-1)(|B|-1)/(2n ln 2))."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    joint = np.zeros((ai.max() + 1, bi.max() + 1))
    np.add.at(joint, (ai, bi), 1)
    joint /= joint.sum()
    pa, pb = joint.sum(1), joint.sum(0)
    nz = joint > 0
    return float(max(0.0, np.sum(joint[nz] * np.log2(joint[nz] / np.outer(pa, pb)[nz]))))


def entropy_bits(a) -> float:
    _, counts = np.unique(np.asarray(a), return_counts=True)
    p = counts / counts.sum()
    return float(-np.sum(p * np.log2(p)))


def run_trials(fn: Callable[[int, np.random.Generator], object], rng: np.random.Generator, trials: int, threads: int = 1):
    """Independent trials, one spawned substream each; results keep trial order."""
    streams = rng.spawn(trials)
    if threads <= 1:
        return [fn(i, r) for i, r in enumerate(streams)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials), streams))


def _require_psk(cfg: Constellation, what: str):
    if cfg.scheme != "psk":
        raise ValueError(f"{what} is defined for the PSK scheme")


def _guard_search(key_length: int, limit: int, what: str):
    if key_length > limit:
        raise SearchRefused(
            f"{what}: exhaustive search over 2^{key_length} keys refused (desk-scale limit is {limit} bits)"
        )


# ---------------------------------------------------------------- ciphertext only


def ciphertext_only_data_bound(cfg: Constellation, rnd: RandomizationConfig | None = None) -> AttackReport:
    rnd = rnd or RandomizationConfig()
    rho0, rho1 = conditional_mixtures(cfg, rnd, "data")
    pe = helstrom_error(BinaryDiscriminationProblem(rho0, rho1))
    return AttackReport(
        "ciphertext_only_data",
        bound_error_probability=pe,
        notes=["Helstrom bound on the data bit, uniform running key and priors"],
        details={"rho0_size": len(rho0), "rho1_size": len(rho1)},
    )


def ciphertext_only_key_bound(cfg: Constellation) -> AttackReport:
    _require_psk(cfg, "ciphertext-only key bound")
    pe = srm_symmetric_error(cfg.n_states, cfg.amplitude)
    return AttackReport(
        "ciphertext_only_key",
        bound_error_probability=pe,
        candidate_set_size=cfg.n_states,
        notes=[f"square-root measurement on the {cfg.n_states}-state ring"],
    )


def eve_heterodyne_states(amps: np.ndarray, eve: EveChannelModel, rng) -> np.ndarray:
    received = eve.eve_kappa * amps
    if eve.receiver == "noiseless":
        return received
    if eve.receiver != "heterodyne":
        raise ValueError(f"receiver {eve.receiver!r} not supported for PSK taps")
    return heterodyne(received, rng)


def eve_half_plane(cfg: Constellation, idx: np.ndarray, keys: SlotKeys, eve: EveChannelModel, rng) -> np.ndarray:
    """Eve's indirect observable l (1 = up) in her own phase space (axis at 0)."""
    undo = keys.dither if eve.knows_axis else 0.0
    if eve.receiver == "noiseless":
        angles = cfg.phases()[idx] + keys.dither - undo
    else:
        beta = eve_heterodyne_states(cfg.states()[idx] * np.exp(1j * keys.dither), eve, rng)
        angles = np.angle(beta * np.exp(-1j * undo))
    return upper_half_plane(angles).astype(np.uint8)


def indirect_half_plane_attack(
    cfg: Constellation,
    lfsr: LfsrConfig,
    n_bits: int,
    rng: np.random.Generator,
    rnd: RandomizationConfig | None = None,
    eve: EveChannelModel | None = None,
    exhaustive: bool = True,
    compute_bound: bool = True,
) -> AttackReport:
    """Measure l_i = x_i xor (k_i mod 2) slot by slot, then try every parity sequence."""
    _require_psk(cfg, "indirect half-plane attack")
    rnd = rnd or RandomizationConfig()
    eve = eve or EveChannelModel()
    x = rng.integers(0, 2, n_bits, dtype=np.uint8)
    tr = encrypt_sequence(x, lfsr, cfg, rnd)
    true_l = x ^ tr.running_key.parities.astype(np.uint8)
    l_meas = eve_half_plane(cfg, tr.state_indices, tr.keys, eve, rng)
    err = l_meas != true_l
    rate = float(err.mean()) if n_bits else 0.0
    report = AttackReport(
        "indirect_half_plane",
        simulated_error_rate=rate,
        stderr=binomial_stderr(rate, n_bits),
        details={"measured_error_slots": int(err.sum())},
    )
    if compute_bound:
        rho_down, rho_up = conditional_mixtures(cfg, rnd, "indirect")
        pe = helstrom_error(BinaryDiscriminationProblem(rho_down, rho_up))
        report.bound_error_probability = pe
        report.details["expected_error_slots"] = pe * n_bits
        report.notes.append("expected error slots = bound x sequence length (read of P_e x 2^|K|)")
    if exhaustive:
        _guard_search(lfsr.key_length_bits, MAX_SEARCH_BITS, "indirect attack")
        seeds, cand = candidate_slot_keys(lfsr, cfg.m_bases, rnd, n_bits)
        parities = cand.running_key.parities.astype(np.uint8)
        # R_E = {L_m xor K~_j}; the plaintext is in R_E iff L_m xor X is a parity sequence
        target = np.packbits(l_meas ^ x)
        hit = np.all(np.packbits(parities, axis=1) == target, axis=1)
        n_cand = len(np.unique(np.packbits(parities ^ l_meas, axis=1), axis=0))
        report.key_recovered = bool(hit.any())
        report.candidate_set_size = n_cand
        report.details["chance_level"] = min(1.0, math.ldexp(n_cand, -n_bits))
        t = int(err.sum())
        log2_w = lfsr.key_length_bits + math.log2(math.comb(n_bits, t))
        report.details["log2_workload"] = log2_w
        report.workload_estimate = 2.0**log2_w if log2_w < 1000 else math.inf
        report.notes.append(f"search space grows by C({n_bits},{t}) error patterns")
    return report


# ---------------------------------------------------------------- known plaintext


def decode_basis(beta: np.ndarray, x: np.ndarray, cfg: Constellation, rnd: RandomizationConfig) -> np.ndarray:
    """Nearest constellation point among those consistent with the known bit."""
    M = cfg.m_bases
    k = np.arange(M)
    osk = (0, 1) if rnd.osk_enabled else (0,)
    angles = rnd.dither_angles if rnd.axis_dither_enabled else (0.0,)
    table = cfg.states()
    best = np.empty(beta.size, dtype=np.int64)
    for bit in (0, 1):
        sel = x == bit
        if not sel.any():
            continue
        pts = np.concatenate([table[psk_index(bit, k, M, o)] * np.exp(1j * a) for o in osk for a in angles])
        lab = np.tile(k, len(osk) * len(angles))
        d = np.abs(beta[sel, None] - pts[None, :])
        best[sel] = lab[np.argmin(d, axis=1)]
    return best


def known_plaintext_attack(
    cfg: Constellation,
    lfsr: LfsrConfig,
    plaintext_len: int,
    rng: np.random.Generator,
    trials: int = 100,
    receiver: Literal["heterodyne", "noiseless"] = "heterodyne",
    injected_error: float | None = None,
    rnd: RandomizationConfig | None = None,
    threads: int = 1,
) -> AttackReport:
    """Read the running key under known plaintext, then score every seed.

    Each trial draws a fresh secret seed.  With ``injected_error`` the basis
    readout is exact except that each slot is moved to a neighbouring basis
    with that probability.
    """
    _require_psk(cfg, "known-plaintext attack")
    rnd = rnd or RandomizationConfig()
    n = lfsr.key_length_bits
    if plaintext_len < 2 * n:
        raise ValueError(f"known plaintext must cover at least 2|K| = {2 * n} slots")
    _guard_search(n, MAX_SEARCH_BITS, "known-plaintext attack")
    M = cfg.m_bases
    seeds, cand = candidate_slot_keys(lfsr, M, rnd, plaintext_len)
    table = cand.running_key.basis_numbers
    bm_possible = rnd.slot_width(M) == block_width(M) and M > 1 and (M & (M - 1)) == 0
    w = block_width(M)

    def trial(_, r: np.random.Generator):
        seed = int(r.integers(1, 1 << n))
        key = lfsr.with_seed(seed)
        x = r.integers(0, 2, plaintext_len, dtype=np.uint8)
        tr = encrypt_sequence(x, key, cfg, rnd)
        k_true = tr.running_key.basis_numbers
        if injected_error is not None:
            flip = r.random(plaintext_len) < injected_error
            step = np.where(r.random(plaintext_len) < 0.5, 1, -1)
            k_hat = np.where(flip, (k_true + step) % M, k_true)
        elif receiver == "noiseless":
            k_hat = k_true.copy()
        else:
            beta = heterodyne(tr.transmitted_states, r)
            k_hat = decode_basis(beta, x, cfg, rnd)
        sym_err = int(np.count_nonzero(k_hat != k_true))
        score = np.count_nonzero(table == k_hat[None, :], axis=1)
        top = score.max()
        winners = np.flatnonzero(score == top)
        ok = winners.size == 1 and int(seeds[winners[0]]) == seed
        bm_ok = None
        if bm_possible and sym_err == 0:
            bits = ((k_hat[:, None] >> np.arange(w - 1, -1, -1)) & 1).astype(np.uint8).ravel()
            try:
                bm_ok = recover_seed_berlekamp_massey(bits, n).seed == seed
            except ValueError:
                bm_ok = False
        return sym_err, ok, bm_ok

    results = run_trials(trial, rng, trials, threads)
    sym = np.array([r[0] for r in results])
    successes = int(sum(r[1] for r in results))
    rate = float(sym.sum() / (trials * plaintext_len))
    mean_t = float(sym.mean())
    report = AttackReport(
        "known_plaintext",
        bound_error_probability=srm_symmetric_error(M, cfg.amplitude) if M > 1 else 0.0,
        simulated_error_rate=rate,
        stderr=binomial_stderr(rate, trials * plaintext_len),
        key_recovered=successes * 2 > trials,
        success_count=successes,
        candidate_set_size=int(seeds.size),
        trials=trials,
        workload_estimate=2.0**mean_t,
        details={
            "slots": plaintext_len,
            "mean_error_slots": mean_t,
            "error_slots": sym.tolist(),
            "chance_success": 1.0 / seeds.size,
        },
    )
    report.notes.append("W = 2^T with T = erroneous basis slots (mean over trials)")
    bm = [r[2] for r in results if r[2] is not None]
    if bm:
        report.details["berlekamp_massey_recovered"] = int(sum(bm))
        report.notes.append(f"Berlekamp-Massey baseline recovered the seed in {sum(bm)}/{len(bm)} error-free trials")
    return report


def lo_ko_feasibility(kappa: float | None, key_length: int, copies_available: int | None = None) -> AttackReport:
    """Beam-splitting attack: t + 1 = 1/kappa copies against W = 2^|K| receivers."""
    if copies_available is None:
        if kappa is None or not 0 < kappa <= 1:
            raise ValueError("kappa must lie in (0, 1]")
        t = math.floor(1.0 / kappa - 1.0 + 1e-9)
    else:
        t = copies_available
    W = 1 << key_length
    feasible = t >= W
    required_db = 10 * key_length * math.log10(2)
    return AttackReport(
        "lo_ko",
        key_recovered=feasible,
        candidate_set_size=t + 1,
        workload_estimate=float(W),
        notes=[f"{t + 1} copies vs W = 2^{key_length}; needs {required_db:.1f} dB of channel loss"],
        details={"t": t, "W": W, "feasible": feasible, "required_loss_db": required_db},
    )


def modified_lo_ko_attack(
    cfg: Constellation,
    lfsr: LfsrConfig,
    kappa: float,
    key_length: int,
    rng: np.random.Generator,
    trials: int = 100,
    plaintext_len: int | None = None,
    split_mode: str = "linear",
    n_copies: int | None = None,
    threads: int = 1,
) -> AttackReport:
    """Bob gets kappa*alpha; Eve splits the rest into W copies, one keyed receiver each."""
    _require_psk(cfg, "modified Lo-Ko attack")
    _guard_search(key_length, MAX_LOKO_BITS, "modified Lo-Ko attack")
    if lfsr.key_length_bits != key_length:
        raise ValueError("LFSR length must equal key_length")
    if not 0 <= kappa <= 1:
        raise ValueError("kappa must lie in [0, 1]")
    rnd = RandomizationConfig()
    L = plaintext_len or 2 * key_length
    W = n_copies or (1 << key_length)
    n_receivers = min(W, (1 << key_length) - 1)
    if split_mode == "linear":
        eve_scale = (1 - kappa) / W
    else:
        eve_scale = math.sqrt(1 - kappa**2) * split_factor(W, "unitary")
    all_seeds = np.arange(1, 1 << key_length, dtype=np.uint64)

    def trial(_, r: np.random.Generator):
        seed = int(r.integers(1, 1 << key_length))
        others = all_seeds[all_seeds != seed]
        picked = r.choice(others, size=n_receivers - 1, replace=False) if n_receivers > 1 else others[:0]
        seeds = np.concatenate([[seed], picked]).astype(np.uint64)
        x = r.integers(0, 2, L, dtype=np.uint8)
        tr = encrypt_sequence(x, lfsr.with_seed(seed), cfg, rnd)
        amps = tr.transmitted_states
        bob_beta = heterodyne(kappa * amps, r)
        kb = slot_keys(lfsr.with_seed(seed), cfg.m_bases, rnd, L)
        _, a0 = modulate(np.zeros(L, np.int64), kb, cfg)
        _, a1 = modulate(np.ones(L, np.int64), kb, cfg)
        bob_err = int(np.count_nonzero(keyed_decision(bob_beta, a0, a1, kappa, "psk") != x))
        _, ck = candidate_slot_keys(lfsr, cfg.m_bases, rnd, L, seeds)
        _, c0 = modulate(np.zeros((seeds.size, L), np.int64), ck, cfg)
        _, c1 = modulate(np.ones((seeds.size, L), np.int64), ck, cfg)
        eve_beta = heterodyne(np.broadcast_to(eve_scale * amps, c0.shape), r)
        guesses = keyed_decision(eve_beta, c0, c1, eve_scale, "psk")
        agree = np.count_nonzero(guesses == x[None, :], axis=1)
        winners = np.flatnonzero(agree == agree.max())
        ok = winners.size == 1 and winners[0] == 0
        return bob_err, int(L - agree[0]), ok

    res = run_trials(trial, rng, trials, threads)
    nbits = trials * L
    bob_ber = sum(r[0] for r in res) / nbits
    eve_ber = sum(r[1] for r in res) / nbits
    succ = int(sum(r[2] for r in res))
    sigma = math.hypot(binomial_stderr(eve_ber, nbits), binomial_stderr(bob_ber, nbits))
    eve_amp = eve_scale * cfg.amplitude
    return AttackReport(
        "modified_lo_ko",
        bound_error_probability=float(stats.norm.sf(math.sqrt(2) * eve_amp)),
        simulated_error_rate=eve_ber,
        stderr=binomial_stderr(eve_ber, nbits),
        key_recovered=succ * 2 > trials,
        success_count=succ,
        candidate_set_size=n_receivers,
        trials=trials,
        workload_estimate=float(W),
        notes=[f"per-copy amplitude {eve_amp:.4g} ({split_mode} split) vs Bob {kappa * cfg.amplitude:.4g}"],
        details={
            "bob_ber": bob_ber,
            "bob_stderr": binomial_stderr(bob_ber, nbits),
            "separation_sigma": (eve_ber - bob_ber) / sigma if sigma > 0 else math.inf,
            "eve_copy_amplitude": eve_amp,
            "eve_ber_heterodyne_theory": float(stats.norm.sf(math.sqrt(2) * eve_amp)),
            "bob_ber_heterodyne_theory": float(stats.norm.sf(math.sqrt(2) * kappa * cfg.amplitude)),
        },
    )


# ---------------------------------------------------------------- collective bound


def sequence_gram(amps: np.ndarray) -> np.ndarray:
    """Gram matrix of product coherent states; rows of `amps` are sequences."""
    a = np.asarray(amps, dtype=complex)
    n2 = np.sum(np.abs(a) ** 2, axis=1)
    G = np.exp(-(n2[:, None] + n2[None, :]) / 2 + np.conj(a) @ a.T)
    np.fill_diagonal(G, 1.0)
    return G


def srm_success_probability(G: np.ndarray) -> float:
    """Square-root measurement success for equiprobable pure states with Gram G."""
    S = gram_sqrt(np.asarray(G, dtype=complex))
    return float(np.mean(np.abs(np.diag(S)) ** 2))


def unambiguous_sequence_bound(
    cfg: Constellation,
    lfsr: LfsrConfig,
    key_length: int,
    seq_len: int,
    plaintext=None,
    rnd: RandomizationConfig | None = None,
) -> AttackReport:
    """Collective discrimination of all candidate state sequences for one known plaintext."""
    _guard_search(key_length, MAX_UNAMBIGUOUS_BITS, "unambiguous sequence bound")
    if lfsr.key_length_bits != key_length:
        raise ValueError("LFSR length must equal key_length")
    rnd = rnd or RandomizationConfig()
    x = np.zeros(seq_len, np.int64) if plaintext is None else np.asarray(plaintext, np.int64)
    seeds, ck = candidate_slot_keys(lfsr, cfg.m_bases, rnd, seq_len)
    _, amps = modulate(np.broadcast_to(x, (seeds.size, seq_len)), ck, cfg)
    G = sequence_gram(amps)
    off = np.abs(G - np.eye(len(G))) > 1 - 1e-12
    dupes = int(np.count_nonzero(np.triu(off, 1)))
    ps = srm_success_probability(G)
    heuristic = 2.0 ** (-2 * key_length)
    report = AttackReport(
        "unambiguous_sequence",
        bound_error_probability=1 - ps,
        candidate_set_size=int(seeds.size),
        workload_estimate=float(seeds.size),
        details={"srm_success": ps, "heuristic_success": heuristic, "duplicate_pairs": dupes},
        notes=["square-root measurement success on the candidate-sequence ensemble, printed beside 2^(-2|K|)"],
    )
    if dupes:
        report.notes.append(f"{dupes} duplicate candidate pairs; they contribute chance-level success only")
    return report


# ---------------------------------------------------------------- key generation / reuse


def combined_channel_attack(
    cfg: Constellation,
    lfsr: LfsrConfig,
    rnd: RandomizationConfig | None,
    n_bits: int,
    rng: np.random.Generator,
    eve: EveChannelModel | None = None,
) -> AttackReport:
    """Half-plane records l on the quantum channel combined with c = x xor r on a classical one."""
    _require_psk(cfg, "combined-channel attack")
    rnd = rnd or RandomizationConfig()
    eve = eve or EveChannelModel()
    r_key = rng.integers(0, 2, n_bits, dtype=np.uint8)
    x = rng.integers(0, 2, n_bits, dtype=np.uint8)
    tr = encrypt_sequence(r_key, lfsr, cfg, rnd)
    l_meas = eve_half_plane(cfg, tr.state_indices, tr.keys, eve, rng)
    c = x ^ r_key
    z = c ^ l_meas
    target = x ^ tr.running_key.parities.astype(np.uint8)
    mi = mutual_information(z, target)
    mismatch = float(np.mean(z != target)) if n_bits else 0.0
    return AttackReport(
        "combined_channel",
        simulated_error_rate=mismatch,
        stderr=binomial_stderr(mismatch, n_bits),
        notes=["plug-in MI estimate; bias about 1/(2 n ln 2) bits"],
        details={
            "mutual_information": mi,
            "target_entropy": entropy_bits(target),
            "identity_holds": bool(np.array_equal(z, target)),
            "mi_observable_vs_generated_key": mutual_information(z, r_key),
        },
    )


def key_reuse_xor_test(
    cfg: Constellation,
    lfsr: LfsrConfig,
    rng: np.random.Generator,
    n_bits: int,
    rnd: RandomizationConfig | None = None,
    eve: EveChannelModel | None = None,
    plaintexts=None,
) -> AttackReport:
    """Two transmissions under one running key; XOR of Eve's two records.

    The residual e1 xor e2 = Y_E(1) xor Y_E(2) xor X(1) xor X(2) is what would
    have to be uniform for the reuse to be harmless.
    """
    _require_psk(cfg, "key-reuse test")
    rnd = rnd or RandomizationConfig()
    eve = eve or EveChannelModel()
    if plaintexts is None:
        x1 = rng.integers(0, 2, n_bits, dtype=np.uint8)
        x2 = rng.integers(0, 2, n_bits, dtype=np.uint8)
    else:
        x1, x2 = (np.asarray(p, dtype=np.uint8) for p in plaintexts)
    ys = []
    for x in (x1, x2):
        tr = encrypt_sequence(x, lfsr, cfg, rnd)
        ys.append(eve_half_plane(cfg, tr.state_indices, tr.keys, eve, rng))
    xor = ys[0] ^ ys[1]
    residual = xor ^ x1 ^ x2
    n = max(n_bits, 1)
    ones = float(xor.mean()) if n_bits else 0.0
    res_ones = float(residual.mean()) if n_bits else 0.0
    sigma = 0.5 / math.sqrt(n)
    return AttackReport(
        "key_reuse_xor",
        bound_error_probability=ciphertext_only_data_bound(cfg, rnd).bound_error_probability,
        simulated_error_rate=res_ones,
        stderr=binomial_stderr(res_ones, n),
        details={
            "xor_ones_fraction": ones,
            "xor_z": (ones - 0.5) / sigma,
            "residual_ones_fraction": res_ones,
            "residual_z": (res_ones - 0.5) / sigma,
            "xor_equals_plaintext_xor": bool(np.array_equal(xor, x1 ^ x2)),
        },
        notes=["shared running key means shared OSK/dither bits, which cancel in the XOR"],
    )
