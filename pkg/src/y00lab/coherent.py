"""Coherent-state algebra in the span of a finite set of coherent states.

Every spectrum here is computed from the Gram matrix of the states involved,
so photon numbers of 10^4 and beyond cost nothing extra: no Fock basis is
ever built.  Amplitudes are plain Python / numpy complex numbers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# a coherent amplitude alpha; mean photon number |alpha|^2
CoherentAmplitude = complex

EIG_CLIP = 1e-10
ENTROPY_FLOOR = 1e-12


class SpectralError(RuntimeError):
    """Raised when an eigen-decomposition produces an unusable result."""


def as_amplitudes(states) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(states, dtype=complex))
    if arr.ndim != 1:
        raise ValueError(f"expected a flat list of amplitudes, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coherent amplitudes must be finite")
    return arr


def mean_photon(alpha) -> float:
    return float(abs(complex(alpha)) ** 2)


@dataclass(frozen=True, eq=False)
class MixtureState:
    """Classical mixture sum_i w_i |alpha_i><alpha_i|."""

    states: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        states = as_amplitudes(self.states)
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if states.size == 0 or states.shape != weights.shape:
            raise ValueError("states and weights must be non-empty and of equal length")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise ValueError("weights must be finite and non-negative")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {weights.sum()!r}, not 1")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def pure(cls, alpha) -> "MixtureState":
        return cls(np.array([alpha], dtype=complex), np.array([1.0]))

    @classmethod
    def uniform(cls, states) -> "MixtureState":
        states = as_amplitudes(states)
        return cls(states, np.full(states.size, 1.0 / states.size))

    def __len__(self):
        return self.states.size


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray  # descending
    trace: float


def overlap(a, b) -> complex:
    """<a|b> for coherent states |a>, |b>."""
    a, b = complex(a), complex(b)
    return complex(np.exp(-(abs(a) ** 2 + abs(b) ** 2) / 2 + a.conjugate() * b))


def gram_matrix(states) -> np.ndarray:
    s = as_amplitudes(states)
    n2 = np.abs(s) ** 2
    G = np.exp(-(n2[:, None] + n2[None, :]) / 2 + np.conj(s)[:, None] * s[None, :])
    np.fill_diagonal(G, 1.0)
    return G


def merge_components(states, coefficients, tol: float = 1e-9):
    """Collapse numerically identical amplitudes, summing their coefficients.

    The result is sorted canonically (by real, then imaginary part), so two
    mixtures over the same set of states always yield bit-identical inputs to
    the eigensolver.
    """
    s = as_amplitudes(states)
    c = np.asarray(coefficients, dtype=float)
    scale = tol * max(1.0, float(np.max(np.abs(s))))
    keys = np.stack([np.round(s.real / scale), np.round(s.imag / scale)], axis=1)
    uniq, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    merged = np.zeros(len(uniq))
    # sequential accumulation keeps the sum order fixed
    for idx, coef in zip(inverse.ravel(), c):
        merged[idx] += coef
    return s[first], merged


def _eigh(matrix: np.ndarray, what: str):
    try:
        w, v = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigensolver failed on {what}: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise SpectralError(f"non-finite eigenvalues for {what}")
    return w, v


def mixture_spectrum(m: MixtureState) -> SpectrumResult:
    q = np.sqrt(m.weights)
    T = q[:, None] * gram_matrix(m.states) * q[None, :]
    w, _ = _eigh(T, "mixture matrix")
    w = w[::-1]
    return SpectrumResult(eigenvalues=w, trace=float(w.sum()))


def von_neumann_entropy(m: MixtureState) -> float:
    """Entropy in bits."""
    lam = mixture_spectrum(m).eigenvalues
    lam = lam[lam >= ENTROPY_FLOOR]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def gram_sqrt(G: np.ndarray) -> np.ndarray:
    w, v = _eigh(G, "Gram matrix")
    floor = -EIG_CLIP * max(1.0, float(w[-1]))
    if w[0] < floor:
        raise SpectralError(f"Gram matrix has eigenvalue {w[0]:.3e}; not positive semidefinite")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def signed_combination_spectrum(states, coefficients) -> SpectrumResult:
    """Spectrum of the Hermitian operator sum_i c_i |alpha_i><alpha_i| (c_i real)."""
    s = as_amplitudes(states)
    c = np.asarray(coefficients, dtype=float)
    if c.shape != s.shape:
        raise ValueError("one coefficient per state is required")
    if not np.any(c):
        return SpectrumResult(eigenvalues=np.zeros(s.size), trace=0.0)
    S = gram_sqrt(gram_matrix(s))
    A = S @ (c[:, None] * S)
    A = (A + A.conj().T) / 2
    w, _ = _eigh(A, "signed combination")
    w = w[::-1]
    return SpectrumResult(eigenvalues=w, trace=float(w.sum()))
