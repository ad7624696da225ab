"""Time-domain revival analysis on the quadratic ladder.

All times here are dimensionless, in units of the revival time
t_rev = 2 pi mu / alpha, so the phase of level n is

    phi_n(t) = 2 pi (mu n + n^2) t.

Products (mu n + n^2) t reach 1e7 and beyond, so phases are reduced mod
2 pi with double length arithmetic before the final multiply: the
quadratic mu n + n^2 is formed exactly as a hi/lo pair and only its
fractional multiple of t enters exp().  At t = 1 with integer mu this
makes every phase an exact multiple of 2 pi and the packet revives to
|A|^2 = 1 at machine precision.

The autocorrelation A(t) = sum_n w_n exp(-i phi_n(t)) regroups exactly
into q residue classes P_Delta(t) (fractional revival channels), whose
squared moduli and cross terms split |A(t)|^2 into a diagonal and an
interference part.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._dd import mul_frac, quadratic_in_n
from .gkstate import CoherentState

__all__ = [
    "TimeSeries",
    "FractionalDecomposition",
    "PhaseGroupReport",
    "phase",
    "autocorrelation",
    "autocorrelation_series",
    "survival_fraction",
    "survival_fraction_series",
    "fractional_decomposition",
    "diagonal_term",
    "interference_term",
    "phase_group_check",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Samples of one observable on a strictly increasing time grid."""

    t_grid: np.ndarray
    values: np.ndarray
    label: str

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        v = np.asarray(self.values)
        if t.ndim != 1 or v.ndim != 1 or len(t) != len(v):
            raise ValueError("t_grid and values must be 1-d arrays of equal length")
        if len(t) > 1 and not np.all(np.diff(t) > 0.0):
            raise ValueError("t_grid must be strictly increasing")
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True, eq=False)
class FractionalDecomposition:
    """The q complex channels P_Delta(t), Delta = 0 .. q-1, whose sum
    reproduces A(t) exactly at every grid point."""

    q: int
    fractions: list = field(default_factory=list)


@dataclass(frozen=True)
class PhaseGroupReport:
    """Result of checking that phi_{kq+Delta}(1/q) mod 2 pi does not
    depend on k and matches the closed-form group phase."""

    q: int
    mu: float
    k_max: int
    group_phases: np.ndarray
    max_deviation: float


def phase(n: int, t: float, mu: float) -> float:
    """Raw (unreduced) phase phi_n(t) = 2 pi (mu n + n^2) t."""
    return _TWO_PI * (mu * n + n * n) * t


def _phase_factors(m_hi: np.ndarray, m_lo: np.ndarray, t: float) -> np.ndarray:
    # exp(-i phi_n(t)) from the exact hi/lo split of mu n + n^2.
    return np.exp(-1j * (_TWO_PI * mul_frac(m_hi, m_lo, t)))


def _weighted_factors(state: CoherentState, t: float) -> np.ndarray:
    n = np.arange(state.n_max + 1, dtype=float)
    m_hi, m_lo = quadratic_in_n(n, state.params.mu)
    return np.exp(state.ln_weights) * _phase_factors(m_hi, m_lo, t)


def autocorrelation(state: CoherentState, t: float) -> complex:
    """A(t) = sum_n w_n exp(-i phi_n(t)); |A| <= 1, A(0) = 1."""
    return complex(_weighted_factors(state, t).sum())


def _grid(t_grid) -> np.ndarray:
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1:
        raise ValueError("t_grid must be one dimensional")
    return t


def autocorrelation_series(state: CoherentState, t_grid) -> TimeSeries:
    """|A(t)|^2 sampled on the grid (grid in t_rev units)."""
    t = _grid(t_grid)
    n = np.arange(state.n_max + 1, dtype=float)
    m_hi, m_lo = quadratic_in_n(n, state.params.mu)
    w = np.exp(state.ln_weights)
    vals = np.empty(len(t))
    for i, ti in enumerate(t):
        a = (w * _phase_factors(m_hi, m_lo, float(ti))).sum()
        vals[i] = abs(a) ** 2
    return TimeSeries(t_grid=t, values=vals, label="|A(t)|^2")


def _check_residue(q: int, delta: int):
    if not (isinstance(q, (int, np.integer)) and q >= 2):
        raise ValueError(f"q must be an integer >= 2, got {q}")
    if not (isinstance(delta, (int, np.integer)) and 0 <= delta < q):
        raise ValueError(f"delta must lie in [0, {q}), got {delta}")


def survival_fraction(state: CoherentState, q: int, delta: int, t: float) -> complex:
    """Channel amplitude P_Delta(t) = sum_k w_{kq+Delta} exp(-i phi(t))."""
    _check_residue(q, delta)
    return complex(_weighted_factors(state, t)[delta::q].sum())


def survival_fraction_series(state: CoherentState, q: int, delta: int, t_grid) -> TimeSeries:
    """|P_Delta(t)|^2 sampled on the grid."""
    _check_residue(q, delta)
    t = _grid(t_grid)
    n = np.arange(state.n_max + 1, dtype=float)
    m_hi, m_lo = quadratic_in_n(n, state.params.mu)
    w = np.exp(state.ln_weights)
    vals = np.empty(len(t))
    for i, ti in enumerate(t):
        p = (w * _phase_factors(m_hi, m_lo, float(ti)))[delta::q].sum()
        vals[i] = abs(p) ** 2
    return TimeSeries(t_grid=t, values=vals, label=f"|P_{delta}(t)|^2")


def _channel_amplitudes(state: CoherentState, q: int, t: float) -> np.ndarray:
    terms = _weighted_factors(state, t)
    return np.array([terms[d::q].sum() for d in range(q)])


def fractional_decomposition(state: CoherentState, q: int, t_grid) -> FractionalDecomposition:
    """All q complex channels P_Delta on a common grid."""
    _check_residue(q, 0)
    t = _grid(t_grid)
    n = np.arange(state.n_max + 1, dtype=float)
    m_hi, m_lo = quadratic_in_n(n, state.params.mu)
    w = np.exp(state.ln_weights)
    chans = np.empty((q, len(t)), dtype=complex)
    for i, ti in enumerate(t):
        terms = w * _phase_factors(m_hi, m_lo, float(ti))
        for d in range(q):
            chans[d, i] = terms[d::q].sum()
    fractions = [
        TimeSeries(t_grid=t, values=chans[d], label=f"P_{d}(t)") for d in range(q)
    ]
    return FractionalDecomposition(q=q, fractions=fractions)


def diagonal_term(state: CoherentState, q: int, t: float) -> float:
    """Sum of channel intensities sum_Delta |P_Delta(t)|^2."""
    p = _channel_amplitudes(state, q, t)
    return float((np.abs(p) ** 2).sum())


def interference_term(state: CoherentState, q: int, t: float) -> float:
    """Cross-channel term sum_{Delta != Gamma} P_Delta conj(P_Gamma).

    Computed as twice the real part over ordered pairs, so the result is
    exactly real; equals |A(t)|^2 - diagonal_term by construction.
    """
    p = _channel_amplitudes(state, q, t)
    acc = 0.0
    for d in range(1, len(p)):
        acc += float(np.real(p[d] * np.conj(p[:d])).sum())
    return 2.0 * acc


def phase_group_check(q: int, mu: float, k_max: int) -> PhaseGroupReport:
    """Verify the residue-class phase collapse at t = 1/q.

    For integer mu the phase of level n = kq + Delta at t = 1/q reduces,
    mod 2 pi, to the k-independent group phase 2 pi ((mu Delta + Delta^2)
    mod q) / q.  Returns the q group phases and the largest circular
    distance between the numerically reduced phases and those targets
    over all k <= k_max.  Non-integer mu breaks the collapse and is
    rejected.
    """
    _check_residue(q, 0)
    if not (math.isfinite(mu) and mu > 0.0 and float(mu).is_integer()):
        raise ValueError(f"phase grouping requires a positive integer mu, got {mu}")
    if not (isinstance(k_max, (int, np.integer)) and k_max >= 1):
        raise ValueError(f"k_max must be an integer >= 1, got {k_max}")

    mu_i = int(mu)
    targets = np.array(
        [_TWO_PI * ((mu_i * d + d * d) % q) / q for d in range(q)]
    )
    worst = 0.0
    t = 1.0 / q
    for d in range(q):
        n = np.arange(k_max + 1, dtype=float) * q + d
        m_hi, m_lo = quadratic_in_n(n, float(mu_i))
        reduced = _TWO_PI * mul_frac(m_hi, m_lo, t)
        dev = np.abs(reduced - targets[d])
        dev = np.minimum(dev, _TWO_PI - dev)
        worst = max(worst, float(dev.max()))
    return PhaseGroupReport(
        q=q, mu=float(mu_i), k_max=int(k_max), group_phases=targets, max_deviation=worst
    )
