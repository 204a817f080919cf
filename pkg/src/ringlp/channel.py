"""Modulation, memoryless channels, cost vectors, and symmetry maps.

Two channel models are provided: q-PSK over complex AWGN and the q-ary
symmetric channel.  Both identify ring elements with 0..q-1; PSK
additionally assumes the additive group is cyclic so that symbol a maps
to the unit-circle point exp(2*pi*1j*a/q).

The decoder consumes a received word only through its cost vector, whose
entry for position i and nonzero symbol a is log(p(y_i|0)/p(y_i|a)).
Entries are clipped to +-CLIP so downstream linear programs always see
finite coefficients.

Noise is generated by a Box-Muller transform hand-rolled on top of
``Generator.random`` uniforms.  That keeps the sample stream a function
of the seed alone, so sweeps reproduce byte-identically regardless of
how trials are distributed over workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CLIP",
    "PskAwgnScheme",
    "QarySymmetricScheme",
    "CostVector",
    "snr_to_noise",
    "modulate",
    "transmit",
    "cost_vector",
    "tau",
    "hard_decision",
    "log_density",
    "standard_normals",
]

CLIP = 1e12


@dataclass(eq=False)
class CostVector:
    """Per-position log-likelihood costs lam[i, a-1] for nonzero symbols a.

    ``clipped`` records whether any entry hit the +-CLIP guard (infinite
    log ratios arise on zero-probability events, e.g. a noiseless q-ary
    symmetric channel observing a mismatching symbol).
    """

    lam: np.ndarray
    clipped: bool = False

    @property
    def n(self) -> int:
        return self.lam.shape[0]

    @property
    def flat(self) -> np.ndarray:
        """Costs in LP variable order: position-major, symbol-minor."""
        return self.lam.ravel()


class _SchemeOps:
    """Method forwarding onto the module-level channel operations."""

    def modulate(self, c):
        return modulate(self, c)

    def transmit(self, signal, seed):
        return transmit(self, signal, seed)

    def log_density(self, y, beta: int):
        return log_density(self, y, beta)

    def cost_vector(self, y):
        return cost_vector(self, y)

    def tau(self, alpha: int, y):
        return tau(self, alpha, y)

    def hard_decision(self, y):
        return hard_decision(self, y)


@dataclass(eq=False)
class PskAwgnScheme(_SchemeOps):
    """q-PSK over complex AWGN with symbol energy e_ch and noise density n0."""

    q: int
    e_ch: float
    n0: float = 1.0

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("need q >= 2")
        if self.e_ch < 0 or self.n0 <= 0:
            raise ValueError("need e_ch >= 0 and n0 > 0")
        self.constellation = np.exp(2j * np.pi * np.arange(self.q) / self.q)


@dataclass(eq=False)
class QarySymmetricScheme(_SchemeOps):
    """q-ary symmetric channel: a symbol survives with probability 1-eps,
    otherwise it is replaced by one of the q-1 other symbols uniformly."""

    q: int
    eps: float

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("need q >= 2")
        if not 0 <= self.eps < 1 - 1 / self.q:
            raise ValueError(f"need 0 <= eps < 1 - 1/q = {1 - 1 / self.q}")


def snr_to_noise(snr_db: float, rate: float) -> tuple[float, float]:
    """Map per-information-symbol SNR (dB) to (e_ch, n0) with n0 = 1.

    The SNR gamma_s counts received energy per information symbol, so the
    energy of each of the n channel symbols is r*gamma_s with r = k/n.
    """
    if not 0 < rate <= 1:
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    if not np.isfinite(snr_db):
        raise ValueError("snr_db must be finite")
    return rate * 10.0 ** (snr_db / 10.0), 1.0


def modulate(scheme, c) -> np.ndarray:
    """Map a word of ring elements to channel inputs."""
    c = np.asarray(c, dtype=np.int64)
    if c.min(initial=0) < 0 or c.max(initial=0) >= scheme.q:
        raise ValueError("word contains symbols outside 0..q-1")
    if isinstance(scheme, PskAwgnScheme):
        return np.sqrt(scheme.e_ch) * scheme.constellation[c]
    if isinstance(scheme, QarySymmetricScheme):
        return c.copy()
    raise TypeError(f"unsupported scheme {type(scheme).__name__}")


def standard_normals(rng: np.random.Generator, count: int) -> np.ndarray:
    """count iid N(0,1) samples via Box-Muller on rng.random() uniforms."""
    pairs = (count + 1) // 2
    u1 = rng.random(pairs)
    u2 = rng.random(pairs)
    u1 = np.where(u1 > 0.0, u1, np.finfo(float).tiny)  # random() may return 0
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])
    return z[:count]


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def transmit(scheme, signal, seed) -> np.ndarray:
    """Pass a modulated signal through the channel.

    ``seed`` is an integer or a Generator; a fixed integer seed replays
    the identical noise realization.
    """
    rng = _as_rng(seed)
    if isinstance(scheme, PskAwgnScheme):
        signal = np.asarray(signal, dtype=np.complex128)
        z = standard_normals(rng, 2 * signal.size) * np.sqrt(scheme.n0 / 2.0)
        noise = z[: signal.size] + 1j * z[signal.size :]
        return signal + noise
    if isinstance(scheme, QarySymmetricScheme):
        y = np.asarray(signal, dtype=np.int64).copy()
        u = rng.random(y.size)
        flip = u < scheme.eps
        if flip.any():
            # u/eps is uniform on [0,1) given a flip; scale it to pick one
            # of the q-1 other symbols without drawing again
            other = np.floor(u[flip] / scheme.eps * (scheme.q - 1)).astype(np.int64)
            other = np.minimum(other, scheme.q - 2)
            y[flip] = (y[flip] + 1 + other) % scheme.q
        return y
    raise TypeError(f"unsupported scheme {type(scheme).__name__}")


def log_density(scheme, y, beta: int) -> np.ndarray:
    """Elementwise log p(y|beta); diagnostic helper for symmetry checks."""
    if isinstance(scheme, PskAwgnScheme):
        y = np.asarray(y, dtype=np.complex128)
        point = np.sqrt(scheme.e_ch) * scheme.constellation[beta]
        return -np.abs(y - point) ** 2 / scheme.n0 - np.log(np.pi * scheme.n0)
    if isinstance(scheme, QarySymmetricScheme):
        y = np.asarray(y, dtype=np.int64)
        with np.errstate(divide="ignore"):
            hit = np.log(1.0 - scheme.eps)
            miss = np.log(scheme.eps / (scheme.q - 1)) if scheme.q > 1 else -np.inf
        return np.where(y == beta, hit, miss)
    raise TypeError(f"unsupported scheme {type(scheme).__name__}")


def cost_vector(scheme, y) -> CostVector:
    """Cost vector of a received word: lam[i, a-1] = log(p(y_i|0)/p(y_i|a))."""
    if isinstance(scheme, PskAwgnScheme):
        y = np.asarray(y, dtype=np.complex128)
        points = np.sqrt(scheme.e_ch) * scheme.constellation
        d2 = np.abs(y[:, None] - points[None, :]) ** 2
        lam = (d2[:, 1:] - d2[:, :1]) / scheme.n0
    elif isinstance(scheme, QarySymmetricScheme):
        y = np.asarray(y, dtype=np.int64)
        with np.errstate(divide="ignore"):
            logp = np.where(
                y[:, None] == np.arange(scheme.q)[None, :],
                np.log(1.0 - scheme.eps),
                np.log(scheme.eps / (scheme.q - 1)),
            )
        with np.errstate(invalid="ignore"):
            lam = logp[:, :1] - logp[:, 1:]
        lam = np.nan_to_num(lam, nan=0.0, posinf=np.inf, neginf=-np.inf)
    else:
        raise TypeError(f"unsupported scheme {type(scheme).__name__}")
    clipped = bool((np.abs(lam) > CLIP).any() | ~np.isfinite(lam).all())
    return CostVector(lam=np.clip(lam, -CLIP, CLIP), clipped=clipped)


def tau(scheme, alpha: int, y):
    """The symmetry bijection tau_alpha on channel outputs.

    It satisfies p(y|beta) = p(tau_alpha(y)|beta-alpha): PSK rotates by
    -2*pi*alpha/q, the q-ary symmetric channel subtracts alpha mod q.
    """
    if not 0 <= alpha < scheme.q:
        raise ValueError(f"alpha {alpha} outside 0..q-1")
    if isinstance(scheme, PskAwgnScheme):
        return np.asarray(y, dtype=np.complex128) * np.exp(-2j * np.pi * alpha / scheme.q)
    if isinstance(scheme, QarySymmetricScheme):
        return (np.asarray(y, dtype=np.int64) - alpha) % scheme.q
    raise TypeError(f"unsupported scheme {type(scheme).__name__}")


def hard_decision(scheme, y) -> np.ndarray:
    """Demodulate to the nearest symbol (ties toward the smaller index)."""
    if isinstance(scheme, PskAwgnScheme):
        y = np.asarray(y, dtype=np.complex128)
        points = np.sqrt(scheme.e_ch) * scheme.constellation
        return np.argmin(np.abs(y[:, None] - points[None, :]), axis=1).astype(np.int64)
    if isinstance(scheme, QarySymmetricScheme):
        return np.asarray(y, dtype=np.int64).copy()
    raise TypeError(f"unsupported scheme {type(scheme).__name__}")
