"""Problem instance, Rayleigh block-fading model, and the channel sampler.

Powers throughout the package are linear and normalized to a unit-variance
receiver noise, so they read as SNRs; dB conversion happens only at the CLI
boundary.  Rate expressions are base-2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import require_positive

__all__ = [
    "TDBC_PHASES",
    "SystemConfig",
    "ChannelState",
    "FadingSampler",
    "delta_of_rate",
]

#: Phases per transmission cycle: two uplink slots plus one broadcast slot.
TDBC_PHASES = 3


def delta_of_rate(rate: float, phases: int = TDBC_PHASES) -> float:
    """SNR threshold 2**(phases * rate) - 1 needed to sustain `rate`.

    The 1/phases pre-log of the cycle is what puts `phases` in the exponent.
    Raises ValueError for rate <= 0 or a non-positive integer phase count.
    """
    rate = require_positive(rate, "rate")
    if isinstance(phases, bool) or not isinstance(phases, int) or phases < 1:
        raise ValueError(f"phases must be a positive integer, got {phases!r}")
    return 2.0 ** (phases * rate) - 1.0


@dataclass(frozen=True)
class SystemConfig:
    """One complete problem instance.

    rate_1 / rate_2 are the fixed information rates of the two sessions
    (bits per channel use); omega_x / omega_y are the mean squared channel
    amplitudes of the two source-relay links; the three budgets are long-term
    average transmit powers of the end nodes and the relay.
    """

    rate_1: float
    rate_2: float
    omega_x: float
    omega_y: float
    pbar_s1: float
    pbar_s2: float
    p_avg_relay: float

    def __post_init__(self) -> None:
        for name in ("rate_1", "rate_2", "omega_x", "omega_y",
                     "pbar_s1", "pbar_s2", "p_avg_relay"):
            object.__setattr__(self, name, require_positive(getattr(self, name), name))

    @property
    def delta1(self) -> float:
        """SNR threshold of the session originating at the first end node."""
        return delta_of_rate(self.rate_1)

    @property
    def delta2(self) -> float:
        """SNR threshold of the session originating at the second end node."""
        return delta_of_rate(self.rate_2)


@dataclass(frozen=True)
class ChannelState:
    """Squared channel amplitudes (x, y) of one transmission cycle."""

    x: float
    y: float

    def __post_init__(self) -> None:
        for name in ("x", "y"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, name, v)


class FadingSampler:
    """Deterministic sampler of exponential squared-amplitude pairs.

    The squared amplitudes of Rayleigh-faded links are exponential with means
    omega_x and omega_y.  Sampling is by inverse CDF, x = -omega * ln(u) with
    u uniform on (0, 1], so for a fixed uniform stream the draws scale
    linearly and deterministically with omega.

    The stream is fully determined by (seed, stream_index): substreams are
    derived by key-splitting a 64-bit seed, never by wall-clock state, which
    is what makes chunk-parallel simulation reproducible for any worker
    count.  A sampler instance owns its stream and must not be shared across
    threads; create one per substream instead.
    """

    def __init__(self, seed: int, omega_x: float, omega_y: float,
                 stream_index: int = 0) -> None:
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
            raise ValueError(f"seed must be an integer in [0, 2**64), got {seed!r}")
        if isinstance(stream_index, bool) or not isinstance(stream_index, int) or stream_index < 0:
            raise ValueError(f"stream_index must be a non-negative integer, got {stream_index!r}")
        self.seed = seed
        self.stream_index = stream_index
        self.omega_x = require_positive(omega_x, "omega_x")
        self.omega_y = require_positive(omega_y, "omega_y")
        ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream_index,))
        self._rng = np.random.Generator(np.random.PCG64(ss))

    def sample_state(self) -> ChannelState:
        """Draw the next channel state and advance the stream."""
        u = self._rng.random(2)
        x = -self.omega_x * math.log1p(-u[0])
        y = -self.omega_y * math.log1p(-u[1])
        return ChannelState(x, y)

    def sample_block(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Draw `n` channel states at once.

        Consumes the uniform stream exactly as `n` successive sample_state
        calls would.  Values can differ from the scalar path by one unit in
        the last place (the vector math library rounds independently), so
        reproducibility guarantees hold per path: equal seeds and equal block
        sizes give bit-identical output.
        """
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValueError(f"n must be a positive integer, got {n!r}")
        u = self._rng.random((n, 2))
        x = -self.omega_x * np.log1p(-u[:, 0])
        y = -self.omega_y * np.log1p(-u[:, 1])
        return x, y
