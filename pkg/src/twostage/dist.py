"""Probability kernel: standard-normal and chi-square(2df) distributions plus
seedable, splittable random streams.

The CDF/quantile functions accept scalars or numpy arrays and are pure, so
they are safe to call from any thread.  Randomness goes through
:class:`RandomStream`, a thin wrapper over numpy's counter-based Philox
generator: every ``(master_seed, stream_index)`` pair names one reproducible
stream, and distinct indices give statistically independent streams that are
O(1) to construct.  Parallel code owns one stream per work unit and never
shares generator state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.random import Generator, Philox
from scipy import special

__all__ = [
    "RandomStream",
    "std_normal_cdf",
    "std_normal_quantile",
    "chisq2_cdf",
    "chisq2_quantile",
    "sample_normal",
]

_UINT64 = 2**64


@dataclass
class RandomStream:
    """One independent, reproducible stream of randomness.

    Streams are identified by ``(master_seed, stream_index)``; equal pairs
    replay identical sequences.  The underlying Philox generator is keyed by
    the pair, so constructing stream ``k`` costs O(1) regardless of ``k`` and
    different indices never overlap.
    """

    master_seed: int
    stream_index: int = 0
    _gen: Generator | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.stream_index, (int, np.integer)) or self.stream_index < 0:
            raise ValueError(f"stream_index must be a non-negative integer, got {self.stream_index}")
        if self.stream_index >= _UINT64:
            raise ValueError("stream_index must fit in 64 bits")

    @property
    def generator(self) -> Generator:
        """The stream's numpy Generator, created on first use."""
        if self._gen is None:
            key = [self.master_seed % _UINT64, int(self.stream_index)]
            self._gen = Generator(Philox(key=key))
        return self._gen

    def offset(self, k: int) -> "RandomStream":
        """A fresh stream at index ``stream_index + k`` (same master seed)."""
        return RandomStream(self.master_seed, self.stream_index + k)


def _as_float(x, name: str):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


def _scalar_or_array(result, *inputs):
    if all(np.isscalar(x) or np.ndim(x) == 0 for x in inputs):
        return float(result)
    return result


def std_normal_cdf(x):
    """Standard normal CDF, accurate to better than 1e-12 in both tails."""
    arr = _as_float(x, "x")
    return _scalar_or_array(special.ndtr(arr), x)


def std_normal_quantile(p):
    """Inverse of :func:`std_normal_cdf` on the open interval (0, 1)."""
    arr = np.asarray(p, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise ValueError("p must lie strictly inside (0, 1)")
    return _scalar_or_array(special.ndtri(arr), p)


def chisq2_cdf(x):
    """Chi-square CDF with 2 degrees of freedom: 1 - exp(-x/2)."""
    arr = _as_float(x, "x")
    if np.any(arr < 0.0):
        raise ValueError("x must be non-negative")
    # -expm1 keeps full precision for small x where 1 - exp(-x/2) cancels.
    return _scalar_or_array(-np.expm1(-arr / 2.0), x)


def chisq2_quantile(p):
    """Inverse of :func:`chisq2_cdf`: -2*log(1 - p) for p in [0, 1)."""
    arr = np.asarray(p, dtype=float)
    if not np.all((arr >= 0.0) & (arr < 1.0)):
        raise ValueError("p must lie in [0, 1)")
    return _scalar_or_array(-2.0 * np.log1p(-arr), p)


def sample_normal(stream: RandomStream, mean: float, sd: float, size: int | None = None):
    """Draw from N(mean, sd^2) on the given stream.

    ``sd == 0`` is the degenerate point mass at ``mean``.  With ``size=None``
    a single float is returned, otherwise an ndarray of that shape.
    """
    if not math.isfinite(mean):
        raise ValueError("mean must be finite")
    if not (math.isfinite(sd) and sd >= 0.0):
        raise ValueError(f"sd must be non-negative, got {sd}")
    if sd == 0.0:
        return mean if size is None else np.full(size, float(mean))
    draw = stream.generator.normal(mean, sd, size=size)
    return float(draw) if size is None else draw
