"""Seed splitting on top of numpy's counter-based Philox generator.

Every random stream in the package is addressed by ``(seed, tag, index)``.
The triple goes through :class:`numpy.random.SeedSequence` (a stable,
documented hash) to produce the Philox key; the Philox counter then walks
the stream, so draw number ``e`` of a stream is a pure function of the
address and ``e``. Replica ``i`` of an experiment never shares state with
replica ``j``, whatever order they run in.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def tag_key(tag: str) -> int:
    return zlib.crc32(tag.encode("utf-8"))


def make_rng(seed: int, tag: str = "", index: int = 0) -> np.random.Generator:
    """Return a Philox-backed generator for stream ``(seed, tag, index)``."""
    ss = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=(tag_key(tag), int(index)))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, tag: str, index: int) -> int:
    """Derive a 64-bit child seed, e.g. the instance seed of replica ``index``."""
    ss = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=(tag_key(tag), int(index)))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def open_uniform(rng: np.random.Generator, size) -> np.ndarray:
    """Uniforms on the open interval (0, 1): odd multiples of 2**-53.

    Keeps ``-log1p(-u)`` strictly positive and finite.
    """
    k = rng.integers(0, 1 << 52, size=size, dtype=np.uint64)
    return (2.0 * k.astype(np.float64) + 1.0) * 2.0**-53
