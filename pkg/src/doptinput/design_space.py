"""Amplitude grids, subsequence indexing, and occurrence counting.

Subsequences of length L over an A-level grid are numbered by a scalar
index k in 1..A**L.  The digit tuple (i_1, ..., i_L) behind k stores the
window oldest sample first, with i_1 as the least significant digit:

    k = i_1 + sum_{j=2..L} (i_j - 1) * A**(j-1)

Array positions are zero based throughout, so ``weights[k - 1]`` is the
entry for subsequence k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

GRID_TOLERANCE = 1e-9
SIMPLEX_TOLERANCE = 1e-12


@dataclass(frozen=True)
class AmplitudeGrid:
    """Ordered finite set of admissible input levels."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if len(values) < 2:
            raise ValueError("amplitude grid needs at least two levels")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("amplitude grid levels must be strictly increasing")
        object.__setattr__(self, "values", values)

    @classmethod
    def uniform(cls, levels: int, lo: float = -1.0, hi: float = 1.0) -> "AmplitudeGrid":
        """Equally spaced grid of `levels` values over [lo, hi]."""
        if levels < 2:
            raise ValueError("uniform grid needs at least two levels")
        if not hi > lo:
            raise ValueError("uniform grid needs hi > lo")
        return cls(tuple(np.linspace(lo, hi, levels)))

    @property
    def size(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    def digitize(self, samples: Sequence[float]) -> np.ndarray:
        """Map samples to one-based level digits.

        A sample farther than GRID_TOLERANCE from every level raises a
        ValueError naming the first offending sample position.
        """
        arr = np.atleast_1d(np.asarray(samples, dtype=float))
        grid = self.as_array()
        nearest = np.argmin(np.abs(arr[:, None] - grid[None, :]), axis=1)
        errors = np.abs(arr - grid[nearest])
        bad = np.flatnonzero(errors > GRID_TOLERANCE)
        if bad.size:
            t = int(bad[0])
            raise ValueError(
                f"sample {arr[t]!r} at position {t} is not an amplitude grid level"
            )
        return nearest + 1


@dataclass(frozen=True)
class SubseqSpace:
    """Index space of the A**L subsequences of length L over A levels."""

    levels: int
    length: int

    def __post_init__(self) -> None:
        if self.levels < 1:
            raise ValueError("need at least one level")
        if self.length < 1:
            raise ValueError("subsequence length must be at least 1")

    @property
    def size(self) -> int:
        return self.levels**self.length


@dataclass(frozen=True)
class FrequencyVector:
    """Relative subsequence frequencies; a point on the probability simplex."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=float)
        if weights.ndim != 1 or weights.size == 0:
            raise ValueError("weights must be a nonempty vector")
        if weights.min() < -SIMPLEX_TOLERANCE or weights.max() > 1.0 + SIMPLEX_TOLERANCE:
            raise ValueError("weights must lie in [0, 1]")
        if abs(weights.sum() - 1.0) > SIMPLEX_TOLERANCE:
            raise ValueError("weights must sum to one")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, size: int) -> "FrequencyVector":
        return cls(np.full(size, 1.0 / size))

    def __len__(self) -> int:
        return int(self.weights.size)

    def support(self, threshold: float = 1e-6) -> np.ndarray:
        """One-based indices of entries above `threshold`."""
        return np.flatnonzero(self.weights > threshold) + 1


@dataclass(frozen=True)
class CountVector:
    """Integer subsequence occurrence counts."""

    counts: np.ndarray

    def __post_init__(self) -> None:
        counts = np.array(self.counts)
        if counts.ndim != 1 or counts.size == 0:
            raise ValueError("counts must be a nonempty vector")
        if not np.issubdtype(counts.dtype, np.integer):
            rounded = np.rint(counts)
            if not np.allclose(counts, rounded, atol=1e-9):
                raise ValueError("counts must be integers")
            counts = rounded.astype(np.int64)
        else:
            counts = counts.astype(np.int64)
        if counts.min() < 0:
            raise ValueError("counts must be nonnegative")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __len__(self) -> int:
        return int(self.counts.size)

    def frequencies(self) -> FrequencyVector:
        if self.total == 0:
            raise ValueError("cannot normalize an all-zero count vector")
        return FrequencyVector(self.counts / self.total)


def encode_index(digits: Sequence[int], levels: int) -> int:
    """Scalar index of a one-based digit tuple; first digit least significant."""
    if len(digits) == 0:
        raise ValueError("digit tuple must be nonempty")
    k = 1
    base = 1
    for pos, digit in enumerate(digits):
        digit = int(digit)
        if not 1 <= digit <= levels:
            raise ValueError(f"digit {digit} at position {pos} outside 1..{levels}")
        k += (digit - 1) * base
        base *= levels
    return k


def decode_index(k: int, levels: int, length: int) -> tuple[int, ...]:
    """Digit tuple of scalar index k; inverse of encode_index."""
    space = SubseqSpace(levels, length)
    if not 1 <= k <= space.size:
        raise ValueError(f"index {k} outside 1..{space.size}")
    rem = int(k) - 1
    digits = []
    for _ in range(length):
        digits.append(rem % levels + 1)
        rem //= levels
    return tuple(digits)


def subsequence_values(k: int, grid: AmplitudeGrid, length: int) -> tuple[float, ...]:
    """Amplitude window for index k, oldest sample first."""
    return tuple(grid.values[d - 1] for d in decode_index(k, grid.size, length))


def count_subsequences(
    sequence: Sequence[float], grid: AmplitudeGrid, length: int
) -> CountVector:
    """Count every length-`length` window of a periodic signal.

    The signal wraps around, so a signal of N samples contains exactly N
    windows and the counts always sum to N.
    """
    digits0 = grid.digitize(sequence) - 1
    space = SubseqSpace(grid.size, length)
    index = np.zeros(digits0.size, dtype=np.int64)
    base = 1
    for j in range(length):
        # window position j (oldest first) reads the sample length-1-j steps back
        index += np.roll(digits0, length - 1 - j) * base
        base *= grid.size
    return CountVector(np.bincount(index, minlength=space.size))


def denormalize_round(freq: FrequencyVector, total: int) -> CountVector:
    """Largest-remainder apportionment of `total` units over the weights.

    Guarantees the counts sum to `total` exactly; remainder ties go to the
    lowest index.
    """
    if total < 1:
        raise ValueError("total must be at least 1")
    target = freq.weights * total
    base = np.floor(target)
    extras = int(round(total - base.sum()))
    if extras:
        order = np.argsort(-(target - base), kind="stable")
        base[order[:extras]] += 1
    return CountVector(base)


def denormalize_nearest(freq: FrequencyVector, total: int) -> CountVector:
    """Round each entry of total*weights half-up; the sum may drift from `total`."""
    if total < 1:
        raise ValueError("total must be at least 1")
    return CountVector(np.floor(freq.weights * total + 0.5))
