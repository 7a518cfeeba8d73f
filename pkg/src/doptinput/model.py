"""Nonlinear FIR-type models and their parameter gradients.

A model maps the last `memory` input samples to one output sample.
Input windows are passed oldest sample first, so ``subseq[-1]`` is the
current sample u(t).  Gradients are taken with respect to the free
parameters only, in parameter order.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

FD_STEP_SCALE = 1e-6


class FirModel(abc.ABC):
    """Base class; concrete models define evaluate_at(theta, subseq)."""

    memory: int
    free_mask: tuple[bool, ...]
    noise_variance: float

    @property
    @abc.abstractmethod
    def parameters(self) -> np.ndarray:
        """Full parameter vector, free and fixed entries alike."""

    @abc.abstractmethod
    def evaluate_at(self, theta: np.ndarray, subseq: Sequence[float]) -> float:
        """Noiseless output for the window under an explicit parameter vector."""

    @property
    def n_free(self) -> int:
        return sum(self.free_mask)

    def _check_window(self, subseq: Sequence[float]) -> np.ndarray:
        window = np.asarray(subseq, dtype=float)
        if window.shape != (self.memory,):
            raise ValueError(
                f"input window has length {window.size}, model memory is {self.memory}"
            )
        return window

    def evaluate(self, subseq: Sequence[float]) -> float:
        return float(self.evaluate_at(self.parameters, self._check_window(subseq)))

    def gradient(self, subseq: Sequence[float]) -> np.ndarray:
        """Partial derivatives w.r.t. the free parameters (finite differences)."""
        return finite_difference_gradient(self, subseq)


def finite_difference_gradient(model: FirModel, subseq: Sequence[float]) -> np.ndarray:
    """Central differences with per-parameter step 1e-6 * max(1, |theta_i|)."""
    window = model._check_window(subseq)
    theta = np.asarray(model.parameters, dtype=float)
    out = np.empty(model.n_free)
    slot = 0
    for i, free in enumerate(model.free_mask):
        if not free:
            continue
        step = FD_STEP_SCALE * max(1.0, abs(theta[i]))
        plus = theta.copy()
        plus[i] += step
        minus = theta.copy()
        minus[i] -= step
        out[slot] = (model.evaluate_at(plus, window) - model.evaluate_at(minus, window)) / (
            2.0 * step
        )
        slot += 1
    return out


def _validate_common(memory: int, free_mask: Sequence[bool], noise_variance: float,
                     n_params: int) -> tuple[bool, ...]:
    if memory < 1:
        raise ValueError("model memory must be at least 1")
    if noise_variance <= 0:
        raise ValueError("noise variance must be positive")
    mask = tuple(bool(f) for f in free_mask)
    if len(mask) != n_params:
        raise ValueError(
            f"free mask has {len(mask)} entries for {n_params} parameters"
        )
    if not any(mask):
        raise ValueError("at least one parameter must be free")
    return mask


@dataclass(frozen=True)
class WienerFirModel(FirModel):
    """FIR filter followed by a static polynomial.

    The intermediate signal is w(t) = sum_j b[j] * u(t - j) and the output
    is y(t) = sum_i c[i] * w(t)**powers[i].  Parameters are ordered
    (b..., c...) and the free mask selects which are estimated.
    """

    b: tuple[float, ...]
    c: tuple[float, ...]
    powers: tuple[int, ...] = (3, 1)
    free_mask: tuple[bool, ...] = ()
    noise_variance: float = 1.0

    def __post_init__(self) -> None:
        b = tuple(float(v) for v in self.b)
        c = tuple(float(v) for v in self.c)
        powers = tuple(int(p) for p in self.powers)
        if not b:
            raise ValueError("at least one FIR coefficient is required")
        if len(c) != len(powers):
            raise ValueError("polynomial coefficients and powers must align")
        if any(p < 1 for p in powers):
            raise ValueError("polynomial powers must be positive integers")
        if len(set(powers)) != len(powers):
            raise ValueError("polynomial powers must be distinct")
        mask = self.free_mask or (True,) * (len(b) + len(c))
        mask = _validate_common(len(b), mask, self.noise_variance, len(b) + len(c))
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "powers", powers)
        object.__setattr__(self, "free_mask", mask)
        object.__setattr__(self, "noise_variance", float(self.noise_variance))

    @property
    def memory(self) -> int:  # type: ignore[override]
        return len(self.b)

    @property
    def parameters(self) -> np.ndarray:
        return np.array(self.b + self.c, dtype=float)

    def _fir_output(self, theta: np.ndarray, window: np.ndarray) -> float:
        n = self.memory
        # b[j] multiplies u(t-j); the window stores u(t-j) at position n-1-j
        return float(np.dot(theta[:n], window[::-1]))

    def evaluate_at(self, theta: np.ndarray, subseq: Sequence[float]) -> float:
        window = np.asarray(subseq, dtype=float)
        w = self._fir_output(theta, window)
        c = theta[self.memory:]
        return float(sum(ci * w**p for ci, p in zip(c, self.powers)))

    def gradient(self, subseq: Sequence[float]) -> np.ndarray:
        window = self._check_window(subseq)
        theta = self.parameters
        n = self.memory
        w = self._fir_output(theta, window)
        c = theta[n:]
        dy_dw = sum(ci * p * w ** (p - 1) for ci, p in zip(c, self.powers))
        out = []
        for j in range(n):
            if self.free_mask[j]:
                out.append(dy_dw * window[n - 1 - j])
        for i, p in enumerate(self.powers):
            if self.free_mask[n + i]:
                out.append(w**p)
        return np.array(out, dtype=float)


class CallableFirModel(FirModel):
    """Generic model wrapping a callable; gradients fall back to differences."""

    def __init__(
        self,
        fn: Callable[[np.ndarray, np.ndarray], float],
        theta: Sequence[float],
        memory: int,
        free_mask: Sequence[bool] | None = None,
        noise_variance: float = 1.0,
    ) -> None:
        theta = np.asarray(theta, dtype=float)
        if free_mask is None:
            free_mask = (True,) * theta.size
        self.memory = int(memory)
        self.free_mask = _validate_common(
            self.memory, free_mask, noise_variance, theta.size
        )
        self.noise_variance = float(noise_variance)
        self._fn = fn
        self._theta = theta

    @property
    def parameters(self) -> np.ndarray:
        return self._theta.copy()

    def evaluate_at(self, theta: np.ndarray, subseq: Sequence[float]) -> float:
        return float(self._fn(np.asarray(theta, dtype=float), np.asarray(subseq, dtype=float)))
