"""Statistical primitives: normal CDF, sample moments, one-proportion
z-tests, and a chi-squared goodness-of-fit test against a zero-mean
Gaussian."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import chi2 as _chi2

_SQRT2 = math.sqrt(2.0)


class InsufficientDataError(ValueError):
    pass


class EmptySampleError(ValueError):
    pass


class DegenerateBinningError(ValueError):
    pass


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function.

    Accurate to well under 1e-7 absolute; monotone, with
    cdf(0) = 0.5 and cdf(-x) = 1 - cdf(x).
    """
    return 0.5 * math.erfc(-x / _SQRT2)


@dataclass(frozen=True)
class Moments:
    mean: float
    std_dev: float
    n: int


def moments(values: Sequence[float]) -> Moments:
    """Sample mean and sample (n-1) standard deviation."""
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        raise InsufficientDataError(f"need at least 2 values, got {arr.size}")
    return Moments(float(arr.mean()), float(arr.std(ddof=1)), int(arr.size))


@dataclass(frozen=True)
class ZTestResult:
    p_hat: float
    n: int
    p0: float
    z: float


def proportion_z(wins: int, losses: int, p0: float) -> ZTestResult:
    """One-proportion z statistic with null-variance denominator.

    z = (p_hat - p0) / sqrt(p0 (1 - p0) / n), with n = wins + losses
    (pushes are excluded upstream).
    """
    n = wins + losses
    if n < 1:
        raise EmptySampleError("wins + losses must be at least 1")
    if not 0 < p0 < 1:
        raise ValueError(f"p0 must be in (0, 1), got {p0}")
    p_hat = wins / n
    z = (p_hat - p0) / math.sqrt(p0 * (1 - p0) / n)
    return ZTestResult(p_hat, n, p0, z)


@dataclass(frozen=True)
class GofResult:
    statistic: float
    degrees_of_freedom: int
    bins_used: int
    critical_value: float
    reject_at_05: bool
    observed: tuple[int, ...] = ()
    expected: tuple[float, ...] = ()


def chi_square_gof(
    values: Sequence[float],
    sigma: float,
    bin_width: float = 2.0,
    min_expected: float = 5.0,
) -> GofResult:
    """Chi-squared goodness of fit of ``values`` against Normal(0, sigma).

    Values are binned on a width ``bin_width`` grid centered at 0 with
    open-ended tails; sparse bins are folded outward into their tail
    until every expected count reaches ``min_expected``. Degrees of
    freedom are bins - 1: the mean and sigma are fixed a priori, not
    estimated from the binned sample.
    """
    arr = np.asarray(values, dtype=float)
    n = arr.size
    if n < 30:
        raise InsufficientDataError(f"need at least 30 values, got {n}")
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if bin_width <= 0:
        raise ValueError(f"bin_width must be positive, got {bin_width}")

    # interior edges at +/-(w/2 + k*w), wide enough to cover both the data
    # and essentially all model mass
    half = bin_width / 2.0
    reach = max(float(np.abs(arr).max()), 6.0 * sigma) + bin_width
    k_max = int(math.ceil((reach - half) / bin_width))
    edges = np.array(
        [-half - k * bin_width for k in range(k_max, 0, -1)]
        + [-half]
        + [half + k * bin_width for k in range(k_max + 1)]
    )

    # bin i is [edges[i-1], edges[i]); bins 0 and len(edges) are the tails
    observed = np.bincount(np.searchsorted(edges, arr, side="right"), minlength=len(edges) + 1)
    cdf = np.array([std_normal_cdf(e / sigma) for e in edges])
    expected = n * np.diff(np.concatenate(([0.0], cdf, [1.0])))

    obs = list(map(int, observed))
    exp = list(map(float, expected))
    while len(exp) > 1 and min(exp) < min_expected:
        i = exp.index(min(exp))
        # fold toward the nearer tail so sparse mass accumulates in the
        # open-ended bins; an outermost bin folds inward instead
        if i == 0:
            j = 1
        elif i == len(exp) - 1:
            j = i - 1
        else:
            j = i - 1 if i < len(exp) / 2 else i + 1
        exp[j] += exp[i]
        obs[j] += obs[i]
        del exp[i], obs[i]

    if len(exp) < 3:
        raise DegenerateBinningError(f"only {len(exp)} bins left after merging")

    statistic = float(sum((o - e) ** 2 / e for o, e in zip(obs, exp)))
    dof = len(exp) - 1
    critical = float(_chi2.ppf(0.95, dof))
    return GofResult(statistic, dof, len(exp), critical, statistic > critical, tuple(obs), tuple(exp))
