"""Two-stage testing procedure: filtration rules, multiplicity adjustments,
and finite-sample FWER bounds.

Stage 1 applies a strict preliminary test to every hypothesis and sets aside
("filters") those that look like the double-null point (0, 0).  Stage 2 runs
the joint-significance base test on the F survivors at a threshold adjusted
for F, so heavy filtration buys a larger per-hypothesis threshold.

A hypothesis is *filtered* when its filtration event holds; filtered
hypotheses are retained as null and can never be rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dist import RandomStream, chisq2_cdf
from .estimators import EstimatePair, _joint_pvalues, coord_pvalue

__all__ = [
    "NoFilter",
    "MinPValue",
    "ChiSquarePValue",
    "ProductThreshold",
    "FiltrationRule",
    "BonferroniOverUnfiltered",
    "FiltrationAware",
    "Adjustment",
    "HypothesisOutcome",
    "TwoStageOutcome",
    "evaluate_filter",
    "run_two_stage",
    "filtration_prob_at_theta0",
    "fwer_bound_from_survivors",
]


@dataclass(frozen=True)
class NoFilter:
    """Stage 1 disabled: every hypothesis proceeds to the base test."""

    label = "nofilter"


@dataclass(frozen=True)
class MinPValue:
    """Filter when min(p_gamma, p_beta) >= threshold.

    A hypothesis survives only if at least one coordinate is individually
    significant at the (very strict) threshold.
    """

    threshold: float

    def __post_init__(self):
        if not (0.0 < self.threshold < 1.0):
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")

    @property
    def label(self) -> str:
        return f"minp-{self.threshold:g}"


@dataclass(frozen=True)
class ChiSquarePValue:
    """Filter when the chi-square(2df) p-value of W is >= threshold.

    W standardizes both coordinates, ``W = n * (g^2/sg^2 + b^2/sb^2)``, so it
    is exactly chi-square with 2 df at the double-null point and the rule is
    a bona fide level test of that point.
    """

    threshold: float

    def __post_init__(self):
        if not (0.0 < self.threshold < 1.0):
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")

    @property
    def label(self) -> str:
        return f"chisq2-{self.threshold:g}"


@dataclass(frozen=True)
class ProductThreshold:
    """Filter when |gamma_hat * beta_hat| < c * n**-delta.

    The absolute value makes the rule two-sided; a one-sided reading would
    filter every negative product regardless of magnitude.
    """

    c: float
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0.0):
            raise ValueError(f"c must be positive, got {self.c}")
        if not (math.isfinite(self.delta) and self.delta > 0.0):
            raise ValueError(f"delta must be positive, got {self.delta}")

    @property
    def label(self) -> str:
        return f"prod-{self.delta:g}"


FiltrationRule = Union[NoFilter, MinPValue, ChiSquarePValue, ProductThreshold]


@dataclass(frozen=True)
class BonferroniOverUnfiltered:
    """Reject survivors at threshold alpha / F (plain Bonferroni over survivors)."""

    label = "bonferroni"


@dataclass(frozen=True)
class FiltrationAware:
    """Reject survivors at threshold alpha * p0 / F.

    ``p0`` is the survival probability of the filtration rule at the
    double-null point, the minimizer of survival probability over the null.
    Scaling by p0 restores the finite-sample FWER guarantee at level alpha.
    """

    p0: float

    def __post_init__(self):
        if not (0.0 < self.p0 <= 1.0):
            raise ValueError(f"p0 must lie in (0, 1], got {self.p0}")

    label = "filtration-aware"


Adjustment = Union[BonferroniOverUnfiltered, FiltrationAware]


def filter_mask(rule: FiltrationRule, gamma_hat, beta_hat, sigma_gamma, sigma_beta, n):
    """Vectorized filtration: boolean array, True where the hypothesis is filtered."""
    gamma_hat = np.asarray(gamma_hat, dtype=float)
    beta_hat = np.asarray(beta_hat, dtype=float)
    if isinstance(rule, NoFilter):
        return np.zeros(gamma_hat.shape, dtype=bool)
    if isinstance(rule, MinPValue):
        p1 = coord_pvalue(gamma_hat, sigma_gamma, n)
        p2 = coord_pvalue(beta_hat, sigma_beta, n)
        return np.minimum(p1, p2) >= rule.threshold
    if isinstance(rule, ChiSquarePValue):
        w = n * (np.square(gamma_hat) / sigma_gamma**2 + np.square(beta_hat) / sigma_beta**2)
        return (1.0 - np.asarray(chisq2_cdf(w))) >= rule.threshold
    if isinstance(rule, ProductThreshold):
        return np.abs(gamma_hat * beta_hat) < rule.c * np.asarray(n, dtype=float) ** (-rule.delta)
    raise TypeError(f"unknown filtration rule: {rule!r}")


def evaluate_filter(rule: FiltrationRule, e: EstimatePair) -> bool:
    """True when the hypothesis is filtered (set aside as null) by the rule."""
    return bool(filter_mask(rule, e.gamma_hat, e.beta_hat, e.sigma_gamma, e.sigma_beta, e.n))


@dataclass(frozen=True)
class HypothesisOutcome:
    filtered: bool
    base_pvalue: float
    adjusted_threshold: float
    rejected: bool


@dataclass(frozen=True)
class TwoStageOutcome:
    """Result of one two-stage run over a list of hypotheses."""

    per_hypothesis: tuple[HypothesisOutcome, ...]
    F: int
    rejected_count: int


def run_two_stage(
    estimates: Sequence[EstimatePair],
    rule: FiltrationRule,
    alpha: float = 0.05,
    adjustment: Adjustment = BonferroniOverUnfiltered(),
) -> TwoStageOutcome:
    """Run filtration followed by the adjusted joint-significance base test.

    Survivor i is rejected iff its joint p-value is <= the common adjusted
    threshold (``alpha/F`` or ``alpha*p0/F``).  When everything is filtered
    (F = 0) the rejection set is empty and the threshold is reported as 0.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if len(estimates) == 0:
        raise ValueError("estimates must be nonempty")

    gamma = np.array([e.gamma_hat for e in estimates])
    beta = np.array([e.beta_hat for e in estimates])
    sig_g = np.array([e.sigma_gamma for e in estimates])
    sig_b = np.array([e.sigma_beta for e in estimates])
    ns = np.array([e.n for e in estimates])

    filtered = filter_mask(rule, gamma, beta, sig_g, sig_b, ns)
    pjoint = _joint_pvalues(gamma, beta, sig_g, sig_b, ns)
    f_count = int((~filtered).sum())

    if f_count == 0:
        threshold = 0.0
    elif isinstance(adjustment, FiltrationAware):
        threshold = alpha * adjustment.p0 / f_count
    else:
        threshold = alpha / f_count
    rejected = (~filtered) & (pjoint <= threshold)

    per_hyp = tuple(
        HypothesisOutcome(bool(f), float(p), threshold, bool(r))
        for f, p, r in zip(filtered, pjoint, rejected)
    )
    return TwoStageOutcome(per_hyp, f_count, int(rejected.sum()))


def filtration_prob_at_theta0(
    rule: FiltrationRule,
    sigma_gamma: float,
    sigma_beta: float,
    n: int,
    reps: int,
    stream: RandomStream,
) -> tuple[float, float]:
    """Monte-Carlo estimate of the survival probability p0 at the double null.

    Simulates ``reps`` estimate pairs at gamma = beta = 0 and returns the
    fraction not filtered together with its binomial standard error.  This is
    the p0 consumed by :class:`FiltrationAware`.
    """
    if reps < 1:
        raise ValueError(f"reps must be at least 1, got {reps}")
    gen = stream.generator
    gamma_hat = gen.normal(0.0, sigma_gamma / math.sqrt(n), reps)
    beta_hat = gen.normal(0.0, sigma_beta / math.sqrt(n), reps)
    unfiltered = ~filter_mask(rule, gamma_hat, beta_hat, sigma_gamma, sigma_beta, n)
    p0 = float(unfiltered.mean())
    mc_se = math.sqrt(p0 * (1.0 - p0) / reps)
    return p0, mc_se


def fwer_bound_from_survivors(max_conditional_reject: float, F_samples: Sequence[int]) -> float:
    """Finite-sample FWER bound from survivor counts.

    Evaluates ``mean((1 - (1 - q)^F) * 1{F > 0})`` over the supplied samples
    of F, where q bounds the per-hypothesis probability of rejection given
    survival, maximized over null parameter points.
    """
    q = float(max_conditional_reject)
    if not (0.0 <= q <= 1.0):
        raise ValueError(f"max_conditional_reject must lie in [0, 1], got {q}")
    f_arr = np.asarray(F_samples, dtype=float)
    if f_arr.size == 0:
        raise ValueError("F_samples must be nonempty")
    if np.any(f_arr < 0):
        raise ValueError("F_samples must be non-negative")
    terms = (1.0 - (1.0 - q) ** f_arr) * (f_arr > 0)
    return float(terms.mean())
