"""Monte-Carlo multiple-testing experiments.

A :class:`ScenarioMixture` assigns each of m hypotheses to one row of a
mixture; a row carries the drifting coordinate pair (or a normal hyperprior
over it), its mixture proportion, and its ground-truth label.  Every
replication draws one estimate pair per hypothesis and then applies every
method (filtration rule + adjustment) to the *same* draws, so method
comparisons use common random numbers.

Randomness is allocated as one stream per (replication, hypothesis):
hypothesis i of replication r draws from stream index ``r*m + i`` under the
experiment's master seed.  Results are therefore bit-identical for any
thread count or execution order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from .asymptotics import PowerSequence
from .dist import RandomStream
from .estimators import _joint_pvalues
from .procedure import (
    Adjustment,
    BonferroniOverUnfiltered,
    ChiSquarePValue,
    FiltrationAware,
    FiltrationRule,
    MinPValue,
    NoFilter,
    ProductThreshold,
    filter_mask,
)

__all__ = [
    "Truth",
    "Assignment",
    "NormalMeanPrior",
    "MixtureRow",
    "ScenarioMixture",
    "Method",
    "standard_methods",
    "builtin_scenario",
    "BUILTIN_SCENARIOS",
    "MethodCounts",
    "run_replication",
    "MethodResult",
    "ReportMeta",
    "SimulationReport",
    "run_experiment",
    "RowConditional",
    "ConditionalRejectionStats",
    "conditional_rejection_stats",
]


class Truth(Enum):
    NULL00 = "null00"
    NULL10 = "null10"
    NULL01 = "null01"
    ALTERNATIVE = "alternative"

    @property
    def is_null(self) -> bool:
        return self is not Truth.ALTERNATIVE


class Assignment(Enum):
    DETERMINISTIC = "deterministic"
    MULTINOMIAL = "multinomial"


@dataclass(frozen=True)
class NormalMeanPrior:
    """A coordinate whose mean is itself drawn N(mean_at(n), variance_at(n)).

    The draw happens once per hypothesis per replication, before the estimate
    noise, so hierarchical rows re-randomize their means every replication.
    """

    mean: PowerSequence
    variance: PowerSequence


CoordinateModel = Union[PowerSequence, NormalMeanPrior]


@dataclass(frozen=True)
class MixtureRow:
    gamma: CoordinateModel
    beta: CoordinateModel
    proportion: float
    truth: Truth

    def __post_init__(self):
        if not (0.0 <= self.proportion <= 1.0):
            raise ValueError(f"proportion must lie in [0, 1], got {self.proportion}")


@dataclass(frozen=True)
class ScenarioMixture:
    """A mixture of parameter rows plus the experiment dimensions."""

    name: str
    rows: tuple[MixtureRow, ...]
    m: int = 200
    reps: int = 500
    n: int = 200
    sigma: float = 1.0
    alpha: float = 0.05
    assignment: Assignment = Assignment.DETERMINISTIC
    renormalized: bool = False
    raw_proportions: tuple[float, ...] | None = None

    def __post_init__(self):
        if not self.rows:
            raise ValueError("scenario needs at least one row")
        total = sum(r.proportion for r in self.rows)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"row proportions must sum to 1, got {total}")
        if self.m < 1 or self.reps < 1 or self.n < 1:
            raise ValueError("m, reps and n must be positive")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class Method:
    """A filtration rule paired with a multiplicity adjustment."""

    rule: FiltrationRule
    adjustment: Adjustment = BonferroniOverUnfiltered()
    id: str | None = None

    @property
    def method_id(self) -> str:
        if self.id is not None:
            return self.id
        suffix = "-aware" if isinstance(self.adjustment, FiltrationAware) else ""
        return self.rule.label + suffix


def standard_methods() -> tuple[Method, ...]:
    """The comparison menu: no filtering plus the five filtration rules.

    Thresholds: min-p at 0.0004, the chi-square survivor p-value at 0.001,
    and the product rule at (c, delta) = (1.2, 0.8), (2, 0.9) and (3, 1).
    All use the plain Bonferroni-over-survivors adjustment.
    """
    return (
        Method(NoFilter(), id="nofilter"),
        Method(MinPValue(0.0004), id="minp"),
        Method(ChiSquarePValue(0.001), id="chisq2"),
        Method(ProductThreshold(1.2, 0.8), id="prod-0.8"),
        Method(ProductThreshold(2.0, 0.9), id="prod-0.9"),
        Method(ProductThreshold(3.0, 1.0), id="prod-1.0"),
    )


def _const(x: float) -> PowerSequence:
    return PowerSequence(offset=x)


def _seq(offset: float, coef: float, exp: float) -> PowerSequence:
    return PowerSequence(offset, ((coef, exp),))


# The eight mixture rows shared by the built-in configurations.
_ROW_POOL: tuple[tuple[PowerSequence, PowerSequence, Truth], ...] = (
    (_const(0.0), _const(0.0), Truth.NULL00),
    (_seq(0.0, 3.0, 0.75), _const(0.0), Truth.NULL10),
    (_seq(0.0, 3.0, 0.5), _const(0.0), Truth.NULL10),
    (_seq(0.0, 3.0, 1.0 / 3.0), _const(0.0), Truth.NULL10),
    (_seq(1.0, 3.0, 0.5), _const(0.0), Truth.NULL10),
    (_seq(0.0, 3.0, 0.5), _seq(0.0, 3.0, 0.5), Truth.ALTERNATIVE),
    (_seq(0.0, 3.0, 1.0 / 3.0), _seq(0.0, 3.0, 0.5), Truth.ALTERNATIVE),
    (_seq(1.0, 3.0, 0.5), _seq(0.0, 3.0, 0.5), Truth.ALTERNATIVE),
)

# (row index into _ROW_POOL, raw proportion); config3's column sums to 0.85
# and is renormalized, with the raw column kept in the scenario record.
_CONFIG_COLUMNS: dict[str, tuple[tuple[int, float], ...]] = {
    "config1": ((0, 0.65), (2, 0.30), (5, 0.05)),
    "config2": (
        (0, 0.25),
        (1, 0.15),
        (2, 0.25),
        (3, 0.10),
        (4, 0.15),
        (5, 0.04),
        (6, 0.03),
        (7, 0.03),
    ),
    "config3": ((0, 0.25), (2, 0.35), (4, 0.15), (7, 0.10)),
}

BUILTIN_SCENARIOS = ("config1", "config2", "config3", "hierarchical")


def builtin_scenario(
    name: str,
    *,
    m: int = 200,
    reps: int = 500,
    n: int = 200,
    sigma: float = 1.0,
    alpha: float = 0.05,
    pi: tuple[float, float, float] = (0.65, 0.30, 0.05),
) -> ScenarioMixture:
    """One of the built-in scenario mixtures.

    ``config1``/``config2``/``config3`` draw deterministic row counts from
    the shared eight-row pool; ``hierarchical`` re-draws its nonzero means
    from normal hyperpriors every replication and assigns rows
    multinomially, with ``pi`` giving the (double-null, single-null,
    alternative) weights.
    """
    if name in _CONFIG_COLUMNS:
        column = _CONFIG_COLUMNS[name]
        raw = tuple(p for _, p in column)
        total = sum(raw)
        renormalized = abs(total - 1.0) > 1e-9
        rows = tuple(
            MixtureRow(*_ROW_POOL[idx][:2], proportion=p / total, truth=_ROW_POOL[idx][2])
            for idx, p in column
        )
        return ScenarioMixture(
            name=name,
            rows=rows,
            m=m,
            reps=reps,
            n=n,
            sigma=sigma,
            alpha=alpha,
            renormalized=renormalized,
            raw_proportions=raw if renormalized else None,
        )
    if name == "hierarchical":
        if len(pi) != 3 or any(p < 0 for p in pi) or abs(sum(pi) - 1.0) > 1e-9:
            raise ValueError(f"pi must be three non-negative weights summing to 1, got {pi}")
        gamma_prior = NormalMeanPrior(mean=_seq(1.0, 1.0, 0.5), variance=_seq(0.0, 1.0, 0.5))
        beta_prior = NormalMeanPrior(mean=_seq(0.0, 1.0, 0.5), variance=_seq(0.0, 1.0, 0.5))
        rows = tuple(
            row
            for row in (
                MixtureRow(_const(0.0), _const(0.0), pi[0], Truth.NULL00),
                MixtureRow(gamma_prior, _const(0.0), pi[1], Truth.NULL10),
                MixtureRow(gamma_prior, beta_prior, pi[2], Truth.ALTERNATIVE),
            )
            if row.proportion > 0.0
        )
        return ScenarioMixture(
            name=name,
            rows=rows,
            m=m,
            reps=reps,
            n=n,
            sigma=sigma,
            alpha=alpha,
            assignment=Assignment.MULTINOMIAL,
        )
    raise ValueError(f"unknown scenario {name!r}; expected one of {BUILTIN_SCENARIOS}")


def _deterministic_counts(proportions: Sequence[float], m: int) -> np.ndarray:
    """Fixed per-row hypothesis counts: floor(p*m) plus largest remainders."""
    raw = np.asarray(proportions, dtype=float) * m
    counts = np.floor(raw).astype(int)
    for idx in np.argsort(-(raw - counts), kind="stable")[: m - counts.sum()]:
        counts[idx] += 1
    return counts


def _draw_hypotheses(scenario: ScenarioMixture, rep_index: int, stream: RandomStream):
    """Per-hypothesis draws for one replication.

    Hypothesis i uses the sub-stream at offset ``rep_index*m + i``.  Draw
    order within a hypothesis is fixed: row selection (multinomial only),
    gamma mean, beta mean (hyperprior rows only), then the two estimates.
    """
    m, n, sigma = scenario.m, scenario.n, scenario.sigma
    props = [row.proportion for row in scenario.rows]
    if scenario.assignment is Assignment.DETERMINISTIC:
        row_idx = np.repeat(np.arange(len(scenario.rows)), _deterministic_counts(props, m))
    else:
        row_idx = np.empty(m, dtype=int)
    cum = np.cumsum(props)

    means = []
    for row in scenario.rows:
        pair = []
        for coord in (row.gamma, row.beta):
            if isinstance(coord, NormalMeanPrior):
                pair.append((coord.mean.at(n), math.sqrt(max(coord.variance.at(n), 0.0))))
            else:
                pair.append((coord.at(n), 0.0))
        means.append(pair)

    sd = sigma / math.sqrt(n)
    gamma_hat = np.empty(m)
    beta_hat = np.empty(m)
    base = rep_index * m
    for i in range(m):
        gen = stream.offset(base + i).generator
        if scenario.assignment is Assignment.MULTINOMIAL:
            row_idx[i] = int(np.searchsorted(cum, gen.random(), side="left"))
        (g_mean, g_sd), (b_mean, b_sd) = means[row_idx[i]]
        if g_sd > 0.0:
            g_mean = gen.normal(g_mean, g_sd)
        if b_sd > 0.0:
            b_mean = gen.normal(b_mean, b_sd)
        gamma_hat[i] = gen.normal(g_mean, sd)
        beta_hat[i] = gen.normal(b_mean, sd)

    truth_null = np.array([scenario.rows[k].truth.is_null for k in row_idx])
    return gamma_hat, beta_hat, row_idx, truth_null


@dataclass(frozen=True)
class MethodCounts:
    """One method's tallies for a single replication."""

    V: int
    S: int
    n_alt: int
    F: int


def _apply_method(method, gamma_hat, beta_hat, sigma, n, alpha, pjoint, truth_null):
    filtered = filter_mask(method.rule, gamma_hat, beta_hat, sigma, sigma, n)
    f_count = int((~filtered).sum())
    if f_count == 0:
        threshold = 0.0
    elif isinstance(method.adjustment, FiltrationAware):
        threshold = alpha * method.adjustment.p0 / f_count
    else:
        threshold = alpha / f_count
    rejected = (~filtered) & (pjoint <= threshold)
    return filtered, rejected, f_count


def run_replication(
    scenario: ScenarioMixture,
    methods: Sequence[Method],
    rep_index: int,
    stream: RandomStream,
) -> list[MethodCounts]:
    """Draw one replication and apply every method to the same draws."""
    if not methods:
        raise ValueError("methods must be nonempty")
    gamma_hat, beta_hat, _, truth_null = _draw_hypotheses(scenario, rep_index, stream)
    pjoint = _joint_pvalues(gamma_hat, beta_hat, scenario.sigma, scenario.sigma, scenario.n)
    n_alt = int((~truth_null).sum())
    out = []
    for method in methods:
        _, rejected, f_count = _apply_method(
            method, gamma_hat, beta_hat, scenario.sigma, scenario.n, scenario.alpha, pjoint, truth_null
        )
        out.append(
            MethodCounts(
                V=int((rejected & truth_null).sum()),
                S=int((rejected & ~truth_null).sum()),
                n_alt=n_alt,
                F=f_count,
            )
        )
    return out


@dataclass(frozen=True)
class MethodResult:
    method_id: str
    empirical_fwer: float
    fwer_se: float
    power: float
    power_se: float
    mean_F: float


@dataclass(frozen=True)
class ReportMeta:
    seed: int
    scenario: str
    m: int
    reps: int
    n: int
    sigma: float
    alpha: float
    assignment: str
    renormalized: bool


@dataclass(frozen=True)
class SimulationReport:
    meta: ReportMeta
    methods: tuple[MethodResult, ...]


def run_experiment(
    scenario: ScenarioMixture,
    methods: Sequence[Method],
    master_seed: int,
    threads: int = 1,
) -> SimulationReport:
    """Aggregate FWER and power over the scenario's replications.

    The empirical FWER is the fraction of replications with any false
    rejection; power averages (true rejections / alternatives) over the
    replications that drew at least one alternative.  The report is a pure
    function of ``master_seed``: thread count only changes scheduling.
    """
    if not methods:
        raise ValueError("methods must be nonempty")
    ids = [mth.method_id for mth in methods]
    if len(set(ids)) != len(ids):
        raise ValueError(f"method ids must be unique, got {ids}")
    root = RandomStream(master_seed, 0)
    reps = scenario.reps

    def one_rep(r: int) -> list[MethodCounts]:
        return run_replication(scenario, methods, r, root)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_rep = list(pool.map(one_rep, range(reps)))
    else:
        per_rep = [one_rep(r) for r in range(reps)]

    results = []
    for j, method in enumerate(methods):
        v = np.array([per_rep[r][j].V for r in range(reps)])
        s = np.array([per_rep[r][j].S for r in range(reps)])
        n_alt = np.array([per_rep[r][j].n_alt for r in range(reps)])
        f = np.array([per_rep[r][j].F for r in range(reps)])
        fwer = float((v >= 1).mean())
        fwer_se = math.sqrt(fwer * (1.0 - fwer) / reps)
        has_alt = n_alt > 0
        if has_alt.any():
            ratios = s[has_alt] / n_alt[has_alt]
            power = float(ratios.mean())
            power_se = float(ratios.std(ddof=1) / math.sqrt(ratios.size)) if ratios.size > 1 else 0.0
        else:
            power = math.nan
            power_se = math.nan
        results.append(
            MethodResult(method.method_id, fwer, fwer_se, power, power_se, float(f.mean()))
        )

    meta = ReportMeta(
        seed=master_seed,
        scenario=scenario.name,
        m=scenario.m,
        reps=reps,
        n=scenario.n,
        sigma=scenario.sigma,
        alpha=scenario.alpha,
        assignment=scenario.assignment.value,
        renormalized=scenario.renormalized,
    )
    return SimulationReport(meta, tuple(results))


@dataclass(frozen=True)
class RowConditional:
    """Survival/rejection tallies for one mixture row across all replications."""

    row_index: int
    truth: Truth
    unfiltered: int
    rejected: int

    @property
    def conditional_rejection(self) -> float:
        return self.rejected / self.unfiltered if self.unfiltered else 0.0


@dataclass(frozen=True)
class ConditionalRejectionStats:
    """Inputs for the survivor-count FWER bound, estimated by simulation.

    ``q_max`` is the largest observed per-row probability of rejection given
    survival among null rows; ``F_samples`` collects the survivor count of
    every replication.  ``fwer``/``fwer_se`` give the matching empirical
    FWER for self-consistency checks against the bound.
    """

    F_samples: tuple[int, ...]
    q_max: float
    per_row: tuple[RowConditional, ...]
    fwer: float
    fwer_se: float


def conditional_rejection_stats(
    scenario: ScenarioMixture,
    method: Method,
    master_seed: int,
) -> ConditionalRejectionStats:
    """Estimate the survivor-count bound's ingredients for one method."""
    n_rows = len(scenario.rows)
    unfiltered = np.zeros(n_rows, dtype=int)
    rejected = np.zeros(n_rows, dtype=int)
    f_samples = []
    any_false = 0
    root = RandomStream(master_seed, 0)
    for r in range(scenario.reps):
        gamma_hat, beta_hat, row_idx, truth_null = _draw_hypotheses(scenario, r, root)
        pjoint = _joint_pvalues(gamma_hat, beta_hat, scenario.sigma, scenario.sigma, scenario.n)
        filt, rej, f_count = _apply_method(
            method, gamma_hat, beta_hat, scenario.sigma, scenario.n, scenario.alpha, pjoint, truth_null
        )
        f_samples.append(f_count)
        any_false += int((rej & truth_null).any())
        np.add.at(unfiltered, row_idx, ~filt)
        np.add.at(rejected, row_idx, rej)

    per_row = tuple(
        RowConditional(k, scenario.rows[k].truth, int(unfiltered[k]), int(rejected[k]))
        for k in range(n_rows)
    )
    null_rates = [rc.conditional_rejection for rc in per_row if rc.truth.is_null and rc.unfiltered]
    fwer = any_false / scenario.reps
    return ConditionalRejectionStats(
        F_samples=tuple(f_samples),
        q_max=max(null_rates) if null_rates else 0.0,
        per_row=per_row,
        fwer=fwer,
        fwer_se=math.sqrt(fwer * (1.0 - fwer) / scenario.reps),
    )
