"""Turn raw tabular observations into an estimate pair.

The mediation model is two linear regressions: the mediator on covariates
and exposure, and the outcome on covariates, exposure and mediator.  The
coefficient of the exposure in the first fit and of the mediator in the
second are the coordinate estimates; their classical OLS standard errors set
the scales.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .estimators import EstimatePair
from .exceptions import DataFormatError, SingularDesignError

__all__ = ["ObservationTable", "read_observations", "ols_mediation_fit"]

_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class ObservationTable:
    """Observations with covariates x (n, d), exposure a, mediator m, outcome y."""

    x: np.ndarray
    a: np.ndarray
    m: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.atleast_2d(np.asarray(self.x, dtype=float))
        if x.size == 0:
            x = x.reshape(len(self.a), 0)
        object.__setattr__(self, "x", x)
        for name in ("a", "m", "y"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        rows = len(self.a)
        if not (len(self.m) == len(self.y) == self.x.shape[0] == rows):
            raise ValueError("columns must have equal length")
        if rows < self.x.shape[1] + 3:
            raise ValueError(
                f"need at least d + 3 = {self.x.shape[1] + 3} rows to identify the model, got {rows}"
            )

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def d(self) -> int:
        return self.x.shape[1]


def read_observations(path: str, delimiter: str | None = None) -> ObservationTable:
    """Read a delimited text file with a header naming a, m, y and optional x1..xd.

    The delimiter is sniffed from the header (comma, semicolon, tab, else
    whitespace) unless given.  Decimal separator is '.'; any non-numeric cell
    fails with its 1-based line number.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise DataFormatError("file is empty")

    header_line = lines[0]
    if delimiter is None:
        for cand in (",", ";", "\t"):
            if cand in header_line:
                delimiter = cand
                break

    def split(line: str) -> list[str]:
        parts = line.split(delimiter) if delimiter else line.split()
        return [p.strip() for p in parts]

    header = [h.lower() for h in split(header_line)]
    for required in ("a", "m", "y"):
        if required not in header:
            raise DataFormatError(f"missing required column {required!r}", line=1)
    x_names = sorted(
        (h for h in header if h.startswith("x") and h[1:].isdigit()),
        key=lambda h: int(h[1:]),
    )
    expected = set(x_names) | {"a", "m", "y"}
    unknown = [h for h in header if h not in expected]
    if unknown:
        raise DataFormatError(f"unexpected column(s) {unknown}", line=1)
    if x_names and [int(h[1:]) for h in x_names] != list(range(1, len(x_names) + 1)):
        raise DataFormatError(f"covariate columns must be x1..xd without gaps, got {x_names}", line=1)

    col = {name: header.index(name) for name in header}
    rows: list[list[float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = split(line)
        if len(parts) != len(header):
            raise DataFormatError(
                f"expected {len(header)} fields, found {len(parts)}", line=lineno
            )
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            bad = next(p for p in parts if not _is_number(p))
            raise DataFormatError(f"non-numeric field {bad!r}", line=lineno) from None

    data = np.asarray(rows, dtype=float)
    if data.size == 0:
        raise DataFormatError("no data rows")
    x = data[:, [col[h] for h in x_names]] if x_names else np.empty((len(data), 0))
    try:
        return ObservationTable(x=x, a=data[:, col["a"]], m=data[:, col["m"]], y=data[:, col["y"]])
    except ValueError as exc:
        raise DataFormatError(str(exc)) from exc


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _ols(design: np.ndarray, response: np.ndarray):
    """Least squares through QR with rank detection.

    Returns coefficients and classical standard errors.  Exact fits
    (zero residual) report standard errors clamped to the smallest positive
    float, so downstream scale invariants (sigma > 0) still hold.
    """
    n, p = design.shape
    q, r = np.linalg.qr(design)
    diag = np.abs(np.diag(r))
    if diag.min() <= _RANK_RTOL * max(diag.max(), 1.0):
        raise SingularDesignError("design matrix is rank deficient")
    coef = solve_triangular(r, q.T @ response)
    resid = response - design @ coef
    rss = float(resid @ resid)
    df = n - p
    s2 = rss / df if df > 0 else 0.0
    r_inv = solve_triangular(r, np.eye(p))
    se = np.sqrt(np.maximum(s2 * np.sum(r_inv**2, axis=1), 0.0))
    se = np.maximum(se, np.finfo(float).tiny)
    return coef, se


def ols_mediation_fit(table: ObservationTable) -> EstimatePair:
    """Fit the two mediation regressions and package the coordinate estimates.

    Fits ``m ~ 1 + x + a`` and ``y ~ 1 + x + a + m``; gamma_hat is the
    exposure coefficient of the first fit and beta_hat the mediator
    coefficient of the second.  Scales are sqrt(n) times the fitted standard
    errors, so ``sigma / sqrt(n)`` reproduces them.
    """
    n = table.n
    ones = np.ones((n, 1))
    design_m = np.hstack([ones, table.x, table.a[:, None]])
    design_y = np.hstack([ones, table.x, table.a[:, None], table.m[:, None]])

    coef_m, se_m = _ols(design_m, table.m)
    coef_y, se_y = _ols(design_y, table.y)

    root_n = np.sqrt(n)
    return EstimatePair(
        gamma_hat=float(coef_m[-1]),
        beta_hat=float(coef_y[-1]),
        sigma_gamma=float(se_m[-1] * root_n),
        sigma_beta=float(se_y[-1] * root_n),
        n=n,
    )
