"""Regression analytics and the superset-size extrapolation sweep.

The treatment table fits six related least-squares specifications of the
fecundity outcome on an AI-selection dummy: the base contrast, inclusion
of overlap documents, reading-order controls (index and its square), a
round dummy with earlier-round documents, both together, and a
length-weighted variant. Standard errors are classical homoskedastic
ones; a robust flag exists but is off by default.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy import stats as spstats

from .corpus import Document
from .errors import MissingVariableError, RankDeficiencyError, SampleSizeError
from .selection import SQRT, SelectionBudget, ValueFunction, select_greedy

STAR_THRESHOLDS = (0.1, 0.05, 0.01)


@dataclass(frozen=True)
class RegressionSpec:
    outcome: str
    regressors: tuple[str, ...]
    weights: str | None = None

    def __post_init__(self):
        if self.outcome in self.regressors:
            raise ValueError("outcome cannot appear among the regressors")


@dataclass(frozen=True)
class RegressionFit:
    param_names: tuple[str, ...]
    coefficients: dict[str, float]
    standard_errors: dict[str, float]
    t_stats: dict[str, float]
    p_values: dict[str, float]
    r2: float
    adj_r2: float
    residual_std_error: float
    df_resid: int
    f_statistic: float
    f_df: tuple[int, int]
    n_obs: int
    residuals: tuple[float, ...]
    weighted: bool = False

    def stars(self, name: str) -> str:
        p = self.p_values[name]
        if p < 0.01:
            return "***"
        if p < 0.05:
            return "**"
        if p < 0.1:
            return "*"
        return ""

    def ci95(self, name: str) -> tuple[float, float]:
        half = 1.96 * self.standard_errors[name]
        return self.coefficients[name] - half, self.coefficients[name] + half


def _collinear_columns(X: np.ndarray, names: Sequence[str]) -> list[str]:
    rank = np.linalg.matrix_rank(X)
    involved = []
    for j in range(X.shape[1]):
        reduced = np.delete(X, j, axis=1)
        if np.linalg.matrix_rank(reduced) == rank:
            involved.append(names[j])
    return involved or list(names)


def ols(
    data: Mapping[str, Sequence[float]], spec: RegressionSpec, robust: bool = False
) -> RegressionFit:
    """Classical (weighted) least squares with an implicit intercept.

    Weighted fits scale rows by sqrt(weight); with unit weights the code
    path is numerically identical to the unweighted fit. R-squared uses the
    (weighted) centered total sum of squares and is defined as 0 for a
    constant outcome. ``robust`` switches to HC1 sandwich standard errors;
    the default is the conventional homoskedastic estimator.
    """
    for name in (spec.outcome, *spec.regressors):
        if name not in data:
            raise MissingVariableError(name)
    y = np.asarray(data[spec.outcome], dtype=float)
    n = y.shape[0]
    X = np.column_stack(
        [np.ones(n)] + [np.asarray(data[r], dtype=float) for r in spec.regressors]
    )
    names = ("const", *spec.regressors)
    p = X.shape[1]
    if n <= p:
        raise ValueError(f"need more observations ({n}) than parameters ({p})")

    w = None
    if spec.weights is not None:
        if spec.weights not in data:
            raise MissingVariableError(spec.weights)
        w = np.asarray(data[spec.weights], dtype=float)
        if np.any(w <= 0):
            raise ValueError("weights must be strictly positive")
        # mean-1 normalization keeps the residual SE on the outcome scale;
        # estimates, SEs, R2 and F are invariant to weight scaling
        w = w * (n / w.sum())

    if w is not None:
        sw = np.sqrt(w)
        Xw = X * sw[:, None]
        yw = y * sw
    else:
        Xw, yw = X, y

    if np.linalg.matrix_rank(Xw) < p:
        raise RankDeficiencyError(_collinear_columns(Xw, names))

    beta, _, _, _ = np.linalg.lstsq(Xw, yw, rcond=None)
    fitted = X @ beta
    resid = y - fitted
    wr = resid * w if w is not None else resid
    rss = float(resid @ wr)
    df_resid = n - p
    sigma2 = rss / df_resid
    xtx_inv = np.linalg.inv(Xw.T @ Xw)
    if robust:
        ew = resid * np.sqrt(w) if w is not None else resid
        meat = (Xw * ew[:, None] ** 2).T @ Xw
        sandwich = xtx_inv @ meat @ xtx_inv * (n / df_resid)
        se = np.sqrt(np.clip(np.diag(sandwich), 0.0, None))
    else:
        se = np.sqrt(np.clip(sigma2 * np.diag(xtx_inv), 0.0, None))

    wmean = float(np.average(y, weights=w)) if w is not None else float(y.mean())
    centered = y - wmean
    tss = float(centered @ (centered * w if w is not None else centered))
    r2 = 0.0 if tss == 0.0 else 1.0 - rss / tss
    k = p - 1
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / df_resid if df_resid > 0 else math.nan

    with np.errstate(divide="ignore", invalid="ignore"):
        tvals = np.where(se > 0, beta / se, np.where(beta == 0, 0.0, np.inf))
    pvals = [_p_two_sided(t, df_resid) for t in tvals]
    if k >= 1:
        f_stat = math.inf if r2 >= 1.0 else (r2 / k) / ((1.0 - r2) / df_resid)
    else:
        f_stat = math.nan

    return RegressionFit(
        param_names=names,
        coefficients=dict(zip(names, map(float, beta))),
        standard_errors=dict(zip(names, map(float, se))),
        t_stats=dict(zip(names, map(float, tvals))),
        p_values=dict(zip(names, pvals)),
        r2=r2,
        adj_r2=adj_r2,
        residual_std_error=math.sqrt(sigma2),
        df_resid=df_resid,
        f_statistic=f_stat,
        f_df=(k, df_resid),
        n_obs=n,
        residuals=tuple(map(float, resid)),
        weighted=w is not None,
    )


def _p_two_sided(t: float, df: int) -> float:
    if not math.isfinite(t):
        return 0.0
    # t quantiles are indistinguishable from normal ones at large df
    if df > 200:
        return float(2.0 * spstats.norm.sf(abs(t)))
    return float(2.0 * spstats.t.sf(abs(t), df))


TREATMENT_SPECS: dict[int, dict] = {
    1: {"regressors": ("ai_selected",), "sample": "base", "weights": None},
    2: {"regressors": ("ai_selected",), "sample": "with_overlap", "weights": None},
    3: {"regressors": ("ai_selected", "index", "index_sq"), "sample": "base", "weights": None},
    4: {"regressors": ("ai_selected", "round"), "sample": "all", "weights": None},
    5: {
        "regressors": ("ai_selected", "round", "index", "index_sq"),
        "sample": "all",
        "weights": None,
    },
    6: {"regressors": ("ai_selected",), "sample": "base", "weights": "length"},
}


def _column(data: Mapping[str, Sequence], name: str, spec_no: int) -> np.ndarray:
    if name not in data:
        raise MissingVariableError(name, spec=spec_no)
    return np.asarray(data[name], dtype=float)


def _sample_mask(data: Mapping[str, Sequence], sample: str, spec_no: int) -> np.ndarray:
    overlap = _column(data, "overlap", spec_no).astype(bool)
    old_random = _column(data, "old_random", spec_no).astype(bool)
    if sample == "base":
        return ~overlap & ~old_random
    if sample == "with_overlap":
        return ~old_random
    return np.ones(overlap.shape[0], dtype=bool)


def treatment_table(
    data: Mapping[str, Sequence], specs: Sequence[int] = (1, 2, 3, 4, 5, 6)
) -> dict[int, RegressionFit]:
    """Fit the six treatment-effect specifications.

    ``data`` is a column mapping with, per document: fecundity,
    ai_selected (0/1), index (reading order), round (0/1 dummy), length,
    overlap (in both arms' selections) and old_random (carried over from
    the earlier round). Uncentered index and index-squared are used for
    the order controls.
    """
    fits: dict[int, RegressionFit] = {}
    for spec_no in specs:
        if spec_no not in TREATMENT_SPECS:
            raise ValueError(f"unknown specification {spec_no}")
        layout = TREATMENT_SPECS[spec_no]
        mask = _sample_mask(data, layout["sample"], spec_no)
        columns: dict[str, np.ndarray] = {
            "fecundity": _column(data, "fecundity", spec_no)[mask]
        }
        for reg in layout["regressors"]:
            base = "index" if reg == "index_sq" else reg
            col = _column(data, base, spec_no)[mask]
            columns[reg] = col**2 if reg == "index_sq" else col
        if layout["weights"]:
            columns[layout["weights"]] = _column(data, layout["weights"], spec_no)[mask]
        fits[spec_no] = ols(
            columns,
            RegressionSpec(
                outcome="fecundity",
                regressors=layout["regressors"],
                weights=layout["weights"],
            ),
        )
    return fits


@dataclass(frozen=True)
class LengthResidualResult:
    """Two-stage check that AI code density is not just proxying length."""

    stage1: RegressionFit
    fit: RegressionFit
    residual_dropped: bool

    @property
    def stage1_r2(self) -> float:
        return self.stage1.r2


def length_residual_check(data: Mapping[str, Sequence]) -> LengthResidualResult:
    """Regress length on AI density, then add the residuals to the order-
    and round-controlled treatment specification.

    If AI density determines length exactly the residual column is
    degenerate; it is then dropped with a warning so the second stage
    stays full rank.
    """
    stage1 = ols(
        {"length": _column(data, "length", 0), "ai_density": _column(data, "ai_density", 0)},
        RegressionSpec(outcome="length", regressors=("ai_density",)),
    )
    resid = np.asarray(stage1.residuals)
    index = _column(data, "index", 5)
    columns = {
        "fecundity": _column(data, "fecundity", 5),
        "ai_selected": _column(data, "ai_selected", 5),
        "round": _column(data, "round", 5),
        "index": index,
        "index_sq": index**2,
        "length_resid": resid,
    }
    regressors = ("ai_selected", "round", "index", "index_sq", "length_resid")
    dropped = False
    scale = max(1.0, float(np.abs(np.asarray(data["length"], dtype=float)).max()))
    if float(np.abs(resid).max()) <= 1e-9 * scale:
        warnings.warn(
            "length residuals are numerically zero; dropping the residual regressor"
        )
        del columns["length_resid"]
        regressors = regressors[:-1]
        dropped = True
    fit = ols(columns, RegressionSpec(outcome="fecundity", regressors=regressors))
    return LengthResidualResult(stage1=stage1, fit=fit, residual_dropped=dropped)


_PARAM_LABELS = {
    "const": "Constant",
    "ai_selected": "AI-selected",
    "round": "Round",
    "index": "Index",
    "index_sq": "Ind^2",
    "length_resid": "Length Residuals",
}


def _f_stars(fit: RegressionFit) -> str:
    k, df = fit.f_df
    if k < 1 or not math.isfinite(fit.f_statistic):
        return ""
    p = float(spstats.f.sf(fit.f_statistic, k, df))
    return "***" if p < 0.01 else "**" if p < 0.05 else "*" if p < 0.1 else ""


def format_treatment_table(fits: Mapping[int, RegressionFit | str]) -> str:
    """Aligned-text rendering of the six-specification table.

    Cells show coefficient with significance stars over the standard
    error in parentheses; a fit replaced by a string renders as a skipped
    column with that reason.
    """
    spec_nos = sorted(fits)
    params = ["const", "ai_selected", "round", "index", "index_sq", "length_resid"]
    used = [
        p
        for p in params
        if any(
            isinstance(f, RegressionFit) and p in f.param_names for f in fits.values()
        )
    ]
    header = ["", *[f"({n})" for n in spec_nos]]
    rows: list[list[str]] = [header]
    for param in used:
        top = [_PARAM_LABELS.get(param, param)]
        bottom = [""]
        for n in spec_nos:
            fit = fits[n]
            if isinstance(fit, RegressionFit) and param in fit.param_names:
                top.append(f"{fit.coefficients[param]:.3f}{fit.stars(param)}")
                bottom.append(f"({fit.standard_errors[param]:.3f})")
            else:
                top.append("")
                bottom.append("")
        rows.append(top)
        rows.append(bottom)

    def stat_row(label: str, fn) -> list[str]:
        out = [label]
        for n in spec_nos:
            fit = fits[n]
            out.append(fn(fit, n) if isinstance(fit, RegressionFit) else "skipped")
        return out

    rows.append(stat_row("Observations", lambda f, n: str(f.n_obs)))
    rows.append(stat_row("R2", lambda f, n: f"{f.r2:.3f}"))
    rows.append(stat_row("Adjusted R2", lambda f, n: f"{f.adj_r2:.3f}"))
    rows.append(
        stat_row(
            "Residual Std. Error",
            lambda f, n: f"{f.residual_std_error:.3f} (df={f.df_resid})",
        )
    )
    rows.append(
        stat_row(
            "F Statistic",
            lambda f, n: f"{f.f_statistic:.3f}{_f_stars(f)} (df={f.f_df[0]}; {f.f_df[1]})",
        )
    )
    layouts = {
        n: TREATMENT_SPECS[n] for n in spec_nos if n in TREATMENT_SPECS
    }
    flag_rows = (
        ("Overlap selected Articles", lambda l: l["sample"] != "base"),
        ("Old random articles", lambda l: l["sample"] == "all"),
        ("Article order controls", lambda l: "index" in l["regressors"]),
        ("Weighted by article length", lambda l: l["weights"] is not None),
    )
    for label, judge in flag_rows:
        row = [label]
        for n in spec_nos:
            row.append(str(judge(layouts[n])) if n in layouts else "")
        rows.append(row)

    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows]
    lines.append("")
    lines.append("Note: *p<0.1; **p<0.05; ***p<0.01")
    skipped = [n for n in spec_nos if isinstance(fits[n], str)]
    for n in skipped:
        lines.append(f"Specification ({n}) skipped: {fits[n]}")
    return "\n".join(lines) + "\n"


def treatment_table_rows(fits: Mapping[int, RegressionFit | str]) -> list[dict]:
    """Tidy per-parameter rows (for CSV export)."""
    rows = []
    for n in sorted(fits):
        fit = fits[n]
        if isinstance(fit, str):
            rows.append({"spec": n, "param": "", "skipped": fit})
            continue
        for param in fit.param_names:
            rows.append(
                {
                    "spec": n,
                    "param": param,
                    "coef": fit.coefficients[param],
                    "se": fit.standard_errors[param],
                    "t": fit.t_stats[param],
                    "p": fit.p_values[param],
                    "stars": fit.stars(param),
                    "n_obs": fit.n_obs,
                    "r2": fit.r2,
                    "adj_r2": fit.adj_r2,
                    "resid_se": fit.residual_std_error,
                    "df_resid": fit.df_resid,
                    "f_stat": fit.f_statistic,
                    "skipped": "",
                }
            )
    return rows


@dataclass(frozen=True)
class QuadraticMap:
    """y = a + b*x + c*x^2 fitted by least squares."""

    a: float
    b: float
    c: float

    def __call__(self, x: float) -> float:
        return self.a + self.b * x + self.c * x * x


IDENTITY_MAP = QuadraticMap(0.0, 1.0, 0.0)


def fit_quadratic(pairs: Sequence[tuple[float, float]]) -> QuadraticMap:
    if len(pairs) < 3:
        raise ValueError("need at least 3 points to fit a quadratic")
    x = np.asarray([p[0] for p in pairs], dtype=float)
    y = np.asarray([p[1] for p in pairs], dtype=float)
    X = np.column_stack([np.ones_like(x), x, x**2])
    if np.linalg.matrix_rank(X) < 3:
        raise RankDeficiencyError(["const", "x", "x^2"])
    beta, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    return QuadraticMap(*map(float, beta))


@dataclass(frozen=True)
class SweepPoint:
    size: int
    mean_ai_density: float
    predicted_human_density: float
    normalized_pct: float


def corpus_code_density(docs: Sequence[Document], coder_source: str) -> float:
    """Distinct codes per 1000 characters over a whole corpus.

    Equals the length-weighted aggregate of per-document fecundity when
    frequencies are taken over the same corpus.
    """
    if not docs:
        return 0.0
    distinct = len({inst.code_id for d in docs for inst in d.instances(coder_source)})
    total_chars = sum(d.text_length for d in docs)
    return distinct / total_chars * 1000.0


def _selected_density(
    docs: list[Document],
    coder_source: str,
    n_budget_docs: int,
    value_function: ValueFunction,
) -> float:
    if len(docs) <= n_budget_docs:
        return corpus_code_density(docs, coder_source)
    budget = SelectionBudget.from_mean_docs(docs, n_budget_docs)
    selection = select_greedy(docs, budget, value_function, coder_source)
    by_id = {d.id: d for d in docs}
    return corpus_code_density([by_id[i] for i in selection.selected_ids], coder_source)


def superset_sweep(
    full_set: Sequence[Document],
    coder_source: str,
    quadratic_map: QuadraticMap,
    seed: int,
    sizes: Sequence[int] | None = None,
    replicates: int = 10,
    n_budget_docs: int = 20,
    value_function: ValueFunction = SQRT,
) -> list[SweepPoint]:
    """Predicted benefit of selecting from supersets of varying sizes.

    For each size, ``replicates`` random subsets are drawn; the selection
    method runs on each under a budget of ``n_budget_docs`` mean subset
    lengths, and the mean selected-corpus code density is mapped through
    the fitted quadratic to a predicted human density. The baseline is a
    random corpus of ``n_budget_docs`` documents (selection from a
    superset of the same size, where everything is taken), normalized to
    100%; it is returned as the first point.
    """
    full = list(full_set)
    N = len(full)
    if sizes is None:
        sizes = sorted({s for s in (50, 100, 250, 500, 1000) if s <= N} | {N})
    else:
        bad = [s for s in sizes if s > N]
        if bad:
            raise SampleSizeError(f"subset size(s) {bad} exceed the full set ({N})")
        sizes = sorted(set(sizes))

    def mean_density(size: int) -> float:
        densities = []
        for rep in range(replicates):
            rng = np.random.default_rng([seed, size, rep])
            idx = rng.choice(N, size=size, replace=False)
            subset = [full[i] for i in idx]
            densities.append(
                _selected_density(subset, coder_source, n_budget_docs, value_function)
            )
        return sum(densities) / len(densities)

    baseline_density = mean_density(min(n_budget_docs, N))
    baseline_pred = quadratic_map(baseline_density)
    if baseline_pred <= 0:
        raise ValueError("quadratic map gives a nonpositive baseline prediction")
    points = [SweepPoint(n_budget_docs, baseline_density, baseline_pred, 100.0)]
    for size in sizes:
        d = mean_density(size)
        pred = quadratic_map(d)
        points.append(SweepPoint(size, d, pred, pred / baseline_pred * 100.0))
    return points
