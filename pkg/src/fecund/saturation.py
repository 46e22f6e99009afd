"""Cumulative code/theme accumulation, stopping rules, and bootstrap bands.

Counting regimes
    unique            distinct codes seen so far
    hf_retrospective  codes that end up high-frequency over the whole order,
                      counted from their first appearance
    hf_iterative      codes counted only once their cumulative instance
                      count reaches the threshold
    themes            distinct themes reached via the code->theme map

Retrospective counting flattens artificially near the end of any ordering
(the first instance of a code that needs t total occurrences must appear
at least t-1 documents before the end when no document repeats a code),
so both high-frequency regimes are provided.
"""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import Codebook, Document


@dataclass(frozen=True)
class CountingRegime:
    kind: str  # unique | hf_retrospective | hf_iterative | themes
    hf_threshold: int = 3

    def __post_init__(self):
        if self.kind not in ("unique", "hf_retrospective", "hf_iterative", "themes"):
            raise ValueError(f"unknown counting regime {self.kind!r}")
        if self.hf_threshold < 2:
            raise ValueError("hf_threshold must be >= 2")


@dataclass(frozen=True)
class CurveStep:
    doc_index: int  # 1-based
    cumulative_chars: int
    cumulative_count: int


@dataclass(frozen=True)
class SaturationCurve:
    steps: tuple[CurveStep, ...]
    regime: CountingRegime
    document_order: tuple[str, ...]

    @property
    def counts(self) -> list[int]:
        return [s.cumulative_count for s in self.steps]


@dataclass(frozen=True)
class BandStep:
    doc_index: int
    mean_chars: float
    mean_count: float
    lo95: float
    hi95: float


@dataclass(frozen=True)
class BootstrapBand:
    """Bootstrap mean curve with a percentile band over random orderings.

    ``steps`` holds the retained, correction-adjusted band (the final 10%
    of cumulative documents are dropped); ``raw_steps`` keeps the
    unadjusted percentiles for every step, where the final step always has
    zero width because the complete corpus is order-invariant.
    """

    n_iterations: int
    truncation: float
    regime: CountingRegime
    steps: tuple[BandStep, ...]
    raw_steps: tuple[BandStep, ...]


@dataclass(frozen=True)
class StoppingRuleResult:
    rule: str
    satisfied_at: int | None
    codes_at_satisfaction: int | None
    all_satisfaction_points: tuple[int, ...]


def _hf_codes(docs: Sequence[Document], coder_source: str, threshold: int) -> set[str]:
    counts: Counter[str] = Counter()
    for doc in docs:
        for inst in doc.instances(coder_source):
            counts[inst.code_id] += 1
    return {code for code, c in counts.items() if c >= threshold}


def _cumulative_counts(
    order: Sequence[Document],
    regime: CountingRegime,
    coder_source: str,
    hf_set: set[str] | None = None,
    theme_map: dict[str, str] | None = None,
) -> list[int]:
    kind = regime.kind
    counts: list[int] = []
    if kind == "unique":
        seen: set[str] = set()
        for doc in order:
            seen.update(inst.code_id for inst in doc.instances(coder_source))
            counts.append(len(seen))
    elif kind == "hf_retrospective":
        assert hf_set is not None
        seen_hf: set[str] = set()
        for doc in order:
            for inst in doc.instances(coder_source):
                if inst.code_id in hf_set:
                    seen_hf.add(inst.code_id)
            counts.append(len(seen_hf))
    elif kind == "hf_iterative":
        cum: Counter[str] = Counter()
        reached: set[str] = set()
        for doc in order:
            for inst in doc.instances(coder_source):
                cum[inst.code_id] += 1
                if cum[inst.code_id] >= regime.hf_threshold:
                    reached.add(inst.code_id)
            counts.append(len(reached))
    else:  # themes
        assert theme_map is not None
        seen_themes: set[str] = set()
        for doc in order:
            for inst in doc.instances(coder_source):
                theme = theme_map.get(inst.code_id)
                if theme is not None:
                    seen_themes.add(theme)
            counts.append(len(seen_themes))
    return counts


def cumulative_curve(
    order: Sequence[Document],
    regime: CountingRegime,
    coder_source: str,
    codebook: Codebook | None = None,
) -> SaturationCurve:
    """Cumulative accumulation counts along one document order.

    hf_retrospective judges high frequency against the codebook of the
    full order (so the curve can only be read after coding everything);
    hf_iterative credits a code at the document where its cumulative count
    first reaches the threshold.
    """
    order = list(order)
    theme_map = None
    if regime.kind == "themes":
        if codebook is None or not codebook.theme_map:
            raise ValueError("themes regime requires a codebook with a theme map")
        theme_map = codebook.theme_map
    hf_set = None
    if regime.kind == "hf_retrospective":
        hf_set = _hf_codes(order, coder_source, regime.hf_threshold)
    counts = _cumulative_counts(order, regime, coder_source, hf_set, theme_map)
    steps = []
    chars = 0
    for k, (doc, count) in enumerate(zip(order, counts), start=1):
        chars += doc.text_length
        steps.append(CurveStep(doc_index=k, cumulative_chars=chars, cumulative_count=count))
    return SaturationCurve(
        steps=tuple(steps),
        regime=regime,
        document_order=tuple(d.id for d in order),
    )


def detect_stopping(curve: SaturationCurve, rule: str = "10+3") -> StoppingRuleResult:
    """Find where the order satisfies the minimum-13 / 3-flat-documents rule.

    A document index k >= 13 satisfies the rule when documents k-2, k-1
    and k added no new counts, i.e. count(k) == count(k-3). All such k are
    reported; the earliest is the conventional stopping point.
    """
    if rule != "10+3":
        raise ValueError(f"unknown stopping rule {rule!r}")
    if not curve.steps:
        raise ValueError("curve has no steps")
    counts = curve.counts
    points = [
        k
        for k in range(13, len(counts) + 1)
        if counts[k - 1] == counts[k - 4]
    ]
    return StoppingRuleResult(
        rule=rule,
        satisfied_at=points[0] if points else None,
        codes_at_satisfaction=counts[points[0] - 1] if points else None,
        all_satisfaction_points=tuple(points),
    )


def bootstrap_band(
    docs: Sequence[Document],
    regime: CountingRegime,
    coder_source: str,
    n_iterations: int = 2000,
    seed: int = 0,
    truncation: float = 0.10,
    codebook: Codebook | None = None,
) -> BootstrapBand:
    """Mean accumulation curve with a 95% band over random document orders.

    Orders are sampled without replacement (each iteration is a full
    permutation), because with-replacement resampling biases unique-count
    curves downward. The raw 2.5/97.5 percentile band collapses toward the
    final step — the complete corpus is order-invariant — so each
    half-width around the mean is divided by sqrt((N-k)/(N-1)), a finite
    population correction that undoes the without-replacement deflation.
    That ratio is 0/0 at the last step and noisy near it, so the final
    ``truncation`` fraction of steps (ceil(truncation*N)) is dropped from
    the adjusted band. X positions are the mean cumulative characters at
    each step index across iterations.

    Per-iteration seeds derive from (seed, iteration), so iterations can
    be evaluated in any order or in parallel with identical results.
    """
    docs = list(docs)
    N = len(docs)
    if N < 2:
        raise ValueError("bootstrap_band requires at least 2 documents")
    theme_map = None
    if regime.kind == "themes":
        if codebook is None or not codebook.theme_map:
            raise ValueError("themes regime requires a codebook with a theme map")
        theme_map = codebook.theme_map
    hf_set = None
    if regime.kind == "hf_retrospective":
        # High-frequency status depends only on the full corpus, not the order.
        hf_set = _hf_codes(docs, coder_source, regime.hf_threshold)

    lengths = np.array([d.text_length for d in docs], dtype=np.int64)
    count_matrix = np.empty((n_iterations, N), dtype=np.int64)
    chars_matrix = np.empty((n_iterations, N), dtype=np.int64)
    for it in range(n_iterations):
        rng = np.random.default_rng([seed, it])
        perm = rng.permutation(N)
        ordered = [docs[i] for i in perm]
        count_matrix[it] = _cumulative_counts(ordered, regime, coder_source, hf_set, theme_map)
        chars_matrix[it] = np.cumsum(lengths[perm])

    mean_counts = count_matrix.mean(axis=0)
    mean_chars = chars_matrix.mean(axis=0)
    lo_raw = np.percentile(count_matrix, 2.5, axis=0)
    hi_raw = np.percentile(count_matrix, 97.5, axis=0)

    raw_steps = tuple(
        BandStep(k + 1, float(mean_chars[k]), float(mean_counts[k]), float(lo_raw[k]), float(hi_raw[k]))
        for k in range(N)
    )

    retained = N - math.ceil(truncation * N)
    steps = []
    for k in range(1, retained + 1):
        fpc = math.sqrt((N - k) / (N - 1))
        mean_k = float(mean_counts[k - 1])
        lo_half = max(0.0, mean_k - float(lo_raw[k - 1])) / fpc
        hi_half = max(0.0, float(hi_raw[k - 1]) - mean_k) / fpc
        steps.append(
            BandStep(k, float(mean_chars[k - 1]), mean_k, mean_k - lo_half, mean_k + hi_half)
        )
    return BootstrapBand(
        n_iterations=n_iterations,
        truncation=truncation,
        regime=regime,
        steps=tuple(steps),
        raw_steps=raw_steps,
    )


def median_code_position(doc: Document, coder_source: str) -> float | None:
    """Median fractional position of the document's positioned code instances."""
    positions = [
        inst.position for inst in doc.instances(coder_source) if inst.position is not None
    ]
    if not positions:
        return None
    return float(statistics.median(positions))


@dataclass(frozen=True)
class TrendPoint:
    text_length: int
    median_position: float
    moving_average: float


def position_trend(
    docs: Sequence[Document], coder_source: str, window: int
) -> list[TrendPoint]:
    """Median code positions against document length, with a moving average.

    Documents are ordered by length; the average is centered with edge
    windows clipped to the available points. Documents without positioned
    codes are skipped.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    rows = []
    for doc in sorted(docs, key=lambda d: (d.text_length, d.id)):
        med = median_code_position(doc, coder_source)
        if med is not None:
            rows.append((doc.text_length, med))
    points = []
    n = len(rows)
    for i in range(n):
        start = max(0, i - window // 2)
        end = min(n, start + window)
        start = max(0, end - window)
        values = [m for _, m in rows[start:end]]
        points.append(
            TrendPoint(
                text_length=rows[i][0],
                median_position=rows[i][1],
                moving_average=sum(values) / len(values),
            )
        )
    return points
