"""Semi-quantitative signature capture: frequency tables, keyness via Log
Ratio (binary log of the ratio of relative frequencies), and TF-IDF ranking.

Log Ratio rather than a significance metric: it sorts terms by the size of
the observed frequency difference between target and reference, which is
what analysts browse. Zero raw frequencies are smoothed by substituting 0.5
occurrences; smoothed results carry a flag so the UI can show it.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass

from .errors import DomainError
from .preprocess import Token, TokenKind

DEFAULT_MIN_FREQ = 5


@dataclass(frozen=True)
class FrequencyTable:
    counts: dict[str, int]
    total: int
    slice_tag: str = ""

    def __post_init__(self):
        assert all(c > 0 for c in self.counts.values()), "zero-count entries must not be stored"
        assert self.total == sum(self.counts.values()), "total must equal sum of counts"

    def merge(self, other: "FrequencyTable", slice_tag: str | None = None) -> "FrequencyTable":
        merged = Counter(self.counts)
        merged.update(other.counts)
        return FrequencyTable(dict(merged), self.total + other.total, slice_tag or self.slice_tag)


@dataclass(frozen=True)
class KeynessResult:
    term: str
    log_ratio: float
    f_target: int
    n_target: int
    f_reference: int
    n_reference: int
    smoothed: bool


@dataclass(frozen=True)
class TfidfResult:
    term: str
    score: float
    df: int
    tf_total: int
    term_kind: str = "any"


def build_frequency_table(
    tokens: list[Token],
    kinds: set[TokenKind] | None = None,
    slice_tag: str = "",
) -> FrequencyTable:
    """Count lemmas of tokens whose kind is in the filter (all kinds if None)."""
    counts = Counter(t.lemma for t in tokens if kinds is None or t.kind in kinds)
    return FrequencyTable(dict(counts), sum(counts.values()), slice_tag)


def _log_ratio_value(f_t: int, n_t: int, f_r: int, n_r: int) -> tuple[float, bool]:
    smoothed = f_t == 0 or f_r == 0
    ft = f_t if f_t > 0 else 0.5
    fr = f_r if f_r > 0 else 0.5
    return math.log2((ft / n_t) / (fr / n_r)), smoothed


def log_ratio(
    target: FrequencyTable,
    reference: FrequencyTable,
    min_freq: int = DEFAULT_MIN_FREQ,
) -> list[KeynessResult]:
    """Score every target term with f_target >= min_freq against the reference.

    Sorted descending by log ratio; ties broken by higher target frequency,
    then term lexicographically.
    """
    if target.total == 0 or reference.total == 0:
        raise DomainError("keyness requires non-empty target and reference tables")
    results = []
    for term, f_t in target.counts.items():
        if f_t < min_freq:
            continue
        f_r = reference.counts.get(term, 0)
        lr, smoothed = _log_ratio_value(f_t, target.total, f_r, reference.total)
        results.append(
            KeynessResult(term, lr, f_t, target.total, f_r, reference.total, smoothed)
        )
    results.sort(key=lambda r: (-r.log_ratio, -r.f_target, r.term))
    return results


def top_n_keyness(
    target: FrequencyTable,
    reference: FrequencyTable,
    n: int,
    min_freq: int = DEFAULT_MIN_FREQ,
) -> list[KeynessResult]:
    return log_ratio(target, reference, min_freq)[:n]


def tfidf_rank(
    documents: list[list[Token]],
    term_kind: TokenKind | None = None,
    n: int | None = None,
) -> list[TfidfResult]:
    """Rank terms by corpus TF-IDF: sum over documents of tf * ln(D / df).

    One document = one post/prompt token stream. term_kind of None ranks all
    kinds together.
    """
    if not documents:
        raise DomainError("tfidf requires at least one document")
    d_count = len(documents)
    tf_total: Counter[str] = Counter()
    df: Counter[str] = Counter()
    for doc in documents:
        doc_counts = Counter(
            t.lemma for t in doc if term_kind is None or t.kind is term_kind
        )
        tf_total.update(doc_counts)
        df.update(doc_counts.keys())
    results = [
        TfidfResult(
            term=term,
            score=tf_total[term] * math.log(d_count / df[term]),
            df=df[term],
            tf_total=tf_total[term],
            term_kind=term_kind.value if term_kind else "any",
        )
        for term in tf_total
    ]
    results.sort(key=lambda r: (-r.score, -r.df, r.term))
    return results[:n] if n is not None else results


def keyness_to_csv(results: list[KeynessResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["term", "score", "f_target", "f_reference", "smoothed"])
    for r in results:
        writer.writerow([r.term, repr(r.log_ratio), r.f_target, r.f_reference, str(r.smoothed).lower()])
    return buf.getvalue()


def tfidf_to_csv(results: list[TfidfResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["term", "score", "df", "tf_total", "term_kind"])
    for r in results:
        writer.writerow([r.term, repr(r.score), r.df, r.tf_total, r.term_kind])
    return buf.getvalue()


def keyness_to_json(results: list[KeynessResult]) -> list[dict]:
    return [
        {
            "term": r.term,
            "log_ratio": r.log_ratio,
            "f_target": r.f_target,
            "n_target": r.n_target,
            "f_reference": r.f_reference,
            "n_reference": r.n_reference,
            "smoothed": r.smoothed,
        }
        for r in results
    ]


def tfidf_to_json(results: list[TfidfResult]) -> list[dict]:
    return [
        {
            "term": r.term,
            "score": r.score,
            "df": r.df,
            "tf_total": r.tf_total,
            "term_kind": r.term_kind,
        }
        for r in results
    ]
