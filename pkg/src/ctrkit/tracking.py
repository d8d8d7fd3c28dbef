"""Tracked-term time series and excursion detection above the running
time-average baseline.

A bucket is flagged when its count clears a minimum floor and exceeds either
a multiple of the mean of all prior buckets or that mean plus k standard
deviations. The floor suppresses small-count noise; the warmup prevents
flagging before any baseline exists.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum

from .corpus import Granularity, Post, TimeBucket, bucket_of
from .errors import DomainError, NotFoundError
from .preprocess import Token


class ExcursionRule(str, Enum):
    MULTIPLE = "multiple"
    SIGMA = "sigma"


@dataclass(frozen=True)
class TermSeries:
    term: str
    granularity: Granularity
    points: tuple[tuple[TimeBucket, int], ...]

    def counts(self) -> list[int]:
        return [c for _, c in self.points]


@dataclass(frozen=True)
class Excursion:
    term: str
    bucket: TimeBucket
    count: int
    baseline_mean: float
    ratio: float
    rule_fired: ExcursionRule
    detected_at: datetime


@dataclass(frozen=True)
class ExcursionParams:
    multiple: float = 3.0
    sigma: float = 3.0
    warmup: int = 3
    floor: int = 5
    window: int | None = None  # trailing-window baseline; None = expanding mean


@dataclass(frozen=True)
class WatchlistEntry:
    term: str
    granularity: Granularity
    added_by: str
    added_at: datetime
    active: bool = True


@dataclass(frozen=True)
class Watchlist:
    entries: tuple[WatchlistEntry, ...] = ()
    audit: tuple[str, ...] = ()

    def active_terms(self) -> list[WatchlistEntry]:
        return [e for e in self.entries if e.active]

    def find(self, term: str, granularity: Granularity) -> WatchlistEntry | None:
        for entry in self.entries:
            if entry.term == term and entry.granularity == granularity:
                return entry
        return None


def post_contains_term(post: Post, term: str, tokens: list[Token] | None = None) -> bool:
    """Post-level membership: term appears among hashtags or token lemmas."""
    if term in post.hashtags:
        return True
    if tokens is None:
        from .preprocess import preprocess

        tokens = preprocess(post.text)
    return any(t.lemma == term for t in tokens)


def count_series(
    term: str,
    posts: list[Post],
    granularity: Granularity,
    start: datetime,
    end: datetime,
    token_streams: dict[str, list[Token]] | None = None,
) -> TermSeries:
    """Per-bucket count of posts containing the term, zero-filled over
    [start, end]. A post counts once however often the term occurs in it.

    token_streams maps post id to a precomputed token stream; without it each
    post's text is preprocessed on the fly.
    """
    if start > end:
        raise DomainError("empty time range: start is after end")
    counts: dict[TimeBucket, int] = {}
    bucket = bucket_of(start, granularity)
    last = bucket_of(end, granularity)
    while bucket <= last:
        counts[bucket] = 0
        bucket = bucket.next()
    for post in posts:
        b = bucket_of(post.timestamp, granularity)
        if b not in counts:
            continue
        tokens = token_streams.get(post.id) if token_streams else None
        if post_contains_term(post, term, tokens):
            counts[b] += 1
    return TermSeries(term, granularity, tuple(sorted(counts.items())))


def detect_excursions(series: TermSeries, params: ExcursionParams = ExcursionParams()) -> list[Excursion]:
    """Left-to-right scan flagging buckets above the time-average base level.

    Bucket i (i >= warmup) fires when count >= floor and either
    count > multiple * mean(prior) or count > mean(prior) + sigma * stddev(prior).
    The multiple rule is reported when both fire.
    """
    counts = series.counts()
    buckets = [b for b, _ in series.points]
    found: list[Excursion] = []
    now = datetime.now(timezone.utc)
    for i in range(max(params.warmup, 1), len(counts)):
        prior = counts[:i]
        if params.window is not None:
            prior = prior[-params.window :]
        mean = statistics.fmean(prior)
        std = statistics.pstdev(prior)
        count = counts[i]
        if count < params.floor:
            continue
        fired: ExcursionRule | None = None
        if count > params.multiple * mean:
            fired = ExcursionRule.MULTIPLE
        elif count > mean + params.sigma * std:
            fired = ExcursionRule.SIGMA
        if fired is None:
            continue
        ratio = count / mean if mean > 0 else math.inf
        found.append(
            Excursion(series.term, buckets[i], count, mean, ratio, fired, now)
        )
    return found


def excursions_to_jsonl(excursions: list[Excursion]) -> str:
    lines = []
    for e in excursions:
        lines.append(
            json.dumps(
                {
                    "term": e.term,
                    "bucket_start": e.bucket.start.strftime("%Y-%m-%dT%H:%M:%SZ"),
                    "count": e.count,
                    "baseline": e.baseline_mean,
                    "ratio": e.ratio if math.isfinite(e.ratio) else None,
                    "rule": e.rule_fired.value,
                },
                separators=(",", ":"),
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def watchlist_update(
    watchlist: Watchlist,
    action: str,
    term: str,
    granularity: Granularity,
    actor: str,
    at: datetime | None = None,
) -> Watchlist:
    """Upsert or deactivate a watchlist entry; every change is appended to the
    audit trail. Adding an existing active entry is a no-op (idempotent)."""
    at = at or datetime.now(timezone.utc)
    existing = watchlist.find(term, granularity)
    stamp = at.strftime("%Y-%m-%dT%H:%M:%SZ")
    if action == "add":
        if existing is not None and existing.active:
            return watchlist
        entries = tuple(e for e in watchlist.entries if e is not existing)
        entries += (WatchlistEntry(term, granularity, actor, at, active=True),)
        audit = watchlist.audit + (f"{stamp} add {term}/{granularity.value} by {actor}",)
        return Watchlist(entries, audit)
    if action == "deactivate":
        if existing is None:
            raise NotFoundError(f"watchlist entry {term!r} ({granularity.value}) not found")
        entries = tuple(
            replace(e, active=False) if e is existing else e for e in watchlist.entries
        )
        audit = watchlist.audit + (f"{stamp} deactivate {term}/{granularity.value} by {actor}",)
        return Watchlist(entries, audit)
    raise DomainError(f"unknown watchlist action {action!r}")
