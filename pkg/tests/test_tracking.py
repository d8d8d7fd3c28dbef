import json
import math
from datetime import datetime, timezone

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctrkit.corpus import Granularity, TimeBucket
from ctrkit.errors import DomainError, NotFoundError
from ctrkit.tracking import (
    ExcursionParams,
    ExcursionRule,
    TermSeries,
    Watchlist,
    count_series,
    detect_excursions,
    excursions_to_jsonl,
    watchlist_update,
)

from .conftest import make_post

UTC = timezone.utc


def series_of(counts, granularity=Granularity.MONTH, term="wuhan"):
    bucket = TimeBucket(datetime(2022, 1, 1, tzinfo=UTC), granularity)
    points = []
    for count in counts:
        points.append((bucket, count))
        bucket = bucket.next()
    return TermSeries(term, granularity, tuple(points))


class TestCountSeries:
    def march_april_posts(self):
        return [
            make_post(id="a", ts="2022-03-02T00:00:00+00:00", text="wuhan lab"),
            make_post(id="b", ts="2022-03-10T00:00:00+00:00", text="the wuhan story"),
            make_post(id="c", ts="2022-03-20T00:00:00+00:00", text="wuhan again wuhan"),
            make_post(id="d", ts="2022-04-05T00:00:00+00:00", text="wuhan once"),
        ]

    def range(self):
        return datetime(2022, 3, 1, tzinfo=UTC), datetime(2022, 4, 30, tzinfo=UTC)

    def test_counts_per_bucket(self):
        series = count_series("wuhan", self.march_april_posts(), Granularity.MONTH, *self.range())
        assert series.counts() == [3, 1]

    def test_post_counted_once_despite_repeats(self):
        posts = [make_post(id="a", ts="2022-03-02T00:00:00+00:00", text="wuhan wuhan wuhan")]
        series = count_series("wuhan", posts, Granularity.MONTH, *self.range())
        assert series.counts() == [1, 0]

    def test_zero_filled_when_no_matches(self):
        series = count_series("absent", self.march_april_posts(), Granularity.MONTH, *self.range())
        assert series.counts() == [0, 0]

    def test_hashtag_field_matches(self):
        posts = [make_post(id="a", ts="2022-03-02T00:00:00+00:00", text="no mention", hashtags=["wuhan"])]
        series = count_series("wuhan", posts, Granularity.MONTH, *self.range())
        assert series.counts() == [1, 0]

    def test_empty_range_rejected(self):
        start, end = self.range()
        with pytest.raises(DomainError):
            count_series("wuhan", [], Granularity.MONTH, end, start)

    def test_order_independence(self):
        posts = self.march_april_posts()
        forward = count_series("wuhan", posts, Granularity.MONTH, *self.range())
        backward = count_series("wuhan", list(reversed(posts)), Granularity.MONTH, *self.range())
        assert forward == backward


class TestDetectExcursions:
    def test_flat_series_no_excursions(self):
        assert detect_excursions(series_of([5, 5, 5, 5, 5])) == []

    def test_spike_flagged_with_ratio(self):
        # prior mean 5; 50 > 3*5 and 50 >= floor
        found = detect_excursions(series_of([5, 5, 5, 50]))
        assert len(found) == 1
        e = found[0]
        assert e.count == 50
        assert e.baseline_mean == pytest.approx(5.0)
        assert e.ratio == pytest.approx(10.0, abs=1e-9)
        assert e.rule_fired is ExcursionRule.MULTIPLE

    def test_floor_suppresses_small_spikes(self):
        assert detect_excursions(series_of([0, 0, 0, 4])) == []

    def test_no_flags_within_warmup(self):
        found = detect_excursions(series_of([1, 100, 100, 1, 1]))
        warmup_buckets = {p[0] for p in series_of([1, 100, 100, 1, 1]).points[:3]}
        assert all(e.bucket not in warmup_buckets for e in found)

    def test_sigma_rule_reported_when_multiple_does_not_fire(self):
        # prior [10, 11, 10, 11, 10, 11]: mean 10.5, pstdev 0.5 -> threshold 12
        found = detect_excursions(series_of([10, 11, 10, 11, 10, 11, 13]), ExcursionParams(multiple=3, sigma=3))
        assert [e.rule_fired for e in found] == [ExcursionRule.SIGMA]

    def test_multiple_preferred_when_both_fire(self):
        found = detect_excursions(series_of([5, 5, 5, 500]))
        assert found[0].rule_fired is ExcursionRule.MULTIPLE

    def test_zero_baseline_spike(self):
        found = detect_excursions(series_of([0, 0, 0, 50]))
        assert len(found) == 1
        assert math.isinf(found[0].ratio)

    def test_trailing_window_baseline(self):
        # expanding mean of [50, 50, 50, 5, 5, 5] is ~27.5; trailing 3 is 5
        params = ExcursionParams(window=3)
        counts = [50, 50, 50, 5, 5, 5, 40]
        assert detect_excursions(series_of(counts), ExcursionParams()) == []
        windowed = detect_excursions(series_of(counts), params)
        assert [e.count for e in windowed] == [40]

    @given(st.lists(st.integers(0, 1000), min_size=5, max_size=30), st.integers(3, 25))
    def test_monotonicity_raising_flagged_count(self, counts, idx):
        idx = min(idx, len(counts) - 1)
        found = {e.bucket for e in detect_excursions(series_of(counts))}
        target_bucket = series_of(counts).points[idx][0]
        if target_bucket in found:
            bumped = list(counts)
            bumped[idx] += 17
            still = {e.bucket for e in detect_excursions(series_of(bumped))}
            assert target_bucket in still

    @given(st.lists(st.integers(0, 100), min_size=4, max_size=20))
    def test_deterministic(self, counts):
        a = detect_excursions(series_of(counts))
        b = detect_excursions(series_of(counts))
        assert [(e.bucket, e.count, e.rule_fired) for e in a] == [
            (e.bucket, e.count, e.rule_fired) for e in b
        ]

    def test_jsonl_export_fields(self):
        found = detect_excursions(series_of([5, 5, 5, 50]))
        line = excursions_to_jsonl(found).splitlines()[0]
        event = json.loads(line)
        assert event == {
            "term": "wuhan",
            "bucket_start": "2022-04-01T00:00:00Z",
            "count": 50,
            "baseline": 5.0,
            "ratio": 10.0,
            "rule": "multiple",
        }


class TestWatchlist:
    def test_add_creates_active_entry(self):
        wl = watchlist_update(Watchlist(), "add", "wuhan", Granularity.MONTH, "analyst")
        entry = wl.find("wuhan", Granularity.MONTH)
        assert entry is not None and entry.active
        assert len(wl.audit) == 1

    def test_add_idempotent(self):
        wl = watchlist_update(Watchlist(), "add", "wuhan", Granularity.MONTH, "analyst")
        again = watchlist_update(wl, "add", "wuhan", Granularity.MONTH, "analyst")
        assert len(again.entries) == 1
        assert again.audit == wl.audit

    def test_deactivate_retains_entry(self):
        wl = watchlist_update(Watchlist(), "add", "wuhan", Granularity.MONTH, "analyst")
        wl = watchlist_update(wl, "deactivate", "wuhan", Granularity.MONTH, "analyst")
        entry = wl.find("wuhan", Granularity.MONTH)
        assert entry is not None and not entry.active
        assert wl.active_terms() == []

    def test_deactivate_unknown_entry(self):
        with pytest.raises(NotFoundError):
            watchlist_update(Watchlist(), "deactivate", "ghost", Granularity.MONTH, "analyst")

    def test_unknown_action(self):
        with pytest.raises(DomainError):
            watchlist_update(Watchlist(), "frobnicate", "wuhan", Granularity.MONTH, "analyst")

    def test_same_term_different_granularity_distinct(self):
        wl = watchlist_update(Watchlist(), "add", "wuhan", Granularity.MONTH, "analyst")
        wl = watchlist_update(wl, "add", "wuhan", Granularity.DAY, "analyst")
        assert len(wl.entries) == 2
