import json
from datetime import timezone

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctrkit.corpus import (
    Granularity,
    bucketize,
    dedup,
    parse_post_record,
    parse_stored_record,
    serialize_post,
)
from ctrkit.errors import ParseError, ValidationError

from .conftest import make_post, record_line


class TestParsePostRecord:
    def test_round_trip_minimal(self):
        post = parse_post_record(record_line(id="p1", text="hello"))
        assert post.id == "p1"
        assert post.hashtags == ()
        assert post.text == "hello"

    def test_missing_id_rejected(self):
        line = record_line()
        record = json.loads(line)
        del record["id"]
        with pytest.raises(ValidationError):
            parse_post_record(json.dumps(record))

    def test_bot_response_requires_reply_to(self):
        with pytest.raises(ValidationError):
            parse_post_record(record_line(kind="bot_response"))

    def test_malformed_json_carries_line_number(self):
        with pytest.raises(ParseError) as exc:
            parse_post_record("{not json", line_no=7)
        assert exc.value.line_no == 7

    def test_hashtags_lowercased_and_hash_stripped(self):
        post = parse_post_record(record_line(hashtags=["#Wuhan", "QUAGMIRE"]))
        assert post.hashtags == ("wuhan", "quagmire")

    def test_bad_hashtag_characters_rejected(self):
        with pytest.raises(ValidationError):
            parse_post_record(record_line(hashtags=["no spaces"]))

    def test_author_is_hashed_with_salt(self):
        a = parse_post_record(record_line(), salt="s1")
        b = parse_post_record(record_line(), salt="s2")
        assert a.author_ref != b.author_ref
        assert "someone" not in a.author_ref

    def test_timestamp_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            parse_post_record(record_line(ts="1999-12-31T00:00:00Z"))

    def test_naive_timestamp_assumed_utc(self):
        post = parse_post_record(record_line(ts="2022-03-15T12:00:00"))
        assert post.timestamp.tzinfo == timezone.utc
        assert post.timestamp.hour == 12

    def test_serialize_parse_round_trip(self):
        post = parse_post_record(record_line(hashtags=["wuhan"], kind="prompt"))
        again = parse_stored_record(serialize_post(post))
        assert again == post


class TestDedup:
    def test_first_occurrence_kept(self):
        p1, p2 = make_post(id="a"), make_post(id="b")
        kept, dropped = dedup([p1, p2, p1])
        assert kept == [p1, p2]
        assert dropped == 1

    def test_empty(self):
        assert dedup([]) == ([], 0)

    def test_key_is_source_and_id(self):
        from ctrkit.corpus import Source

        p1 = make_post(id="a", source=Source.GAB)
        p2 = make_post(id="a", source=Source.GETTR)
        kept, dropped = dedup([p1, p2])
        assert len(kept) == 2 and dropped == 0

    def test_idempotent(self):
        posts = [make_post(id=str(i % 3)) for i in range(10)]
        once, _ = dedup(posts)
        twice, dropped = dedup(once)
        assert twice == once and dropped == 0


class TestBucketize:
    def test_month_alignment(self):
        buckets = bucketize([make_post(ts="2022-03-15T12:00:00+00:00")], Granularity.MONTH)
        (bucket,) = buckets
        assert bucket.start.isoformat() == "2022-03-01T00:00:00+00:00"

    def test_march_to_august_is_six_buckets(self):
        posts = [
            make_post(id=f"p{m}", ts=f"2022-{m:02d}-10T00:00:00+00:00") for m in range(3, 9)
        ]
        assert len(bucketize(posts, Granularity.MONTH)) == 6

    def test_same_instant_same_bucket(self):
        posts = [make_post(id="a"), make_post(id="b")]
        buckets = bucketize(posts, Granularity.MONTH)
        assert sum(len(v) for v in buckets.values()) == 2
        assert len(buckets) == 1

    def test_week_starts_monday(self):
        buckets = bucketize([make_post(ts="2022-03-16T12:00:00+00:00")], Granularity.WEEK)
        (bucket,) = buckets
        assert bucket.start.weekday() == 0

    @given(
        st.lists(
            st.datetimes(
                min_value=__import__("datetime").datetime(2005, 1, 1),
                max_value=__import__("datetime").datetime(2024, 1, 1),
            ),
            max_size=40,
        ),
        st.sampled_from(list(Granularity)),
    )
    def test_partition_property(self, stamps, granularity):
        posts = [
            make_post(id=str(i), ts=ts.replace(tzinfo=timezone.utc).isoformat())
            for i, ts in enumerate(stamps)
        ]
        buckets = bucketize(posts, granularity)
        flattened = [p for group in buckets.values() for p in group]
        assert sorted(p.id for p in flattened) == sorted(p.id for p in posts)
        for bucket, group in buckets.items():
            from ctrkit.corpus import bucket_of

            assert all(bucket_of(p.timestamp, granularity) == bucket for p in group)
