"""Canonical post data model: record parsing, deduplication, time-bucketing.

Input records arrive as JSONL (one object per line) with fields
`id, source, author, ts, text, hashtags?, kind?, reply_to?, bot?`.
Upstream usernames are never stored; `author` is replaced by a salted hash
at parse time.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta, timezone
from enum import Enum

from .errors import ParseError, ValidationError

_HASHTAG_CHARS = re.compile(r"^[a-z0-9_]+$")

_MIN_TS = datetime(2000, 1, 1, tzinfo=timezone.utc)


class Source(str, Enum):
    GAB = "gab"
    GETTR = "gettr"
    BITCHUTE = "bitchute"
    OTHER = "other"


class Kind(str, Enum):
    POST = "post"
    PROMPT = "prompt"
    BOT_RESPONSE = "bot_response"


class Granularity(str, Enum):
    DAY = "day"
    WEEK = "week"
    MONTH = "month"


@dataclass(frozen=True)
class Post:
    id: str
    source: Source
    author_ref: str
    timestamp: datetime
    text: str
    hashtags: tuple[str, ...] = ()
    kind: Kind = Kind.POST
    reply_to: str | None = None
    bot: str | None = None

    def validate(self) -> None:
        if not self.id:
            raise ValidationError("id must be non-empty")
        if self.timestamp.tzinfo is None:
            raise ValidationError("timestamp must be timezone-aware")
        now = datetime.now(timezone.utc)
        if not (_MIN_TS <= self.timestamp <= now + timedelta(days=1)):
            raise ValidationError(f"timestamp {self.timestamp.isoformat()} out of accepted range")
        seen = set()
        for tag in self.hashtags:
            if not _HASHTAG_CHARS.match(tag):
                raise ValidationError(f"hashtag {tag!r} has characters outside [a-z0-9_]")
            if tag in seen:
                raise ValidationError(f"duplicate hashtag {tag!r}")
            seen.add(tag)
        if self.kind is Kind.BOT_RESPONSE and not self.reply_to:
            raise ValidationError("bot_response record requires reply_to")


@dataclass(frozen=True)
class PromptResponsePair:
    prompt: Post
    response: Post
    bot_name: str
    labels: frozenset = frozenset()

    def validate(self) -> None:
        if self.prompt.kind is not Kind.PROMPT:
            raise ValidationError("pair prompt must have kind=prompt")
        if self.response.kind is not Kind.BOT_RESPONSE:
            raise ValidationError("pair response must have kind=bot_response")
        if self.response.reply_to != self.prompt.id:
            raise ValidationError("response.reply_to must reference the prompt id")
        if self.prompt.timestamp > self.response.timestamp:
            raise ValidationError("prompt must not postdate its response")


@dataclass(frozen=True, order=True)
class TimeBucket:
    start: datetime
    granularity: Granularity = field(compare=False, default=Granularity.MONTH)

    @property
    def label(self) -> str:
        if self.granularity is Granularity.MONTH:
            return self.start.strftime("%Y-%m")
        return self.start.strftime("%Y-%m-%d")

    def next(self) -> "TimeBucket":
        if self.granularity is Granularity.DAY:
            start = self.start + timedelta(days=1)
        elif self.granularity is Granularity.WEEK:
            start = self.start + timedelta(days=7)
        else:
            year, month = self.start.year, self.start.month + 1
            if month > 12:
                year, month = year + 1, 1
            start = self.start.replace(year=year, month=month)
        return TimeBucket(start, self.granularity)


def hash_author(author: str, salt: str) -> str:
    digest = hashlib.sha256((salt + ":" + author).encode("utf-8")).hexdigest()
    return digest[:16]


def _parse_timestamp(raw: str) -> datetime:
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(text)
    except ValueError as exc:
        raise ValidationError(f"unparseable timestamp {raw!r}: {exc}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)  # naive inputs assumed UTC
    return ts.astimezone(timezone.utc)


def parse_post_record(line: str, salt: str = "", line_no: int | None = None) -> Post:
    """Parse one JSONL record into a validated Post.

    Raises ParseError for lines that are not JSON objects, ValidationError
    for records violating model invariants. Callers doing bulk ingestion
    should catch both, count, and continue.
    """
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line_no) from exc
    if not isinstance(record, dict):
        raise ParseError("record is not a JSON object", line_no)

    for name in ("id", "source", "author", "ts", "text"):
        if name not in record:
            raise ValidationError(f"missing required field {name!r}")

    try:
        source = Source(str(record["source"]).lower())
    except ValueError:
        source = Source.OTHER
    try:
        kind = Kind(str(record.get("kind", "post")).lower())
    except ValueError as exc:
        raise ValidationError(f"unknown kind {record.get('kind')!r}") from exc

    raw_tags = record.get("hashtags") or []
    if not isinstance(raw_tags, list):
        raise ValidationError("hashtags must be an array of strings")
    tags: list[str] = []
    for tag in raw_tags:
        norm = str(tag).lstrip("#").lower()
        if norm not in tags:
            tags.append(norm)

    post = Post(
        id=str(record["id"]),
        source=source,
        author_ref=hash_author(str(record["author"]), salt),
        timestamp=_parse_timestamp(str(record["ts"])),
        text=str(record["text"]),
        hashtags=tuple(tags),
        kind=kind,
        reply_to=record.get("reply_to"),
        bot=record.get("bot"),
    )
    post.validate()
    return post


def serialize_post(post: Post) -> str:
    """Inverse of parse on the stored representation (author already hashed)."""
    record = {
        "id": post.id,
        "source": post.source.value,
        "author": post.author_ref,
        "ts": post.timestamp.strftime("%Y-%m-%dT%H:%M:%SZ"),
        "text": post.text,
        "hashtags": list(post.hashtags),
        "kind": post.kind.value,
    }
    if post.reply_to is not None:
        record["reply_to"] = post.reply_to
    if post.bot is not None:
        record["bot"] = post.bot
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def parse_stored_record(line: str, line_no: int | None = None) -> Post:
    """Parse a record previously written by serialize_post (author kept verbatim)."""
    record = json.loads(line)
    post = Post(
        id=record["id"],
        source=Source(record["source"]),
        author_ref=record["author"],
        timestamp=_parse_timestamp(record["ts"]),
        text=record["text"],
        hashtags=tuple(record.get("hashtags", [])),
        kind=Kind(record.get("kind", "post")),
        reply_to=record.get("reply_to"),
        bot=record.get("bot"),
    )
    post.validate()
    return post


def dedup(posts: list[Post]) -> tuple[list[Post], int]:
    """Keep the first occurrence of each (source, id); preserve input order."""
    seen: set[tuple[Source, str]] = set()
    kept: list[Post] = []
    dropped = 0
    for post in posts:
        key = (post.source, post.id)
        if key in seen:
            dropped += 1
        else:
            seen.add(key)
            kept.append(post)
    return kept, dropped


def bucket_start(ts: datetime, granularity: Granularity) -> datetime:
    ts = ts.astimezone(timezone.utc)
    day = ts.replace(hour=0, minute=0, second=0, microsecond=0)
    if granularity is Granularity.DAY:
        return day
    if granularity is Granularity.WEEK:
        return day - timedelta(days=day.weekday())  # ISO week, Monday-aligned
    return day.replace(day=1)


def bucket_of(ts: datetime, granularity: Granularity) -> TimeBucket:
    return TimeBucket(bucket_start(ts, granularity), granularity)


def bucketize(posts: list[Post], granularity: Granularity) -> dict[TimeBucket, list[Post]]:
    """Partition posts by aligned time bucket; every post lands in exactly one."""
    buckets: dict[TimeBucket, list[Post]] = {}
    for post in posts:
        buckets.setdefault(bucket_of(post.timestamp, granularity), []).append(post)
    return dict(sorted(buckets.items()))


def with_labels(pair: PromptResponsePair, labels) -> PromptResponsePair:
    return replace(pair, labels=frozenset(labels))
