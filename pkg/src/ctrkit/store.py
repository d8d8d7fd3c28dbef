"""Embedded file store: append-only JSONL post segments, an atomically
replaced state document, and a content-hash keyed cache of derived results.

Segments are line-atomic; the state file is written tmp-then-rename so an
interrupted write always leaves the prior revision readable.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable

from .audit import AuditLabel, LabelOrigin, LabelValue
from .corpus import (
    Granularity,
    Kind,
    Post,
    PromptResponsePair,
    parse_post_record,
    parse_stored_record,
    serialize_post,
    with_labels,
)
from .errors import ParseError, ValidationError
from .tracking import Watchlist, WatchlistEntry


@dataclass(frozen=True)
class IngestSummary:
    accepted: int
    duplicates: int
    rejected: int

    def as_dict(self) -> dict:
        return {"accepted": self.accepted, "duplicates": self.duplicates, "rejected": self.rejected}


class Store:
    """Single-writer file store rooted at a data directory."""

    def __init__(self, data_dir: str | Path, salt: str = "ctrkit-default-salt"):
        self.data_dir = Path(data_dir)
        self.salt = salt
        self.segments_dir = self.data_dir / "segments"
        self.cache_dir = self.data_dir / "cache"
        self.state_path = self.data_dir / "state.json"
        self.segments_dir.mkdir(parents=True, exist_ok=True)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self._known_ids: set[tuple[str, str]] = set()
        self._corpus_hash: str | None = None
        self._load_ids()

    # ------------------------------------------------------------------ posts

    def _segment_path(self, post: Post) -> Path:
        return self.segments_dir / f"{post.source.value}-{post.timestamp.strftime('%Y-%m')}.jsonl"

    def _load_ids(self) -> None:
        for path in self.segments_dir.glob("*.jsonl"):
            with path.open("r", encoding="utf-8") as handle:
                for line in handle:
                    if not line.strip():
                        continue
                    record = json.loads(line)
                    self._known_ids.add((record["source"], record["id"]))

    def ingest_lines(self, lines: Iterable[str]) -> IngestSummary:
        """Parse, validate, dedup against stored ids, and append. Per-record
        failures are counted, never fatal."""
        accepted = duplicates = rejected = 0
        handles: dict[Path, IO[str]] = {}
        try:
            for line_no, line in enumerate(lines, start=1):
                if not line.strip():
                    continue
                try:
                    post = parse_post_record(line, salt=self.salt, line_no=line_no)
                except (ParseError, ValidationError):
                    rejected += 1
                    continue
                key = (post.source.value, post.id)
                if key in self._known_ids:
                    duplicates += 1
                    continue
                path = self._segment_path(post)
                if path not in handles:
                    handles[path] = path.open("a", encoding="utf-8")
                handles[path].write(serialize_post(post) + "\n")
                self._known_ids.add(key)
                accepted += 1
        finally:
            for handle in handles.values():
                handle.close()
            if handles:
                self._corpus_hash = None
        return IngestSummary(accepted, duplicates, rejected)

    def ingest_file(self, path: str | Path) -> IngestSummary:
        with Path(path).open("r", encoding="utf-8") as handle:
            return self.ingest_lines(handle)

    def all_posts(self) -> list[Post]:
        posts = []
        for path in sorted(self.segments_dir.glob("*.jsonl")):
            with path.open("r", encoding="utf-8") as handle:
                for line in handle:
                    if line.strip():
                        posts.append(parse_stored_record(line))
        posts.sort(key=lambda p: (p.timestamp, p.source.value, p.id))
        return posts

    def pairs(self) -> list[PromptResponsePair]:
        """Derive prompt/response pairs from stored posts, applying manual
        labels from the state document."""
        posts = self.all_posts()
        prompts = {p.id: p for p in posts if p.kind is Kind.PROMPT}
        manual = self.manual_labels()
        out = []
        for post in posts:
            if post.kind is not Kind.BOT_RESPONSE or post.reply_to not in prompts:
                continue
            pair = PromptResponsePair(
                prompt=prompts[post.reply_to],
                response=post,
                bot_name=post.bot or "unknown",
            )
            values = manual.get(pair.response.id)
            if values:
                pair = with_labels(pair, {AuditLabel(v, LabelOrigin.MANUAL) for v in values})
            out.append(pair)
        return out

    # ------------------------------------------------------------------ state

    def _read_state(self) -> dict:
        if not self.state_path.exists():
            return {"revision": 0, "watchlist": {"entries": [], "audit": []}, "manual_labels": {}}
        return json.loads(self.state_path.read_text("utf-8"))

    def _write_state(self, state: dict) -> None:
        state["revision"] = state.get("revision", 0) + 1
        tmp = self.state_path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(state, indent=1, sort_keys=True), "utf-8")
        os.replace(tmp, self.state_path)

    @property
    def revision(self) -> int:
        return self._read_state().get("revision", 0)

    def watchlist(self) -> Watchlist:
        raw = self._read_state()["watchlist"]
        entries = tuple(
            WatchlistEntry(
                term=e["term"],
                granularity=Granularity(e["granularity"]),
                added_by=e["added_by"],
                added_at=datetime.fromisoformat(e["added_at"]).replace(tzinfo=timezone.utc),
                active=e["active"],
            )
            for e in raw["entries"]
        )
        return Watchlist(entries, tuple(raw["audit"]))

    def save_watchlist(self, watchlist: Watchlist) -> None:
        state = self._read_state()
        state["watchlist"] = {
            "entries": [
                {
                    "term": e.term,
                    "granularity": e.granularity.value,
                    "added_by": e.added_by,
                    "added_at": e.added_at.strftime("%Y-%m-%dT%H:%M:%S"),
                    "active": e.active,
                }
                for e in watchlist.entries
            ],
            "audit": list(watchlist.audit),
        }
        self._write_state(state)

    def manual_labels(self) -> dict[str, list[LabelValue]]:
        raw = self._read_state()["manual_labels"]
        return {pid: [LabelValue(v) for v in values] for pid, values in raw.items()}

    def set_manual_labels(self, response_id: str, values: list[LabelValue]) -> None:
        """Manual labels key on the response id: one prompt can be answered by
        several bots, and each answer is adjudicated separately."""
        state = self._read_state()
        state["manual_labels"][response_id] = [v.value for v in values]
        self._write_state(state)

    # ------------------------------------------------------------------ cache

    def corpus_hash(self) -> str:
        # memoized: segments only change through ingest_lines (single writer),
        # which drops the memo after appending
        if self._corpus_hash is None:
            digest = hashlib.sha256()
            for path in sorted(self.segments_dir.glob("*.jsonl")):
                digest.update(path.name.encode())
                digest.update(path.read_bytes())
            self._corpus_hash = digest.hexdigest()
        return self._corpus_hash

    def cache_key(self, operation: str, params: dict) -> str:
        payload = json.dumps(
            {"op": operation, "corpus": self.corpus_hash(), "params": params},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def cache_get(self, key: str):
        path = self.cache_dir / f"{key}.json"
        if path.exists():
            return json.loads(path.read_text("utf-8"))
        return None

    def cache_put(self, key: str, value) -> None:
        path = self.cache_dir / f"{key}.json"
        if path.exists():
            return  # cache entries are immutable once written
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(value), "utf-8")
        os.replace(tmp, path)
