import json
from datetime import datetime, timezone
from pathlib import Path

import pytest

from ctrkit.corpus import Kind, Post, Source
from ctrkit.store import Store

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def make_post(
    id="p1",
    source=Source.GAB,
    ts="2022-03-15T12:00:00+00:00",
    text="hello world",
    hashtags=(),
    kind=Kind.POST,
    reply_to=None,
    bot=None,
):
    return Post(
        id=id,
        source=source,
        author_ref="deadbeefdeadbeef",
        timestamp=datetime.fromisoformat(ts).astimezone(timezone.utc),
        text=text,
        hashtags=tuple(hashtags),
        kind=kind,
        reply_to=reply_to,
        bot=bot,
    )


def record_line(**overrides):
    record = {
        "id": "p1",
        "source": "gab",
        "author": "someone",
        "ts": "2022-03-15T12:00:00Z",
        "text": "hello",
    }
    record.update(overrides)
    for key in [k for k, v in record.items() if v is None]:
        del record[key]
    return json.dumps(record)


@pytest.fixture
def store(tmp_path):
    return Store(tmp_path / "data", salt="test-salt")


@pytest.fixture
def audit_store(tmp_path):
    s = Store(tmp_path / "data", salt="test-salt")
    s.ingest_file(FIXTURES / "audit_posts.jsonl")
    return s
