#!/usr/bin/env python3
"""Desk-scale benchmark: generate a synthetic corpus, ingest it, and time the
main analytics passes (bucketize, keyness, tf-idf, co-occurrence graph).

Usage:
    python3 scripts/bench_desk_scale.py [--posts 100000] [--seed 8]
"""

import argparse
import json
import random
import sys
import tempfile
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ctrkit.config import Config
from ctrkit.corpus import Granularity, bucketize
from ctrkit.service import Analytics
from ctrkit.store import Store


def synth_lines(n_posts: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    vocab = [f"word{i}" for i in range(800)]
    tags = [f"tag{i}" for i in range(60)]
    lines = []
    for i in range(n_posts):
        lines.append(
            json.dumps(
                {
                    "id": f"s{i}",
                    "source": "gab",
                    "author": f"u{i % 500}",
                    "ts": f"2022-{rng.randint(1, 6):02d}-{rng.randint(1, 28):02d}T12:00:00Z",
                    "text": " ".join(rng.choice(vocab) for _ in range(10)),
                    "hashtags": rng.sample(tags, rng.randint(0, 3)),
                }
            )
        )
    return lines


def timed(label, fn):
    started = time.perf_counter()
    result = fn()
    print(f"{label:<24} {time.perf_counter() - started:8.2f}s")
    return result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--posts", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=8)
    args = parser.parse_args()

    lines = timed("generate", lambda: synth_lines(args.posts, args.seed))
    with tempfile.TemporaryDirectory() as tmp:
        store = Store(Path(tmp) / "data", salt="bench")
        overall = time.perf_counter()
        summary = timed("ingest", lambda: store.ingest_lines(lines))
        assert summary.accepted == args.posts, summary
        posts = timed("load posts", store.all_posts)
        timed("bucketize (month)", lambda: bucketize(posts, Granularity.MONTH))
        analytics = Analytics(store, Config(data_dir=store.data_dir, salt="bench"))
        timed("keyness 2022-03", lambda: analytics.keyness("2022-03", n=10, min_freq=5))
        timed("tfidf top-30", lambda: analytics.tfidf(term_kind="any", n=30))
        timed("graph min_weight=10", lambda: analytics.graph(min_weight=10))
        print(f"{'total (post-generate)':<24} {time.perf_counter() - overall:8.2f}s")


if __name__ == "__main__":
    main()
