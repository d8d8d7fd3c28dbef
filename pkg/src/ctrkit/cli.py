"""Command-line interface. Exit codes: 0 success, 1 domain error, 2 usage."""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import cooccur, signatures
from .audit import default_pattern_table, tally_to_csv
from .config import Config, load_config
from .corpus import Granularity
from .errors import CtrkitError
from .service import Analytics
from .store import Store
from .tracking import excursions_to_jsonl, watchlist_update


def _domain_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CtrkitError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None, help="Path to a JSON config file.")
@click.option("--data-dir", type=click.Path(), default=None, help="Override the data directory.")
@click.pass_context
def main(ctx, config_path, data_dir):
    """Capture/Track/Respond toolkit for mal-info monitoring."""
    cfg = load_config(config_path)
    if data_dir:
        from dataclasses import replace

        cfg = replace(cfg, data_dir=Path(data_dir))
    ctx.obj = cfg


def _analytics(cfg: Config) -> Analytics:
    return Analytics(Store(cfg.data_dir, salt=cfg.salt), cfg)


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.pass_obj
@_domain_errors
def ingest(cfg: Config, path):
    """Ingest a JSONL file of post records."""
    store = Store(cfg.data_dir, salt=cfg.salt)
    summary = store.ingest_file(path)
    click.echo(json.dumps(summary.as_dict()))


@main.command()
@click.option("--period", required=True, help="Target period, e.g. 2022-03.")
@click.option("--n", default=10, show_default=True)
@click.option("--min-freq", default=None, type=int)
@click.option("--reference", default="rest", show_default=True, help="'rest' or a frequency-table JSON file.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.pass_obj
@_domain_errors
def keyness(cfg: Config, period, n, min_freq, reference, fmt):
    """Top-N key terms of a period against a reference corpus."""
    analytics = _analytics(cfg)
    ref_table = None
    if reference != "rest":
        raw = json.loads(Path(reference).read_text("utf-8"))
        ref_table = signatures.FrequencyTable(raw["counts"], sum(raw["counts"].values()), raw.get("slice_tag", "external"))
    results = analytics.keyness(period, n=n, min_freq=min_freq, reference=ref_table)
    if fmt == "csv":
        click.echo(signatures.keyness_to_csv(results), nl=False)
    else:
        click.echo(json.dumps(signatures.keyness_to_json(results)))


@main.command()
@click.option("--kind", type=click.Choice(["noun", "entity", "hashtag", "any"]), default="any", show_default=True)
@click.option("--n", default=30, show_default=True)
@click.option("--post-kind", type=click.Choice(["post", "prompt", "bot_response"]), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.pass_obj
@_domain_errors
def tfidf(cfg: Config, kind, n, post_kind, fmt):
    """Top-N terms by corpus TF-IDF."""
    from .corpus import Kind

    analytics = _analytics(cfg)
    results = analytics.tfidf(term_kind=kind, n=n, post_kind=Kind(post_kind) if post_kind else None)
    if fmt == "csv":
        click.echo(signatures.tfidf_to_csv(results), nl=False)
    else:
        click.echo(json.dumps(signatures.tfidf_to_json(results)))


@main.command()
@click.option("--seed", default=None, help="Center the graph on this hashtag.")
@click.option("--min-weight", default=None, type=int, help="Keep edges strictly heavier than this.")
@click.option("--depth", default=None, type=int, help="Hops from the seed.")
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json", show_default=True)
@click.pass_obj
@_domain_errors
def graph(cfg: Config, seed, min_weight, depth, fmt):
    """Hashtag co-occurrence graph export."""
    analytics = _analytics(cfg)
    result = analytics.graph(seed=seed, min_weight=min_weight, depth=depth)
    if fmt == "dot":
        click.echo(cooccur.to_dot(result), nl=False)
    else:
        click.echo(json.dumps(cooccur.to_json(result)))


@main.group()
def track():
    """Tracked-term time series and excursion scans."""


@track.command("scan")
@click.option("--term", default=None, help="Scan one term instead of the watchlist.")
@click.option("--granularity", type=click.Choice(["day", "week", "month"]), default=None)
@click.option("--jsonl", is_flag=True, help="Emit JSONL events instead of the table.")
@click.pass_obj
@_domain_errors
def track_scan(cfg: Config, term, granularity, jsonl):
    """Scan tracked terms for excursions above baseline."""
    analytics = _analytics(cfg)
    gran = Granularity(granularity) if granularity else None
    found = analytics.excursions(term, gran)
    if jsonl:
        click.echo(excursions_to_jsonl(found), nl=False)
        return
    click.echo(f"{'term':<20} {'bucket':<12} {'count':>8} {'baseline':>10} {'ratio':>8} rule")
    for e in found:
        ratio = f"{e.ratio:8.2f}" if e.baseline_mean > 0 else "     inf"
        click.echo(
            f"{e.term:<20} {e.bucket.label:<12} {e.count:>8} {e.baseline_mean:>10.2f} {ratio} {e.rule_fired.value}"
        )
    if not found:
        click.echo("no excursions", err=True)


@main.group()
def watch():
    """Manage the analyst watchlist."""


@watch.command("add")
@click.argument("term")
@click.option("--granularity", type=click.Choice(["day", "week", "month"]), default="month", show_default=True)
@click.option("--actor", default="cli", show_default=True)
@click.pass_obj
@_domain_errors
def watch_add(cfg: Config, term, granularity, actor):
    store = Store(cfg.data_dir, salt=cfg.salt)
    store.save_watchlist(watchlist_update(store.watchlist(), "add", term, Granularity(granularity), actor))
    click.echo(f"watching {term} ({granularity})")


@watch.command("deactivate")
@click.argument("term")
@click.option("--granularity", type=click.Choice(["day", "week", "month"]), default="month", show_default=True)
@click.option("--actor", default="cli", show_default=True)
@click.pass_obj
@_domain_errors
def watch_deactivate(cfg: Config, term, granularity, actor):
    store = Store(cfg.data_dir, salt=cfg.salt)
    store.save_watchlist(
        watchlist_update(store.watchlist(), "deactivate", term, Granularity(granularity), actor)
    )
    click.echo(f"deactivated {term} ({granularity})")


@main.group()
def audit():
    """Guardrail audit of prompt/response pairs."""


@audit.command("classify")
@click.option("--patterns", type=click.Path(exists=True), default=None, help="Directory of pattern files.")
@click.pass_obj
@_domain_errors
def audit_classify(cfg: Config, patterns):
    """Print heuristic labels for every stored pair as JSONL."""
    from .audit import load_pattern_table
    from .service import Analytics

    analytics = _analytics(cfg)
    table = load_pattern_table(patterns) if patterns else default_pattern_table()
    for pair in analytics.classified_pairs(table):
        from .audit import labeled_pair_to_json

        click.echo(labeled_pair_to_json(pair))


@audit.command("tally")
@click.option("--bot", required=True)
@click.pass_obj
@_domain_errors
def audit_tally(cfg: Config, bot):
    """Per-label counts over all stored pairs for one bot (CSV)."""
    analytics = _analytics(cfg)
    click.echo(tally_to_csv(analytics.audit_tally(bot)), nl=False)


@main.command()
@click.option("--bind", default=None, help="host:port to listen on.")
@click.pass_obj
@_domain_errors
def serve(cfg: Config, bind):
    """Run the HTTP API."""
    import uvicorn

    from .api import create_app

    bind = bind or cfg.bind
    host, _, port = bind.rpartition(":")
    uvicorn.run(create_app(cfg), host=host or "127.0.0.1", port=int(port))


if __name__ == "__main__":
    main()
