"""Analytics facade binding the store to the signature, graph, tracking, and
audit modules. Derived results are cached by content hash of (corpus, params)
since segments are append-only.
"""

from __future__ import annotations

from datetime import datetime, timezone

from . import cooccur, signatures, tracking
from .audit import (
    LabelOrigin,
    PatternTable,
    TallyReport,
    default_pattern_table,
    heuristic_classify,
    prompt_terms,
    tally,
)
from .config import Config
from .corpus import Granularity, Kind, Post, PromptResponsePair, with_labels
from .errors import DomainError
from .preprocess import Token, TokenKind, preprocess
from .signatures import FrequencyTable, KeynessResult, TfidfResult
from .store import Store
from .tracking import Excursion, ExcursionParams, TermSeries

_KIND_ALIASES = {
    "noun": TokenKind.NOUN_CANDIDATE,
    "entity": TokenKind.ENTITY_CANDIDATE,
    "hashtag": TokenKind.HASHTAG,
    "any": None,
}


def token_kind_from_alias(alias: str) -> TokenKind | None:
    if alias not in _KIND_ALIASES:
        raise DomainError(f"unknown term kind {alias!r}; expected noun|entity|hashtag|any")
    return _KIND_ALIASES[alias]


class Analytics:
    """Read-side analytics over an immutable corpus snapshot."""

    def __init__(self, store: Store, config: Config | None = None):
        self.store = store
        self.config = config or Config(data_dir=store.data_dir)
        self._tokens_cache: tuple[str, dict[str, list[Token]]] | None = None
        self._posts_cache: tuple[str, list[Post]] | None = None

    # ------------------------------------------------------------- snapshots

    def posts(self) -> list[Post]:
        corpus_hash = self.store.corpus_hash()
        if self._posts_cache is None or self._posts_cache[0] != corpus_hash:
            self._posts_cache = (corpus_hash, self.store.all_posts())
        return self._posts_cache[1]

    def token_streams(self) -> dict[str, list[Token]]:
        corpus_hash = self.store.corpus_hash()
        if self._tokens_cache is None or self._tokens_cache[0] != corpus_hash:
            streams = {post.id: preprocess(post.text) for post in self.posts()}
            self._tokens_cache = (corpus_hash, streams)
        return self._tokens_cache[1]

    def _post_tokens(self, post: Post) -> list[Token]:
        tokens = list(self.token_streams()[post.id])
        # hashtags provided as structured fields still count as tokens
        seen = {t.lemma for t in tokens if t.kind is TokenKind.HASHTAG}
        position = tokens[-1].position + 1 if tokens else 0
        for tag in post.hashtags:
            if tag not in seen:
                tokens.append(Token("#" + tag, tag, TokenKind.HASHTAG, position))
                position += 1
        return tokens

    # --------------------------------------------------------------- keyness

    def period_tables(self, granularity: Granularity | None = None) -> dict[str, FrequencyTable]:
        granularity = granularity or self.config.default_granularity
        tables: dict[str, FrequencyTable] = {}
        from .corpus import bucket_of

        grouped: dict[str, list[Post]] = {}
        for post in self.posts():
            grouped.setdefault(bucket_of(post.timestamp, granularity).label, []).append(post)
        for label, posts in sorted(grouped.items()):
            tokens = [t for p in posts for t in self._post_tokens(p)]
            tables[label] = signatures.build_frequency_table(tokens, slice_tag=label)
        return tables

    def keyness(
        self,
        period: str,
        n: int | None = None,
        min_freq: int | None = None,
        reference: FrequencyTable | None = None,
    ) -> list[KeynessResult]:
        """Keyness of one period against a reference; by default the reference
        is the union of all other loaded periods."""
        min_freq = min_freq if min_freq is not None else self.config.min_freq
        params = {"period": period, "n": n, "min_freq": min_freq, "reference": reference is None}
        key = self.store.cache_key("keyness", params)
        cached = self.store.cache_get(key)
        if cached is not None:
            return [KeynessResult(**row) for row in cached]
        tables = self.period_tables()
        if period not in tables:
            raise DomainError(f"no posts in period {period!r}")
        target = tables[period]
        if reference is None:
            rest = [t for label, t in tables.items() if label != period]
            if not rest:
                raise DomainError("keyness needs at least one other period as reference")
            reference = rest[0]
            for table in rest[1:]:
                reference = reference.merge(table, slice_tag="rest")
        results = signatures.top_n_keyness(target, reference, n, min_freq) if n is not None else (
            signatures.log_ratio(target, reference, min_freq)
        )
        self.store.cache_put(key, [r.__dict__ for r in results])
        return results

    # ----------------------------------------------------------------- tfidf

    def tfidf(
        self,
        term_kind: str = "any",
        n: int | None = 30,
        post_kind: Kind | None = None,
    ) -> list[TfidfResult]:
        """Corpus TF-IDF over per-post documents, optionally restricted to one
        post kind (e.g. prompts only)."""
        params = {"term_kind": term_kind, "n": n, "post_kind": post_kind.value if post_kind else None}
        key = self.store.cache_key("tfidf", params)
        cached = self.store.cache_get(key)
        if cached is not None:
            return [TfidfResult(**row) for row in cached]
        kind = token_kind_from_alias(term_kind)
        posts = [p for p in self.posts() if post_kind is None or p.kind is post_kind]
        documents = [self._post_tokens(p) for p in posts]
        results = signatures.tfidf_rank(documents, kind, n)
        self.store.cache_put(key, [r.__dict__ for r in results])
        return results

    # ----------------------------------------------------------------- graph

    def graph(
        self,
        seed: str | None = None,
        min_weight: int | None = None,
        depth: int | None = None,
        window: tuple[str, str] | None = None,
    ) -> cooccur.CooccurrenceGraph:
        min_weight = min_weight if min_weight is not None else self.config.cooccur_min_weight
        params = {"seed": seed, "min_weight": min_weight, "depth": depth, "window": window}
        key = self.store.cache_key("graph", params)
        cached = self.store.cache_get(key)
        if cached is not None:
            return cooccur.from_json(cached)
        posts = self.posts()
        if window is not None:
            lo = datetime.fromisoformat(window[0]).replace(tzinfo=timezone.utc)
            hi = datetime.fromisoformat(window[1]).replace(tzinfo=timezone.utc)
            posts = [p for p in posts if lo <= p.timestamp <= hi]
        graph = cooccur.build_graph(posts, window, seed_term=seed)
        if seed is not None and depth is not None:
            graph = cooccur.neighborhood(graph, seed, depth)
        graph = cooccur.prune(graph, min_weight)
        self.store.cache_put(key, cooccur.to_json(graph))
        return graph

    # -------------------------------------------------------------- tracking

    def corpus_range(self) -> tuple[datetime, datetime]:
        posts = self.posts()
        if not posts:
            raise DomainError("corpus is empty")
        stamps = [p.timestamp for p in posts]
        return min(stamps), max(stamps)

    def series(
        self,
        term: str,
        granularity: Granularity | None = None,
        start: datetime | None = None,
        end: datetime | None = None,
    ) -> TermSeries:
        granularity = granularity or self.config.default_granularity
        if start is None or end is None:
            lo, hi = self.corpus_range()
            start = start or lo
            end = end or hi
        return tracking.count_series(term, self.posts(), granularity, start, end, self.token_streams())

    def excursions(
        self,
        term: str | None = None,
        granularity: Granularity | None = None,
        params: ExcursionParams | None = None,
    ) -> list[Excursion]:
        """Scan one term, or every active watchlist entry when term is None."""
        params = params or self.config.excursion
        watchlist = self.store.watchlist()
        if term is not None:
            targets = [(term, granularity or self.config.default_granularity)]
        else:
            targets = [
                (e.term, e.granularity)
                for e in watchlist.active_terms()
                if granularity is None or e.granularity == granularity
            ]
        found: list[Excursion] = []
        for target_term, target_gran in targets:
            found.extend(tracking.detect_excursions(self.series(target_term, target_gran), params))
        return found

    # ----------------------------------------------------------------- audit

    def classified_pairs(self, patterns: PatternTable | None = None) -> list[PromptResponsePair]:
        """All derivable pairs with heuristic labels filled in; manual labels
        from the state document dominate."""
        patterns = patterns or default_pattern_table()
        out = []
        for pair in self.store.pairs():
            heuristic = heuristic_classify(pair.response.text, patterns, prompt_terms(pair))
            manual = {l for l in pair.labels if l.origin is LabelOrigin.MANUAL}
            out.append(with_labels(pair, manual | heuristic))
        return out

    def audit_tally(self, bot_name: str, patterns: PatternTable | None = None) -> TallyReport:
        pairs = [p for p in self.classified_pairs(patterns) if p.bot_name == bot_name]
        return tally(pairs, bot_name, sample_description=f"all stored pairs for {bot_name}")
