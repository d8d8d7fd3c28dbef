"""Text normalization chain: tokenize, drop stopwords, lemmatize, and mark
noun / named-entity candidates.

The chain is deliberately rule-based and deterministic: entity detection uses
a gazetteer plus a capitalization heuristic, noun candidacy a stoplist plus
suffix heuristic. A statistical tagger can be swapped in behind
extract_nouns_entities without touching callers.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path

_HASHTAG = re.compile(r"#([A-Za-z0-9_]+)")
_SENTENCE_END = re.compile(r"[.!?]['\")\]]*$")
_ASCII_ALPHA = re.compile(r"^[A-Za-z]+$")
_UNICODE_ALPHA = re.compile(r"^[^\W\d_]+$", re.UNICODE)
_LEMMA_OK = re.compile(r"^[a-z_]+$")

_VOWELS = set("aeiou")


class TokenKind(str, Enum):
    WORD = "word"
    NOUN_CANDIDATE = "noun_candidate"
    ENTITY_CANDIDATE = "entity_candidate"
    HASHTAG = "hashtag"


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    kind: TokenKind
    position: int
    sentence_start: bool = False


@dataclass(frozen=True)
class StopwordList:
    words: frozenset[str]
    source_tag: str

    def __contains__(self, word: str) -> bool:
        return word in self.words


@dataclass(frozen=True)
class Gazetteer:
    entries: dict[tuple[str, ...], str]  # lowercase surface phrase -> canonical lemma

    @property
    def max_phrase_len(self) -> int:
        return max((len(k) for k in self.entries), default=0)


def load_stopwords(path: str | Path, source_tag: str | None = None) -> StopwordList:
    words = frozenset(
        line.strip().lower() for line in Path(path).read_text("utf-8").splitlines() if line.strip()
    )
    return StopwordList(words, source_tag or Path(path).name)


@lru_cache(maxsize=1)
def default_stopwords() -> StopwordList:
    text = resources.files("ctrkit.data").joinpath("stopwords.txt").read_text("utf-8")
    words = frozenset(line.strip().lower() for line in text.splitlines() if line.strip())
    return StopwordList(words, "ctrkit-builtin-english-function-words")


def _parse_gazetteer_lines(lines) -> Gazetteer:
    entries: dict[tuple[str, ...], str] = {}
    for line in lines:
        line = line.rstrip("\n")
        if not line.strip():
            continue
        surface, _, lemma = line.partition("\t")
        lemma = lemma.strip()
        phrase = tuple(surface.strip().lower().split())
        if not phrase or not lemma or not _LEMMA_OK.match(lemma):
            continue
        entries[phrase] = lemma
    return Gazetteer(entries)


def load_gazetteer(path: str | Path) -> Gazetteer:
    return _parse_gazetteer_lines(Path(path).read_text("utf-8").splitlines())


@lru_cache(maxsize=1)
def default_gazetteer() -> Gazetteer:
    text = resources.files("ctrkit.data").joinpath("gazetteer.txt").read_text("utf-8")
    return _parse_gazetteer_lines(text.splitlines())


def tokenize(text: str, unicode_letters: bool = False) -> list[Token]:
    """Split text into word and hashtag tokens.

    Hashtags (#word) are pulled out first; remaining pieces are stripped of
    leading/trailing punctuation, and any piece still containing a
    non-alphabetic character is dropped entirely.
    """
    alpha = _UNICODE_ALPHA if unicode_letters else _ASCII_ALPHA
    text = unicodedata.normalize("NFC", text)
    tokens: list[Token] = []
    position = 0
    at_sentence_start = True
    for piece in text.split():
        for match in _HASHTAG.finditer(piece):
            tokens.append(Token(match.group(0), match.group(1).lower(), TokenKind.HASHTAG, position))
            position += 1
        stripped_piece = _HASHTAG.sub(" ", piece)
        for chunk in stripped_piece.split():
            core = chunk.strip("".join(c for c in chunk if not c.isalnum()) or " ")
            if core and alpha.match(core):
                tokens.append(
                    Token(core, core.lower(), TokenKind.WORD, position, sentence_start=at_sentence_start)
                )
                position += 1
                at_sentence_start = False
        if _SENTENCE_END.search(piece):
            at_sentence_start = True
    return tokens


def remove_stopwords(tokens: list[Token], stoplist: StopwordList) -> list[Token]:
    """Drop word tokens on the stoplist; hashtags always pass. Positions are
    kept as assigned by tokenize (not renumbered)."""
    return [
        t
        for t in tokens
        if t.kind is TokenKind.HASHTAG or t.surface.lower() not in stoplist
    ]


_LEMMA_EXCEPTIONS = {
    "men": "man",
    "women": "woman",
    "children": "child",
    "people": "person",
    "feet": "foot",
    "teeth": "tooth",
    "mice": "mouse",
    "geese": "goose",
    "lives": "life",
    "wives": "wife",
    "media": "media",
    "news": "news",
    "series": "series",
    "species": "species",
}

_ES_STEMS = ("ss", "x", "z", "ch", "sh")


def _undo_doubling(stem: str) -> str:
    if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS and stem[-1] != "s":
        return stem[:-1]
    return stem


def _reduce(word: str) -> str:
    if word in _LEMMA_EXCEPTIONS:
        return _LEMMA_EXCEPTIONS[word]
    if len(word) > 4 and word.endswith("ies"):
        return word[:-3] + "y"
    if len(word) > 3 and word.endswith("es") and word[:-2].endswith(_ES_STEMS):
        return word[:-2]
    if len(word) > 3 and word.endswith("s") and not word.endswith("ss") and not word.endswith("us"):
        return word[:-1]
    if len(word) > 5 and word.endswith("ing"):
        return _undo_doubling(word[:-3])
    if len(word) > 4 and word.endswith("ied"):
        return word[:-3] + "y"
    if len(word) > 4 and word.endswith("ed"):
        return _undo_doubling(word[:-2])
    return word


def lemmatize(token: Token) -> Token:
    """Set the lemma of a word token via exception table, then suffix rules."""
    if token.kind is not TokenKind.WORD:
        return token
    return replace(token, lemma=_reduce(token.surface.lower()))


def lemmatize_all(tokens: list[Token]) -> list[Token]:
    return [lemmatize(t) for t in tokens]


def _is_capitalized(surface: str) -> bool:
    return surface[:1].isupper()


def _noun_candidate(lemma: str) -> bool:
    return len(lemma) >= 3 and not lemma.endswith("ly")


def extract_nouns_entities(
    tokens: list[Token],
    gazetteer: Gazetteer | None = None,
    stoplist: StopwordList | None = None,
) -> list[Token]:
    """Mark entity and noun candidates in a lemmatized token stream.

    Entities are gazetteer phrase matches, or maximal runs of capitalized
    surfaces whose first token is not sentence-initial; matched runs merge
    into one token with lemmas joined by '_'. Remaining words that clear the
    stoplist and the noun heuristic become noun candidates.
    """
    gazetteer = gazetteer if gazetteer is not None else default_gazetteer()
    stoplist = stoplist if stoplist is not None else default_stopwords()

    def gaz_match(i: int) -> tuple[int, str] | None:
        for width in range(min(gazetteer.max_phrase_len, len(tokens) - i), 0, -1):
            span = tokens[i : i + width]
            if any(t.kind is not TokenKind.WORD for t in span):
                continue
            phrase = tuple(t.surface.lower() for t in span)
            lemma = gazetteer.entries.get(phrase)
            if lemma is not None:
                return width, lemma
        return None

    out: list[Token] = []
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        if tok.kind is not TokenKind.WORD:
            out.append(tok)
            i += 1
            continue
        hit = gaz_match(i)
        if hit is not None:
            width, lemma = hit
            span = tokens[i : i + width]
            out.append(
                Token(" ".join(t.surface for t in span), lemma, TokenKind.ENTITY_CANDIDATE, tok.position)
            )
            i += width
            continue
        if _is_capitalized(tok.surface) and not tok.sentence_start:
            j = i
            while (
                j < n
                and tokens[j].kind is TokenKind.WORD
                and _is_capitalized(tokens[j].surface)
                and tokens[j].position == tokens[i].position + (j - i)
                and (j == i or gaz_match(j) is None)
            ):
                j += 1
            span = tokens[i:j]
            out.append(
                Token(
                    " ".join(t.surface for t in span),
                    "_".join(t.lemma for t in span),
                    TokenKind.ENTITY_CANDIDATE,
                    tok.position,
                )
            )
            i = j
            continue
        if tok.lemma not in stoplist and _noun_candidate(tok.lemma):
            out.append(replace(tok, kind=TokenKind.NOUN_CANDIDATE))
        else:
            out.append(tok)
        i += 1
    return out


def preprocess(
    text: str,
    stoplist: StopwordList | None = None,
    gazetteer: Gazetteer | None = None,
    unicode_letters: bool = False,
) -> list[Token]:
    """Full chain: tokenize, stopword removal, lemmatize, candidate marking."""
    stoplist = stoplist if stoplist is not None else default_stopwords()
    tokens = tokenize(text, unicode_letters=unicode_letters)
    tokens = remove_stopwords(tokens, stoplist)
    tokens = lemmatize_all(tokens)
    return extract_nouns_entities(tokens, gazetteer, stoplist)
