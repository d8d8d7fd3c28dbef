import re

from hypothesis import given
from hypothesis import strategies as st

from ctrkit.preprocess import (
    Gazetteer,
    StopwordList,
    Token,
    TokenKind,
    default_gazetteer,
    default_stopwords,
    extract_nouns_entities,
    lemmatize,
    lemmatize_all,
    load_gazetteer,
    load_stopwords,
    preprocess,
    remove_stopwords,
    tokenize,
)


def word(surface, position, sentence_start=False):
    return Token(surface, surface.lower(), TokenKind.WORD, position, sentence_start)


class TestTokenize:
    def test_hashtag_extracted_and_interior_punct_dropped(self):
        tokens = tokenize("The WUHAN lab-leak!! #wuhan")
        assert [t.surface for t in tokens if t.kind is TokenKind.WORD] == ["The", "WUHAN"]
        assert [t.lemma for t in tokens if t.kind is TokenKind.HASHTAG] == ["wuhan"]

    def test_empty_text(self):
        assert tokenize("") == []

    def test_digits_dropped(self):
        tokens = tokenize("Adolf Hitler 1933")
        assert [t.surface for t in tokens] == ["Adolf", "Hitler"]

    def test_leading_trailing_punct_stripped(self):
        tokens = tokenize('"hello," she said.')
        assert [t.surface for t in tokens] == ["hello", "she", "said"]

    def test_positions_strictly_increasing(self):
        tokens = tokenize("one two #three four")
        positions = [t.position for t in tokens]
        assert positions == sorted(set(positions))

    def test_sentence_start_flags(self):
        tokens = tokenize("First sentence ends. The next begins")
        by_surface = {t.surface: t.sentence_start for t in tokens}
        assert by_surface["First"] and by_surface["The"]
        assert not by_surface["sentence"] and not by_surface["next"]

    def test_unicode_mode_keeps_accented_words(self):
        assert tokenize("café", unicode_letters=True)
        assert tokenize("café", unicode_letters=False) == []

    @given(st.text(max_size=200))
    def test_hashtag_superset_property(self, text):
        expected = {m.lower() for m in re.findall(r"#([A-Za-z0-9_]+)", text)}
        got = {t.lemma for t in tokenize(text) if t.kind is TokenKind.HASHTAG}
        assert expected <= got

    @given(st.text(max_size=200))
    def test_lemmas_well_formed(self, text):
        for token in preprocess(text):
            assert re.fullmatch(r"[a-z0-9_]+", token.lemma), token

    @given(st.text(max_size=200))
    def test_deterministic(self, text):
        assert tokenize(text) == tokenize(text)


class TestRemoveStopwords:
    def test_basic_removal(self):
        stoplist = StopwordList(frozenset({"the"}), "test")
        tokens = [word("the", 0), word("wuhan", 1)]
        assert [t.surface for t in remove_stopwords(tokens, stoplist)] == ["wuhan"]

    def test_empty_stoplist_is_identity(self):
        stoplist = StopwordList(frozenset(), "test")
        tokens = tokenize("some words here")
        assert remove_stopwords(tokens, stoplist) == tokens

    def test_hashtags_bypass_stoplist(self):
        stoplist = StopwordList(frozenset({"the"}), "test")
        tokens = tokenize("the #the")
        kept = remove_stopwords(tokens, stoplist)
        assert [t.kind for t in kept] == [TokenKind.HASHTAG]

    def test_positions_not_renumbered(self):
        stoplist = StopwordList(frozenset({"the"}), "test")
        tokens = tokenize("the wuhan lab")
        kept = remove_stopwords(tokens, stoplist)
        assert [t.position for t in kept] == [1, 2]

    @given(st.lists(st.sampled_from("the a cat dog wuhan".split()), max_size=30))
    def test_output_is_subsequence(self, words):
        stoplist = StopwordList(frozenset({"the", "a"}), "test")
        tokens = tokenize(" ".join(words))
        kept = remove_stopwords(tokens, stoplist)
        it = iter(tokens)
        assert all(t in it for t in kept)


class TestLemmatize:
    def test_ies_rule(self):
        assert lemmatize(word("theories", 0)).lemma == "theory"

    def test_plural_s(self):
        # "landing" is the noun lemma of "landings" (cf. WordNet)
        assert lemmatize(word("landings", 0)).lemma == "landing"

    def test_no_rule_fires(self):
        assert lemmatize(word("govern", 0)).lemma == "govern"

    def test_doubling_undo(self):
        assert lemmatize(word("running", 0)).lemma == "run"
        assert lemmatize(word("stopped", 0)).lemma == "stop"

    def test_es_after_sibilant(self):
        assert lemmatize(word("churches", 0)).lemma == "church"
        assert lemmatize(word("boxes", 0)).lemma == "box"

    def test_exception_table(self):
        assert lemmatize(word("women", 0)).lemma == "woman"

    def test_hashtag_untouched(self):
        tag = Token("#wuhan", "wuhan", TokenKind.HASHTAG, 0)
        assert lemmatize(tag) == tag


class TestExtractNounsEntities:
    def gaz(self):
        return default_gazetteer()

    def stop(self):
        return default_stopwords()

    def test_gazetteer_beats_capitalization_run(self):
        tokens = lemmatize_all(tokenize("like the Ultimate GigaChad Adolf Hitler today"))
        marked = extract_nouns_entities(tokens, self.gaz(), self.stop())
        lemmas = {t.lemma for t in marked if t.kind is TokenKind.ENTITY_CANDIDATE}
        assert "adolf_hitler" in lemmas
        assert "ultimate_gigachad" in lemmas

    def test_sentence_initial_cap_not_entity(self):
        tokens = lemmatize_all(tokenize("Quagmire is a word"))
        marked = extract_nouns_entities(tokens, Gazetteer({}), self.stop())
        assert all(t.kind is not TokenKind.ENTITY_CANDIDATE for t in marked)

    def test_lowercase_gazetteer_surface_tagged(self):
        tokens = lemmatize_all(tokenize("blaming the jews again"))
        marked = extract_nouns_entities(tokens, self.gaz(), self.stop())
        entity = [t for t in marked if t.kind is TokenKind.ENTITY_CANDIDATE]
        assert [t.lemma for t in entity] == ["jews"]

    def test_noun_candidates_marked(self):
        marked = preprocess("the lunar quagmire deepens")
        kinds = {t.lemma: t.kind for t in marked}
        assert kinds["quagmire"] is TokenKind.NOUN_CANDIDATE

    def test_stoplisted_lemma_not_noun_candidate(self):
        tokens = lemmatize_all(tokenize("the cat"))
        marked = extract_nouns_entities(tokens, Gazetteer({}), self.stop())
        the = [t for t in marked if t.lemma == "the"]
        assert all(t.kind is TokenKind.WORD for t in the)


class TestListLoading:
    def test_load_stopwords(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("The\nand\n\n")
        stoplist = load_stopwords(path, "custom")
        assert stoplist.words == {"the", "and"}
        assert stoplist.source_tag == "custom"

    def test_load_gazetteer(self, tmp_path):
        path = tmp_path / "gaz.txt"
        path.write_text("Moron Labe\tmoron_labe\nbadline-without-tab\n")
        gaz = load_gazetteer(path)
        assert gaz.entries == {("moron", "labe"): "moron_labe"}

    def test_default_lists_nonempty(self):
        assert len(default_stopwords().words) >= 100
        assert default_gazetteer().entries
