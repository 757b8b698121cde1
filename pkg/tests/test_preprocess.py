import pytest

from mindstream.model import Category
from mindstream.preprocess import (
    NoVerbError,
    RawSentence,
    adjective_pairs,
    annotate,
    expand_adjective_pairs,
    filter_interrogative,
    segment,
    segment_hosted,
    strip_speech,
    tokenize,
)


def sent(text, index=1):
    return RawSentence(text, index)


class TestSegment:
    def test_compound_sentence_dissolves(self, lexicon):
        pieces = segment(
            "Der Wolf legte sich wieder ins Bett und fing an zu schnarchen.", lexicon
        )
        assert [s.text for s in pieces] == [
            "Der Wolf legte sich wieder ins Bett",
            "fing an zu schnarchen.",
        ]
        assert [s.stream_index for s in pieces] == [1, 2]

    def test_simple_sentence_stays_whole(self, lexicon):
        pieces = segment("Der Jäger ging vorbei.", lexicon)
        assert [s.text for s in pieces] == ["Der Jäger ging vorbei."]

    def test_empty_input(self, lexicon):
        assert segment("", lexicon) == []
        assert segment("   \n ", lexicon) == []

    def test_conjunction_without_verbs_on_both_sides_is_kept(self, lexicon):
        pieces = segment("Der Wolf und der Jäger gingen.", lexicon)
        assert len(pieces) == 1

    def test_multiple_terminator_sentences(self, lexicon):
        pieces = segment("Der Jäger ging vorbei. Der Wolf lag im Bett.", lexicon)
        assert len(pieces) == 2
        assert pieces[1].stream_index == 2

    def test_terminator_inside_quotes_does_not_split(self, lexicon):
        pieces = segment('Er sagte, "Ich muss einmal nachsehen." Dann ging er.', lexicon)
        assert len(pieces) == 2
        assert pieces[0].text.startswith("Er sagte")

    def test_conjunction_inside_quotes_is_ignored(self, lexicon):
        text = '"Der Wolf lag im Bett und der Jäger ging vorbei"'
        assert len(segment(text, lexicon)) == 1

    def test_hosted_groups_clauses_of_one_sentence(self, lexicon):
        hosts = segment_hosted(
            "Der Wolf legte sich ins Bett und fing an zu schnarchen. Der Jäger ging vorbei.",
            lexicon,
        )
        assert [len(h) for h in hosts] == [2, 1]

    def test_start_index_offsets_numbering(self, lexicon):
        pieces = segment("Der Jäger ging vorbei.", lexicon, start_index=7)
        assert pieces[0].stream_index == 7


class TestStripSpeech:
    def test_reported_thought_is_embedded(self, lexicon):
        result, removed = strip_speech(
            sent('Er dachte, "die alte Frau schnarcht so laut"'), lexicon
        )
        assert result.text == "die alte Frau schnarcht so laut"
        assert removed == "Er dachte"

    def test_without_quotes_passes_through(self, lexicon):
        original = sent("Der Jäger ging vorbei.")
        result, removed = strip_speech(original, lexicon)
        assert result is original and removed is None

    def test_bare_quotation_keeps_content(self, lexicon):
        result, removed = strip_speech(sent('"Ich muss einmal nachsehen."'), lexicon)
        assert result.text == "Ich muss einmal nachsehen."
        assert removed is None

    def test_trailing_speaker_clause(self, lexicon):
        result, removed = strip_speech(sent('"Ich muss nachsehen", sagte der Jäger.'), lexicon)
        assert result.text == "Ich muss nachsehen"
        assert removed == "sagte der Jäger"

    def test_german_quotation_marks(self, lexicon):
        result, removed = strip_speech(sent("Er rief, „der Wolf liegt im Bett“"), lexicon)
        assert result.text == "der Wolf liegt im Bett"
        assert removed == "Er rief"

    def test_non_speech_outside_text_is_kept(self, lexicon):
        result, removed = strip_speech(sent('Der Jäger sah das "Haus" im Wald.'), lexicon)
        assert result.text == 'Der Jäger sah das Haus im Wald.'
        assert removed is None


class TestFilterInterrogative:
    def test_question_dropped(self):
        assert filter_interrogative(sent("Wer bist du?")) is None

    def test_declarative_kept(self):
        s = sent("Der Jäger ging vorbei.")
        assert filter_interrogative(s) is s

    def test_per_sentence_rule_after_segmentation(self, lexicon):
        pieces = segment("Warum? Er trat ein.", lexicon)
        kept = [filter_interrogative(p) for p in pieces]
        assert kept[0] is None and kept[1] is not None


class TestTokenize:
    def test_lexicon_lookup_is_case_insensitive(self, lexicon):
        tokens = tokenize("Der Wolf legte sich ins Bett", lexicon)
        assert [(t.lemma, t.category.value) for t in tokens] == [
            ("der", "OTHER"),
            ("Wolf", "N"),
            ("legen", "V"),
            ("sich", "OTHER"),
            ("ins", "OTHER"),
            ("Bett", "N"),
        ]

    def test_unknown_words_pass_through_as_other(self, lexicon):
        tokens = tokenize("Xylophon klingt", lexicon)
        assert tokens[0].lemma == "Xylophon"
        assert tokens[0].category is Category.OTHER

    def test_punctuation_stripped_from_edges(self, lexicon):
        tokens = tokenize('"Bett," sagte er.', lexicon)
        assert [t.lemma for t in tokens] == ["Bett", "sagen", "er"]


class TestAnnotate:
    def test_worked_first_sentence(self, lexicon):
        ann = annotate(sent("Der Wolf legte sich wieder ins Bett"), lexicon)
        assert ann.actor.lemma == "Wolf"
        assert ann.verb.lemma == "legen"
        assert ann.object.lemma == "Bett"
        assert ann.is_resolved

    def test_pronoun_subject_needs_resolution(self, lexicon):
        ann = annotate(sent("Er trat ein"), lexicon)
        assert ann.actor is None
        assert ann.pronoun.lemma == "er"
        assert ann.verb.lemma == "eintreten"
        assert not ann.is_resolved

    def test_verbless_fragment_raises(self, lexicon):
        with pytest.raises(NoVerbError):
            annotate(sent("Im Bett"), lexicon)

    def test_fronted_noun_becomes_subject_slot(self, lexicon):
        # First-noun-before-verb heuristic: a fronted locative noun wins.
        ann = annotate(sent("Im Bett lag der Wolf"), lexicon)
        assert ann.actor.lemma == "Bett"
        assert ann.verb.lemma == "liegen"
        assert ann.object.lemma == "Wolf"

    def test_subjectless_clause_reports_neither_actor_nor_pronoun(self, lexicon):
        ann = annotate(sent("fing an zu schnarchen"), lexicon)
        assert ann.actor is None and ann.pronoun is None
        assert ann.verb.lemma == "anfangen"
        assert ann.object.lemma == "schnarchen"

    def test_predicative_adjective_becomes_object(self, lexicon):
        ann = annotate(sent("die alte Frau schnarcht so laut"), lexicon)
        assert ann.actor.lemma == "Frau"
        assert ann.verb.lemma == "schnarchen"
        assert ann.object.lemma == "laut"
        assert [(n.lemma, a.lemma) for n, a in ann.facts] == [("Frau", "alt")]

    def test_attributive_adjective_after_verb_is_skipped_for_object(self, lexicon):
        ann = annotate(sent("Der Jäger sah die alte Frau"), lexicon)
        assert ann.object.lemma == "Frau"
        assert [(n.lemma, a.lemma) for n, a in ann.facts] == [("Frau", "alt")]


class TestAdjectivePairs:
    def test_two_pairs_in_document_order(self, lexicon):
        tokens = tokenize("Die alte Frau traf den bösen Wolf", lexicon)
        pairs = adjective_pairs(tokens)
        assert [(n.lemma, a.lemma) for n, a in pairs] == [("Frau", "alt"), ("Wolf", "böse")]

    def test_no_pairs(self, lexicon):
        assert adjective_pairs(tokenize("Der Jäger ging vorbei", lexicon)) == ()

    def test_expand_emits_facts_with_host_position(self, lexicon):
        tokens = tokenize("Die alte Frau traf den bösen Wolf", lexicon)
        facts = expand_adjective_pairs(tokens, 5)
        assert [str(f.key) for f in facts] == ["Frau|sein|alt", "Wolf|sein|böse"]
        assert all(f.position == 5 for f in facts)
