"""Character n-gram language identification."""

import math

import pytest

from mtconstrain import langid

from conftest import EVAL_LANGS


class TestNormalizeForNgrams:
    def test_casefold_and_classes(self):
        assert langid.normalize_for_ngrams("Hello, World! 42") == "hello¤ world¤ 00"

    def test_whitespace_collapsed(self):
        assert langid.normalize_for_ngrams("  a \t b\n\nc  ") == "a b c"

    def test_nfc_applied(self):
        assert langid.normalize_for_ngrams("Café") == "café"


class TestScriptClass:
    @pytest.mark.parametrize("text,script", [
        ("Der Hund läuft.", "latin"),
        ("Собака бежит быстро.", "cyrillic"),
        ("这只狗跑得很快。", "han"),
        ("कुत्ता तेज़ दौड़ता है।", "devanagari"),
        ("الكلب يركض بسرعة", "arabic"),
        ("개가 빨리 달린다", "hangul"),
        ("犬はとても速く走ります", "kana"),  # Han folds into kana
    ])
    def test_dominant_scripts(self, text, script):
        assert langid.script_class(text) == script

    def test_mixed_below_threshold(self):
        assert langid.script_class("hello привет hello привет") is None

    def test_no_letters(self):
        assert langid.script_class("123 !?") is None


class TestTrainProfile:
    def test_insufficient_text(self):
        with pytest.raises(langid.InsufficientText):
            langid.train_profile("en", "too short")

    def test_training_is_deterministic_and_round_trips(self, tmp_path):
        text = ("the quick brown fox jumps over the lazy dog and keeps running "
                "through fields of golden wheat near the old stone mill ") * 120
        a = langid.train_profile("en", text)
        b = langid.train_profile("en", [text])  # chunked input, same content
        assert a.to_json() == b.to_json()
        path = langid.save_profile(a, tmp_path)
        assert path.name == "en.json"
        loaded = langid.load_profiles(tmp_path)[0]
        assert loaded.to_json() == a.to_json()
        assert loaded.training_chars == a.training_chars >= langid.MIN_TRAINING_CHARS

    def test_per_n_probability_mass_bounded(self):
        text = ("alpha beta gamma delta epsilon zeta eta theta iota kappa ") * 250
        profile = langid.train_profile("en", text)
        for n, counts in profile.gram_counts.items():
            mass = sum(math.exp(profile.log_prob(n, g)) for g in counts)
            # observed grams can never exceed the full (smoothed) mass
            assert mass <= 1.0 + 1e-9


class TestDetect:
    @pytest.mark.parametrize("text,lang", [
        ("Der Hund läuft schnell über die Straße.", "de"),
        ("Le chien court rapidement dans le jardin.", "fr"),
        ("The dog runs quickly across the field.", "en"),
        ("Pes běží rychle přes starou louku u řeky.", "cs"),
        ("Câinele aleargă repede prin grădina veche.", "ro"),
        ("Собака быстро бежит через старое поле.", "ru"),
        ("Собака швидко біжить через старе поле.", "uk"),
        ("这只狗跑得很快，穿过古老的田野。", "zh"),
        ("कुत्ता पुराने खेत के पार तेज़ी से दौड़ता है।", "hi"),
    ])
    def test_bundled_profiles_short_sentences(self, profiles, text, lang):
        assert langid.detect(text, profiles).top == lang

    def test_posteriors_sum_to_one(self, profiles):
        result = langid.detect("Un texte en français pour vérifier.", profiles)
        assert sum(p for _, p in result.ranked) == pytest.approx(1.0, abs=1e-9)
        assert all(0.0 <= p <= 1.0 for _, p in result.ranked)

    def test_all_profile_langs_ranked(self, profiles):
        result = langid.detect("Guten Morgen allerseits.", profiles)
        assert {lang for lang, _ in result.ranked} == set(EVAL_LANGS)

    def test_script_prefilter_zeroes_other_scripts(self, profiles):
        result = langid.detect("Доброго ранку, як справи сьогодні?", profiles)
        posterior = dict(result.ranked)
        for lang in EVAL_LANGS:
            if lang not in ("ru", "uk"):
                assert posterior[lang] == 0.0
        assert posterior["ru"] + posterior["uk"] == pytest.approx(1.0, abs=1e-9)

    def test_profile_order_invariance(self, profiles):
        text = "Dobré ráno, jak se dnes máte?"
        forward = langid.detect(text, profiles)
        backward = langid.detect(text, list(reversed(profiles)))
        assert forward.ranked == backward.ranked

    def test_empty_text(self, profiles):
        for text in ("", "   ", "1234 !?"):
            with pytest.raises(langid.EmptyText):
                langid.detect(text, profiles)

    def test_too_few_profiles(self, profiles):
        with pytest.raises(langid.NoProfiles):
            langid.detect("hello world", profiles[:1])

    def test_deterministic(self, profiles):
        text = "Ce restaurant près de la gare est excellent."
        assert langid.detect(text, profiles) == langid.detect(text, profiles)


class TestBundledProfiles:
    def test_covers_eval_languages(self, profiles):
        assert sorted(p.lang for p in profiles) == sorted(EVAL_LANGS)

    def test_all_meet_training_minimum(self, profiles):
        for p in profiles:
            assert p.training_chars >= langid.MIN_TRAINING_CHARS

    def test_missing_directory(self, tmp_path):
        with pytest.raises(langid.NoProfiles):
            langid.load_profiles(tmp_path)
