import random

import pytest

from conftest import WORD_POOL, brute_force_xlex, random_records
from xlex.builder import LexiconEntry
from xlex.engine import (
    ModelConfig, SentenceVerdict, cumulative_value, sentence_sentiment,
    word_sentiment,
)
from xlex.merge import combine, prepare_lm


def entry(word, category, **kwargs):
    defaults = dict(count=1, shap_sum=0.5, shap_avg=0.5, shap_max=0.5,
                    shap_min=0.5, count_total=1)
    defaults.update(kwargs)
    return LexiconEntry(word=word, category=category, **defaults)


@pytest.fixture
def small_lexicon(tiny_resources):
    xlex = {
        "gain": entry("gain", "positive", count=4, shap_sum=0.8, shap_avg=0.2,
                      shap_max=0.5, shap_min=0.05, count_opp=2,
                      shap_sum_opp=0.2, shap_avg_opp=0.1, shap_max_opp=0.15,
                      shap_min_opp=0.05, count_total=6, shap_ratio=2 / 3,
                      shap_ratio_opp=1 / 3),
        "loss": entry("loss", "negative", count=3, shap_sum=0.9, shap_avg=0.3,
                      shap_max=0.6, shap_min=0.1, count_total=3),
    }
    lm = prepare_lm(["gain"], ["loss", "writeoff"], tiny_resources)
    return combine(xlex, lm)


def random_lexicon(seed, tiny_resources, n_records=500):
    rng = random.Random(seed)
    xlex = brute_force_xlex(random_records(rng, n_records, 30), tiny_resources)
    lm_pos = [w for w in ("gain", "profit", "improve", "win") if w not in ("",)]
    lm_neg = ["loss", "decline", "risk", "writeoff"]
    return combine(xlex, prepare_lm(lm_pos, lm_neg, tiny_resources))


def random_sentence(rng, n_words=8):
    words = []
    for _ in range(n_words):
        word = rng.choice(WORD_POOL + ["the", "zzzxq", "and"])
        if rng.random() < 0.2:
            word = word.capitalize()
        if rng.random() < 0.2:
            word += rng.choice([".", ",", "!"])
        words.append(word)
    return " ".join(words)


AVG = frozenset({"shap_avg"})


class TestCumulativeValue:
    def test_absent_entry(self):
        assert cumulative_value(None, "xlex", "primary", AVG) == 0.0

    def test_none_category(self, small_lexicon):
        row = small_lexicon.entries["writeoff"]
        assert cumulative_value(row, "xlex", "primary", AVG) == 0.0
        assert cumulative_value(row, "xlex", "opposite", AVG) == 0.0

    def test_positive_primary(self, small_lexicon):
        row = small_lexicon.entries["gain"]
        assert cumulative_value(row, "xlex", "primary", AVG) == pytest.approx(0.2)

    def test_positive_opposite_is_negative(self, small_lexicon):
        row = small_lexicon.entries["gain"]
        assert cumulative_value(row, "xlex", "opposite", AVG) == pytest.approx(-0.1)

    def test_negative_primary(self, small_lexicon):
        row = small_lexicon.entries["loss"]
        assert cumulative_value(row, "xlex", "primary", AVG) == pytest.approx(-0.3)

    def test_negative_opposite_is_positive(self, small_lexicon):
        row = small_lexicon.entries["loss"]
        assert cumulative_value(row, "xlex", "opposite", AVG) == 0.0

    def test_multiple_features_sum(self, small_lexicon):
        row = small_lexicon.entries["gain"]
        features = frozenset({"shap_avg", "shap_ratio", "count"})
        assert cumulative_value(row, "xlex", "primary", features) \
            == pytest.approx(0.2 + 2 / 3 + 4)
        assert cumulative_value(row, "xlex", "opposite", features) \
            == pytest.approx(-(0.1 + 1 / 3 + 2))


class TestWordSentiment:
    def test_combined_hand_example(self, small_lexicon):
        config = ModelConfig(lexicon_selector="combined", decision_features=AVG,
                             c_xlp=0.3, c_xlo=0.1, c_lmp=0.1, c_lmo=0.5)
        expected = 0.3 * 0.2 + 0.1 * (-0.1) + 0.1 * 1.0
        assert word_sentiment("gain", small_lexicon, config) == pytest.approx(expected)

    def test_xlex_selector_ignores_lm(self, small_lexicon):
        config = ModelConfig(lexicon_selector="xlex", decision_features=AVG,
                             c_xlp=0.3, c_xlo=0.1)
        assert word_sentiment("gain", small_lexicon, config) \
            == pytest.approx(0.3 * 0.2 - 0.1 * 0.1)

    def test_lm_selector_ignores_xlex(self, small_lexicon):
        config = ModelConfig(lexicon_selector="lm", decision_features=AVG,
                             c_lmp=0.1, c_lmo=0.5)
        assert word_sentiment("loss", small_lexicon, config) == pytest.approx(-0.1)

    def test_unknown_word(self, small_lexicon):
        assert word_sentiment("zzzxq", small_lexicon, ModelConfig()) == 0.0


class TestSentenceSentiment:
    def test_tokenized_and_lemmatized(self, small_lexicon, tiny_resources):
        config = ModelConfig(lexicon_selector="xlex", decision_features=AVG,
                             c_xlp=1.0, c_xlo=1.0)
        verdict = sentence_sentiment("Gains ahead!", small_lexicon, config,
                                     tiny_resources)
        assert verdict.value == pytest.approx(0.2 - 0.1)
        assert verdict.matched_words == 1
        assert verdict.polarity == "positive"

    def test_repeated_word_counts_twice(self, small_lexicon, tiny_resources):
        config = ModelConfig(lexicon_selector="xlex", decision_features=AVG,
                             c_xlp=1.0, c_xlo=1.0)
        once = sentence_sentiment("loss", small_lexicon, config, tiny_resources)
        twice = sentence_sentiment("loss loss", small_lexicon, config, tiny_resources)
        assert twice.value == pytest.approx(2 * once.value)
        assert twice.matched_words == 2
        assert twice.polarity == "negative"

    def test_no_match_is_neutral(self, small_lexicon, tiny_resources):
        verdict = sentence_sentiment("the zzzxq and", small_lexicon,
                                     ModelConfig(), tiny_resources)
        assert verdict == SentenceVerdict(value=0.0, polarity="neutral",
                                          matched_words=0)

    def test_empty_sentence(self, small_lexicon, tiny_resources):
        verdict = sentence_sentiment("", small_lexicon, ModelConfig(), tiny_resources)
        assert verdict.polarity == "neutral"


class TestConfigValidation:
    def test_bad_selector(self):
        with pytest.raises(ValueError):
            ModelConfig(lexicon_selector="bogus")

    def test_empty_features(self):
        with pytest.raises(ValueError):
            ModelConfig(decision_features=frozenset())

    def test_unknown_feature(self):
        with pytest.raises(ValueError):
            ModelConfig(decision_features=frozenset({"shap_median"}))

    def test_nonpositive_coefficient(self):
        with pytest.raises(ValueError):
            ModelConfig(c_xlp=0.0)


class TestScoringInvariants:
    @pytest.mark.parametrize("k", [0.5, 2.0, 10.0])
    def test_coefficient_scaling(self, k, tiny_resources):
        lexicon = random_lexicon(21, tiny_resources)
        base = ModelConfig(c_xlp=0.3, c_xlo=0.1, c_lmp=0.1, c_lmo=0.5)
        scaled = ModelConfig(c_xlp=0.3 * k, c_xlo=0.1 * k, c_lmp=0.1 * k,
                             c_lmo=0.5 * k)
        rng = random.Random(22)
        for _ in range(50):
            text = random_sentence(rng)
            v1 = sentence_sentiment(text, lexicon, base, tiny_resources).value
            v2 = sentence_sentiment(text, lexicon, scaled, tiny_resources).value
            assert abs(v2 - k * v1) <= 1e-12 * max(1.0, abs(k * v1))

    def test_token_permutation(self, tiny_resources):
        lexicon = random_lexicon(31, tiny_resources)
        config = ModelConfig()
        rng = random.Random(32)
        for _ in range(30):
            words = random_sentence(rng).split()
            shuffled = words[:]
            rng.shuffle(shuffled)
            v1 = sentence_sentiment(" ".join(words), lexicon, config,
                                    tiny_resources).value
            v2 = sentence_sentiment(" ".join(shuffled), lexicon, config,
                                    tiny_resources).value
            assert abs(v1 - v2) <= 1e-12 * max(1.0, abs(v1))

    def test_concatenation_additivity(self, tiny_resources):
        lexicon = random_lexicon(41, tiny_resources)
        config = ModelConfig()
        rng = random.Random(42)
        for _ in range(30):
            a, b = random_sentence(rng), random_sentence(rng)
            va = sentence_sentiment(a, lexicon, config, tiny_resources).value
            vb = sentence_sentiment(b, lexicon, config, tiny_resources).value
            vab = sentence_sentiment(a + " " + b, lexicon, config,
                                     tiny_resources).value
            assert abs(vab - (va + vb)) <= 1e-12 * max(1.0, abs(va + vb))

    def test_sign_rule_single_polarity_words(self, tiny_resources):
        """A sentence built only of purely positive words never scores < 0."""
        xlex = {"gain": entry("gain", "positive", shap_avg=0.2),
                "profit": entry("profit", "positive", shap_avg=0.4)}
        lm = prepare_lm(["gain", "profit"], [], tiny_resources)
        lexicon = combine(xlex, lm)
        config = ModelConfig()
        rng = random.Random(52)
        for _ in range(30):
            text = " ".join(rng.choice(["gain", "profit", "gains"])
                            for _ in range(rng.randint(1, 10)))
            verdict = sentence_sentiment(text, lexicon, config, tiny_resources)
            assert verdict.value >= 0
            assert verdict.polarity == "positive"
