"""Seeded pseudo-translator: determinism, label correctness, error injection."""

import pytest

from mtconstrain import datagen, metrics, mockmt
from mtconstrain.mockmt import ErrorSpec, simulate
from mtconstrain.templates import HardTemplateVariant, TriggerScheme

from conftest import EVAL_LANGS, multiparallel_by_row_id, tile_corpus


def make_rows(multiparallel, src="en", tgt="de", n=60):
    corpus = tile_corpus(multiparallel, src, tgt, n)
    rows = datagen.build_inference_set(corpus, seed=42)
    return rows, multiparallel_by_row_id(multiparallel, corpus)


class TestErrorSpec:
    def test_valid(self):
        ErrorSpec(0.25, 0.25, 0.25, 0.25)
        ErrorSpec()

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            ErrorSpec(p_ot=-0.1)

    def test_sum_above_one_rejected(self):
        with pytest.raises(ValueError):
            ErrorSpec(0.5, 0.5, 0.5, 0.0)


class TestSimulate:
    def test_deterministic(self, multiparallel):
        rows, by_id = make_rows(multiparallel)
        spec = ErrorSpec(0.2, 0.1, 0.05, 0.05, seed=7)
        assert simulate(rows, by_id, spec) == simulate(rows, by_id, spec)

    def test_seed_changes_draws(self, multiparallel):
        rows, by_id = make_rows(multiparallel)
        a = simulate(rows, by_id, ErrorSpec(0.5, 0.0, 0.0, 0.0, seed=1))
        b = simulate(rows, by_id, ErrorSpec(0.5, 0.0, 0.0, 0.0, seed=2))
        assert a != b

    def test_all_zero_rates_echo_reference(self, multiparallel, profiles):
        rows, by_id = make_rows(multiparallel)
        preds, labels = simulate(rows, by_id, ErrorSpec())
        assert all(lab["injected"] == "clean" for lab in labels)
        assert all(p["output"] == r["raw_target"] for p, r in zip(preds, rows))
        report = metrics.evaluate(preds, rows, profiles)
        m = report.per_direction["en-de"]
        assert m["bleu"] == pytest.approx(100.0)
        assert (m["ot_ratio"], m["sc_ratio"], m["oug_ratio"]) == (0.0, 0.0, 0.0)

    def test_label_schema(self, multiparallel):
        rows, by_id = make_rows(multiparallel)
        preds, labels = simulate(rows, by_id, ErrorSpec(0.3, 0.2, 0.1, 0.1))
        assert [p["id"] for p in preds] == [r["id"] for r in rows]
        for lab in labels:
            assert lab["injected"] in ("clean", "ot", "sc", "oug_over", "oug_under")
            if lab["injected"] == "ot":
                assert lab["ot_lang"] in EVAL_LANGS
            else:
                assert lab["ot_lang"] is None

    def test_ot_outputs_are_other_language_renderings(self, multiparallel):
        rows, by_id = make_rows(multiparallel, n=120)
        preds, labels = simulate(rows, by_id, ErrorSpec(p_ot=1.0))
        for p, lab in zip(preds, labels):
            assert lab["injected"] == "ot"
            assert lab["ot_lang"] not in ("en", "de")
            assert p["output"] == by_id[p["id"]][lab["ot_lang"]]

    def test_sc_injection_detected(self, multiparallel, profiles):
        rows, by_id = make_rows(multiparallel)
        preds, _ = simulate(rows, by_id, ErrorSpec(p_sc=1.0))
        assert all(p["output"] == r["src_text"] for p, r in zip(preds, rows))
        report = metrics.evaluate(preds, rows, profiles)
        assert report.per_direction["en-de"]["sc_ratio"] == 1.0

    def test_oug_injection_detected(self, multiparallel):
        rows, by_id = make_rows(multiparallel)
        over_preds, _ = simulate(rows, by_id, ErrorSpec(p_oug_over=1.0))
        under_preds, _ = simulate(rows, by_id, ErrorSpec(p_oug_under=1.0))
        for p, r in zip(over_preds, rows):
            assert metrics.is_over_under(p["output"], r["raw_target"], "de") is True
        for p, r in zip(under_preds, rows):
            assert metrics.is_over_under(p["output"], r["raw_target"], "de") is True

    def test_oug_char_units_for_zh(self, multiparallel):
        rows, by_id = make_rows(multiparallel, src="en", tgt="zh", n=30)
        preds, _ = simulate(rows, by_id, ErrorSpec(p_oug_over=1.0))
        for p, r in zip(preds, rows):
            assert metrics.is_over_under(p["output"], r["raw_target"], "zh") is True

    def test_clean_outputs_carry_declared_prefix(self, multiparallel):
        rows, by_id = make_rows(multiparallel, n=20)
        scheme = TriggerScheme(1, 1, EVAL_LANGS)
        preds, _ = simulate(rows, by_id, ErrorSpec(), mode="act", scheme=scheme)
        assert all(p["output"].startswith("<act_c_0> <act_t_de_0> ") for p in preds)
        preds, _ = simulate(rows, by_id, ErrorSpec(), mode="tect",
                            variant=HardTemplateVariant.TECT2)
        assert all(p["output"].startswith("translate to German: ") for p in preds)

    def test_injected_errors_emitted_bare(self, multiparallel):
        rows, by_id = make_rows(multiparallel, n=40)
        scheme = TriggerScheme(1, 1, EVAL_LANGS)
        preds, labels = simulate(rows, by_id, ErrorSpec(p_sc=1.0),
                                 mode="act", scheme=scheme)
        assert all(not p["output"].startswith("<act_") for p in preds)

    def test_missing_multiparallel_entry(self, multiparallel):
        rows, _ = make_rows(multiparallel, n=5)
        with pytest.raises(mockmt.MissingMultiparallel):
            simulate(rows, {}, ErrorSpec(p_ot=1.0))

    def test_rates_roughly_respected(self, multiparallel):
        rows, by_id = make_rows(multiparallel, n=400)
        _, labels = simulate(rows, by_id, ErrorSpec(0.25, 0.0, 0.0, 0.0, seed=9))
        frac = sum(lab["injected"] == "ot" for lab in labels) / len(labels)
        assert 0.15 < frac < 0.35
