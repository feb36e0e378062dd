"""Vocabulary building and special-token extension."""

import json

import pytest
import torch

from trainer_bridge.model import Seq2Seq, extend_vocab
from trainer_bridge.vocab import RESERVED, TokenCollision, Vocab


class TestVocab:
    def test_reserved_tokens_first(self):
        v = Vocab.from_texts(["b a", "c a"])
        assert v.id_to_token[: len(RESERVED)] == list(RESERVED)
        assert v.id_to_token[len(RESERVED):] == ["a", "b", "c"]

    def test_encode_decode_round_trip(self):
        v = Vocab.from_texts(["the cat sat"])
        assert v.decode(v.encode("cat sat the")) == "cat sat the"

    def test_unknown_token_maps_to_unk(self):
        v = Vocab.from_texts(["known words"])
        assert v.encode("unknown") == [v.token_to_id["<unk>"]]

    def test_json_round_trip(self):
        v = Vocab.from_texts(["alpha beta"])
        v.add_tokens(["<act_c_0>"])
        back = Vocab.from_json(v.to_json())
        assert back.id_to_token == v.id_to_token


class TestExtendVocab:
    def make(self):
        vocab = Vocab.from_texts(["ein paar deutsche worte hier"])
        model = Seq2Seq(len(vocab), vocab.pad_id)
        return model, vocab

    def test_grows_by_exact_token_count(self):
        model, vocab = self.make()
        before = len(vocab)
        mapping = extend_vocab(model, vocab, ["<act_c_0>", "<act_t_de_0>",
                                              "<act_t_fr_0>"])
        assert len(vocab) == before + 3
        assert sorted(mapping.values()) == [before, before + 1, before + 2]
        assert model.embed.weight.shape[0] == len(vocab)

    def test_same_seed_identical_initialization(self):
        model_a, vocab_a = self.make()
        model_b, vocab_b = self.make()
        model_b.load_state_dict(model_a.state_dict())
        extend_vocab(model_a, vocab_a, ["<t0>", "<t1>"], seed=7)
        extend_vocab(model_b, vocab_b, ["<t0>", "<t1>"], seed=7)
        assert torch.equal(model_a.embed.weight, model_b.embed.weight)

    def test_new_rows_are_mean_plus_noise(self):
        model, vocab = self.make()
        mean = model.embed.weight.data.mean(dim=0)
        extend_vocab(model, vocab, ["<t0>"], seed=3)
        new_row = model.embed.weight.data[-1]
        assert not torch.equal(new_row, mean)
        assert (new_row - mean).abs().max() < 0.2  # small noise around the mean

    def test_collision_with_base_vocabulary(self):
        model, vocab = self.make()
        with pytest.raises(TokenCollision):
            extend_vocab(model, vocab, ["deutsche"])

    def test_model_size_presets_under_budget(self):
        for preset in ("tiny", "small"):
            model = Seq2Seq(500, 0, preset=preset)
            assert model.n_parameters() <= 5_000_000
        with pytest.raises(ValueError):
            Seq2Seq(500, 0, preset="huge")
