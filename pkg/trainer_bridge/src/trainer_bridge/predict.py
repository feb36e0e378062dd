"""Beam decoding into the evaluator's predictions JSONL contract."""

import torch

from .model import Seq2Seq
from .vocab import Vocab, load_manifest_tokens


class VocabMismatch(ValueError):
    """The checkpoint vocabulary does not carry the expected special tokens."""


def _rebuild(checkpoint):
    vocab = Vocab.from_json(checkpoint["vocab_json"])
    model = Seq2Seq(len(vocab), vocab.pad_id, preset=checkpoint["preset"])
    model.load_state_dict(checkpoint["model_state"])
    model.eval()
    return model, vocab


@torch.no_grad()
def beam_decode(model, vocab, src_ids, beam_size, max_len):
    """Length-normalized beam search for one source sequence.

    No output ordering is constrained: trigger tokens may appear anywhere
    the model puts them.
    """
    src = torch.tensor([src_ids], dtype=torch.long)
    memory, memory_mask = model.encode(src)
    beams = [([vocab.bos_id], 0.0)]
    finished = []
    for _ in range(max_len):
        expansions = []
        for seq, score in beams:
            tgt = torch.tensor([seq], dtype=torch.long)
            logits = model.decode(tgt, memory, memory_mask)
            log_probs = torch.log_softmax(logits[0, -1], dim=-1)
            log_probs[vocab.pad_id] = float("-inf")
            top = torch.topk(log_probs, beam_size)
            for lp, tok in zip(top.values.tolist(), top.indices.tolist()):
                expansions.append((seq + [tok], score + lp))
        expansions.sort(key=lambda e: e[1] / (len(e[0]) - 1), reverse=True)
        beams = []
        for seq, score in expansions:
            if seq[-1] == vocab.eos_id:
                finished.append((seq, score / (len(seq) - 1)))
            else:
                beams.append((seq, score))
            if len(beams) == beam_size:
                break
        if not beams or len(finished) >= beam_size:
            break
    if not finished:
        finished = [(seq, score / (len(seq) - 1)) for seq, score in beams]
    best = max(finished, key=lambda e: e[1])[0]
    return vocab.decode(best)


def predict(checkpoint, inference_rows, beam_size=5, max_len=48,
            expected_manifest=None):
    """Decode an inference set into raw predictions JSONL rows.

    Outputs are not stripped; template handling belongs to the evaluator.
    ``expected_manifest`` (a vocabulary-manifest JSON path) verifies that the
    checkpoint was trained with the same special tokens.
    """
    model, vocab = _rebuild(checkpoint)
    if expected_manifest is not None:
        missing = [t for t in load_manifest_tokens(expected_manifest)
                   if t not in vocab]
        if missing:
            raise VocabMismatch(f"checkpoint lacks special tokens: {missing}")
    preds = []
    for row in inference_rows:
        output = beam_decode(model, vocab, vocab.encode(row["input"])[:max_len],
                             beam_size, max_len)
        preds.append({"id": row["id"], "src_lang": row["src_lang"],
                      "tgt_lang": row["tgt_lang"], "output": output})
    return preds
