"""Small encoder-decoder transformer with a shared, extensible embedding."""

import torch
from torch import nn

PRESETS = {
    "tiny": {"d_model": 128, "n_heads": 4, "n_layers": 2, "d_ff": 256},
    "small": {"d_model": 256, "n_heads": 4, "n_layers": 2, "d_ff": 512},
}
MAX_POSITIONS = 128


class Seq2Seq(nn.Module):
    def __init__(self, vocab_size, pad_id, preset="tiny"):
        super().__init__()
        if preset not in PRESETS:
            raise ValueError(f"unknown preset {preset!r}; expected {sorted(PRESETS)}")
        p = PRESETS[preset]
        self.preset = preset
        self.pad_id = pad_id
        self.d_model = p["d_model"]
        self.embed = nn.Embedding(vocab_size, self.d_model, padding_idx=pad_id)
        self.pos = nn.Embedding(MAX_POSITIONS, self.d_model)
        self.encoder = nn.TransformerEncoder(
            nn.TransformerEncoderLayer(
                self.d_model, p["n_heads"], p["d_ff"], batch_first=True,
                dropout=0.1, norm_first=True),
            p["n_layers"], enable_nested_tensor=False)
        self.decoder = nn.TransformerDecoder(
            nn.TransformerDecoderLayer(
                self.d_model, p["n_heads"], p["d_ff"], batch_first=True,
                dropout=0.1, norm_first=True),
            p["n_layers"])
        # output projection tied to the embedding so vocabulary growth only
        # touches one matrix
        self.out_bias = nn.Parameter(torch.zeros(vocab_size))

    def n_parameters(self):
        return sum(p.numel() for p in self.parameters())

    def _embed(self, ids):
        positions = torch.arange(ids.size(1), device=ids.device)
        return self.embed(ids) + self.pos(positions)[None, :, :]

    def encode(self, src_ids):
        mask = src_ids.eq(self.pad_id)
        return self.encoder(self._embed(src_ids), src_key_padding_mask=mask), mask

    def decode(self, tgt_ids, memory, memory_pad_mask):
        size = tgt_ids.size(1)
        causal = torch.triu(
            torch.ones(size, size, dtype=torch.bool, device=tgt_ids.device), 1)
        hidden = self.decoder(
            self._embed(tgt_ids), memory,
            tgt_mask=causal,
            tgt_key_padding_mask=tgt_ids.eq(self.pad_id),
            memory_key_padding_mask=memory_pad_mask)
        return hidden @ self.embed.weight.T + self.out_bias

    def forward(self, src_ids, tgt_in_ids):
        memory, memory_pad_mask = self.encode(src_ids)
        return self.decode(tgt_in_ids, memory, memory_pad_mask)

    @torch.no_grad()
    def grow_vocab(self, n_new, seed):
        """Add rows for new token ids: mean of existing rows plus seeded noise."""
        if n_new <= 0:
            return
        gen = torch.Generator().manual_seed(seed)
        old = self.embed.weight.data
        mean = old.mean(dim=0, keepdim=True)
        noise = torch.randn(n_new, old.size(1), generator=gen) * 0.02
        new_embed = nn.Embedding(old.size(0) + n_new, old.size(1),
                                 padding_idx=self.pad_id)
        new_embed.weight.data = torch.cat([old, mean + noise], dim=0)
        self.embed = new_embed
        self.out_bias = nn.Parameter(
            torch.cat([self.out_bias.data, torch.zeros(n_new)]))


def extend_vocab(model, vocab, manifest_tokens, seed=42):
    """Register manifest special tokens with the vocabulary and the model.

    Returns token -> id. The new embedding rows are initialized to the mean
    of the existing rows plus small seeded noise, so re-running with the same
    seed reproduces them exactly.
    """
    mapping = vocab.add_tokens(manifest_tokens)
    model.grow_vocab(len(mapping), seed=seed)
    return mapping
