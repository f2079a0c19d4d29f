"""Encoder construction: tiny random-init for CI, or a pretrained checkpoint."""
from __future__ import annotations

import torch
from transformers import Wav2Vec2Config, Wav2Vec2ForCTC


def tiny_config(vocab_size: int, blank_index: int, loss_reduction: str) -> Wav2Vec2Config:
    """A deliberately small encoder that trains in seconds on CPU."""
    return Wav2Vec2Config(
        vocab_size=vocab_size,
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        conv_dim=[32, 32],
        conv_stride=[4, 4],
        conv_kernel=[8, 8],
        num_conv_pos_embeddings=16,
        num_conv_pos_embedding_groups=2,
        apply_spec_augment=False,
        # The CTC head treats pad_token_id as the blank symbol.
        pad_token_id=blank_index,
        ctc_loss_reduction=loss_reduction,
        ctc_zero_infinity=True,
    )


def build_model(
    model_spec: str,
    vocab_size: int,
    blank_index: int,
    loss_reduction: str,
    seed: int,
) -> Wav2Vec2ForCTC:
    torch.manual_seed(seed)
    if model_spec == "tiny":
        return Wav2Vec2ForCTC(tiny_config(vocab_size, blank_index, loss_reduction))
    model = Wav2Vec2ForCTC.from_pretrained(
        model_spec,
        vocab_size=vocab_size,
        pad_token_id=blank_index,
        ctc_loss_reduction=loss_reduction,
        ctc_zero_infinity=True,
        ignore_mismatched_sizes=True,
    )
    return model


def model_from_checkpoint(payload: dict) -> Wav2Vec2ForCTC:
    config = Wav2Vec2Config.from_dict(payload["model_config"])
    model = Wav2Vec2ForCTC(config)
    model.load_state_dict(payload["model_state"])
    model.eval()
    return model
