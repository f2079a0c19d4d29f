"""CTC fine-tuning loop with a per-step loss log."""
from __future__ import annotations

import logging
from dataclasses import asdict
from pathlib import Path

import numpy as np
import torch

from .config import TrainConfig
from .data import Example, load_training_set, read_vocab
from .model import build_model

logger = logging.getLogger(__name__)

CHECKPOINT_NAME = "checkpoint.pt"
LOSS_LOG_NAME = "loss_log.tsv"


def make_batches(examples: list[Example], batch_size: int) -> list[list[Example]]:
    ordered = sorted(examples, key=lambda e: e.clip_id)
    return [ordered[i : i + batch_size] for i in range(0, len(ordered), batch_size)]


def collate(batch: list[Example]) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    max_samples = max(len(e.samples) for e in batch)
    max_labels = max((len(e.label_ids) for e in batch), default=0)
    max_labels = max(max_labels, 1)
    inputs = torch.zeros(len(batch), max_samples)
    mask = torch.zeros(len(batch), max_samples, dtype=torch.long)
    labels = torch.full((len(batch), max_labels), -100, dtype=torch.long)
    for row, example in enumerate(batch):
        n = len(example.samples)
        inputs[row, :n] = torch.from_numpy(np.ascontiguousarray(example.samples))
        mask[row, :n] = 1
        for col, label in enumerate(example.label_ids):
            labels[row, col] = label
    return inputs, mask, labels


def linear_warmup_decay(step: int, warmup: int, total: int) -> float:
    """LR multiplier: linear warmup, then linear decay to zero."""
    if warmup > 0 and step < warmup:
        return step / warmup
    if total <= warmup:
        return 1.0
    return max(0.0, (total - step) / (total - warmup))


def train(config: TrainConfig) -> dict:
    """Run fine-tuning; returns paths of the checkpoint and loss log.

    The loss log holds one ``step<TAB>loss`` line per optimizer step.
    With ``epochs=0`` (or ``max_steps=0``) the saved checkpoint is the
    initialization and the log is empty.
    """
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    vocab = read_vocab(config.vocab_path)
    examples = load_training_set(config.train_manifest, vocab, config.audio_root)

    model = build_model(
        config.model, len(vocab), vocab.blank_index, config.loss_reduction, config.seed
    )
    if config.freeze_feature_extractor:
        model.freeze_feature_encoder()
    model.train()

    batches = make_batches(examples, config.batch_size)
    steps_per_epoch = len(batches)
    total_steps = steps_per_epoch * config.epochs
    if config.max_steps is not None:
        total_steps = min(total_steps, config.max_steps)
    optimizer = torch.optim.AdamW(
        [p for p in model.parameters() if p.requires_grad], lr=config.learning_rate
    )
    scheduler = torch.optim.lr_scheduler.LambdaLR(
        optimizer, lambda step: linear_warmup_decay(step, config.warmup_steps, max(total_steps, 1))
    )

    loss_lines: list[str] = []
    step = 0
    done = total_steps == 0
    while not done:
        for batch in batches:
            inputs, mask, labels = collate(batch)
            output = model(input_values=inputs, attention_mask=mask, labels=labels)
            optimizer.zero_grad()
            output.loss.backward()
            optimizer.step()
            scheduler.step()
            step += 1
            loss_lines.append(f"{step}\t{output.loss.item():.6f}")
            if step >= total_steps:
                done = True
                break

    log_path = out_dir / LOSS_LOG_NAME
    log_path.write_text("\n".join(loss_lines) + ("\n" if loss_lines else ""), encoding="utf-8")

    checkpoint_path = out_dir / CHECKPOINT_NAME
    torch.save(
        {
            "model_state": model.state_dict(),
            "model_config": model.config.to_dict(),
            "train_config": asdict(config),
            "vocab": vocab.token_to_index,
        },
        checkpoint_path,
    )
    logger.info("trained %d steps; checkpoint at %s", step, checkpoint_path)
    return {"checkpoint": str(checkpoint_path), "loss_log": str(log_path), "steps": step}
