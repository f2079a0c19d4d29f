"""Command-line entry points for training and decoding."""
from __future__ import annotations

import argparse
import logging
import sys

from .config import TrainConfig, TrainerConfigError
from .data import DataError
from .decode import decode_manifest
from .train import train


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ipatrainer", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    train_parser = sub.add_parser("train", help="fine-tune on a manifest")
    train_parser.add_argument("--config", required=True, help="key=value training config")

    decode_parser = sub.add_parser("decode", help="greedy-decode a manifest's audio")
    decode_parser.add_argument("--checkpoint", required=True)
    decode_parser.add_argument("--manifest", required=True)
    decode_parser.add_argument("--out", required=True, help="hypothesis TSV to write")
    decode_parser.add_argument("--audio-root", default="")

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    try:
        if args.command == "train":
            result = train(TrainConfig.from_file(args.config))
            print(f"checkpoint: {result['checkpoint']}")
            print(f"loss_log: {result['loss_log']} ({result['steps']} steps)")
        else:
            decoded, failed = decode_manifest(args.checkpoint, args.manifest, args.out, args.audio_root)
            print(f"decoded {decoded} clips to {args.out}" + (f" ({failed} failed)" if failed else ""))
            if decoded == 0:
                return 1
    except (TrainerConfigError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
