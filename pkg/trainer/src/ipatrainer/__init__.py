"""CTC fine-tuning bridge.

Consumes the toolkit's manifest and vocabulary files, fine-tunes a
wav2vec-style encoder with CTC at toy scale, and writes hypothesis
files the toolkit's ``eval`` command can score. All communication with
the toolkit is through those file formats; nothing is imported from it.
"""

__version__ = "0.1.0"
