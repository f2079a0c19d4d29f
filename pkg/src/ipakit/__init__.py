"""IPA transcription toolkit.

Feature-aware transcription metrics (PER, PFER), greedy phone
segmentation over an articulatory feature inventory, rule-based
grapheme-to-phoneme conversion, and a deterministic speech-corpus
curation pipeline. The functionality is exposed as a FastAPI service;
the bundled CLI is a thin client over the same endpoints.
"""

__version__ = "0.1.0"
