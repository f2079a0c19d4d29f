"""Request/response models for the HTTP API."""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

Mode = Literal["strict", "lenient"]


class HealthResponse(BaseModel):
    status: str
    inventory_size: int
    inventory_digest: str
    locales: list[str]


class LocalesResponse(BaseModel):
    locales: list[str]


class G2PRequest(BaseModel):
    locale: str
    lines: list[str]
    mode: Mode = "lenient"


class G2PResponse(BaseModel):
    locale: str
    lines: list[str]


class SegmentRequest(BaseModel):
    text: str
    mode: Mode = "strict"
    tonal: bool = False


class ResidueChar(BaseModel):
    position: int
    char: str


class SegmentResponse(BaseModel):
    normalized: str
    phones: list[str]
    residue: list[ResidueChar]


class EvalRequest(BaseModel):
    """Evaluation over file contents (TSV text, not server paths)."""

    ref_text: str
    hyp_text: str
    mode: Mode = "lenient"


class LanguageScoreModel(BaseModel):
    locale: str
    per_pct: float
    pfer_pct: float
    per_rate: float
    pfer_rate: float
    per_distance: float
    pfer_distance: float
    utterances: int
    ref_phones: int
    per_utterance_mean: float
    pfer_utterance_mean: float


class EvalResponse(BaseModel):
    languages: list[LanguageScoreModel]
    overall_per_pct: float
    overall_pfer_pct: float
    overall_per_rate: float
    overall_pfer_rate: float


class PrepareRequest(BaseModel):
    """Run the corpus pipeline for a config file on the server host."""

    config_path: str
    seed: int | None = Field(default=None, description="overrides the config seed")


class PrepareResponse(BaseModel):
    out_dir: str
    manifests: dict[str, str]
    vocab_path: str
    log_path: str
    row_counts: dict[str, int]
    removed_by_duration: int
    removed_by_votes: int
    dropped_labels: int
    vocab_size: int
    config_digest: str


class AblateRequest(BaseModel):
    config_path: str
    out_root: str | None = None


class AblateCellModel(BaseModel):
    name: str
    preset: str
    quality_filter: bool
    extra_manifest: str
    languages: list[str]
    status: str
    out_dir: str
    row_counts: dict[str, int]
    error: str = ""


class AblateResponse(BaseModel):
    cells: list[AblateCellModel]
