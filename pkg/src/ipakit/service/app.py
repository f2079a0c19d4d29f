"""FastAPI application wrapping the toolkit."""
from __future__ import annotations

import dataclasses
from pathlib import Path

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..config import ConfigError, PrepareConfig, load_ablate_config
from ..corpus import PipelineError, IngestError, run_ablate, run_prepare
from ..evaluation import EvalInputError, report_records, score_texts
from ..g2p import (
    TransliterationError,
    UnknownLocaleError,
    available_locales,
    packaged_ruleset,
    transliterate,
)
from ..inventory import default_inventory
from ..segmentation import SegmentationError, normalize_ipa, segment
from . import models


def create_app() -> FastAPI:
    app = FastAPI(title="ipakit", version=__version__)
    inv = default_inventory()

    @app.get("/health", response_model=models.HealthResponse)
    def health() -> models.HealthResponse:
        return models.HealthResponse(
            status="ok",
            inventory_size=len(inv),
            inventory_digest=inv.source_digest,
            locales=list(available_locales()),
        )

    @app.get("/locales", response_model=models.LocalesResponse)
    def locales() -> models.LocalesResponse:
        return models.LocalesResponse(locales=list(available_locales()))

    @app.post("/g2p", response_model=models.G2PResponse)
    def g2p(request: models.G2PRequest) -> models.G2PResponse:
        try:
            ruleset = packaged_ruleset(request.locale)
        except UnknownLocaleError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        try:
            lines = [transliterate(ruleset, line, mode=request.mode) for line in request.lines]
        except TransliterationError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return models.G2PResponse(locale=request.locale, lines=lines)

    @app.post("/segment", response_model=models.SegmentResponse)
    def segment_text(request: models.SegmentRequest) -> models.SegmentResponse:
        normalized = normalize_ipa(request.text, tonal=request.tonal)
        try:
            result = segment(inv, normalized, mode=request.mode)
        except SegmentationError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return models.SegmentResponse(
            normalized=normalized,
            phones=list(result.phones),
            residue=[models.ResidueChar(position=p, char=c) for p, c in result.residue],
        )

    def _score(request: models.EvalRequest) -> models.EvalResponse:
        try:
            report = score_texts(inv, request.ref_text, request.hyp_text, request.mode)
        except (EvalInputError, SegmentationError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        records = report_records(report)
        languages = [models.LanguageScoreModel(**rec) for rec in records if rec["locale"] != "overall"]
        overall = records[-1]
        return models.EvalResponse(
            languages=languages,
            overall_per_pct=overall["per_pct"],
            overall_pfer_pct=overall["pfer_pct"],
            overall_per_rate=overall["per_rate"],
            overall_pfer_rate=overall["pfer_rate"],
        )

    @app.post("/eval", response_model=models.EvalResponse)
    def eval_files(request: models.EvalRequest) -> models.EvalResponse:
        return _score(request)

    @app.post("/iaa", response_model=models.EvalResponse)
    def iaa(request: models.EvalRequest) -> models.EvalResponse:
        # Annotator A text is the reference; same scoring path.
        return _score(request)

    @app.post("/prepare", response_model=models.PrepareResponse)
    def prepare(request: models.PrepareRequest) -> models.PrepareResponse:
        try:
            config = PrepareConfig.from_file(request.config_path)
            if request.seed is not None:
                config = dataclasses.replace(config, seed=request.seed)
            result = run_prepare(config, inv)
        except (ConfigError, PipelineError, IngestError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return models.PrepareResponse(
            out_dir=result.out_dir,
            manifests=result.manifest_paths,
            vocab_path=result.vocab_path,
            log_path=result.log_path,
            row_counts=result.row_counts,
            removed_by_duration=result.removed_by_duration,
            removed_by_votes=result.removed_by_votes,
            dropped_labels=result.dropped_labels,
            vocab_size=result.vocab_size,
            config_digest=result.config_digest,
        )

    @app.post("/ablate", response_model=models.AblateResponse)
    def ablate(request: models.AblateRequest) -> models.AblateResponse:
        try:
            base, axes = load_ablate_config(request.config_path)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        out_root = request.out_root or str(Path(base.out_dir) / "ablate")
        cells = run_ablate(base, axes, out_root)
        return models.AblateResponse(
            cells=[
                models.AblateCellModel(
                    name=c.name,
                    preset=c.preset,
                    quality_filter=c.quality_filter,
                    extra_manifest=c.extra_manifest,
                    languages=list(c.languages),
                    status=c.status,
                    out_dir=c.out_dir,
                    row_counts=c.row_counts,
                    error=c.error,
                )
                for c in cells
            ]
        )

    return app
