"""Command-line client for the toolkit service.

Every subcommand talks to the HTTP API. By default the app runs
in-process over an ASGI transport (no server needed); pass ``--server``
or set ``IPAKIT_SERVER`` to target a running instance instead.
"""
from __future__ import annotations

import asyncio
import json
import sys
from pathlib import Path

import click
import httpx


class ServiceClient:
    def __init__(self, server: str | None = None):
        self._server = server.rstrip("/") if server else None

    def request(self, method: str, path: str, payload: dict | None = None) -> httpx.Response:
        if self._server:
            with httpx.Client(base_url=self._server, timeout=600.0) as client:
                return client.request(method, path, json=payload)
        from .service import create_app

        app = create_app()

        async def go() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://ipakit.internal", timeout=600.0
            ) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())

    def call(self, method: str, path: str, payload: dict | None = None) -> dict:
        try:
            response = self.request(method, path, payload)
        except httpx.HTTPError as exc:
            raise click.ClickException(f"cannot reach service: {exc}") from exc
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            if response.status_code == 404:
                raise click.UsageError(str(detail))
            raise click.ClickException(str(detail))
        return response.json()


@click.group()
@click.option("--server", envvar="IPAKIT_SERVER", default=None, help="Service URL; in-process if omitted.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """IPA transcription toolkit client."""
    ctx.obj = ServiceClient(server)


def _read_lines(input_file: str | None) -> list[str]:
    if input_file and input_file != "-":
        return Path(input_file).read_text(encoding="utf-8").splitlines()
    return sys.stdin.read().splitlines()


@main.command()
@click.option("--locale", required=True, help="Language code of the rule pack.")
@click.argument("input_file", required=False)
@click.option("-o", "--output", default=None, help="Write IPA lines here instead of stdout.")
@click.option("--strict/--lenient", "strict", default=False, help="Fail on unmatched characters.")
@click.pass_obj
def g2p(client: ServiceClient, locale: str, input_file: str | None, output: str | None, strict: bool) -> None:
    """Transliterate orthographic lines to IPA."""
    lines = _read_lines(input_file)
    payload = {"locale": locale, "lines": lines, "mode": "strict" if strict else "lenient"}
    result = client.call("POST", "/g2p", payload)
    text = "\n".join(result["lines"]) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("text", required=False)
@click.option("--in", "input_file", default=None, help="Read IPA lines from a file.")
@click.option("--strict/--lenient", "strict", default=True, help="Reject unmatched characters (default strict).")
@click.option("--tonal", is_flag=True, default=False, help="Strip combining tone diacritics too.")
@click.option("--report", default=None, help="Write JSONL segmentations here.")
@click.pass_obj
def segment(client: ServiceClient, text: str | None, input_file: str | None,
            strict: bool, tonal: bool, report: str | None) -> None:
    """Segment IPA text into inventory phones."""
    lines = [text] if text is not None else _read_lines(input_file)
    mode = "strict" if strict else "lenient"
    records = []
    for line in lines:
        result = client.call("POST", "/segment", {"text": line, "mode": mode, "tonal": tonal})
        records.append(result)
        click.echo(" ".join(result["phones"]))
        for res in result["residue"]:
            click.echo(f"  residue at {res['position']}: {res['char']!r}", err=True)
    if report:
        lines_out = [json.dumps(rec, ensure_ascii=False, sort_keys=True) for rec in records]
        Path(report).write_text("\n".join(lines_out) + "\n", encoding="utf-8")


def _write_eval_report(result: dict, report_path: str) -> None:
    records = [dict(lang, locale=lang["locale"]) for lang in result["languages"]]
    records.append(
        {
            "locale": "overall",
            "per_pct": result["overall_per_pct"],
            "pfer_pct": result["overall_pfer_pct"],
            "per_rate": result["overall_per_rate"],
            "pfer_rate": result["overall_pfer_rate"],
        }
    )
    text = "\n".join(json.dumps(rec, ensure_ascii=False, sort_keys=True) for rec in records) + "\n"
    Path(report_path).write_text(text, encoding="utf-8")


def _print_eval_table(result: dict) -> None:
    header = f"{'Language':<14}{'PER (%)':>10}{'PFER (%)':>10}{'Utts':>7}{'RefPhones':>11}"
    click.echo(header)
    click.echo("-" * len(header))
    for lang in result["languages"]:
        click.echo(
            f"{lang['locale']:<14}{lang['per_pct']:>10.3f}{lang['pfer_pct']:>10.3f}"
            f"{lang['utterances']:>7d}{lang['ref_phones']:>11d}"
        )
    click.echo("-" * len(header))
    click.echo(f"{'Overall':<14}{result['overall_per_pct']:>10.3f}{result['overall_pfer_pct']:>10.3f}")


def _run_eval(client: ServiceClient, endpoint: str, ref_path: str, hyp_path: str,
              strict: bool, report: str) -> None:
    payload = {
        "ref_text": Path(ref_path).read_text(encoding="utf-8"),
        "hyp_text": Path(hyp_path).read_text(encoding="utf-8"),
        "mode": "strict" if strict else "lenient",
    }
    result = client.call("POST", endpoint, payload)
    _print_eval_table(result)
    _write_eval_report(result, report)
    click.echo(f"report written to {report}")


@main.command("eval")
@click.option("--ref", "ref_path", required=True, help="Reference TSV (clip_id, locale, ipa).")
@click.option("--hyp", "hyp_path", required=True, help="Hypothesis TSV (clip_id, ipa).")
@click.option("--strict/--lenient", "strict", default=False)
@click.option("--report", default="eval_report.jsonl", show_default=True)
@click.pass_obj
def eval_cmd(client: ServiceClient, ref_path: str, hyp_path: str, strict: bool, report: str) -> None:
    """Score a hypothesis file against a reference file."""
    _run_eval(client, "/eval", ref_path, hyp_path, strict, report)


@main.command()
@click.option("--a", "a_path", required=True, help="Annotator A TSV (reference side).")
@click.option("--b", "b_path", required=True, help="Annotator B TSV.")
@click.option("--strict/--lenient", "strict", default=False)
@click.option("--report", default="iaa_report.jsonl", show_default=True)
@click.pass_obj
def iaa(client: ServiceClient, a_path: str, b_path: str, strict: bool, report: str) -> None:
    """Inter-annotator agreement between two transcription files."""
    _run_eval(client, "/iaa", a_path, b_path, strict, report)


@main.command()
@click.option("--config", "config_path", required=True, help="prepare config file (key=value).")
@click.option("--seed", type=int, default=None, help="Override the config seed.")
@click.pass_obj
def prepare(client: ServiceClient, config_path: str, seed: int | None) -> None:
    """Run the corpus pipeline: filters, splits, labels, vocabulary."""
    payload = {"config_path": str(Path(config_path).resolve()), "seed": seed}
    result = client.call("POST", "/prepare", payload)
    click.echo(f"out_dir: {result['out_dir']}")
    for split, path in sorted(result["manifests"].items()):
        click.echo(f"  {split}: {path} ({result['row_counts'][split]} rows)")
    click.echo(f"  vocab: {result['vocab_path']} ({result['vocab_size']} tokens)")
    click.echo(
        f"  removed: {result['removed_by_duration']} over-length, "
        f"{result['removed_by_votes']} down-voted, {result['dropped_labels']} unlabelable"
    )
    click.echo(f"  log: {result['log_path']}")


@main.command()
@click.option("--config", "config_path", required=True, help="Ablation config (base keys + ablate_* axes).")
@click.option("--out-root", default=None, help="Root directory for cell outputs.")
@click.option("--report", default="ablate_report.jsonl", show_default=True)
@click.pass_obj
def ablate(client: ServiceClient, config_path: str, out_root: str | None, report: str) -> None:
    """Prepare one dataset per ablation-grid cell."""
    payload = {"config_path": str(Path(config_path).resolve()), "out_root": out_root}
    result = client.call("POST", "/ablate", payload)
    cells = result["cells"]
    for cell in cells:
        counts = ",".join(f"{k}={v}" for k, v in sorted(cell["row_counts"].items()))
        click.echo(f"{cell['status']:<7} {cell['name']} {counts} {cell['error']}")
    text = "\n".join(json.dumps(c, ensure_ascii=False, sort_keys=True) for c in cells)
    Path(report).write_text(text + "\n", encoding="utf-8")
    click.echo(f"report written to {report}")
    if any(cell["status"] == "error" for cell in cells):
        raise click.ClickException("one or more ablation cells failed")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8711, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
