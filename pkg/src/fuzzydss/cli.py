"""Command-line front door.

Every command loads a dataset bundle, calls into the core package, and
serializes the result; no domain math lives here.  Exit codes: 0 success,
1 domain violation (invalid dataset, failed solve), 2 usage or I/O error.
"""
from __future__ import annotations

import csv
import io
import json
import os
import sys
from pathlib import Path

import click

from . import topsis
from .dataset import Dataset, DatasetError, load_dataset, save_dataset
from .fixtures import MCGP_COEFFS, REFERENCE_ALLOCATION, paper_case_path
from .mcgp import MODES, penalty_oracle, solve_allocation, tvp_sweep
from .pipeline import (PipelineStageError, allocation_doc, load_session,
                       ranking_result_from_doc, resolve_mcgp_model, run_pipeline)


def _resolve_dataset_path(name: str) -> Path:
    if name == "paper-case":
        return paper_case_path()
    path = Path(name)
    if not path.exists():
        raise click.UsageError(f"dataset path {name!r} does not exist")
    return path


def _load(name: str, config_path: str | None) -> Dataset:
    try:
        ds = load_dataset(_resolve_dataset_path(name))
    except (DatasetError, OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot load dataset: {exc}")
    if config_path:
        try:
            overrides = json.loads(Path(config_path).read_text())
            ds = ds.with_config(**overrides)
        except (OSError, json.JSONDecodeError, TypeError, DatasetError) as exc:
            raise click.UsageError(f"cannot apply config overrides: {exc}")
    return ds


def _emit(text: str, output: str | None):
    """Print, or write atomically (temp file then rename)."""
    if output is None:
        click.echo(text)
        return
    out = Path(output)
    tmp = out.with_name(f"{out.name}.tmp{os.getpid()}")
    tmp.write_text(text if text.endswith("\n") else text + "\n")
    tmp.replace(out)


def _csv_text(header: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header)
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _run(ds: Dataset):
    try:
        return run_pipeline(ds)
    except (DatasetError, PipelineStageError) as exc:
        raise click.ClickException(str(exc))


@click.group()
@click.option("--config", "config_path", type=str, default=None,
              help="JSON file of pipeline config overrides.")
@click.option("--output", type=str, default=None, help="Write result to a file.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--seed", type=int, default=None, help="Seed for commands that sample.")
@click.pass_context
def main(ctx, config_path, output, as_json, seed):
    """Resilient-supplier decision support: rank, trade off, allocate."""
    ctx.obj = {"config": config_path, "output": output, "json": as_json, "seed": seed}


@main.command()
@click.argument("dataset")
@click.pass_context
def validate(ctx, dataset):
    """Check a dataset bundle; exit 0 only if it is fully valid."""
    ds = _load(dataset, ctx.obj["config"])
    violations = ds.validate()
    if ctx.obj["json"]:
        doc = [{"table": v.table, "row": v.row, "message": v.message} for v in violations]
        _emit(json.dumps({"valid": not violations, "violations": doc}, indent=2),
              ctx.obj["output"])
    else:
        for v in violations:
            click.echo(str(v), err=True)
    if violations:
        sys.exit(1)
    if not ctx.obj["json"]:
        click.echo(f"{ds.name}: ok ({len(ds.suppliers)} suppliers, "
                   f"{len(ds.attributes)} attributes, {len(ds.decision_makers)} DMs)")


@main.command()
@click.argument("dataset")
@click.option("--distance-variant", type=click.Choice(topsis.DISTANCE_VARIANTS),
              default=None, help="Override the configured closeness distance.")
@click.option("--group", type=click.Choice(["all", "resilience", "cost"]), default="all")
@click.pass_context
def rank(ctx, dataset, distance_variant, group):
    """Score and rank the suppliers."""
    ds = _load(dataset, ctx.obj["config"])
    if distance_variant:
        ds = ds.with_config(distance_variant=distance_variant)
    session = _run(ds)
    key = {"all": "ranking", "resilience": "ranking_resilience", "cost": "ranking_cost"}
    doc = session.artifacts[key[group]]
    if ctx.obj["json"]:
        _emit(json.dumps(doc, indent=2), ctx.obj["output"])
        return
    lines = [f"{'supplier':<10}{'d+':>8}{'d-':>8}{'closeness':>11}{'rank':>6}{'normalized':>12}"]
    for s, nc in zip(doc["scores"], doc["normalized_closeness"]):
        lines.append(f"{s['supplier']:<10}{s['d_plus']:>8.3f}{s['d_minus']:>8.3f}"
                     f"{s['closeness']:>11.4f}{s['rank']:>6}{nc:>12.4f}")
    _emit("\n".join(lines), ctx.obj["output"])


@main.command()
@click.argument("dataset")
@click.option("--alpha", type=float, default=None, help="Single trade-off point in [0, 1].")
@click.option("--sweep", "step", type=float, default=None, help="Grid step in (0, 0.5].")
@click.pass_context
def scri(ctx, dataset, alpha, step):
    """Cost-versus-resilience index at one alpha or across a sweep."""
    if alpha is None and step is None:
        step = 0.1
    if alpha is not None and not 0.0 <= alpha <= 1.0:
        raise click.UsageError(f"alpha must lie in [0, 1], got {alpha}")
    if step is not None and not 0.0 < step <= 0.5:
        raise click.UsageError(f"sweep step must lie in (0, 0.5], got {step}")
    ds = _load(dataset, ctx.obj["config"])
    session = _run(ds)
    res = session.artifacts["ranking_resilience"]["normalized_closeness"]
    cost = session.artifacts["ranking_cost"]["normalized_closeness"]
    suppliers = [s["supplier"] for s in session.artifacts["ranking"]["scores"]]

    def grid_rows(alphas):
        rows = []
        for a in alphas:
            vals = [a * r + (1 - a) * c for r, c in zip(res, cost)]
            top = max(range(len(vals)), key=lambda i: (vals[i], -i))
            for i, s in enumerate(suppliers):
                rows.append({"alpha": round(a, 10), "supplier": s,
                             "scri": vals[i], "is_argmax": i == top})
        return rows

    if alpha is not None:
        rows = grid_rows([alpha])
    else:
        alphas, k = [], 1
        while k * step < 1.0 - 1e-12:
            alphas.append(k * step)
            k += 1
        rows = grid_rows(alphas)
    if ctx.obj["json"]:
        _emit(json.dumps(rows, indent=2), ctx.obj["output"])
    else:
        _emit(_csv_text(["alpha", "supplier", "scri", "is_argmax"], rows),
              ctx.obj["output"])


def _parse_sweep(spec: str) -> list[float]:
    try:
        if ":" in spec:
            start, stop, step = (float(v) for v in spec.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            vals, t = [], start
            while t <= stop + 1e-9:
                vals.append(round(t, 10))
                t += step
            return vals
        return [float(v) for v in spec.split(",")]
    except ValueError:
        raise click.UsageError(f"bad sweep spec {spec!r}; use start:stop:step or v1,v2,...")


@main.command()
@click.argument("dataset")
@click.option("--tvp", type=float, default=None, help="Override the TVP floor.")
@click.option("--tvp-sweep", "sweep_spec", type=str, default=None,
              help="start:stop:step or comma-separated TVP floors.")
@click.option("--mode", type=click.Choice(MODES), default="fixed_total")
@click.option("--integerize", is_flag=True, help="Also emit a rounded integer plan.")
@click.pass_context
def allocate(ctx, dataset, tvp, sweep_spec, mode, integerize):
    """Solve the order-allocation goal program."""
    ds = _load(dataset, ctx.obj["config"])
    if ds.mcgp is None:
        raise click.UsageError("dataset has no mcgp.json; nothing to allocate")
    session = _run(ds)
    ranking = ranking_result_from_doc(session.artifacts["ranking"])
    model = resolve_mcgp_model(ds, ranking)

    if sweep_spec:
        tvp_values = _parse_sweep(sweep_spec)
        plans = tvp_sweep(model, tvp_values, mode)
        rows = []
        for t, plan in zip(tvp_values, plans):
            for s, q in plan.quantities.items():
                rows.append({"tvp": t, "supplier": s, "qty": q,
                             "objective": plan.objective})
        if ctx.obj["json"]:
            _emit(json.dumps(rows, indent=2), ctx.obj["output"])
        else:
            _emit(_csv_text(["tvp", "supplier", "qty", "objective"], rows),
                  ctx.obj["output"])
        return

    from dataclasses import replace
    if tvp is not None:
        if tvp < 0:
            raise click.UsageError(f"TVP floor must be nonnegative, got {tvp}")
        model = replace(model, tvp_floor=tvp)
    result = solve_allocation(model, mode, integerize=integerize)
    continuous, integer = result if integerize else (result, None)
    doc = allocation_doc(model, continuous)
    if integer is not None:
        doc["integer_plan"] = {"quantities": integer.quantities,
                               "oracle_total": integer.objective}
    coeffs = tuple(t.coeff for t in model.suppliers)
    if coeffs == MCGP_COEFFS:
        reference = penalty_oracle(model, list(REFERENCE_ALLOCATION), mode)
        doc["reference_plan"] = {"quantities": list(REFERENCE_ALLOCATION),
                                 "oracle_total": reference.total}
        click.echo(f"reference plan {REFERENCE_ALLOCATION} has oracle penalty "
                   f"{reference.total:.4f}; solver objective {continuous.objective:.4f}",
                   err=True)
    _emit(json.dumps(doc, indent=2), ctx.obj["output"])
    if continuous.solver_status != "optimal":
        raise click.ClickException(f"solver status: {continuous.solver_status}")


@main.command()
@click.option("--suppliers", "n", type=int, required=True)
@click.option("--seed", type=int, default=None)
@click.option("--output", "out_dir", type=str, default=None,
              help="Bundle directory to write (default synth-<n>x<seed>/).")
@click.pass_context
def synth(ctx, n, seed, out_dir):
    """Emit a deterministic synthetic dataset bundle."""
    from .synth import synthesize_dataset
    if n < 1:
        raise click.UsageError(f"--suppliers must be >= 1, got {n}")
    if seed is None:
        seed = ctx.obj["seed"] if ctx.obj["seed"] is not None else 0
    ds = synthesize_dataset(n, seed)
    target = Path(out_dir) if out_dir else Path(f"synth-{n}x{seed}")
    save_dataset(ds, target)
    click.echo(f"wrote {target} ({n} suppliers, seed {seed})")


@main.command()
@click.option("--host", type=str, default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=host, port=port)


@main.group()
def session():
    """Inspect saved sessions."""


@session.command()
@click.argument("path")
@click.pass_context
def show(ctx, path):
    """Summarize a saved session file."""
    if not Path(path).exists():
        raise click.UsageError(f"session file {path!r} does not exist")
    try:
        sess = load_session(path)
    except (DatasetError, json.JSONDecodeError, OSError) as exc:
        raise click.ClickException(f"cannot read session: {exc}")
    doc = {
        "dataset": sess.dataset_document.get("name"),
        "integrity_ok": sess.integrity_ok,
        "provenance": sess.provenance,
        "ranking": sess.artifacts.get("ranking", {}).get("scores"),
    }
    _emit(json.dumps(doc, indent=2), ctx.obj["output"])


if __name__ == "__main__":
    main()
