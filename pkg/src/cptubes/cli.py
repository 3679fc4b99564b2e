"""Command-line front end: bounds, sweeps, spectra, volumes and verification.

Every run produces a ReportDocument that can be emitted as an aligned table,
JSON or CSV.  Identical configurations produce byte-identical output, so the
provenance block records solver settings but never timing.  Exit codes:
0 success, 2 configuration errors, 3 domain/solver errors, 4 verification
failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bounds import BoundReport, bound_report
from .degrees import DegreeProfile
from .errors import BracketError, DomainError, InconsistencyError
from .models import ModelFamily, make_model
from .spectrum import GRID_POINTS, RadialProblem, solve_mu1
from .verification import run_all_checks
from .volume import tube_volume_ratio

SCHEMA_VERSION = 1
_SWEEP_COLUMNS = ("rho", "mu1_model", "M", "bound", "sign_class", "rho1", "rho0", "warnings")
_MODELS_WITH_DEGREES = ("bound", "sweep")


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of a single CLI invocation."""

    command: str
    model: str | None = None
    n: int | None = None
    q: int | None = None
    lam: float | None = None
    rho: float | None = None
    rho_start: float | None = None
    rho_stop: float | None = None
    rho_steps: int | None = None
    degrees: tuple[int, ...] | None = None
    tol: float = 1e-10
    format: str = "table"
    out: str | None = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "model": self.model,
            "n": self.n,
            "q": self.q,
            "lam": self.lam,
            "rho": self.rho,
            "rho_start": self.rho_start,
            "rho_stop": self.rho_stop,
            "rho_steps": self.rho_steps,
            "degrees": list(self.degrees) if self.degrees is not None else None,
            "tol": self.tol,
            "format": self.format,
            "out": self.out,
        }


@dataclass
class ReportDocument:
    """Everything a run produced, ready for serialization."""

    schema_version: int
    config: dict
    results: list
    provenance: dict
    exit_code: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "config": self.config,
            "results": self.results,
            "provenance": self.provenance,
        }


def _provenance(config: RunConfig) -> dict:
    return {
        "package_version": __version__,
        "solver_grid_points": GRID_POINTS,
        "quadrature_panels": 256,
        "requested_tol": config.tol,
    }


def _parse_degrees(tokens: list[str]) -> tuple[int, ...]:
    out: list[int] = []
    for token in tokens:
        for piece in token.split(","):
            piece = piece.strip()
            if piece:
                out.append(int(piece))
    return tuple(out)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cptubes",
        description="Eigenvalue bounds, spectra and volumes of tubes around "
        "complex submanifolds of complex projective space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_model: bool, with_degrees: bool) -> None:
        if with_model:
            p.add_argument("--model", choices=[f.value for f in ModelFamily])
            p.add_argument("--n", type=int)
            p.add_argument("--q", type=int)
        else:
            p.add_argument("--n", type=int)
            p.add_argument("--q", type=int)
        p.add_argument("--lambda", dest="lam", type=float)
        if with_degrees:
            p.add_argument("--degrees", nargs="+")
        p.add_argument("--tol", type=float)
        p.add_argument("--format", choices=["table", "json", "csv"])
        p.add_argument("--out")
        p.add_argument("--config", help="JSON file with defaults; flags take precedence")

    p_bound = sub.add_parser("bound", help="one eigenvalue bound report")
    add_common(p_bound, with_model=True, with_degrees=True)
    p_bound.add_argument("--rho", type=float)

    p_sweep = sub.add_parser("sweep", help="bound reports over a rho grid")
    add_common(p_sweep, with_model=True, with_degrees=True)
    p_sweep.add_argument("--rho-start", dest="rho_start", type=float)
    p_sweep.add_argument("--rho-stop", dest="rho_stop", type=float)
    p_sweep.add_argument("--rho-steps", dest="rho_steps", type=int)

    p_spec = sub.add_parser("spectrum", help="first eigenvalue and eigenfunction samples")
    add_common(p_spec, with_model=True, with_degrees=False)
    p_spec.add_argument("--rho", type=float)

    p_vol = sub.add_parser("volume", help="tube volume ratios")
    add_common(p_vol, with_model=False, with_degrees=True)
    p_vol.add_argument("--rho", type=float)
    p_vol.add_argument("--rho-start", dest="rho_start", type=float)
    p_vol.add_argument("--rho-stop", dest="rho_stop", type=float)
    p_vol.add_argument("--rho-steps", dest="rho_steps", type=int)

    p_ver = sub.add_parser("verify", help="run the full invariant suite")
    p_ver.add_argument("--format", choices=["table", "json", "csv"])
    p_ver.add_argument("--out")
    p_ver.add_argument("--config", help="JSON file with defaults; flags take precedence")

    return parser


def build_config(argv: list[str]) -> RunConfig:
    """Parse flags, merge an optional JSON config file, validate."""
    args = _build_parser().parse_args(argv)
    merged: dict = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                merged.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"cannot read config file {config_path!r}: {exc}") from exc
    for key, value in vars(args).items():
        if key == "config":
            continue
        if value is not None:
            merged[key] = value
    if "degrees" in merged and merged["degrees"] is not None:
        raw = merged["degrees"]
        merged["degrees"] = _parse_degrees([str(x) for x in (raw if isinstance(raw, list) else [raw])])
    merged.setdefault("tol", 1e-10)
    merged.setdefault("format", "table")
    allowed = set(RunConfig.__dataclass_fields__)
    unknown = set(merged) - allowed
    if unknown:
        raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
    config = RunConfig(**merged)
    _validate(config)
    return config


def _validate(config: RunConfig) -> None:
    cmd = config.command
    if cmd == "verify":
        return
    if config.lam is None or config.lam <= 0:
        raise ValueError("a positive --lambda is required")
    if cmd in ("bound", "sweep", "spectrum"):
        if config.model is None:
            raise ValueError("--model is required")
    if cmd in ("bound", "spectrum"):
        if config.rho is None or config.rho <= 0:
            raise ValueError("a positive --rho is required")
    if cmd == "sweep":
        if config.rho_start is None or config.rho_stop is None or config.rho_steps is None:
            raise ValueError("sweep requires --rho-start, --rho-stop and --rho-steps")
        if not 0 < config.rho_start <= config.rho_stop or config.rho_steps < 1:
            raise ValueError("sweep radii must satisfy 0 < start <= stop, steps >= 1")
    if cmd == "volume":
        if config.n is None or config.q is None:
            raise ValueError("volume requires --n and --q")
        have_single = config.rho is not None
        have_range = config.rho_start is not None
        if not have_single and not have_range:
            raise ValueError("volume requires --rho or a rho range")
        if have_range and (config.rho_stop is None or config.rho_steps is None):
            raise ValueError("a rho range needs --rho-start, --rho-stop and --rho-steps")
    if cmd in _MODELS_WITH_DEGREES or cmd == "volume":
        if config.degrees is None:
            raise ValueError("--degrees is required")
        if any(a < 1 for a in config.degrees):
            raise ValueError("degrees must be integers >= 1")
    if config.tol < 1e-12:
        raise ValueError("--tol must be at least 1e-12")


def _model_and_profile(config: RunConfig):
    model = make_model(config.model, config.lam, n=config.n, q=config.q)
    profile = DegreeProfile(model.n, model.q, config.degrees)
    return model, profile


def _report_row(report: BoundReport) -> dict:
    return {
        "rho": report.rho,
        "mu1_model": report.mu1_model,
        "M": report.M,
        "bound": report.bound,
        "sign_class": report.sign_class,
        "rho1": report.rho1,
        "rho0": report.rho0,
        "warnings": list(report.warnings),
    }


def _thread_count() -> int:
    env = os.environ.get("CPTUBES_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"CPTUBES_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def run(config: RunConfig) -> ReportDocument:
    """Execute a validated configuration and build the report document."""
    if config.command == "bound":
        model, profile = _model_and_profile(config)
        report = bound_report(model, profile, config.lam, config.rho, tol=config.tol)
        results = [_report_row(report)]
        return ReportDocument(SCHEMA_VERSION, config.to_dict(), results, _provenance(config))

    if config.command == "sweep":
        model, profile = _model_and_profile(config)
        rhos = np.linspace(config.rho_start, config.rho_stop, config.rho_steps)

        def one(rho: float) -> dict:
            return _report_row(bound_report(model, profile, config.lam, float(rho), tol=config.tol))

        with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
            results = list(pool.map(one, rhos))
        return ReportDocument(SCHEMA_VERSION, config.to_dict(), results, _provenance(config))

    if config.command == "spectrum":
        model = make_model(config.model, config.lam, n=config.n, q=config.q)
        solution = solve_mu1(RadialProblem(model, config.lam, config.rho), tol=config.tol)
        stride = (len(solution.grid) - 1) // 100
        samples = [
            {"r": float(r), "f": float(f), "fprime": float(fp)}
            for r, f, fp in zip(
                solution.grid[::stride], solution.f[::stride], solution.fprime[::stride]
            )
        ]
        results = [
            {
                "mu1": solution.mu1,
                "achieved_tol": solution.achieved_tol,
                "grid_points": len(solution.grid),
                "samples": samples,
            }
        ]
        return ReportDocument(SCHEMA_VERSION, config.to_dict(), results, _provenance(config))

    if config.command == "volume":
        profile = DegreeProfile(config.n, config.q, config.degrees)
        if config.rho is not None:
            rhos = [config.rho]
        else:
            rhos = [float(r) for r in np.linspace(config.rho_start, config.rho_stop, config.rho_steps)]
        results = [
            {"rho": rho, "ratio": tube_volume_ratio(config.n, config.q, profile, config.lam, rho)}
            for rho in rhos
        ]
        return ReportDocument(SCHEMA_VERSION, config.to_dict(), results, _provenance(config))

    if config.command == "verify":
        checks = run_all_checks()
        results = [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
        ]
        failed = sum(not c.passed for c in checks)
        doc = ReportDocument(SCHEMA_VERSION, config.to_dict(), results, _provenance(config))
        doc.exit_code = 4 if failed else 0
        return doc

    raise ValueError(f"unknown command {config.command!r}")


def _fmt17(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _fmt8(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".8g")
    return str(value)


def _csv_rows(doc: ReportDocument) -> tuple[list[str], list[list[str]]]:
    command = doc.config.get("command")
    if command in ("bound", "sweep"):
        header = list(_SWEEP_COLUMNS)
        rows = []
        for row in doc.results:
            rows.append(
                [
                    _fmt17(row["rho"]),
                    _fmt17(row["mu1_model"]),
                    _fmt17(row["M"]),
                    _fmt17(row["bound"]),
                    row["sign_class"],
                    _fmt17(row["rho1"]),
                    _fmt17(row["rho0"]),
                    "; ".join(row["warnings"]),
                ]
            )
        return header, rows
    if command == "volume":
        return ["rho", "ratio"], [[_fmt17(r["rho"]), _fmt17(r["ratio"])] for r in doc.results]
    if command == "spectrum":
        rows = []
        for block in doc.results:
            for s in block["samples"]:
                rows.append([_fmt17(s["r"]), _fmt17(s["f"]), _fmt17(s["fprime"])])
        return ["r", "f", "fprime"], rows
    if command == "verify":
        return (
            ["name", "passed", "detail"],
            [[r["name"], _fmt17(r["passed"]), r["detail"]] for r in doc.results],
        )
    raise ValueError(f"no CSV layout for command {command!r}")


def _table(doc: ReportDocument) -> str:
    header, raw_rows = _csv_rows(doc)
    rows = []
    for raw in raw_rows:
        rows.append([_fmt8(float(x)) if _is_floatish(x) else x for x in raw])
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(r[i].ljust(widths[i]) for i in range(len(header))))
    return "\n".join(lines) + "\n"


def _is_floatish(text: str) -> bool:
    if not text or text in ("true", "false"):
        return False
    try:
        float(text)
        return True
    except ValueError:
        return False


def emit(doc: ReportDocument, format: str) -> str:
    """Serialize the document; equal documents yield byte-identical output."""
    if format == "json":
        return json.dumps(doc.to_dict(), indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header, rows = _csv_rows(doc)
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    if format == "table":
        return _table(doc)
    raise ValueError(f"unknown output format {format!r}")


def _emit_errors(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config = build_config(argv)
    except ValueError as exc:
        _emit_errors("config", str(exc))
        return 2
    try:
        doc = run(config)
    except DomainError as exc:
        _emit_errors("domain", str(exc))
        return 3
    except (BracketError, InconsistencyError) as exc:
        _emit_errors(type(exc).__name__, str(exc))
        return 3
    text = emit(doc, config.format)
    if config.out:
        try:
            with open(config.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            _emit_errors("io", f"cannot write {config.out!r}: {exc}")
            return 3
    else:
        sys.stdout.write(text)
    return doc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
