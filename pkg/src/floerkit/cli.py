"""Command-line entry point: ``floerkit <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 config or resolution error,
3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from .colimit import DiagramError, c_sh, colimit
from .config import ConfigDocument, ConfigError, load_config, parse_rational
from .filtered import INF, ComplexError, Window, WindowError, barcode, barcode_csv
from .radial import ModelError, family_generator_id, region_generator_id
from .serialize import action_str
from .spectral import SpectralError, c_unit, embedding_distance, gamma, hofer_norm, spectral_invariant
from .svg import barcode_svg
from .verify import CheckFailure, context_from_config, run_all

PRESET_ENV = "FLOERKIT_PRESET_DIR"
DEFAULT_PRESET = "annulus"
EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3


class VerificationFailed(Exception):
    """Some verification check failed; carries the rendered report."""


def preset_dir() -> Path:
    env = os.environ.get(PRESET_ENV)
    return Path(env) if env else Path(__file__).parent / "presets"


def resolve_config(ref: str | None) -> ConfigDocument:
    """A path, or the name of a bundle in the preset directory."""
    ref = ref or DEFAULT_PRESET
    path = Path(ref)
    if not path.exists():
        candidate = preset_dir() / f"{ref}.yaml"
        if not candidate.exists():
            raise ConfigError(f"no config file or preset bundle named {ref!r} (searched {preset_dir()})")
        path = candidate
    doc = load_config(path)
    doc.check_references()
    return doc


# --- reports ---------------------------------------------------------------------

class Table:
    def __init__(self, columns: list[str], rows: list[list[Any]], meta: dict | None = None):
        self.columns, self.rows, self.meta = columns, rows, meta or {}

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows([[_cell(v) for v in row] for row in self.rows])
        return buf.getvalue()

    def json(self) -> str:
        body = dict(self.meta)
        body["rows"] = [{c: _cell(v) for c, v in zip(self.columns, row)} for row in self.rows]
        return json.dumps(body, indent=2) + "\n"


def _cell(v: Any) -> Any:
    if isinstance(v, Fraction) or (isinstance(v, float) and v in (INF, -INF)):
        return action_str(v)
    return v


def orbit_table(doc: ConfigDocument, name: str) -> Table:
    """One row per generator: the orbit it comes from and its action and degree."""
    m = doc.model(name)
    rows_by_id = {}
    for r in m.inventory.regions:
        radius = str(r.lo) if r.lo == r.hi else f"{r.lo}..{action_str(r.hi)}"
        for j, deg in enumerate(r.degrees):
            rows_by_id[region_generator_id(r, j)] = [r.tag, f"constant:{r.kind}", radius, Fraction(0), r.action, deg]
    for f in m.inventory.families:
        for k in (0, 1):
            rows_by_id[family_generator_id(f, k)] = [f.tag, "family", str(f.radius), f.period, f.action, f.degrees[k]]
    rows = [[g.id] + rows_by_id[g.id] for g in m.complex.generators]
    return Table(["id", "tag", "type", "radius", "period", "action", "degree"], rows,
                 {"command": "orbits", "hamiltonian": name, "generators": len(rows)})


def cmd_orbits(doc: ConfigDocument, args) -> dict[str, str]:
    t = orbit_table(doc, args.name)
    return {"csv": t.csv(), "json": t.json()}


def cmd_barcode(doc: ConfigDocument, args) -> dict[str, str]:
    bars = barcode(doc.model(args.name).complex)
    body = {"command": "barcode", "hamiltonian": args.name,
            "bars": [{"birth": action_str(b.birth), "death": action_str(b.death), "degree": b.degree} for b in bars]}
    return {"csv": barcode_csv(bars), "json": json.dumps(body, indent=2) + "\n",
            "svg": barcode_svg(bars, f"barcode of {args.name}")}


def cmd_spectral(doc: ConfigDocument, args) -> dict[str, str]:
    m = doc.model(args.name)
    if args.cls:
        ids = [s.strip() for s in args.cls.split(",") if s.strip()]
        try:
            beta = m.complex.vector(ids)
        except KeyError as exc:
            raise ConfigError(f"unknown generator {exc.args[0]!r} in --class") from None
        if m.complex.d(beta):
            raise ConfigError(f"--class {args.cls} is not a cocycle")
        res = spectral_invariant(m.complex, beta, args.cls)
    else:
        res = c_unit(m)
    body = {"command": "spectral", "hamiltonian": args.name, "class": res.class_label,
            "value": action_str(res.value), "witness": m.complex.ids(res.witness), "method": res.method}
    row = Table(["class", "value", "witness"], [[res.class_label, res.value, " ".join(body["witness"])]])
    return {"csv": row.csv(), "json": json.dumps(body, indent=2) + "\n"}


def cmd_gamma(doc: ConfigDocument, args) -> dict[str, str]:
    m = doc.model(args.name)
    c, cbar, g = c_unit(m).value, c_unit(m.bar()).value, gamma(m)
    body = {"command": "gamma", "hamiltonian": args.name, "c_unit": action_str(c),
            "c_unit_bar": action_str(cbar), "gamma": action_str(g), "hofer_norm": action_str(hofer_norm(m))}
    t = Table(list(body)[2:], [[body[k] for k in list(body)[2:]]])
    return {"csv": t.csv(), "json": json.dumps(body, indent=2) + "\n"}


def cmd_embed(doc: ConfigDocument, args) -> dict[str, str]:
    m = doc.model(args.name)
    s, t = parse_rational(args.s, "s"), parse_rational(args.s_prime, "s'")
    try:
        rep = embedding_distance(m, s, t)
    except ModelError as exc:
        raise ConfigError(f"hamiltonian {args.name!r}: {exc}") from None
    body = {"command": "embed", "hamiltonian": args.name, "s": str(s), "s_prime": str(t),
            "distance": str(rep.distance), "lower": str(rep.lower), "upper": str(rep.upper),
            "isometric": rep.exact}
    keys = ["s", "s_prime", "distance", "lower", "upper", "isometric"]
    return {"csv": Table(keys, [[body[k] for k in keys]]).csv(), "json": json.dumps(body, indent=2) + "\n"}


def _diagram_name(doc: ConfigDocument, name: str | None) -> str:
    if name:
        return name
    if not doc.diagrams:
        raise ConfigError("config defines no diagrams")
    return next(iter(doc.diagrams))


def cmd_sh(doc: ConfigDocument, args) -> dict[str, str]:
    name = _diagram_name(doc, args.name)
    lo = parse_rational(args.a, "a") if args.a is not None else -INF
    hi = parse_rational(args.b, "b") if args.b is not None else INF
    col = colimit(doc.diagram(name), Window(lo, hi))
    body = {"command": "sh", "diagram": name, **col.to_json()}
    rows = [[k, v] for k, v in sorted(col.dims.items())]
    t = Table(["degree", "dim"], rows)
    return {"csv": t.csv() + f"# unit {body['unit']}\n", "json": json.dumps(body, indent=2) + "\n"}


def cmd_csh(doc: ConfigDocument, args) -> dict[str, str]:
    name = _diagram_name(doc, args.name)
    d = doc.diagram(name)
    value = c_sh(d)
    body = {"command": "csh", "diagram": name, "c_sh": action_str(value), "sh_nonzero": colimit(d).unit_nonzero}
    t = Table(["diagram", "c_sh", "sh_nonzero"], [[name, value, body["sh_nonzero"]]])
    return {"csv": t.csv(), "json": json.dumps(body, indent=2) + "\n"}


def cmd_verify(doc: ConfigDocument, args) -> dict[str, str]:
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_all(context_from_config(doc), only)
    lines = [json.dumps(r.to_json()) for r in results]
    failed = [r for r in results if not r.ok]
    summary = {"config": doc.source, "passed": sum(r.status == "pass" for r in results),
               "skipped": sum(r.status == "skip" for r in results), "failed": len(failed)}
    text = "\n".join(lines + [json.dumps(summary)]) + "\n"
    out = {"json": text, "csv": Table(["criterion", "check", "status", "detail"],
                                      [[r.criterion, r.name, r.status, r.detail] for r in results]).csv()}
    if failed:
        raise VerificationFailed(out)
    return out


COMMANDS: dict[str, Callable[[ConfigDocument, Any], dict[str, str]]] = {
    "orbits": cmd_orbits, "barcode": cmd_barcode, "spectral": cmd_spectral, "gamma": cmd_gamma,
    "embed": cmd_embed, "sh": cmd_sh, "csh": cmd_csh, "verify": cmd_verify,
}
DEFAULT_FORMAT = {"verify": "json"}


# --- output ----------------------------------------------------------------------

def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def emit(outputs: dict[str, str], fmt: str, out_dir: str | None, stem: str) -> None:
    if fmt not in outputs:
        raise ConfigError(f"format {fmt!r} is not available here; choose from {sorted(outputs)}")
    if out_dir is None:
        sys.stdout.write(outputs[fmt])
        return
    write_atomic(Path(out_dir) / f"{stem}.{fmt}", outputs[fmt])
    if fmt == "csv" and "svg" in outputs:  # the plot rides along with the canonical CSV
        write_atomic(Path(out_dir) / f"{stem}.svg", outputs["svg"])


def run_jobs(doc: ConfigDocument, out_dir: str | None, workers: int = 4) -> int:
    """Execute the config's job list; jobs are independent so they run concurrently."""
    def one(i_job):
        i, job = i_job
        ns = argparse.Namespace(name=job.get("hamiltonian") or job.get("diagram"), cls=job.get("class"),
                                s=job.get("s"), s_prime=job.get("s_prime"), a=job.get("a"), b=job.get("b"),
                                only=job.get("only"))
        outputs = COMMANDS[job["command"]](doc, ns)
        fmt = job.get("format") or DEFAULT_FORMAT.get(job["command"], "csv")
        stem = f"{i:02d}-{job['command']}" + (f"-{ns.name}" if ns.name else "")
        if out_dir is None:
            return f"# job {stem}\n" + outputs[fmt]
        emit(outputs, fmt, job.get("out") or out_dir, stem)
        return f"# job {stem}: written\n"

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for text in pool.map(one, enumerate(doc.jobs)):
            sys.stdout.write(text)
    return EXIT_OK


# --- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"config file or preset bundle name (default {DEFAULT_PRESET}; "
                                         f"bundles are looked up in ${PRESET_ENV})")
    common.add_argument("--out", help="write results into this directory instead of stdout")
    common.add_argument("--format", choices=["csv", "json", "svg"], help="output format")

    p = argparse.ArgumentParser(prog="floerkit", description="Exact filtered Floer-type computations.")
    sub = p.add_subparsers(dest="command", required=True)
    for cmd, helptext in (("orbits", "orbit and generator table"), ("barcode", "persistence barcode"),
                          ("gamma", "c(1, H), c(1, H bar) and the spectral norm")):
        s = sub.add_parser(cmd, parents=[common], help=helptext)
        s.add_argument("name", help="hamiltonian name")
    s = sub.add_parser("spectral", parents=[common], help="spectral invariant with witness")
    s.add_argument("name", help="hamiltonian name")
    s.add_argument("--class", dest="cls", help="comma-separated generator ids of a cocycle (default: the unit)")
    s = sub.add_parser("embed", parents=[common], help="distance between two points of the line embedding")
    s.add_argument("name", help="sandwiched hamiltonian name")
    s.add_argument("s")
    s.add_argument("s_prime")
    s = sub.add_parser("sh", parents=[common], help="colimit cohomology over an action window")
    s.add_argument("name", nargs="?", help="diagram name (default: the first)")
    s.add_argument("--a", help="window lower end (default -inf)")
    s.add_argument("--b", help="window upper end (default +inf)")
    s = sub.add_parser("csh", parents=[common], help="the SH capacity")
    s.add_argument("name", nargs="?", help="diagram name (default: the first)")
    s = sub.add_parser("verify", parents=[common], help="run the verification suite")
    s.add_argument("--only", help="comma-separated check numbers")
    sub.add_parser("run", parents=[common], help="run the config's job list")
    return p


_NEGATIVE = re.compile(r"^-(\d+(\.\d*)?|\.\d+)(/\d+)?$")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # argparse reads "-3/4" as an option; a leading space keeps it positional
    argv = [" " + a if _NEGATIVE.match(a) else a for a in argv]
    args = build_parser().parse_args(argv)
    try:
        doc = resolve_config(args.config)
        if args.command == "run":
            return run_jobs(doc, args.out)
        outputs = COMMANDS[args.command](doc, args)
        emit(outputs, args.format or DEFAULT_FORMAT.get(args.command, "csv"), args.out,
             f"{args.command}-{getattr(args, 'name', None) or 'all'}")
        return EXIT_OK
    except VerificationFailed as exc:
        emit(exc.args[0], args.format or "json", args.out, "verify-all")
        return EXIT_VERIFY
    except (ConfigError, ModelError, DiagramError, WindowError) as exc:
        print(f"floerkit: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ComplexError, SpectralError, CheckFailure, AssertionError) as exc:
        print(f"floerkit: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
