"""Command-line harness: fan file ingestion, batch runs, reference checks.

Fan file format (line oriented, ``#`` starts a comment)::

    id 147
    name CP4
    dim 4
    rays 5
    1 0 0 0
    ...
    cones 5
    0 1 2 3
    ...
    expect 2160 752

Cone rows are 0-based indices into the ray list; ``id``, ``name`` and
``expect`` are optional.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .errors import ParseError, ToricCY4Error, UnknownId, ValidationError
from .lattice_fan import Fan
from .pipeline import DoublingReport, compute_report

ENV_SEED_CONE = "TORIC_CY4_SEED_CONE"

CSV_FIELDS = [
    "fan_id", "name", "chi_P", "tau_P", "chi_D", "h11_D", "h21_D",
    "chi_S", "h02_S", "h11_S", "tau_S", "chi_M", "tau_M", "a_hat",
    "holonomy_claim",
]


@dataclass(frozen=True)
class FanFile:
    id: str | None
    name: str | None
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    expected: tuple[int, int] | None

    def to_fan(self) -> Fan:
        try:
            return Fan.make(self.rays, self.max_cones, self.dim)
        except ToricCY4Error as exc:
            raise ValidationError(str(exc)) from exc


def parse_fan_file(path: str) -> FanFile:
    with open(path, encoding="utf-8") as fh:
        return parse_fan_text(fh.read(), location=path)


def parse_fan_text(text: str, location: str = "<string>") -> FanFile:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))

    pos = 0

    def fail(lineno, msg):
        raise ParseError(f"{location}:{lineno}", msg)

    def next_line(expect: str | None = None):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"{location}:EOF", f"expected {expect or 'more data'}")
        lineno, body = lines[pos]
        pos += 1
        return lineno, body

    def int_row(lineno, body, what):
        try:
            return tuple(int(tok) for tok in body.split())
        except ValueError:
            fail(lineno, f"bad {what} row: {body!r}")

    fan_id = name = None
    dim = None
    rays: list[tuple[int, ...]] = []
    cones: list[tuple[int, ...]] = []
    expected = None

    while pos < len(lines):
        lineno, body = next_line()
        key, _, rest = body.partition(" ")
        rest = rest.strip()
        if key == "id":
            fan_id = rest
        elif key == "name":
            name = rest
        elif key == "dim":
            try:
                dim = int(rest)
            except ValueError:
                fail(lineno, f"bad dim: {rest!r}")
        elif key == "rays":
            try:
                count = int(rest)
            except ValueError:
                fail(lineno, f"bad ray count: {rest!r}")
            for _ in range(count):
                ln, row = next_line("a ray row")
                vec = int_row(ln, row, "ray")
                if dim is not None and len(vec) != dim:
                    fail(ln, f"ray has {len(vec)} coordinates, expected {dim}")
                rays.append(vec)
        elif key == "cones":
            try:
                count = int(rest)
            except ValueError:
                fail(lineno, f"bad cone count: {rest!r}")
            for _ in range(count):
                ln, row = next_line("a cone row")
                cones.append(int_row(ln, row, "cone"))
        elif key == "expect":
            vals = int_row(lineno, rest, "expect")
            if len(vals) != 2:
                fail(lineno, "expect takes exactly two integers: chi tau")
            expected = (vals[0], vals[1])
        else:
            fail(lineno, f"unknown directive {key!r}")

    if dim is None:
        raise ParseError(location, "missing 'dim' directive")
    if not rays:
        raise ParseError(location, "missing 'rays' block")
    if not cones:
        raise ParseError(location, "missing 'cones' block")
    for cone in cones:
        for i in cone:
            if not 0 <= i < len(rays):
                raise ValidationError(
                    f"{location}: cone index {i} out of range (have {len(rays)} rays)"
                )
    return FanFile(id=fan_id, name=name, dim=dim, rays=tuple(rays),
                   max_cones=tuple(cones), expected=expected)


def serialize_fan(ff: FanFile) -> str:
    out = []
    if ff.id is not None:
        out.append(f"id {ff.id}")
    if ff.name is not None:
        out.append(f"name {ff.name}")
    out.append(f"dim {ff.dim}")
    out.append(f"rays {len(ff.rays)}")
    out.extend(" ".join(str(x) for x in ray) for ray in ff.rays)
    out.append(f"cones {len(ff.max_cones)}")
    out.extend(" ".join(str(i) for i in sorted(c)) for c in ff.max_cones)
    if ff.expected is not None:
        out.append(f"expect {ff.expected[0]} {ff.expected[1]}")
    return "\n".join(out) + "\n"


def data_path(filename: str) -> str:
    """Path to a bundled data file (the two worked-example fans and the
    reference table)."""
    return str(resources.files("toric_cy4").joinpath("data", filename))


def _seed_cone_from_env() -> int | None:
    raw = os.environ.get(ENV_SEED_CONE)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{ENV_SEED_CONE} must be an integer, got {raw!r}")


def _process_one(path: str, seed_cone: int | None) -> DoublingReport:
    ff = parse_fan_file(path)
    fan = ff.to_fan()
    return compute_report(fan, fan_id=ff.id, name=ff.name,
                          elimination_cone=seed_cone)


def run_batch(paths: list[str], jobs: int = 1, seed_cone: int | None = None):
    """Compute one report per input file; failures are isolated per file.

    Returns (reports, errors) where both lists follow the input order;
    a failed file contributes None to reports and an error message.
    """
    reports: list[DoublingReport | None] = [None] * len(paths)
    errors: list[tuple[str, str]] = []
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_process_one, p, seed_cone) for p in paths]
            for idx, fut in enumerate(futures):
                try:
                    reports[idx] = fut.result()
                except ToricCY4Error as exc:
                    errors.append((paths[idx], str(exc)))
    else:
        for idx, p in enumerate(paths):
            try:
                reports[idx] = _process_one(p, seed_cone)
            except ToricCY4Error as exc:
                errors.append((p, str(exc)))
    return reports, errors


# --- reference table ------------------------------------------------------

@dataclass(frozen=True)
class ReferenceTable:
    rows: dict[str, tuple[int, int, str]]  # id -> (chi, tau, notation)

    @classmethod
    def load(cls, path: str) -> "ReferenceTable":
        rows: dict[str, tuple[int, int, str]] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            for rec in csv.DictReader(fh):
                key = rec["id"].strip()
                if key in rows:
                    raise ValidationError(f"duplicate id {key} in {path}")
                rows[key] = (int(rec["chi_M"]), int(rec["tau_M"]),
                             rec.get("notation", "").strip())
        return cls(rows=rows)


@dataclass(frozen=True)
class ReferenceDiff:
    matched: int
    mismatches: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_reference(reports: list[DoublingReport], table: ReferenceTable) -> ReferenceDiff:
    matched = 0
    mismatches = []
    for rep in reports:
        if rep.fan_id is None:
            mismatches.append(f"report {rep.name or '?'} has no id to match")
            continue
        if rep.fan_id not in table.rows:
            raise UnknownId(f"id {rep.fan_id} not present in the reference table")
        chi, tau, _ = table.rows[rep.fan_id]
        if (rep.chi_M, rep.tau_M) != (chi, tau):
            mismatches.append(
                f"id {rep.fan_id}: computed (chi, tau) = "
                f"({rep.chi_M}, {rep.tau_M}), table says ({chi}, {tau})"
            )
        else:
            matched += 1
    return ReferenceDiff(matched=matched, mismatches=tuple(mismatches))


# --- output formats -------------------------------------------------------

def format_text(rep: DoublingReport) -> str:
    label = rep.name or rep.fan_id or "fan"
    lines = [
        f"== {label} ==",
        f"  ambient:    chi = {rep.chi_P}, tau = {rep.tau_P}",
        f"  divisor D:  chi = {rep.chi_D}, h11 = {rep.h11_D}, h21 = {rep.h21_D}",
        f"  surface S:  chi = {rep.chi_S}, h02 = {rep.h02_S}, "
        f"h11 = {rep.h11_S}, tau = {rep.tau_S}",
        f"  doubled M:  chi = {rep.chi_M}, tau = {rep.tau_M}, "
        f"A-hat = {rep.a_hat}  [{rep.holonomy_claim}]",
    ]
    return "\n".join(lines)


def format_csv(reports: list[DoublingReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        row = {k: rep.to_dict()[k] for k in CSV_FIELDS}
        writer.writerow(row)
    return buf.getvalue()


def emit(reports: list[DoublingReport], fmt: str, out=sys.stdout) -> None:
    if fmt == "text":
        for rep in reports:
            print(format_text(rep), file=out)
    elif fmt == "json":
        print(json.dumps([rep.to_dict() for rep in reports], indent=2), file=out)
    elif fmt == "csv":
        out.write(format_csv(reports))
    else:
        raise ValueError(f"unknown format {fmt!r}")


# --- entry point ----------------------------------------------------------

def main(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    parser = argparse.ArgumentParser(
        prog="toric-cy4",
        description="Topological invariants of doubled Calabi-Yau fourfolds "
                    "from smooth toric Fano fourfold fans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    comp = sub.add_parser("compute", help="run the pipeline on fan files")
    comp.add_argument("files", nargs="+", help="fan files to process")
    comp.add_argument("--emit", choices=["text", "json", "csv"], default="text")
    comp.add_argument("--jobs", type=int, default=1, metavar="N")
    comp.add_argument("--check", metavar="REFERENCE_CSV",
                      help="compare (chi, tau) against a reference table by id")
    comp.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)

    try:
        seed_cone = _seed_cone_from_env()
    except ToricCY4Error as exc:
        print(f"error: {exc}", file=err)
        return 1

    reports, errors = run_batch(args.files, jobs=args.jobs, seed_cone=seed_cone)
    for path, msg in errors:
        print(f"error: {path}: {msg}", file=err)
    good = [r for r in reports if r is not None]
    emit(good, args.emit, out=out)

    status = 0
    for rep in good:
        if args.verbose:
            print(f"# {rep.name or rep.fan_id}: A-hat = {rep.a_hat}", file=err)

    if args.check:
        try:
            table = ReferenceTable.load(args.check)
            diff = check_reference(good, table)
        except ToricCY4Error as exc:
            print(f"error: {exc}", file=err)
            return 1
        print(f"# reference check: {diff.matched} matched, "
              f"{len(diff.mismatches)} mismatched", file=err)
        for line in diff.mismatches:
            print(f"# MISMATCH {line}", file=err)
        if not diff.ok:
            status = 2

    if errors:
        status = 1
    return status


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
