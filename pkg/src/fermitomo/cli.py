"""Command line entry point: ``fermitomo <command> [options]``.

Exit codes: 0 success, 1 invariant failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .fermi_symbols import ClosedFormSymbol, fermi_kinds
from .jordan_wigner import MAX_MODES, anticommutation_residuals, build_algebra, density_matrix, fock_state, vacuum
from .linalg import SIGMA_Z, kron_all, matrix_from_json, matrix_to_json
from .rotations import EulerAngles, sphere_quadrature
from .star import star
from .tomography import (
    CONVENTION,
    PointSet,
    check_density_matrix,
    reconstruct,
    symbol_of,
    tabulated,
    tomo_grid,
    tomogram,
)
from .verify import SUITES, report, run_suites

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2


class InputError(ValueError):
    """Bad user input; reported with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    modes: int = 2
    quadrature_degree: int = 2
    tolerance: float = 1e-10
    seed: int = 0
    output_format: str = "json"
    angle_unit: str = "radians"

    def __post_init__(self):
        if not 1 <= self.modes <= MAX_MODES:
            raise InputError(f"--modes must be in [1, {MAX_MODES}], got {self.modes}")
        if self.quadrature_degree < 2:
            raise InputError(f"--degree must be >= 2, got {self.quadrature_degree}")
        if not self.tolerance > 0:
            raise InputError(f"--tolerance must be positive, got {self.tolerance}")
        if not 0 <= self.seed < 2**64:
            raise InputError("--seed must be a 64-bit unsigned integer")
        if self.output_format not in ("json", "csv"):
            raise InputError(f"unknown format {self.output_format!r}")

    def meta(self, command: str) -> dict:
        return {"command": command, "version": __version__, "convention": CONVENTION, **asdict(self)}

    def to_unit(self, radians):
        return np.degrees(radians) if self.angle_unit == "degrees" else np.asarray(radians)

    def from_unit(self, value: float) -> float:
        return math.radians(value) if self.angle_unit == "degrees" else value


# -- inputs -----------------------------------------------------------------

_LADDER = re.compile(r"^a(\d+)(\+?)$")


def resolve_operator(name: str, modes: int) -> np.ndarray:
    """Built-in name (``id``, ``sz``, ``vac``, ``a{j}``, ``a{j}+``) or a JSON matrix file."""
    dim = 2**modes
    if name == "id":
        return np.eye(dim, dtype=complex)
    if name == "sz":
        return kron_all([SIGMA_Z] * modes)
    if name == "vac":
        return density_matrix(vacuum(modes))
    m = _LADDER.match(name)
    if m:
        j = int(m.group(1))
        if not 1 <= j <= modes:
            raise InputError(f"operator {name!r} needs mode index in 1..{modes}")
        alg = build_algebra(modes)
        return alg.adag(j) if m.group(2) else alg.a(j)
    path = Path(name)
    if not path.exists():
        raise InputError(f"unknown operator {name!r} (not a built-in and no such file)")
    try:
        op = matrix_from_json(json.loads(path.read_text()))
    except (json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"{name}: {exc}") from None
    if op.shape != (dim, dim):
        raise InputError(f"{name}: expected a {dim}x{dim} matrix for {modes} modes, got {op.shape}")
    return op


def resolve_state(name: str, modes: int, tol: float) -> np.ndarray:
    """Density matrix from ``vac``, ``fock:i,j,...`` or a JSON file (vector or matrix)."""
    if name == "vac":
        return density_matrix(vacuum(modes))
    if name.startswith("fock:"):
        try:
            idx = [int(t) for t in name[5:].split(",") if t]
            psi = fock_state(build_algebra(modes), idx)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InputError(f"{name} is the zero vector (Pauli exclusion); no tomogram exists")
        return density_matrix(psi / norm)
    path = Path(name)
    if not path.exists():
        raise InputError(f"unknown state {name!r}")
    try:
        arr = matrix_from_json(json.loads(path.read_text()))
    except (json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"{name}: {exc}") from None
    if arr.shape[1] == 1:
        arr = density_matrix(arr[:, 0] / np.linalg.norm(arr[:, 0]))
    if arr.shape != (2**modes, 2**modes):
        raise InputError(f"{name}: state of dimension {arr.shape[0]} does not match {modes} modes")
    try:
        return check_density_matrix(arr, tol)
    except ValueError as exc:
        raise InputError(f"{name}: {exc}") from None


def parse_angles(text: str, cfg: RunConfig) -> list[EulerAngles]:
    """``"theta,psi[,phi];theta,psi[,phi];..."``, one group per mode."""
    groups = [g for g in text.split(";") if g.strip()]
    if len(groups) != cfg.modes:
        raise InputError(f"--angles needs {cfg.modes} groups separated by ';', got {len(groups)}")
    out = []
    for g in groups:
        try:
            vals = [cfg.from_unit(float(v)) for v in g.split(",")]
        except ValueError:
            raise InputError(f"cannot parse angle group {g!r}") from None
        if len(vals) not in (2, 3):
            raise InputError(f"angle group {g!r} needs theta,psi or theta,psi,phi")
        theta, psi = vals[0], vals[1]
        phi = vals[2] if len(vals) == 3 else 0.0
        try:
            out.append(EulerAngles(phi, theta, psi))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return out


def default_angle_points(cfg: RunConfig) -> list[list[EulerAngles]]:
    q = sphere_quadrature(cfg.quadrature_degree)
    nodes = list(zip(q.theta, q.psi))
    if len(nodes) ** cfg.modes > 100_000:
        raise InputError("default angle grid too large; pass --angles explicitly")
    grid = np.array(np.meshgrid(*[range(len(nodes))] * cfg.modes, indexing="ij")).reshape(cfg.modes, -1).T
    return [[EulerAngles(0.0, *nodes[k]) for k in row] for row in grid]


# -- output -----------------------------------------------------------------

def _bitstrings(modes: int) -> list[str]:
    return [format(b, f"0{modes}b") for b in range(2**modes)]


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_text(meta: dict, header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()


def _grid_header(modes: int) -> list[str]:
    cols = []
    for k in range(1, modes + 1):
        cols += [f"theta_{k}", f"psi_{k}"]
    return cols + ["m_bits"]


def _grid_prefix(grid: PointSet, k: int, cfg: RunConfig) -> list:
    row = []
    for i in range(grid.modes):
        row += [float(cfg.to_unit(grid.theta[k, i])), float(cfg.to_unit(grid.psi[k, i]))]
    return row + [format(int(grid.bits()[k]), f"0{grid.modes}b")]


def _symbol_json(grid: PointSet, cfg: RunConfig, columns: dict) -> list:
    pts = []
    for k in range(len(grid)):
        entry = {
            "angles": [[float(cfg.to_unit(grid.theta[k, i])), float(cfg.to_unit(grid.psi[k, i]))] for i in range(grid.modes)],
            "m_bits": format(int(grid.bits()[k]), f"0{grid.modes}b"),
        }
        for name, vals in columns.items():
            entry[name] = [float(vals[k].real), float(vals[k].imag)]
        pts.append(entry)
    return pts


def _write_symbol_table(cfg, args, meta, grid, columns: dict, extra: dict) -> None:
    if cfg.output_format == "csv":
        header = _grid_header(grid.modes)
        for name in columns:
            header += [f"{name}_re", f"{name}_im"]
        rows = []
        for k in range(len(grid)):
            row = _grid_prefix(grid, k, cfg)
            for vals in columns.values():
                row += [float(vals[k].real), float(vals[k].imag)]
            rows.append(row)
        _emit(_csv_text({**meta, **extra}, header, rows), args.output)
    else:
        _emit(_dump_json({"meta": meta, "modes": grid.modes, **extra, "points": _symbol_json(grid, cfg, columns)}), args.output)


# -- commands ---------------------------------------------------------------

def cmd_algebra(cfg: RunConfig, args) -> int:
    alg = build_algebra(cfg.modes)
    residuals = anticommutation_residuals(alg)
    ok = all(v < cfg.tolerance for v in residuals.values())
    doc = {
        "meta": cfg.meta("algebra"),
        "modes": cfg.modes,
        "annihilators": [matrix_to_json(a) for a in alg.annihilators],
        "creators": [matrix_to_json(a) for a in alg.creators],
        "residuals": residuals,
        "passed": ok,
    }
    _emit(_dump_json(doc), args.output)
    err = sys.stderr
    err.write(f"anticommutator residuals (N={cfg.modes}, tolerance {cfg.tolerance:g})\n")
    for k, v in residuals.items():
        err.write(f"  {k:<22} {v:.3e}  {'ok' if v < cfg.tolerance else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_verify(cfg: RunConfig, args) -> int:
    suites = tuple(args.suite) if args.suite else SUITES
    results = run_suites(cfg.modes, cfg.tolerance, cfg.seed, args.samples, suites)
    doc = {"meta": {**cfg.meta("verify"), "samples": args.samples, "suites": list(suites)}, **report(results)}
    _emit(_dump_json(doc), args.output)
    for r in results:
        sys.stderr.write(f"{'PASS' if r.passed else 'FAIL'} {r.name:<16} max deviation {r.max_deviation:.3e}\n")
    if not doc["passed"]:
        sys.stderr.write(f"first failing invariant: {doc['first_failure']}\n")
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_tomogram(cfg: RunConfig, args) -> int:
    rho = resolve_state(args.state, cfg.modes, cfg.tolerance)
    points = [parse_angles(a, cfg) for a in args.angles] if args.angles else default_angle_points(cfg)
    bits = _bitstrings(cfg.modes)
    meta = {**cfg.meta("tomogram"), "state": args.state}
    results = [(angles, tomogram(rho, angles, cfg.tolerance)) for angles in points]
    if cfg.output_format == "csv":
        header = []
        for k in range(1, cfg.modes + 1):
            header += [f"theta_{k}", f"psi_{k}"]
        header += ["m_bits", "value"]
        rows = []
        for angles, probs in results:
            prefix = []
            for a in angles:
                prefix += [float(cfg.to_unit(a.theta)), float(cfg.to_unit(a.psi))]
            rows += [prefix + [b, float(p)] for b, p in zip(bits, probs)]
        _emit(_csv_text(meta, header, rows), args.output)
    else:
        doc = {
            "meta": meta,
            "modes": cfg.modes,
            "points": [
                {
                    "angles": [[float(cfg.to_unit(a.theta)), float(cfg.to_unit(a.psi))] for a in angles],
                    "phi": [float(cfg.to_unit(a.phi)) for a in angles],
                    "probs": {b: float(p) for b, p in zip(bits, probs)},
                }
                for angles, probs in results
            ],
        }
        _emit(_dump_json(doc), args.output)
    return EXIT_OK


def cmd_symbol(cfg: RunConfig, args) -> int:
    op = resolve_operator(args.op, cfg.modes)
    grid = tomo_grid(cfg.modes, cfg.quadrature_degree)
    columns = {"matrix": symbol_of(op)(grid)}
    extra = {"operator": args.op}
    ok = True
    m = _LADDER.match(args.op)
    closed = None
    if m:
        closed = ClosedFormSymbol(fermi_kinds(cfg.modes, int(m.group(1)), bool(m.group(2))))
    elif args.op in ("id", "sz"):
        closed = ClosedFormSymbol(("one" if args.op == "id" else "z",) * cfg.modes)
    if closed is not None:
        columns = {"closed": closed.values(grid), **columns}
        dev = float(np.abs(columns["closed"] - columns["matrix"]).max())
        extra["closed_form"] = list(closed.kinds)
        extra["max_deviation"] = dev
        ok = dev < cfg.tolerance
        sys.stderr.write(f"closed form vs matrix symbol: max deviation {dev:.3e}\n")
    _write_symbol_table(cfg, args, cfg.meta("symbol"), grid, columns, extra)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_star(cfg: RunConfig, args) -> int:
    left = resolve_operator(args.left, cfg.modes)
    right = resolve_operator(args.right, cfg.modes)
    grid = tomo_grid(cfg.modes, cfg.quadrature_degree)
    try:
        fc = star(symbol_of(left, args.left), symbol_of(right, args.right), grid, allow_large=args.allow_large)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    values = fc(grid)
    columns = {"value": values}
    extra = {"left": args.left, "right": args.right}
    ok = True
    if args.check_oracle:
        dev = float(np.abs(values - symbol_of(left @ right)(grid)).max())
        extra["oracle_deviation"] = dev
        ok = dev < cfg.tolerance
        sys.stderr.write(f"star vs symbol of matrix product: max deviation {dev:.3e}\n")
    if args.reconstruct:
        product = reconstruct(tabulated(grid, values), grid)
        extra["reconstructed"] = matrix_to_json(product)
        extra["reconstruction_deviation"] = float(np.abs(product - left @ right).max())
    _write_symbol_table(cfg, args, cfg.meta("star"), grid, columns, extra)
    return EXIT_OK if ok else EXIT_INVARIANT


def read_symbol_csv(path: str, grid: PointSet) -> np.ndarray:
    """Values from a symbol CSV written on the standard grid; uses the first value column pair."""
    lines = [ln for ln in Path(path).read_text().splitlines() if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    if not rows:
        raise InputError(f"{path}: empty symbol file")
    header, body = rows[0], rows[1:]
    re_cols = [i for i, h in enumerate(header) if h.endswith("_re")]
    if not re_cols or len(body) != len(grid):
        raise InputError(f"{path}: expected {len(grid)} rows with a *_re/*_im column pair")
    i_re = re_cols[-1]
    try:
        vals = np.array([float(r[i_re]) + 1j * float(r[i_re + 1]) for r in body])
        m_bits = [r[header.index("m_bits")] for r in body]
    except (ValueError, IndexError):
        raise InputError(f"{path}: malformed symbol rows") from None
    expected = [format(int(b), f"0{grid.modes}b") for b in grid.bits()]
    if m_bits != expected:
        raise InputError(f"{path}: rows are not ordered on the standard grid")
    return vals


def cmd_reconstruct(cfg: RunConfig, args) -> int:
    grid = tomo_grid(cfg.modes, cfg.quadrature_degree)
    if args.symbol:
        values = read_symbol_csv(args.symbol, grid)
        source = args.symbol
    elif args.op:
        values = symbol_of(resolve_operator(args.op, cfg.modes))(grid)
        source = args.op
    else:
        raise InputError("reconstruct needs --op or --symbol")
    op = reconstruct(tabulated(grid, values), grid)
    doc = {"meta": {**cfg.meta("reconstruct"), "source": source}, "modes": cfg.modes, "operator": matrix_to_json(op)}
    ok = True
    if args.reference:
        ref = resolve_operator(args.reference, cfg.modes)
        dev = float(np.abs(op - ref).max())
        doc["reference"] = args.reference
        doc["max_abs_deviation"] = dev
        ok = dev < cfg.tolerance
        sys.stderr.write(f"max |reconstructed - reference| = {dev:.3e}\n")
    _emit(_dump_json(doc), args.output)
    return EXIT_OK if ok else EXIT_INVARIANT


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modes", type=int, default=2)
    common.add_argument("--degree", type=int, default=2, help="sphere quadrature exactness degree")
    common.add_argument("--tolerance", type=float, default=1e-10)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--degrees", action="store_true", help="angles in degrees instead of radians")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="fermitomo", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("algebra", parents=[common], help="dump fermion matrices and anticommutator residuals")

    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("--suite", action="append", choices=SUITES)
    v.add_argument("--samples", type=int, default=20)

    t = sub.add_parser("tomogram", parents=[common], help="tomogram of a state")
    t.add_argument("--state", default="vac")
    t.add_argument("--angles", action="append", help="'theta,psi[,phi];...' per mode; repeatable")

    s = sub.add_parser("symbol", parents=[common], help="symbol of an operator on the grid")
    s.add_argument("--op", required=True)

    st = sub.add_parser("star", parents=[common], help="star product of two operator symbols")
    st.add_argument("--left", required=True)
    st.add_argument("--right", required=True)
    st.add_argument("--check-oracle", action="store_true")
    st.add_argument("--reconstruct", action="store_true")
    st.add_argument("--allow-large", action="store_true", help="permit star products beyond 3 modes")

    r = sub.add_parser("reconstruct", parents=[common], help="operator from its symbol")
    r.add_argument("--op")
    r.add_argument("--symbol", help="symbol CSV on the standard grid")
    r.add_argument("--reference")
    return p


COMMANDS = {
    "algebra": cmd_algebra,
    "verify": cmd_verify,
    "tomogram": cmd_tomogram,
    "symbol": cmd_symbol,
    "star": cmd_star,
    "reconstruct": cmd_reconstruct,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            modes=args.modes,
            quadrature_degree=args.degree,
            tolerance=args.tolerance,
            seed=args.seed,
            output_format=args.format,
            angle_unit="degrees" if args.degrees else "radians",
        )
        return COMMANDS[args.command](cfg, args)
    except (InputError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
