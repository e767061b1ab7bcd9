"""Command-line front end.

Exit codes: 0 success, 1 usage or input errors, 2 genericity/instability,
3 internal audit failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from svbullet import __version__
from svbullet.cycles import cycle_degree, multiplicity_at, read_cycle, total_degree
from svbullet.cycles.chunk import Cycle
from svbullet.errors import AuditError, GenericityError, SVError
from svbullet.intersect.bullet import BulletReport, bullet, bullet_direct_linear
from svbullet.intersect.join import LinearSystem, ruled_join
from svbullet.intersect.local import epsilon, polar_self_intersection_oracle
from svbullet.intersect.sv import sv, sv_mass_check
from svbullet.kernel.points import ProjPoint
from svbullet.kernel.rand import DEFAULT_SEED

EXIT_OK, EXIT_USAGE, EXIT_GENERICITY, EXIT_AUDIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class JobSpec:
    command: str
    inputs: list
    seed: int = DEFAULT_SEED
    runs: int = 2
    mode: str = "json"
    points: list = field(default_factory=list)
    direct_linear: bool = False
    system: str | None = None
    timing: bool = False

    def validate(self) -> None:
        if self.mode not in ("json", "text"):
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.runs < 2:
            raise UsageError("--runs must be at least 2")
        need = {"degree": 1, "mult": 1, "sv": 1, "polar-oracle": 1}
        if self.command in need and len(self.inputs) != need[self.command]:
            raise UsageError(f"{self.command} takes exactly one cycle file")
        if self.command in ("bullet", "epsilon", "bezout-check") and len(self.inputs) < 2:
            raise UsageError(f"{self.command} needs at least two cycle files")
        if self.command == "join" and not self.inputs:
            raise UsageError("join needs at least one cycle file")
        if self.command in ("mult", "epsilon") and len(self.points) != 1:
            raise UsageError(f"{self.command} needs exactly one --point")
        if self.command == "sv" and not self.system:
            raise UsageError("sv needs --system")
        if self.direct_linear and len(self.inputs) != 2:
            raise UsageError("--direct-linear takes exactly two cycle files (linear space first)")


def parse_seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise UsageError(f"bad seed {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="svbullet", description="Exact bullet products of projective cycles.")
    p.add_argument("--version", action="version", version=f"svbullet {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, points=False):
        sp.add_argument("--mode", choices=("json", "text"), default="json")
        sp.add_argument("--seed", type=parse_seed, default=DEFAULT_SEED)
        sp.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
        if points:
            sp.add_argument("--point", action="append", default=[], help="point like [1,0,0]")

    sp = sub.add_parser("degree", help="per-dimension degrees of a cycle")
    sp.add_argument("inputs", nargs=1)
    common(sp)
    sp = sub.add_parser("mult", help="multiplicity of a cycle at a point")
    sp.add_argument("inputs", nargs=1)
    common(sp, points=True)
    sp = sub.add_parser("join", help="ruled join of cycles")
    sp.add_argument("inputs", nargs="+")
    common(sp)
    sp = sub.add_parser("sv", help="one SV run along a linear system")
    sp.add_argument("inputs", nargs=1)
    sp.add_argument("--system", required=True, help="file with one linear form per line")
    common(sp)
    products = {
        "bullet": "bullet product with fixed/moving components",
        "epsilon": "local intersection numbers at a point",
        "bezout-check": "compare the product degree with the Bezout number",
    }
    for name, text in products.items():
        sp = sub.add_parser(name, help=text)
        sp.add_argument("inputs", nargs="+")
        sp.add_argument("--runs", type=int, default=2)
        sp.add_argument("--direct-linear", action="store_true")
        common(sp, points=(name == "epsilon"))
    sp = sub.add_parser("polar-oracle", help="polar-curve split of a plane curve self-intersection")
    sp.add_argument("inputs", nargs=1)
    common(sp, points=True)
    return p


def job_from_args(argv) -> JobSpec:
    ns = build_parser().parse_args(argv)
    spec = JobSpec(
        command=ns.command,
        inputs=list(ns.inputs),
        seed=ns.seed,
        runs=getattr(ns, "runs", 2),
        mode=ns.mode,
        points=list(getattr(ns, "point", []) or []),
        direct_linear=getattr(ns, "direct_linear", False),
        system=getattr(ns, "system", None),
        timing=ns.timing,
    )
    spec.validate()
    return spec


# ------------------------------------------------------------------ running


def _chunk_json(ch) -> dict:
    return {
        "coefficient": ch.coefficient,
        "degree": ch.degree,
        "dim": ch.dim,
        "ideal": [str(g) for g in ch.generators()],
    }


def _product(spec: JobSpec, cycles) -> BulletReport:
    if spec.direct_linear:
        return bullet_direct_linear(cycles[0], cycles[1], seed=spec.seed, runs=spec.runs)
    return bullet(*cycles, seed=spec.seed, runs=spec.runs)


def _read_system(path: str, c: Cycle) -> LinearSystem:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    ring = c.ring
    forms = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            forms.extend(ring.parse(s) for s in body.split(",") if s.strip())
    return LinearSystem(tuple(forms), ring)


def run_command(spec: JobSpec) -> dict:
    cycles = [read_cycle(p) for p in spec.inputs]
    points = [ProjPoint.parse(p) for p in spec.points]
    out: dict = {"command": spec.command, "version": __version__}
    cmd = spec.command
    if cmd == "degree":
        c = cycles[0]
        out["degrees"] = {str(k): v for k, v in cycle_degree(c).items()}
        out["total"] = total_degree(c)
    elif cmd == "mult":
        out["point"] = str(points[0])
        out["multiplicity"] = multiplicity_at(cycles[0], points[0])
    elif cmd == "join":
        J = ruled_join(*cycles)
        out["ambient"] = J.n
        out["chunks"] = [_chunk_json(ch) for ch in J.chunks]
        out["total"] = total_degree(J)
    elif cmd == "sv":
        c = cycles[0]
        system = _read_system(spec.system, c)
        res = sv(c, system, spec.seed)
        audit = sv_mass_check(res)
        out["seed"] = spec.seed
        out["steps"] = [
            {"k": k, "chunks": [_chunk_json(ch) for ch in res.v(k)]} for k in sorted(res.inside) if res.v(k)
        ]
        out["combinations"] = {str(k): str(h) for k, h in sorted(res.combinations.items())}
        out["residual"] = [_chunk_json(ch) for ch in res.residual]
        out["audit"] = {
            "input_degree": audit.input_degree,
            "inside_degree": audit.inside_degree,
            "residual_term": audit.residual_term,
        }
    elif cmd == "bullet":
        out.update(_product(spec, cycles).to_json())
    elif cmd == "epsilon":
        rep = _product(spec, cycles)
        table = epsilon(*cycles, x=points[0], seed=spec.seed, runs=spec.runs, report=rep,
                        direct_linear=spec.direct_linear)
        out.update(table.to_json())
    elif cmd == "bezout-check":
        rep = _product(spec, cycles)
        ok = rep.total_degree <= rep.bezout_product
        if rep.rho >= 0 and all(c.is_pure() for c in cycles):
            ok = ok and rep.total_degree == rep.bezout_product
        out.update(
            {
                "rho": rep.rho,
                "bezout_product": rep.bezout_product,
                "total_degree": rep.total_degree,
                "residual_degree": rep.residual_degree,
                "fulton_degree": rep.fulton_degree,
                "ok": ok,
            }
        )
    elif cmd == "polar-oracle":
        c = cycles[0]
        if len(c.chunks) != 1 or len(c.chunks[0].ideal.gens) != 1 or c.n != 2:
            raise UsageError("polar-oracle expects a single plane curve")
        F = c.chunks[0].generators()[0]
        res = polar_self_intersection_oracle(F, spec.seed, candidates=points or None)
        out.update(res.to_json())
    return out


def emit_report(report: dict, mode: str) -> bytes:
    if mode == "json":
        return (json.dumps(report, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n").encode("utf-8")
    return (_text(report) + "\n").encode("utf-8")


def _text(r: dict) -> str:
    lines = [f"{r['command']} (svbullet {r['version']})"]
    if "components" in r:
        lines.append(f"rho={r['rho']} d={r['d']} runs={r['runs']} seeds={r['seeds']}")
        lines.append(f"{'kind':<7} {'dim':>3} {'degree':>6} {'coeff':>5}  ideal")
        for c in r["components"]:
            if c["kind"] == "fixed":
                lines.append(f"{'fixed':<7} {c['dim']:>3} {c['degree']:>6} {c['coefficient']:>5}  ({', '.join(c['ideal'])})")
            else:
                lines.append(f"{'moving':<7} {c['dim']:>3} {c['degree']:>6} {'-':>5}  {len(c['witnesses'])} witnesses")
        lines.append(
            f"total={r['total_degree']} bezout={r['bezout_product']} residual={r['residual_degree']} fulton={r['fulton_degree']}"
        )
        return "\n".join(lines)
    for k in sorted(r):
        if k in ("command", "version"):
            continue
        v = r[k]
        lines.append(f"{k}: {json.dumps(v, sort_keys=True, ensure_ascii=False) if isinstance(v, (dict, list)) else v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        spec = job_from_args(argv)
        start = time.perf_counter()
        report = run_command(spec)
        if spec.timing:
            report["seconds"] = round(time.perf_counter() - start, 3)
        sys.stdout.buffer.write(emit_report(report, spec.mode))
        sys.stdout.flush()
        return EXIT_OK
    except UsageError as exc:
        print(f"svbullet: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenericityError as exc:
        print(f"svbullet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except AuditError as exc:
        print(f"svbullet: internal audit failed: {exc}", file=sys.stderr)
        return EXIT_AUDIT
    except (SVError, OSError, ValueError) as exc:
        print(f"svbullet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
