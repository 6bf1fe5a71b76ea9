"""Command-line front end: ``finalg <subcommand> [spec.json] [options]``.

Algebra specs and reports are JSON documents; the schemas are described in
``docs/formats.md``.  Exit codes: 0 ok, 1 usage, 2 computation error,
3 theorem violation.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import (
    DEFAULT_BUDGET,
    Algebra,
    Augmentation,
    CayleyTable,
    alg_cyclic_group_algebra,
    alg_direct_product,
    alg_group_algebra,
    alg_poly_quotient,
    alg_scalar_extend,
    alg_tensor,
    idempotent_power,
    is_idempotent,
    nilradical_via_augmentation,
)
from . import checks
from .decomp import block_decompose, is_connected
from .errors import FinAlgError, TheoremViolation
from .gfield import FiniteField, ff_make
from .motivemodel import canonical_witness, counterexample_demo
from .polyfactor import Polynomial, factor

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_THEOREM = 0, 1, 2, 3

COMMANDS = ("factor", "decompose", "connected", "nilradical", "idem-power", "demo-counterexample", "selftest")


class UsageError(Exception):
    pass


class SelftestFailed(TheoremViolation):
    def __init__(self, message: str, result: dict):
        super().__init__(message)
        self.result = result


# --- spec parsing ---------------------------------------------------------------

def _require(doc: dict, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise UsageError(f"{where}: missing key '{key}'")
    return doc[key]


def parse_field(doc) -> FiniteField:
    f = _require(doc, "field", "spec")
    try:
        return ff_make(int(_require(f, "p", "field")), int(f.get("k", 1)))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FinAlgError):
            raise
        raise UsageError(f"field: {exc}") from exc


def build_algebra(node, F: FiniteField) -> Algebra:
    """Build an algebra from one constructor node such as {"tensor": {...}}."""
    if not isinstance(node, dict) or len(node) != 1:
        raise UsageError(f"algebra node must be an object with exactly one key, got {node!r}")
    (kind, body), = node.items()
    if kind == "poly_quotient":
        return alg_poly_quotient(F, Polynomial(F, _require(body, "modulus", kind)))
    if kind == "group_algebra":
        if "cyclic" in body:
            n = int(body["cyclic"])
            if n < 1:
                raise UsageError("group_algebra: cyclic order must be >= 1")
            return alg_cyclic_group_algebra(n, F)
        return alg_group_algebra(CayleyTable(_require(body, "cayley", kind)), F)
    if kind in ("tensor", "product"):
        A = build_algebra(_require(body, "left", kind), F)
        B = build_algebra(_require(body, "right", kind), F)
        return alg_tensor(A, B) if kind == "tensor" else alg_direct_product(A, B)
    if kind == "scalar_extend":
        inner = build_algebra(_require(body, "inner", kind), F)
        return alg_scalar_extend(inner, int(_require(body, "m", kind)))
    raise UsageError(f"unknown algebra constructor '{kind}'")


def load_algebra(doc) -> Algebra:
    try:
        A = build_algebra(_require(doc, "algebra", "spec"), parse_field(doc))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FinAlgError):
            raise
        raise UsageError(f"malformed algebra spec: {exc}") from exc
    if doc.get("label"):
        A.label = str(doc["label"])
    return A


def parse_element(A: Algebra, coords):
    if not isinstance(coords, list):
        raise UsageError(f"element must be a coordinate list, got {coords!r}")
    try:
        return A.element(coords)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"element: {exc}") from exc


def digest(doc) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(canon.encode("utf-8")).hexdigest()


# --- reports --------------------------------------------------------------------

@dataclass
class Report:
    command: str
    input_digest: str
    spec: Any
    seed: int
    budget: int
    result: dict
    certification: str | None = None
    exit_code: int = EXIT_OK
    wall_time: float = 0.0
    argv: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, doc: dict) -> "Report":
        r = cls(**doc)
        r.verify_witnesses()
        return r

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_json(json.loads(text))

    def comparable(self) -> dict:
        """Everything except the wall-time field."""
        d = self.to_json()
        d.pop("wall_time")
        return d

    def witnesses(self) -> list[tuple[Any, list]]:
        """(spec, coordinates) pairs that must be idempotent."""
        res, out = self.result, []
        if "error" in res:
            return out
        if self.command == "connected" and res.get("witness") is not None:
            out.append((self.spec, res["witness"]))
        elif self.command == "decompose":
            out += [(self.spec, b["idempotent"]) for b in res["blocks"]]
        elif self.command == "idem-power":
            out.append((self.spec, res["idempotent"]))
        elif self.command == "demo-counterexample":
            out += [(w["spec"], w["element"]) for w in res["witnesses"]]
        return out

    def verify_witnesses(self) -> None:
        for spec, coords in self.witnesses():
            A = load_algebra(spec)
            if not is_idempotent(A.element(coords)):
                raise TheoremViolation(f"witness {coords} is not idempotent in {A.label}")


# --- subcommands ------------------------------------------------------------------

def cmd_factor(doc, args):
    F = parse_field(doc)
    try:
        f = Polynomial(F, _require(doc, "polynomial", "spec"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FinAlgError):
            raise
        raise UsageError(f"malformed polynomial: {exc}") from exc
    fl = factor(f, np.random.default_rng(args.seed))
    if fl.expand() != f:
        raise TheoremViolation("factorization does not multiply back to the input")
    return {
        "polynomial": f.to_json(),
        "unit": fl.unit.code if F.k == 1 else list(fl.unit.coords),
        "factors": [
            {"factor": g.to_json(), "degree": g.degree, "multiplicity": e} for g, e in fl.factors
        ],
    }, None


def cmd_decompose(doc, args):
    A = load_algebra(doc)
    rep = block_decompose(A, args.budget)
    blocks = [
        {"dim": b.dim, "is_field": b.is_field, "idempotent": b.idempotent.to_json()}
        for b in rep.blocks
    ]
    return {"algebra": A.label, "dim": A.dim, "blocks": blocks}, rep.certification.value


def cmd_connected(doc, args):
    A = load_algebra(doc)
    v = is_connected(A, args.budget, np.random.default_rng(args.seed))
    return {
        "algebra": A.label,
        "status": v.status.value,
        "witness": None if v.witness is None else v.witness.to_json(),
    }, v.certification.value


def cmd_nilradical(doc, args):
    A = load_algebra(doc)
    values = _require(doc, "augmentation", "spec (nilradical needs an augmentation)")
    try:
        phi = Augmentation(A, [v if isinstance(v, list) else A.base.elem(v).code for v in values])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FinAlgError):
            raise
        raise UsageError(f"augmentation: {exc}") from exc
    N = nilradical_via_augmentation(A, phi)
    return {
        "algebra": A.label,
        "augmentation": phi.to_json(),
        "dim": N.dim,
        "basis": [v.to_json() for v in N.vectors],
    }, None


def cmd_idem_power(doc, args):
    A = load_algebra(doc)
    coords = json.loads(args.element) if args.element is not None else doc.get("element")
    if coords is None:
        raise UsageError("idem-power needs --element or an 'element' key in the spec")
    e, cyc = idempotent_power(parse_element(A, coords))
    return {
        "algebra": A.label,
        "element": coords,
        "idempotent": e.to_json(),
        "preperiod": cyc.preperiod,
        "period": cyc.period,
        "s": cyc.s,
        "exponent": cyc.exponent,
    }, None


DEMO_SPEC = {"field": {"p": 2, "k": 1}, "algebra": {"group_algebra": {"cyclic": 3}}}


def cmd_demo(doc, args):
    ledger = counterexample_demo(args.budget)
    ext_spec = {"field": {"p": 2, "k": 1},
                "algebra": {"scalar_extend": {"inner": DEMO_SPEC["algebra"], "m": 2}}}
    witnesses = []
    for e in ledger.entries:
        witnesses.append({"spec": DEMO_SPEC, "element": e.summand.pi.to_json()})
    N = next(e.summand for e in ledger.entries if e.corner_dim == 2)
    witnesses.append({"spec": ext_spec, "element": canonical_witness(N, ff_make(2, 2)).to_json()})
    return {
        "steps": [{"step": n, "claim": c, "ok": ok} for n, c, ok in ledger.steps],
        "summands": [
            {"projector": e.summand.pi.to_json(), "corner_dim": e.corner_dim,
             "is_field": e.is_field, "status": e.verdict.status.value}
            for e in ledger.entries
        ],
        "narrative": ledger.narrative,
        "witnesses": witnesses,
    }, None


def cmd_selftest(doc, args):
    chosen = args.criteria or list(range(1, len(checks.ALL_CHECKS) + 1))
    results = []
    for n in chosen:
        if not 1 <= n <= len(checks.ALL_CHECKS):
            raise UsageError(f"no criterion {n}")
        fn = checks.ALL_CHECKS[n - 1]
        r = fn() if fn is checks.check_factor_roundtrip else fn(args.budget)
        results.append(r)
    out = {
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
    }
    if not all(r.passed for r in results):
        failed = [r.number for r in results if not r.passed]
        raise SelftestFailed(f"criteria {failed} failed", out)
    return out, None


HANDLERS = {
    "factor": cmd_factor,
    "decompose": cmd_decompose,
    "connected": cmd_connected,
    "nilradical": cmd_nilradical,
    "idem-power": cmd_idem_power,
    "demo-counterexample": cmd_demo,
    "selftest": cmd_selftest,
}
NEEDS_SPEC = {"factor", "decompose", "connected", "nilradical", "idem-power"}


# --- argument parsing -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _criteria(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad criterion list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="largest algebra size scanned exhaustively (default 4096)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = _Parser(prog="finalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in NEEDS_SPEC:
            p.add_argument("spec", help="algebra/polynomial spec (JSON file, '-' for stdin)")
        if name == "idem-power":
            p.add_argument("--element", help="coordinate list as JSON, e.g. '[1,1,0]'")
        if name == "selftest":
            p.add_argument("--criteria", type=_criteria, help="comma-separated subset, e.g. 1,6")
    return parser


def _read_spec(path: str, stdin):
    try:
        text = stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read spec {path}: {exc}") from exc


def execute(argv: list[str], stdin=None) -> Report:
    """Run one subcommand and return its report (errors become error reports)."""
    t0 = time.perf_counter()
    argv = list(argv)
    command = next((a for a in argv if a in COMMANDS), None)
    report = Report(command or "", digest(None), None, 0, DEFAULT_BUDGET, {}, argv=argv)
    try:
        args = build_parser().parse_args(argv)
        report.seed, report.budget = args.seed, args.budget
        if args.budget < 1:
            raise UsageError("--budget must be positive")
        doc = _read_spec(args.spec, stdin or sys.stdin) if args.command in NEEDS_SPEC else None
        report.spec = doc
        report.input_digest = digest({"spec": doc, "element": getattr(args, "element", None)})
        report.result, report.certification = HANDLERS[args.command](doc, args)
    except UsageError as exc:
        _fail(report, EXIT_USAGE, "UsageError", str(exc))
    except TheoremViolation as exc:
        _fail(report, EXIT_THEOREM, type(exc).__name__, str(exc))
        if isinstance(exc, SelftestFailed):
            report.result.update(exc.result)
    except FinAlgError as exc:
        _fail(report, EXIT_COMPUTE, type(exc).__name__, str(exc))
    except Exception as exc:  # anything unexpected is still reported, as a computation error
        _fail(report, EXIT_COMPUTE, type(exc).__name__, str(exc))
    report.wall_time = round(time.perf_counter() - t0, 6)
    return report


def _fail(report: Report, code: int, kind: str, message: str) -> None:
    report.exit_code = code
    report.result = {"error": {"kind": kind, "message": message}}


# --- text rendering -----------------------------------------------------------------

def render_text(r: Report) -> str:
    res = r.result
    if "error" in res:
        return f"error ({res['error']['kind']}): {res['error']['message']}\n"
    lines = []
    if r.command == "factor":
        parts = [f"{f['factor']}^{f['multiplicity']}" for f in res["factors"]]
        lines.append(f"{res['polynomial']} = {res['unit']} * " + " * ".join(parts))
    elif r.command == "decompose":
        lines.append(f"{res['algebra']}: {len(res['blocks'])} block(s) [{r.certification}]")
        for b in res["blocks"]:
            lines.append(f"  dim {b['dim']}  field={b['is_field']}  e={b['idempotent']}")
    elif r.command == "connected":
        line = f"{res['algebra']}: {res['status']} [{r.certification}]"
        if res["witness"] is not None:
            line += f" witness {res['witness']}"
        lines.append(line)
    elif r.command == "nilradical":
        lines.append(f"{res['algebra']}: nilradical of dim {res['dim']} = ker {res['augmentation']}")
        lines += [f"  {v}" for v in res["basis"]]
    elif r.command == "idem-power":
        lines.append(
            f"{res['element']}^{res['exponent']} = {res['idempotent']} "
            f"(preperiod {res['preperiod']}, period {res['period']}, s {res['s']})"
        )
    elif r.command == "demo-counterexample":
        lines += res["narrative"]
    elif r.command == "selftest":
        lines += [
            f"[{'PASS' if c['passed'] else 'FAIL'}] criterion {c['number']}: {c['title']} -- {c['detail']}"
            for c in res["criteria"]
        ]
    return "\n".join(lines) + "\n"


def _wants_json(argv: list[str]) -> bool:
    for i, a in enumerate(argv):
        if a == "--format=json" or (a == "--format" and argv[i + 1:i + 2] == ["json"]):
            return True
    return False


def run(argv: list[str] | None = None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else argv
    report = execute(argv, stdin)
    if _wants_json(argv):
        stdout.write(report.dumps())
    elif report.exit_code == EXIT_OK:
        stdout.write(render_text(report))
    else:
        # failed selftests still list every criterion
        if report.command == "selftest" and "criteria" in report.result:
            stdout.write(render_text(Report(**{**report.to_json(), "result": {"criteria": report.result["criteria"]}})))
        stderr.write(render_text(report))
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
