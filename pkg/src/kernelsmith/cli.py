"""Command-line front end: ``kernelsmith {expand,compare,check}``.

Exit codes: 0 success / currents coincide, 1 verification failure, 2 usage
error, 3 currents differ, 4 environment (missing reference files).

Sign convention for ``compare``: the printed quantity is

    Delta_mu = SL tr(gamma_mu sum_l G_l W),

and the Schwinger current minus the zeta-function current equals -Delta_mu.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__, clifford
from .comparison import DEFAULT_REP, REPS, RepDimensionMismatch, current_difference
from .field_calculus import WILSON_SIGNS
from .gamma_algebra import NoTraceRule
from .golden_table import ENV_VAR, check_files, golden_dir, regenerate
from .kernel import MAX_ELL, kernel_in_F_form, master_H, pole_report
from .render import to_latex, to_text
from .serialize import to_json

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DIFFER, EXIT_ENV = 0, 1, 2, 3, 4
REP_CHOICES = sorted({rep for _, rep in REPS})


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    dimension: int | None
    representation: str | None
    normalization: str
    wilson_sign: str
    wilson_order: int | None
    format: str
    golden_dir: str
    seed: int
    ell: int | None = None

    def validate(self) -> None:
        n = self.dimension
        if n is not None and n < 2:
            raise UsageError("--dim must be at least 2")
        if self.ell is not None and not 0 <= self.ell <= MAX_ELL:
            raise UsageError(f"--ell must be in 0..{MAX_ELL}")
        if self.command == "compare":
            if n not in DEFAULT_REP:
                raise UsageError(f"compare needs --dim in {sorted(DEFAULT_REP)}")
            if (n, self.representation) not in REPS:
                valid = sorted(r for (m, r) in REPS if m == n)
                raise UsageError(f"representation {self.representation!r} is not available for n={n}; "
                                 f"choose from {valid}")
            if self.wilson_order is not None and self.wilson_order < n - 1:
                raise UsageError(f"--wilson-order must be at least n - 1 = {n - 1}")
        if self.seed < 0:
            raise UsageError("--seed must be non-negative")

    def to_json(self) -> dict:
        return asdict(self)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, help="spacetime dimension n (omit in expand for symbolic n)")
    common.add_argument("--rep", choices=REP_CHOICES,
                        help="gamma representation (compare); default pauli for n=2,3 and dirac4 for n=4")
    common.add_argument("--normalization", choices=sorted(clifford.NORMALIZATIONS), default="standard",
                        help="Clifford constant: standard (2 delta) or the literal delta variant")
    common.add_argument("--wilson-sign", choices=sorted(WILSON_SIGNS), default="eq9",
                        help="sign in the exponent of the gauge link (default eq9, charge -1)")
    common.add_argument("--wilson-order", type=int, help="order of the gauge-link expansion (default n-1)")
    common.add_argument("--format", choices=["text", "latex", "json"], default="text")
    common.add_argument("--golden-dir", help=f"reference files (default ${ENV_VAR} or the packaged set)")
    common.add_argument("--seed", type=int, default=0, help="seed for the randomized oracle suites")

    p = argparse.ArgumentParser(
        prog="kernelsmith",
        description="Kernel coefficients of complex powers of the Dirac operator and the "
                    "zeta-function versus point-splitting current comparison.",
        epilog="compare prints Delta_mu = SL tr(gamma_mu G W); J_Schwinger - J_zeta = -Delta_mu.")
    p.add_argument("--version", action="version", version=f"kernelsmith {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    e = sub.add_parser("expand", parents=[common], help="print H_{-n-s+ell}(x, u)")
    e.add_argument("--ell", type=int, required=True, help=f"0..{MAX_ELL}")
    sub.add_parser("compare", parents=[common], help="decide whether the two currents coincide")
    c = sub.add_parser("check", parents=[common], help="run all verification suites")
    c.add_argument("--regen-golden", action="store_true",
                   help="rewrite the reference files from the hand-entered builders (never from engine output)")
    return p


def _config(args) -> RunConfig:
    rep = args.rep
    if args.command == "compare" and rep is None:
        rep = DEFAULT_REP.get(args.dim)
    return RunConfig(command=args.command, dimension=args.dim, representation=rep,
                     normalization=args.normalization, wilson_sign=args.wilson_sign,
                     wilson_order=args.wilson_order, format=args.format,
                     golden_dir=str(golden_dir(args.golden_dir)), seed=args.seed,
                     ell=getattr(args, "ell", None))


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------

def _render(e, fmt):
    return to_latex(e) if fmt == "latex" else to_text(e)


def _header(cfg: RunConfig) -> list[str]:
    mark = "%" if cfg.format == "latex" else "#"
    return [f"{mark} kernelsmith {__version__}",
            f"{mark} config: {json.dumps(cfg.to_json(), sort_keys=True, ensure_ascii=False)}"]


def _emit(cfg: RunConfig, lines: list[str], payload: dict, out) -> None:
    if cfg.format == "json":
        doc = {"engine": {"name": "kernelsmith", "version": __version__}, "config": cfg.to_json(), **payload}
        out.write(json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(_header(cfg) + lines) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_expand(cfg: RunConfig, out) -> int:
    n, ell = cfg.dimension, cfg.ell
    H = kernel_in_F_form(master_H(n, ell))
    tag = "n" if n is None else str(n)
    comment = "%" if cfg.format == "latex" else "#"
    lines = [f"{comment} H_(-n-s+{ell})(x, u) with n = {tag}", _render(H, cfg.format)]
    payload = {"ell": ell, "result": to_json(H)}
    if n is not None:
        rep = pole_report(n, ell)
        if rep.has_pole:
            residue = kernel_in_F_form(rep.residue)
            lines += [f"{comment} pole at s = -1: simple pole; its finite part carries ln|u| terms",
                      f"{comment} residue at s = -1:", _render(residue, cfg.format)]
            payload["pole"] = {"at": "-1", "present": True, "residue": to_json(residue)}
        else:
            lines.append(f"{comment} pole at s = -1: none")
            payload["pole"] = {"at": "-1", "present": False}
    _emit(cfg, lines, payload, out)
    return EXIT_OK


def cmd_compare(cfg: RunConfig, out) -> int:
    v = current_difference(cfg.dimension, cfg.representation, cfg.wilson_order, cfg.wilson_sign)
    comment = "%" if cfg.format == "latex" else "#"
    lines = [f"dimension: {v.dimension}", f"representation: {v.representation}",
             f"{comment} Delta_mu = SL tr(gamma_mu sum_l G_l W);  J_Schwinger - J_zeta = -Delta_mu",
             "green sum:", _render(v.green_sum, cfg.format),
             "Delta_mu:", _render(v.difference, cfg.format),
             f"coincide: {'true' if v.coincide else 'false'}"]
    payload = {"verdict": v.to_json(), "green_sum": to_json(v.green_sum)}
    _emit(cfg, lines, payload, out)
    return EXIT_OK if v.coincide else EXIT_DIFFER


def cmd_check(cfg: RunConfig, out, regen: bool = False) -> int:
    from .suites import all_suites
    if regen:
        written = regenerate(cfg.golden_dir)
        _emit(cfg, [f"wrote {p.name}" for p in written], {"written": [p.name for p in written]}, out)
        return EXIT_OK
    missing = check_files(cfg.golden_dir)
    if missing:
        sys.stderr.write(f"kernelsmith: missing reference files in {cfg.golden_dir}: {', '.join(missing)}\n")
        return EXIT_ENV
    reports = all_suites(cfg.dimension, cfg.golden_dir, cfg.seed)
    lines = []
    for r in reports:
        lines.append(f"[{'pass' if r.passed else 'FAIL'}] {r.name}")
        lines += ["  " + x.replace("\n", "\n  ") for x in r.lines]
    ok = all(r.passed for r in reports)
    lines.append(f"overall: {'pass' if ok else 'FAIL'}")
    payload = {"suites": [{"name": r.name, "passed": r.passed, "lines": r.lines} for r in reports],
               "passed": ok}
    _emit(cfg, lines, payload, out)
    return EXIT_OK if ok else EXIT_VERIFY


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        cfg.validate()
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"kernelsmith: error: {exc}\n")
        return EXIT_USAGE
    with clifford.normalization(cfg.normalization):
        try:
            if cfg.command == "expand":
                return cmd_expand(cfg, out)
            if cfg.command == "compare":
                return cmd_compare(cfg, out)
            return cmd_check(cfg, out, args.regen_golden)
        except (RepDimensionMismatch, NoTraceRule) as exc:
            sys.stderr.write(f"kernelsmith: error: {exc}\n")
            return EXIT_USAGE


def entry() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(main())
