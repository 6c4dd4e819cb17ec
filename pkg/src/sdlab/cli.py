"""Command-line front end: ``sdlab <command> ...``.

Exit status: 0 on success, 1 when a verified claim does not hold, 2 on usage,
input or resource errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__, corpus
from .complex import ComplexError, face_vector
from .formats import (
    FormatError,
    complex_to_json,
    csv_text,
    decimal,
    dumps,
    exact,
    load_complex,
    load_json,
    rational_pair,
)
from .measures import (
    PolynomialObservable,
    converge_blocks,
    converge_fp,
    converge_gamma,
    converge_links,
    integrate_volume,
    phi_mc_integral,
)
from .polynomial import RefinementBudgetExceeded
from .spectral import lambda_closed_form, lambda_recursive, limit_roots, q_partition, q_solve, transfer
from .subdivision import CapExceeded, EmbeddedComplex, iter_faces, iterate_subdivision, vertex_embedding
from .theorems import (
    asymptotic_dehn_sommerville,
    chi_at_minus_half,
    dehn_sommerville,
    macdonald_symmetry,
    sphere_root_analysis,
)

EXIT_OK, EXIT_CLAIM_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    max_cells: int | None = None
    max_depth: int = 12
    seed: int = 0
    format: str = "json"
    output: str | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.max_cells is not None and self.max_cells <= 0:
            raise UsageError("--max-cells must be positive")
        if self.max_depth <= 0:
            raise UsageError("--max-depth must be positive")


def report(cfg: RunConfig, payload: dict) -> dict:
    return {"command": cfg.command, "config": asdict(cfg), "version": __version__, **payload}


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _depth(cfg: RunConfig, d: int) -> int:
    if d < 0:
        raise UsageError("depth must be >= 0")
    if d > cfg.max_depth:
        raise UsageError(f"depth {d} exceeds --max-depth {cfg.max_depth}")
    return d


def _complex(cfg: RunConfig):
    if not cfg.input:
        raise UsageError("--input is required")
    return load_complex(cfg.input)


def _embedded(cfg: RunConfig) -> EmbeddedComplex:
    K, coords = _complex(cfg)
    if coords is None:
        coords = vertex_embedding(K)
        cfg.options["embedding"] = "generic (vertex k -> e_k)"
    return EmbeddedComplex(K, coords)


def _phi(path: str | None, ambient: int) -> PolynomialObservable:
    if path is None:
        return PolynomialObservable.constant(ambient)
    phi = PolynomialObservable.from_json(load_json(path))
    if phi.ambient != ambient:
        raise UsageError(f"observable has ambient dimension {phi.ambient}, embedding has {ambient}")
    return phi


# commands ------------------------------------------------------------------


def cmd_subdivide(cfg: RunConfig, args) -> int:
    K, _ = _complex(cfg)
    d = _depth(cfg, args.depth)
    if args.emit == "fvector":
        return cmd_fvector(cfg, args)
    S = iterate_subdivision(K, d, cfg.max_cells)
    faces = S.all_faces()
    if cfg.format == "csv":
        _emit(cfg, csv_text(None, faces))
    else:
        _emit(cfg, dumps(report(cfg, {"fvector": list(face_vector(S)), "faces": faces})))
    return EXIT_OK


def cmd_fvector(cfg: RunConfig, args) -> int:
    K, _ = _complex(cfg)
    d = _depth(cfg, args.depth)
    method = getattr(args, "method", "enumerate")
    if method == "transfer":
        fv = transfer(face_vector(K), K.dim, d)
    elif method == "stream":
        fv = tuple(sum(1 for _ in iter_faces(K, d, p, cfg.max_cells)) for p in range(K.dim + 1))
    else:
        fv = face_vector(iterate_subdivision(K, d, cfg.max_cells))
    if cfg.format == "csv":
        _emit(cfg, csv_text(None, [fv]))
    else:
        _emit(cfg, dumps(report(cfg, {"fvector": list(fv)})))
    return EXIT_OK


def cmd_lambda(cfg: RunConfig, args) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    build = lambda_recursive if args.form == "recursive" else lambda_closed_form
    rows = build(args.n + 1).block(args.n)
    if cfg.format == "csv":
        _emit(cfg, csv_text(None, rows))
    else:
        _emit(cfg, dumps(report(cfg, {"lambda": rows})))
    return EXIT_OK


def cmd_qcoeffs(cfg: RunConfig, args) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    q = q_solve(args.n) if args.method == "solve" else q_partition(args.n)
    payload: dict[str, Any] = {"n": args.n, "q": q, "q_decimal": [decimal(x) for x in q]}
    code = EXIT_OK
    if args.check_roots and args.n >= 1:
        iso = limit_roots(args.n)
        mids = iso.midpoints()
        n = args.n
        symmetric = all(abs(mids[i] + mids[n - i] + 1) <= Fraction(2, 10**12) for i in range(n + 1))
        ok = (
            iso.count == n + 1
            and all(m == 1 for m in iso.multiplicities)
            and all(-1 <= lo and hi <= 0 for lo, hi in iso.intervals)
            and symmetric
        )
        payload["roots"] = {
            "count": iso.count,
            "intervals": [[exact(lo), exact(hi)] for lo, hi in iso.intervals],
            "decimal": [decimal(m) for m in mids],
            "simple": all(m == 1 for m in iso.multiplicities),
            "symmetric": symmetric,
            "holds": ok,
        }
        code = EXIT_OK if ok else EXIT_CLAIM_FALSE
    if cfg.format == "csv":
        _emit(cfg, csv_text(["p", "q", "decimal"], [(p, x, decimal(x)) for p, x in enumerate(q)]))
    else:
        _emit(cfg, dumps(report(cfg, payload)))
    return code


def cmd_verify(cfg: RunConfig, args) -> int:
    claim = args.claim
    if claim in ("asymptotic-ds", "sphere-roots"):
        if args.n is None:
            raise UsageError(f"--claim {claim} needs --n")
        rep = asymptotic_dehn_sommerville(args.n) if claim == "asymptotic-ds" else sphere_root_analysis(args.n)
    else:
        K, _ = _complex(cfg)
        rep = {"macdonald": macdonald_symmetry, "chi-half": chi_at_minus_half, "ds": dehn_sommerville}[claim](K)
    if not rep.applicable:
        raise UsageError(f"claim {claim} does not apply: {'; '.join(rep.warnings)}")
    payload = {
        "claim": rep.claim,
        "holds": rep.holds,
        "residual": rep.residual,
        "witness": rep.witness,
        "warnings": rep.warnings,
        "details": rep.details,
    }
    _emit(cfg, dumps(report(cfg, payload)))
    return EXIT_OK if rep.holds else EXIT_CLAIM_FALSE


def _report_rows(rep, l: int | None):
    for row in rep.rows():
        base = [row["d"]] + ([l] if l is not None else [])
        yield base + [
            decimal(row["value"]),
            decimal(row["target"]),
            decimal(row["error"]),
            "" if row["ratio"] is None else decimal(row["ratio"]),
        ]


def cmd_converge(cfg: RunConfig, args) -> int:
    E = _embedded(cfg)
    n = E.complex.dim
    if not 0 <= args.p <= n:
        raise UsageError(f"--p must lie in 0..{n}")
    dmax = _depth(cfg, args.dmax)
    ds = range(args.dmin, dmax + 1)
    phi = _phi(args.phi, E.ambient)
    h = args.harness
    if h == "gamma":
        reps = [converge_gamma(E, args.p, ds, phi, cfg.max_cells)]
    elif h == "links":
        if args.p >= n:
            raise UsageError("the links harness needs p < n")
        reps = converge_links(E, args.p, ds, phi, cfg.max_cells)
    elif h == "blocks":
        reps = converge_blocks(E, args.p, ds, phi, cap=cfg.max_cells)
    else:
        reps = [converge_fp(E, args.p, ds, phi, cfg.max_cells)]
    multi = h in ("links", "blocks")
    summary = report(
        cfg,
        {
            "harness": h,
            "volume_integral": rational_pair(integrate_volume(E, phi)),
            "reports": [
                {
                    "quantity": r.quantity,
                    "provenance": r.provenance,
                    "target": rational_pair(r.target),
                    "rows": [
                        {k: (None if v is None else (v if k == "d" else rational_pair(v))) for k, v in row.items()}
                        for row in r.rows()
                    ],
                }
                for r in reps
            ],
        },
    )
    if cfg.format == "json":
        _emit(cfg, dumps(summary))
    else:
        header = ["d"] + (["l"] if multi else []) + ["value", "target", "error", "ratio"]
        rows = [row for l, r in enumerate(reps) for row in _report_rows(r, l if multi else None)]
        _emit(cfg, csv_text(header, rows))
        if args.summary:
            Path(args.summary).write_text(dumps(summary), encoding="utf-8", newline="\n")
    return EXIT_OK


def cmd_sample(cfg: RunConfig, args) -> int:
    from .complex import standard_simplex
    from .subdivision import standard_embedding

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    d = _depth(cfg, args.depth)
    if d < 1:
        raise UsageError("--depth must be >= 1")
    phi = _phi(args.phi, args.n)
    res = phi_mc_integral(args.n, d, args.samples, phi, cfg.seed)
    target = integrate_volume(EmbeddedComplex(standard_simplex(args.n), standard_embedding(args.n)), phi)
    z = float(abs(res.mean - target)) / res.stderr if res.stderr else 0.0
    payload = {
        "mean": rational_pair(res.mean),
        "stderr": res.stderr,
        "samples": res.samples,
        "seed": res.seed,
        "depth": res.depth,
        "target": rational_pair(target),
        "z": z,
    }
    _emit(cfg, dumps(report(cfg, payload)))
    return EXIT_OK


def cmd_corpus(cfg: RunConfig, args) -> int:
    if args.action == "list":
        _emit(cfg, "".join(name + "\n" for name in corpus.names()))
        return EXIT_OK
    if not args.name:
        raise UsageError("corpus emit needs a name")
    try:
        K, coords = corpus.get(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    _emit(cfg, dumps(complex_to_json(K, coords)))
    return EXIT_OK


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--max-cells", type=int, default=None, help="visit cap (default 1e7 or $SDLAB_MAX_CELLS)")
    common.add_argument("--max-depth", type=int, default=12)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="sdlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sdlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subdivide", parents=[common], help="iterated barycentric subdivision")
    p.add_argument("--input", required=True)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--emit", choices=["faces", "fvector"], default="fvector")
    p.set_defaults(func=cmd_subdivide, default_format="json")

    p = sub.add_parser("fvector", parents=[common], help="face vector of Sd^d(K)")
    p.add_argument("--input", required=True)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--method", choices=["enumerate", "transfer", "stream"], default="enumerate")
    p.set_defaults(func=cmd_fvector, default_format="csv")

    p = sub.add_parser("lambda", parents=[common], help="the transfer matrix Lambda_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--form", choices=["recursive", "closed"], default="recursive")
    p.set_defaults(func=cmd_lambda, default_format="json")

    p = sub.add_parser("qcoeffs", parents=[common], help="limit coefficients q_{p,n}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["solve", "partition"], default="solve")
    p.add_argument("--check-roots", action="store_true")
    p.set_defaults(func=cmd_qcoeffs, default_format="json")

    p = sub.add_parser("verify", parents=[common], help="exact identity verifiers")
    p.add_argument("--claim", required=True, choices=["macdonald", "chi-half", "ds", "asymptotic-ds", "sphere-roots"])
    p.add_argument("--input")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_verify, default_format="json")

    p = sub.add_parser("converge", parents=[common], help="measure convergence harnesses")
    p.add_argument("--harness", required=True, choices=["gamma", "links", "blocks", "fp-delta"])
    p.add_argument("--input", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--dmin", type=int, default=1)
    p.add_argument("--phi", default=None, help="observable JSON (default: constant 1)")
    p.add_argument("--summary", default=None, help="also write the JSON summary here (csv mode)")
    p.set_defaults(func=cmd_converge, default_format="csv")

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo through the chart map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--phi", default=None)
    p.set_defaults(func=cmd_sample, default_format="json")

    p = sub.add_parser("corpus", parents=[common], help="shipped complexes")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_corpus, default_format="json")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            input=getattr(args, "input", None),
            max_cells=args.max_cells,
            max_depth=args.max_depth,
            seed=args.seed,
            format=args.format or args.default_format,
            output=args.output,
        )
        return args.func(cfg, args)
    except (UsageError, FormatError, ComplexError, CapExceeded, RefinementBudgetExceeded, ValueError) as exc:
        print(f"sdlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
