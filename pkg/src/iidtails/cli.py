"""Command-line front end.

Subcommands: verify, corpus, search, counterexample, mc, show.  Every JSON
report embeds a run manifest (subcommand, parameters, seed, version, input
digests, wall clock, outcome) so any reported verdict can be re-run from
the report alone.  Exit codes: 0 all holds/vacuous, 1 genuine violation,
2 usage or input error, 3 internal soundness guard tripped.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import checks, concentration, corpus as corpus_mod
from ._version import __version__
from .counterexample import verify_counterexample
from .dists import DEFAULT_SUPPORT_CAP, MODES, STRICT, Norm
from .montecarlo import SamplerSpec, estimate_tail, mc_check
from .reports import HOLDS, VACUOUS, jsonify
from .search import SearchSpace, SoundnessViolation, search
from .specfile import SpecFileError, dist_to_jsonable, load_dist

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


@dataclass(frozen=True)
class RunManifest:
    subcommand: str
    params: dict
    seed: "int | None"
    version: str
    input_digests: dict
    wall_clock: str
    outcome: str

    def to_jsonable(self) -> dict:
        return jsonify({
            "subcommand": self.subcommand, "params": self.params,
            "seed": self.seed, "version": self.version,
            "input_digests": self.input_digests,
            "wall_clock": self.wall_clock, "outcome": self.outcome,
        })


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _manifest(args, files, outcome: str) -> RunManifest:
    params = {k: v for k, v in vars(args).items() if k != "func"}
    return RunManifest(
        subcommand=args.subcommand, params=jsonify(params),
        seed=getattr(args, "seed", None), version=__version__,
        input_digests={str(f): _digest(f) for f in files},
        wall_clock=datetime.now(timezone.utc).isoformat(),
        outcome=outcome)


def _emit(doc: dict, out: "str | None") -> None:
    text = json.dumps(jsonify(doc), indent=2, sort_keys=True)
    print(text)
    if out:
        Path(out).write_text(text + "\n")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _norm(text: str) -> Norm:
    try:
        return Norm(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown norm {text!r}; choose abs1d, sup, or euclidean")


def _weights(text: str) -> "list[Fraction]":
    return [_rational(part) for part in text.split(",") if part != ""]


VERIFY_CLAIMS = ("theorem1", "levy_ottaviani", "levy", "corollary4",
                 "corollary5", "corollary6", "latala_sharp", "latala",
                 "latala_alt", "lemma2", "corollary3")


def _verify_one(dist, args) -> "list":
    """All reports the requested claim produces for one distribution."""
    claim = corpus_mod.CLAIM_ALIASES.get(args.claim, args.claim)
    norm = args.norm or (Norm.ABS1D if dist.dim == 1 else Norm.EUCLIDEAN)
    kw = dict(norm=norm, lhs_mode=args.lhs_mode, rhs_mode=args.rhs_mode,
              cap=args.cap)
    cs = {}
    if args.c1 is not None:
        cs["c1"] = args.c1
    if args.c2 is not None:
        cs["c2"] = args.c2
    j = args.j
    k = args.k
    if claim == "theorem1":
        return [checks.check_theorem1(dist, j or 1, k or 2, **cs, **kw)]
    if claim == "levy_ottaviani":
        return [checks.check_levy_ottaviani(dist, k or 4, **cs, **kw)]
    if claim == "corollary4":
        return [checks.check_corollary4(dist, k or 4, **cs, **kw)]
    if claim == "corollary5":
        if not args.weights:
            raise ValueError("corollary5 needs --weights")
        return [checks.check_corollary5(dist, args.weights, **cs, **kw)]
    if claim == "corollary6":
        return [checks.check_corollary6(dist, j or 2, k or 1, **cs, **kw)]
    if claim == "latala_sharp":
        if cs:
            raise ValueError("latala_sharp has fixed constants (2, 3/2)")
        return [checks.check_latala_sharp(dist, **kw)]
    if claim == "latala_alt":
        if cs:
            raise ValueError("latala_alt carries its own constant pairs")
        out = []
        for c1, c2 in corpus_mod.LATALA_THEOREM1:
            rep = checks.check_theorem1(dist, j or 1, k or 2, c1, c2, **kw)
            out.append(rep.with_claim_id("latala_alt"))
        for c1, c2 in corpus_mod.LATALA_COROLLARY4:
            rep = checks.check_corollary4(dist, k or 2, c1, c2, **kw)
            out.append(rep.with_claim_id("latala_alt"))
        return out
    if claim == "corollary3":
        if args.t is None:
            raise ValueError("corollary3 needs --t")
        return [concentration.check_corollary3(dist, k or 3, args.t,
                                               cap=args.cap)]
    raise ValueError(f"claim {claim!r} is not handled here")


def cmd_verify(args) -> int:
    if corpus_mod.CLAIM_ALIASES.get(args.claim, args.claim) == "lemma2":
        if args.t is None:
            raise ValueError("lemma2 needs --t")
        if len(args.files) not in (1, 2):
            raise ValueError("lemma2 takes one file (Y = X) or two")
        X = load_dist(args.files[0])
        Y = load_dist(args.files[-1])
        reports = [{"file": " + ".join(str(f) for f in args.files),
                    "report": concentration.check_lemma2(
                        X, Y, args.t, cap=args.cap).to_jsonable()}]
    else:
        reports = []
        for f in args.files:
            dist = load_dist(f)
            for rep in _verify_one(dist, args):
                reports.append({"file": str(f), "report": rep.to_jsonable()})
    ok = all(r["report"]["status"] in (HOLDS, VACUOUS) for r in reports)
    outcome = "all hold" if ok else "violation found"
    _emit({"manifest": _manifest(args, args.files, outcome).to_jsonable(),
           "reports": reports}, args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_corpus(args) -> int:
    claims = corpus_mod.normalize_claims(args.claims.split(",")) \
        if args.claims else None
    config = corpus_mod.CorpusConfig(
        seed=args.seed, count=args.count, max_atoms=args.max_atoms,
        num_range=args.num_range, denominator=args.denominator,
        max_k=args.max_k, dims=tuple(args.dims), norms=tuple(args.norms),
        weight_vectors=args.weight_vectors)
    report = corpus_mod.run_corpus(config, claims, cap=args.cap)
    outcome = ("violation found" if report.has_violations
               else f"all hold ({report.total_checks} checks)")
    manifest = _manifest(args, [], outcome)
    doc = {"manifest": manifest.to_jsonable(),
           "corpus": report.to_jsonable()}
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    want_json = args.json or not args.csv
    want_csv = args.csv or not args.json
    written = []
    if want_json:
        path = outdir / "corpus.json"
        path.write_text(json.dumps(jsonify(doc), indent=2, sort_keys=True)
                        + "\n")
        written.append(str(path))
    if want_csv:
        path = outdir / "corpus.csv"
        corpus_mod.write_csv(report, path)
        written.append(str(path))
    print(f"{outcome}; instances={config.count} "
          f"checks={report.total_checks} violations={report.violated} "
          f"skipped={len(report.skipped)}")
    for path in written:
        print(f"wrote {path}")
    return EXIT_VIOLATION if report.has_violations else EXIT_OK


def cmd_search(args) -> int:
    space = SearchSpace(
        n_atoms=args.atoms, j=args.j, k=args.k, c2=args.c2,
        value_lo=args.value_lo, value_hi=args.value_hi, norm=args.norm,
        lattice_denominator=args.lattice_denominator,
        prob_denominator=args.prob_denominator)
    result = search(space, budget=args.budget, restarts=args.restarts,
                    seed=args.seed, cap=args.cap)
    manifest = _manifest(args, [], f"achieved_ratio={result.achieved_ratio}")
    _emit({"manifest": manifest.to_jsonable(),
           "result": result.to_jsonable()}, args.out)
    return EXIT_OK


def cmd_counterexample(args) -> int:
    report = verify_counterexample(args.N, M=args.M, cap=args.cap)
    verified = bool(report.found and report.centered_holds
                    and report.extended_holds
                    and report.refutation["fails"])
    outcome = "counterexample verified" if verified else (
        "no admissible M under cap" if not report.found
        else "bounds failed to verify")
    manifest = _manifest(args, [], outcome)
    _emit({"manifest": manifest.to_jsonable(),
           "counterexample": report.to_jsonable()}, args.out)
    return EXIT_OK if verified else EXIT_VIOLATION


def _sampler_from_args(args) -> "tuple[SamplerSpec, list]":
    files = []
    if args.family == "discrete":
        if not args.dist:
            raise ValueError("discrete family needs --dist FILE")
        dist = load_dist(args.dist)
        files.append(args.dist)
        spec = SamplerSpec("discrete",
                           {"atoms": dist_to_jsonable(dist)["atoms"]},
                           dim=dist.dim)
    elif args.family == "gaussian":
        spec = SamplerSpec("gaussian", {"mu": args.mu, "sigma": args.sigma},
                           dim=args.dim)
    elif args.family == "two_point":
        for name in ("a", "b", "p"):
            if getattr(args, name) is None:
                raise ValueError(f"two_point family needs --{name}")
        spec = SamplerSpec("two_point",
                           {"a": float(args.a), "b": float(args.b),
                            "p": float(args.p)})
    else:
        spec = SamplerSpec("shifted_pareto",
                           {"alpha": args.alpha, "shift": args.shift})
    return spec, files


def cmd_mc(args) -> int:
    spec, files = _sampler_from_args(args)
    t_grid = args.t or [Fraction(1)]
    if args.claim:
        verdict = mc_check(
            args.claim, spec, args.j, args.k, t_grid, c1=args.c1, c2=args.c2,
            weights=args.weights, norm=args.norm, n_samples=args.n,
            seed=args.seed, delta=args.delta)
        manifest = _manifest(args, files, verdict.status)
        _emit({"manifest": manifest.to_jsonable(),
               "check": verdict.to_jsonable()}, args.out)
        return EXIT_VIOLATION if verdict.status == "violated" else EXIT_OK
    estimates = []
    for i, t in enumerate(t_grid):
        est = estimate_tail(spec, args.k, t, norm=args.norm,
                            weights=args.weights, n_samples=args.n,
                            seed=args.seed + i, delta=args.delta)
        estimates.append({"t": jsonify(t), "estimate": est.to_jsonable()})
    manifest = _manifest(args, files, f"{len(estimates)} estimates")
    _emit({"manifest": manifest.to_jsonable(), "estimates": estimates},
          args.out)
    return EXIT_OK


def cmd_show(args) -> int:
    dist = load_dist(args.file)
    norm = args.norm or (Norm.ABS1D if dist.dim == 1 else Norm.EUCLIDEAN)
    print(f"{args.file}: dim={dist.dim}, {len(dist)} atoms")
    for x, p in sorted(dist.atoms.items()):
        loc = x[0] if dist.dim == 1 else tuple(map(str, x))
        print(f"  P(X = {loc}) = {p}  (~{float(p):.6g})")
    from .dists import tail_curve
    curve = tail_curve(dist, norm)
    label = ("||x||^2" if norm is Norm.EUCLIDEAN else "||x||")
    print(f"tail curve under {norm.value} (thresholds in {label}):")
    print(f"  Pr(||X|| > t) = 1 for t < {curve.criticals[0]}")
    for q, v in zip(curve.criticals, curve.values):
        print(f"  Pr(||X|| > t) = {v}  (~{float(v):.6g}) "
              f"for t in [{q}, next)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iidtails",
        description="Exact verification of tail-comparison inequalities "
                    "for sums of i.i.d. random variables.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("verify", help="run one checker on distribution files")
    p.add_argument("--claim", required=True, choices=VERIFY_CLAIMS)
    p.add_argument("--c1", type=_rational, default=None)
    p.add_argument("--c2", type=_rational, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--t", type=_rational, default=None,
                   help="threshold for lemma2/corollary3")
    p.add_argument("--weights", type=_weights, default=None,
                   help="comma-separated rationals for corollary5")
    p.add_argument("--norm", type=_norm, default=None)
    p.add_argument("--lhs-mode", choices=MODES, default=STRICT)
    p.add_argument("--rhs-mode", choices=MODES, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_SUPPORT_CAP)
    p.add_argument("--out", default=None, help="also write the JSON here")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("corpus", help="random corpus sweep over all claims")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--claims", default=None,
                   help="comma-separated claim names (default: all)")
    p.add_argument("--max-atoms", type=int, default=5)
    p.add_argument("--num-range", type=int, default=8)
    p.add_argument("--denominator", type=int, default=4)
    p.add_argument("--max-k", type=int, default=6)
    p.add_argument("--dims", type=lambda s: [int(x) for x in s.split(",")],
                   default=[1])
    p.add_argument("--norms", type=lambda s: [_norm(x) for x in s.split(",")],
                   default=[Norm.ABS1D])
    p.add_argument("--weight-vectors", type=int, default=2)
    p.add_argument("--cap", type=int, default=DEFAULT_SUPPORT_CAP)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--json", action="store_true",
                   help="write corpus.json (default: both artifacts)")
    p.add_argument("--csv", action="store_true",
                   help="write corpus.csv (default: both artifacts)")
    p.set_defaults(func=cmd_corpus)

    p = subs.add_parser("search", help="extremal search for the tail ratio")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c2", type=_rational, required=True)
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--value-lo", type=_rational, default=Fraction(-4))
    p.add_argument("--value-hi", type=_rational, default=Fraction(4))
    p.add_argument("--lattice-denominator", type=int, default=16)
    p.add_argument("--prob-denominator", type=int, default=64)
    p.add_argument("--norm", type=_norm, default=Norm.ABS1D)
    p.add_argument("--cap", type=int, default=DEFAULT_SUPPORT_CAP)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    p = subs.add_parser("counterexample",
                        help="exact weighted-sum failure instance")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--cap", type=int, default=None,
                   help="scan cap when --M is omitted")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_counterexample)

    p = subs.add_parser("mc", help="Monte Carlo estimate or claim check")
    p.add_argument("--claim", default=None,
                   choices=("theorem1", "corollary4", "corollary5",
                            "corollary6", "latala_sharp"))
    p.add_argument("--family", required=True,
                   choices=("discrete", "gaussian", "two_point",
                            "shifted_pareto"))
    p.add_argument("--dist", default=None, help="dist file for discrete")
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--a", type=_rational, default=None)
    p.add_argument("--b", type=_rational, default=None)
    p.add_argument("--p", type=_rational, default=None)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--shift", type=float, default=0.0)
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=_rational, action="append", default=None,
                   help="threshold; repeat for a grid")
    p.add_argument("--weights", type=_weights, default=None)
    p.add_argument("--c1", type=_rational, default=None)
    p.add_argument("--c2", type=_rational, default=None)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--norm", type=_norm, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_mc)

    p = subs.add_parser("show", help="pretty-print a dist file + tail curve")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--norm", type=_norm, default=None)
    p.set_defaults(func=cmd_show)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SoundnessViolation as exc:
        print(f"soundness guard tripped: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
