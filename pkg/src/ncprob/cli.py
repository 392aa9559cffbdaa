"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain or validation error,
4 numerical accuracy error. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import partitions
from .analysis import (
    DEFAULT_GRID_L,
    DEFAULT_GRID_M,
    LawDescriptor,
    tetilla_law,
    weak_distance,
)
from .cumulant_calculus import compound_poisson_cumulants, cumulants_from_moments, moments_from_cumulants
from .errors import AccuracyError, NcprobError
from .convergence_lab import (
    ExperimentReport,
    clt_family,
    compound_poisson_report,
    flavor_gaussian,
    fourth_moment_report,
    perturbed_family,
    poisson_criterion_report,
    poisson_normal_report,
    rate_family,
    tetilla_report,
)
from .measures import AtomicMeasure, boolean_convolve, classical_convolve, monotone_convolve
from .sequences import CumulantSeq, Flavor, MomentSeq, parse_rational_list
from .spectral import JacobiParams, jacobi_from_moments, moments_from_jacobi

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_ACCURACY = 0, 2, 3, 4
OUTPUTS = ("pretty", "json", "csv")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    precision: int = 12
    grid_L: float = DEFAULT_GRID_L
    grid_M: int = DEFAULT_GRID_M
    max_n: int = partitions.DEFAULT_MAX_N
    output: str = "pretty"

    def __post_init__(self):
        if not 4 <= self.precision <= 30:
            raise UsageError("precision must lie in [4, 30]")
        if self.grid_M < 2:
            raise UsageError("grid M must be >= 2")
        if not self.grid_L > 0:
            raise UsageError("grid L must be positive")
        if self.max_n < 1:
            raise UsageError("max-n must be >= 1")
        if self.output not in OUTPUTS:
            raise UsageError(f"output must be one of {', '.join(OUTPUTS)}")


def load_config(args) -> CliConfig:
    cfg = CliConfig(max_n=partitions.get_max_n())
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except OSError as e:
            raise UsageError(f"cannot read config: {e}")
        except json.JSONDecodeError as e:
            raise UsageError(f"config is not valid JSON: {e}")
        known = {f.name for f in fields(CliConfig)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        try:
            cfg = replace(cfg, **data)
        except TypeError as e:
            raise UsageError(f"bad config value: {e}")
    overrides = {
        k: getattr(args, k)
        for k in ("precision", "grid_L", "grid_M", "max_n", "output")
        if getattr(args, k, None) is not None
    }
    return replace(cfg, **overrides)


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("global options")
    g.add_argument("--output", choices=OUTPUTS, default=argparse.SUPPRESS)
    g.add_argument("--precision", type=int, default=argparse.SUPPRESS)
    g.add_argument("--grid-L", dest="grid_L", type=float, default=argparse.SUPPRESS)
    g.add_argument("--grid-M", dest="grid_M", type=int, default=argparse.SUPPRESS)
    g.add_argument("--max-n", dest="max_n", type=int, default=argparse.SUPPRESS)
    g.add_argument("--config", default=argparse.SUPPRESS, help="JSON file with CliConfig keys")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncprob", description="Moments, cumulants and transforms under four independences.")
    _common(parser)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("partitions", help="count or list partition lattices")
    p.add_argument("family", choices=partitions.FAMILIES)
    p.add_argument("n", type=int)
    p.add_argument("--list", action="store_true")

    p = sub.add_parser("moments", help="cumulants -> moments")
    p.add_argument("--flavor", required=True)
    p.add_argument("--cumulants", required=True)
    p.add_argument("--order", type=int)

    p = sub.add_parser("cumulants", help="moments -> cumulants")
    p.add_argument("--flavor", required=True)
    p.add_argument("--moments", required=True)

    p = sub.add_parser("jacobi", help="Jacobi parameters of a moment sequence, or the reverse")
    p.add_argument("--moments")
    p.add_argument("--to-moments", action="store_true")
    p.add_argument("--beta")
    p.add_argument("--gamma", default="")
    p.add_argument("--order", type=int)

    p = sub.add_parser("convolve", help="convolve two atomic measures")
    p.add_argument("--kind", required=True, choices=("classical", "boolean", "monotone"))
    p.add_argument("--mu1", required=True)
    p.add_argument("--mu2", required=True)

    p = sub.add_parser("distance", help="sampled Cauchy-transform distance")
    p.add_argument("--law1", required=True)
    p.add_argument("--law2", required=True)

    p = sub.add_parser("experiment", help="limit-theorem reports")
    p.add_argument("name", choices=("clt", "poisson-normal", "poisson-criterion", "compound-poisson", "tetilla"))
    p.add_argument("--n", default="1,10,100", help="comma-separated indices")
    p.add_argument("--flavor")
    p.add_argument("--order", type=int)
    p.add_argument("--base", help="base cumulants for clt (value_1=0, value_2=1)")
    p.add_argument("--rate", default="1")
    p.add_argument("--jumps", help="jump law as atomic measure JSON file")

    for action in sub.choices.values():
        _common(action)
    return parser


def _read_measure(path: str) -> AtomicMeasure:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise NcprobError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise NcprobError(f"{path} is not valid JSON: {e}")
    return AtomicMeasure.from_json_dict(data)


def parse_law(text: str) -> LawDescriptor:
    """Law mini-language: ``atomic:FILE``, ``semicircle:MEAN,VAR``, ``arcsine:..``,
    ``normal:..``, ``bernoulli``, ``tetilla``, ``moments:m1,m2,...``."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "atomic":
        return LawDescriptor.atomic(_read_measure(arg))
    if kind in ("semicircle", "arcsine", "normal"):
        mean, var = parse_rational_list(arg) if arg else (0, 1)
        return getattr(LawDescriptor, kind)(mean, var)
    if kind == "bernoulli" and not arg:
        return LawDescriptor.bernoulli_sym()
    if kind == "tetilla" and not arg:
        return tetilla_law()
    if kind == "moments":
        return LawDescriptor.moments_only(MomentSeq(parse_rational_list(arg)))
    raise UsageError(f"cannot parse law spec {text!r}")


def _fmt_float(x: float, cfg: CliConfig) -> str:
    return format(x, f".{cfg.precision}g")


def _emit_seq(label: str, values, cfg: CliConfig, extra: dict | None = None) -> str:
    vals = [str(v) for v in values]
    if cfg.output == "json":
        return json.dumps({**(extra or {}), label: vals}, sort_keys=True)
    return ",".join(vals)


def _emit_report(r: ExperimentReport, cfg: CliConfig) -> str:
    if cfg.output == "json":
        return r.to_json(cfg.precision)
    text = r.to_csv(cfg.precision)
    if cfg.output == "csv":
        return text.rstrip("\n")
    rows = [line.split(",") for line in text.splitlines()]
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = [f"# {r.label}"] + ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows]
    return "\n".join(lines)


def cmd_partitions(args, cfg):
    if not args.list:
        count = partitions.count_partitions(args.family, args.n)
        if cfg.output == "json":
            return json.dumps({"count": count, "family": args.family, "n": args.n}, sort_keys=True)
        return str(count)
    items = [str(p) for p in partitions.enumerate_family(args.family, args.n)]
    if cfg.output == "json":
        return json.dumps({"count": len(items), "family": args.family, "n": args.n, "partitions": items}, sort_keys=True)
    return "\n".join(items)


def cmd_moments(args, cfg):
    c = CumulantSeq(Flavor.parse(args.flavor), parse_rational_list(args.cumulants))
    m = moments_from_cumulants(c, args.order)
    return _emit_seq("moments", m.values, cfg, {"flavor": c.flavor.value})


def cmd_cumulants(args, cfg):
    flavor = Flavor.parse(args.flavor)
    c = cumulants_from_moments(MomentSeq(parse_rational_list(args.moments)), flavor)
    return _emit_seq("cumulants", c.values, cfg, {"flavor": flavor.value})


def cmd_jacobi(args, cfg):
    if args.to_moments:
        if args.beta is None or args.order is None:
            raise UsageError("--to-moments needs --beta and --order")
        gammas = parse_rational_list(args.gamma) if args.gamma.strip() else ()
        J = JacobiParams(parse_rational_list(args.beta), gammas)
        return _emit_seq("moments", moments_from_jacobi(J, args.order).values, cfg)
    if args.moments is None:
        raise UsageError("jacobi needs --moments or --to-moments")
    J = jacobi_from_moments(MomentSeq(parse_rational_list(args.moments)))
    if cfg.output == "json":
        return json.dumps({**J.to_json_dict(), "terminated": J.terminated}, sort_keys=True)
    return "\n".join(
        [",".join(["beta"] + [str(b) for b in J.betas]), ",".join(["gamma"] + [str(g) for g in J.gammas])]
    )


def cmd_convolve(args, cfg):
    op = {"classical": classical_convolve, "boolean": boolean_convolve, "monotone": monotone_convolve}[args.kind]
    mu = op(_read_measure(args.mu1), _read_measure(args.mu2))
    if cfg.output == "csv":
        lines = ["atom,weight"]
        for a, w in zip(mu.atoms, mu.weights):
            lines.append(f"{_fmt_float(float(a), cfg)},{_fmt_float(float(w), cfg)}" if not mu.exact else f"{a},{w}")
        return "\n".join(lines)
    d = mu.to_json_dict()
    if not mu.exact:
        d["atoms"] = [_fmt_float(float(a), cfg) for a in mu.atoms]
        d["weights"] = [_fmt_float(float(w), cfg) for w in mu.weights]
    return json.dumps(d, sort_keys=True, indent=None if cfg.output == "json" else 2)


def cmd_distance(args, cfg):
    d = weak_distance(parse_law(args.law1), parse_law(args.law2), cfg.grid_L, cfg.grid_M)
    if cfg.output == "json":
        return json.dumps({"distance": _fmt_float(d, cfg), "grid": {"L": cfg.grid_L, "M": cfg.grid_M}}, sort_keys=True)
    return _fmt_float(d, cfg)


def cmd_experiment(args, cfg):
    n_list = [int(v) for v in parse_rational_list(args.n)]
    if any(n < 1 for n in n_list) or len(set(n_list)) != len(n_list):
        raise UsageError("--n must list distinct positive integers")
    L, M = cfg.grid_L, cfg.grid_M
    name = args.name
    if name == "poisson-normal":
        r = poisson_normal_report(n_list, args.order or 6, L, M)
    elif name == "tetilla":
        r = tetilla_report(n_list, L, M)
    elif name == "clt":
        flavor = Flavor.parse(args.flavor or "free")
        if args.base:
            base = CumulantSeq(flavor, parse_rational_list(args.base))
        else:
            base = cumulants_from_moments(
                AtomicMeasure((-2, 0, 2), ("1/8", "3/4", "1/8")).moments(args.order or 8), flavor
            )
        order = args.order or base.N
        r = fourth_moment_report(clt_family(flavor, base), flavor, flavor_gaussian(flavor), n_list, order, L, M,
                                 label="clt")
    elif name == "poisson-criterion":
        flavor = Flavor.parse(args.flavor or "boolean")
        order = args.order or 8
        r = poisson_criterion_report(rate_family(flavor, order), flavor, n_list, order, L, M)
    else:
        flavor = Flavor.parse(args.flavor or "boolean")
        nu = _read_measure(args.jumps) if args.jumps else AtomicMeasure.dirac(1)
        lam = parse_rational_list(args.rate)[0]
        k = sum(1 for b in nu.atoms if b != 0)
        order = args.order or max(2 * k + 2, 4)
        target = compound_poisson_cumulants(lam, nu, flavor, order)
        bump = CumulantSeq(flavor, [0, 1] + [0] * (order - 2))
        r = compound_poisson_report(perturbed_family(target, bump), flavor, lam, nu, n_list, order, L, M)
    return _emit_report(r, cfg)


COMMANDS = {
    "partitions": cmd_partitions,
    "moments": cmd_moments,
    "cumulants": cmd_cumulants,
    "jacobi": cmd_jacobi,
    "convolve": cmd_convolve,
    "distance": cmd_distance,
    "experiment": cmd_experiment,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    previous_cap = partitions._max_n_override
    try:
        args = build_parser().parse_args(argv)
        for k in ("output", "precision", "grid_L", "grid_M", "max_n", "config"):
            if not hasattr(args, k):
                setattr(args, k, None)
        cfg = load_config(args)
        partitions.set_max_n(cfg.max_n)
        out = COMMANDS[args.command](args, cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return EXIT_USAGE
    except AccuracyError as e:
        print(f"accuracy error: {e}", file=stderr)
        return EXIT_ACCURACY
    except (NcprobError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_DOMAIN
    finally:
        partitions.set_max_n(previous_cap)
    print(out, file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
