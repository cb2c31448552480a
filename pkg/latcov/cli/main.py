from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any

from tabulate import tabulate

from latcov.cli.checks import VerificationReport, verify_bounds, verify_figures, verify_tables
from latcov.config import RunConfig, default_run_config
from latcov.constructions import build_t2t, cover_family, load_bundle, maximal_pt_square, save_bundle
from latcov.core.groups import cayley_table, parse_group
from latcov.core.io import dump_json, read_cover, read_ls, write_cover, write_ls
from latcov.core.sampling import random_square
from latcov.covers import (
    is_minimal_cover,
    large_minimal_cover,
    min_cover_size,
    minimal_cover_spectrum,
    mu_bound,
)
from latcov.exceptions import BadParameters, CensusMismatch, FormatError, LatcovError
from latcov.logger import logger, set_level, silence
from latcov.np1census import abelian_prediction, conjecture_tq, verify_relations
from latcov.transversals import PartialTransversal, deficit_census_sample, min_deficit
from latcov.utils import DEFAULT_NODE_BUDGET, SearchBudget

if TYPE_CHECKING:
    from latcov.core.latin_square import LatinSquare
    from latcov.protocols import Report

# the census is attempted up to this order by `analyze`
CENSUS_MAX_ORDER = 8


# ===================================================================
#  Shared plumbing
# ===================================================================


def _run_config(args: argparse.Namespace) -> RunConfig:
    config = default_run_config(args.command)
    config["seed"] = args.seed
    config["node_budget"] = args.budget
    config["time_budget"] = args.time_budget
    config["workers"] = args.workers
    config["output_format"] = args.format
    config["output"] = args.output
    config["inputs"] = [args.file] if getattr(args, "file", None) else []
    return config


def _budget(config: RunConfig) -> SearchBudget:
    nodes = config["node_budget"]
    if nodes is None:
        nodes = SearchBudget.from_env().nodes
    return SearchBudget(nodes, config["time_budget"])


def _announce_seed(seed: int) -> None:
    print(f"seed: {seed}", file=sys.stderr)


def _load_square(args: argparse.Namespace) -> tuple[LatinSquare, str]:
    """
    The square named on the command line, from `--group` or a file, with a label for reports.
    """

    if getattr(args, "group", None):
        try:
            group = parse_group(args.group)
        except ValueError as exc:
            raise FormatError("--group", str(exc)) from exc
        return cayley_table(group), str(group)
    if not getattr(args, "file", None):
        raise FormatError("<arguments>", "a square file or --group is required")
    path = Path(args.file)
    if not path.exists():
        raise FormatError(str(path), "no such file")
    if path.suffix == ".bundle":
        return load_bundle(path).square, path.name
    return read_ls(path), path.name


def _flat_csv(payload: dict[str, Any]) -> str:
    lines = ["key,value"]
    for key, value in sorted(payload.items()):
        text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
        lines.append(f"{key},\"{text}\"" if "," in str(text) else f"{key},{text}")
    return "\n".join(lines) + "\n"


def _emit(report: Report, config: RunConfig) -> None:
    """
    Render a report in the configured format to the output file or stdout.
    """

    match config["output_format"]:
        case "json":
            text = dump_json(report.to_dict())
        case "csv":
            to_csv = getattr(report, "to_csv", None)
            text = to_csv() if to_csv is not None else _flat_csv(report.to_dict())
        case _:
            buffer = io.StringIO()
            with contextlib.redirect_stdout(buffer):
                report.summary()
            text = buffer.getvalue()

    if config["output"]:
        Path(config["output"]).write_text(text, encoding="utf-8", newline="\n")
        logger.info(f"Report written to {config['output']}")
    else:
        sys.stdout.write(text)


def _revalidated(path: Path, size: int | None = None) -> None:
    """
    Read back a written cover file and check it is a minimal cover (of the given size).

    Raises:
        CensusMismatch: the file does not hold what was written.
    """

    _, entries = read_cover(path)
    if not is_minimal_cover(entries) or (size is not None and len(entries) != size):
        raise CensusMismatch(f"witness {path.name}", f"minimal cover of size {size}", len(entries))


# ===================================================================
#  Reports specific to the command line
# ===================================================================


@dataclass(slots=True)
class Analysis:
    """
    Everything `analyze` computes about one square.
    """

    source: str
    order: int
    min_deficit: int
    min_cover_size: int
    mu_bound: int
    sections: dict[str, Any] = field(default_factory=dict)
    reports: list[Report] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "order": self.order,
            "min_deficit": self.min_deficit,
            "min_cover_size": self.min_cover_size,
            "mu_bound": self.mu_bound,
            **self.sections,
        }

    def summary(self) -> None:
        print(f"## Analysis of {self.source} (order {self.order})")
        table = [
            ["Minimum deficit", self.min_deficit],
            ["Minimum cover size", self.min_cover_size],
            ["Minimal cover size bound", self.mu_bound],
        ]
        print(tabulate(table, tablefmt="fancy_grid"))
        for report in self.reports:
            report.summary()


@dataclass(slots=True)
class Artifacts:
    """
    Files written by a construction, with the properties checked after reading them back.
    """

    kind: str
    parameters: dict[str, int]
    files: list[str]
    properties: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "parameters": self.parameters, "files": self.files, "properties": self.properties}

    def summary(self) -> None:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        print(f"## Construction {self.kind} ({params})")
        table = [[name, value] for name, value in self.properties.items()] + [["file", f] for f in self.files]
        print(tabulate(table, tablefmt="fancy_grid"))


# ===================================================================
#  Subcommands
# ===================================================================


def cmd_gen(args: argparse.Namespace, config: RunConfig) -> int:
    if args.random is not None:
        _announce_seed(config["seed"])
        square = random_square(args.random, config["seed"], args.moves)
        comment = f"random order-{args.random} square, seed {config['seed']}"
    else:
        square, label = _load_square(args)
        comment = f"Cayley table of {label}"

    if config["output"]:
        path = write_ls(square, config["output"], comment)
        read_ls(path)
        logger.info(f"Square written to {path}")
    else:
        sys.stdout.write(f"# {comment}\n{square.n}\n{square}\n")
    return 0


def cmd_analyze(args: argparse.Namespace, config: RunConfig) -> int:
    square, source = _load_square(args)
    budget = _budget(config)
    n = square.n
    deficit = min_deficit(square, budget=budget)
    analysis = Analysis(
        source=source,
        order=n,
        min_deficit=deficit,
        min_cover_size=min_cover_size(square, budget=budget),
        mu_bound=mu_bound(n),
    )

    result = None
    if 3 <= n <= CENSUS_MAX_ORDER and not args.no_census:
        relations = verify_relations(square, source=source, budget=budget)
        result = relations.census
        analysis.sections["census"] = relations.to_dict()
        analysis.reports.append(relations)
    if args.group:
        prediction = abelian_prediction(parse_group(args.group))
        if result is not None:
            prediction.check(result)
        analysis.sections["prediction"] = prediction.to_dict()
        analysis.reports.append(prediction)
    if args.check_conjecture:
        check = conjecture_tq(square, result=result, budget=budget)
        analysis.sections["conjecture"] = {"holds": check.holds, "t": check.t, "qmin": check.qmin}
    if args.spectrum:
        spectrum = minimal_cover_spectrum(square, n, mu_bound(n), budget=budget)
        analysis.sections["spectrum"] = spectrum.to_dict()
        analysis.reports.append(spectrum)

    _emit(analysis, config)
    return 0


def cmd_construct(args: argparse.Namespace, config: RunConfig) -> int:
    out_dir = Path(args.dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    budget = _budget(config)

    if args.construction == "t2t":
        bundle = build_t2t(args.t, args.bundle)
        bundle_path = save_bundle(bundle, out_dir / f"t2t_t{args.t}.bundle")
        square_path = write_ls(bundle.square, out_dir / f"t2t_t{args.t}.ls", f"order {bundle.order}, t = {args.t}")
        files = [str(bundle_path), str(square_path)]
        reloaded = load_bundle(bundle_path)
        if read_ls(square_path) != bundle.square or reloaded != bundle:
            raise CensusMismatch(f"witness {bundle_path.name}", "the bundle written", "a different bundle")
        properties: dict[str, Any] = {"order": bundle.order, "cover size": len(bundle.cover)}
        for c in args.family:
            cover = cover_family(bundle, c, budget=budget)
            path = write_cover(cover, out_dir / f"t2t_t{args.t}_c{c}.cover")
            _revalidated(path, c)
            files.append(str(path))
        if args.family:
            properties["family sizes"] = sorted(args.family)
        artifacts = Artifacts("t2t", {"t": args.t}, files, properties)
    else:
        square, pt = maximal_pt_square(args.n, args.k, budget=budget)
        stem = f"maxpt_n{args.n}_k{args.k}"
        square_path = write_ls(square, out_dir / f"{stem}.ls", f"maximal partial transversal of length {len(pt)}")
        pt_path = write_cover(pt, out_dir / f"{stem}.pt", note="maximal partial transversal")
        sq, entries = read_cover(pt_path)
        reread = PartialTransversal(sq, entries)
        if read_ls(square_path) != square or not reread.is_maximal() or reread.deficit != args.k:
            raise CensusMismatch(f"witness {pt_path.name}", f"maximal deficit {args.k}", reread.deficit)
        artifacts = Artifacts(
            "maxpt",
            {"n": args.n, "k": args.k},
            [str(square_path), str(pt_path)],
            {"order": square.n, "partial transversal size": len(pt), "maximal": True},
        )

    _emit(artifacts, config)
    return 0


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    if not (args.tables or args.figures or args.bounds):
        raise FormatError("<arguments>", "choose at least one of --tables, --figures, --bounds")
    budget = _budget(config)
    reports: list[VerificationReport] = []
    if args.tables:
        reports.append(
            verify_tables(args.max_order, tuple(args.averaged), workers=config["workers"], budget=budget)
        )
    if args.figures:
        reports.append(verify_figures())
    if args.bounds:
        reports.append(verify_bounds(args.bounds, workers=config["workers"], budget=budget))

    combined = VerificationReport("Verification", [check for report in reports for check in report.checks])
    _emit(combined, config)
    combined.raise_on_failure()
    return 0


def cmd_sample(args: argparse.Namespace, config: RunConfig) -> int:
    seed = config["seed"]
    _announce_seed(seed)
    if args.experiment == "deficit":
        report = deficit_census_sample(
            args.n, args.samples, seed, workers=config["workers"], budget=_budget(config)
        )
        if args.plot:
            report.plot(args.plot)
        _emit(report, config)
        return 0

    if not 0 < args.eps < 0.5:
        raise BadParameters(f"eps must lie strictly between 0 and 1/2, got {args.eps}")
    square = random_square(args.n, seed, args.moves)
    cover, trace = large_minimal_cover(square, args.eps, seed)
    if not cover.is_minimal:
        raise CensusMismatch("large minimal cover", "a minimal cover", "a non-minimal cover")
    if args.witness:
        path = write_cover(cover, args.witness, seed=seed, eps=args.eps)
        _revalidated(path, len(cover))
    _emit(trace, config)
    return 0


def cmd_spectrum(args: argparse.Namespace, config: RunConfig) -> int:
    square, _ = _load_square(args)
    n = square.n
    low = args.low if args.low is not None else n
    high = args.high if args.high is not None else mu_bound(n)
    report = minimal_cover_spectrum(square, low, high, budget=_budget(config))

    witness_files: dict[int, str] = {}
    if args.witness_dir:
        out_dir = Path(args.witness_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for c, cover in report.witnesses.items():
            path = write_cover(cover, out_dir / f"minimal_c{c}.cover")
            _revalidated(path, c)
            witness_files[c] = str(path)
    if args.plot:
        report.plot(args.plot)

    if config["output_format"] == "csv":
        text = report.to_csv(witness_files)
        if config["output"]:
            Path(config["output"]).write_text(text, encoding="utf-8", newline="\n")
        else:
            sys.stdout.write(text)
        return 0
    _emit(report, config)
    return 0


COMMANDS = {
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "spectrum": cmd_spectrum,
}


# ===================================================================
#  CLI entry point
# ===================================================================


def _add_square_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", nargs="?", help="A .ls (or .bundle) file holding the square")
    parser.add_argument("--group", help="Use the Cayley table of an abelian group, e.g. Z6 or Z2xZ4")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcov",
        description="Covers and partial transversals of Latin squares.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Exit codes: 0 ok, 2 parse error, 3 budget exhausted, 4 unsupported parameters, 5 verification mismatch.",
    )
    parser.add_argument(
        "--budget", type=int, default=None, help=f"Search node cap (default: $LATCOV_BUDGET or {DEFAULT_NODE_BUDGET})"
    )
    parser.add_argument("--time-budget", type=float, default=None, help="Search wall-clock cap in seconds")
    parser.add_argument("--workers", type=int, default=1, help="Worker processes for batch runs (default: 1)")
    parser.add_argument("--format", choices=["json", "csv", "text"], default="json", help="Report format")
    parser.add_argument("--output", default=None, help="Write the report (or square, for gen) to this file")
    parser.add_argument("--seed", type=int, default=0, help="Seed of randomized subcommands (default: 0)")
    parser.add_argument("--quiet", action="store_true", help="Silence logging")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # -- gen --
    p_gen = subparsers.add_parser("gen", help="Write a group table or a random square as a .ls file")
    p_gen.add_argument("--group", help="Abelian group, e.g. Z6 or Z2xZ2")
    p_gen.add_argument("--random", type=int, metavar="N", help="Random square of order N")
    p_gen.add_argument("--moves", type=int, default=None, help="Markov chain moves (default: 20 N^3)")

    # -- analyze --
    p_analyze = subparsers.add_parser("analyze", help="Deficits, cover sizes, (n+1)-cover census and relations")
    _add_square_input(p_analyze)
    p_analyze.add_argument("--spectrum", action="store_true", help="Also compute the minimal cover spectrum")
    p_analyze.add_argument("--check-conjecture", action="store_true", help="Check t = 2 qmin (mod 4), even orders")
    p_analyze.add_argument("--no-census", action="store_true", help="Skip the (n+1)-cover census")

    # -- construct --
    p_construct = subparsers.add_parser("construct", help="Run a construction and write verified witness files")
    p_construct.add_argument("--dir", default=".", help="Directory for the witness files (default: .)")
    constructions = p_construct.add_subparsers(dest="construction", required=True)
    p_t2t = constructions.add_parser("t2t", help="Order t^2+t square with a minimal cover of size 3t^2")
    p_t2t.add_argument("--t", type=int, required=True)
    p_t2t.add_argument("--bundle", default=None, help="Bundle file to use for t = 6")
    p_t2t.add_argument(
        "--family", type=int, nargs="*", default=[], metavar="C", help="Also write minimal covers of these sizes"
    )
    p_maxpt = constructions.add_parser("maxpt", help="Order-n square with a maximal partial transversal of length n-k")
    p_maxpt.add_argument("--n", type=int, required=True)
    p_maxpt.add_argument("--k", type=int, required=True)

    # -- verify --
    p_verify = subparsers.add_parser("verify", help="Reproduce the census tables, figure properties and bounds")
    p_verify.add_argument("--tables", action="store_true", help="Z_n census rows and averaged censuses")
    p_verify.add_argument("--max-order", type=int, default=7, help="Largest Z_n census row (default: 7)")
    p_verify.add_argument(
        "--averaged", type=int, nargs="*", default=[5], metavar="N", help="Orders of the averaged census (default: 5)"
    )
    p_verify.add_argument("--figures", action="store_true", help="Properties of the bundled figure fixtures")
    p_verify.add_argument("--bounds", type=int, default=None, metavar="N", help="Minimal cover bound over order-N species")

    # -- sample --
    p_sample = subparsers.add_parser("sample", help="Randomized experiments")
    experiments = p_sample.add_subparsers(dest="experiment", required=True)
    p_deficit = experiments.add_parser("deficit", help="Shortest maximal partial transversals of random squares")
    p_deficit.add_argument("--n", type=int, required=True)
    p_deficit.add_argument("--samples", type=int, default=20)
    p_deficit.add_argument("--plot", default=None, metavar="PATH")
    p_large = experiments.add_parser("large", help="Large minimal cover of a random square")
    p_large.add_argument("--n", type=int, required=True)
    p_large.add_argument("--eps", type=float, default=0.2)
    p_large.add_argument("--moves", type=int, default=None, help="Markov chain moves (default: 20 n^3)")
    p_large.add_argument("--witness", default=None, metavar="PATH", help="Write the cover to this file")

    # -- spectrum --
    p_spectrum = subparsers.add_parser("spectrum", help="Achievable minimal cover sizes of a square")
    _add_square_input(p_spectrum)
    p_spectrum.add_argument("--low", type=int, default=None, help="Smallest size (default: n)")
    p_spectrum.add_argument("--high", type=int, default=None, help="Largest size (default: the size bound)")
    p_spectrum.add_argument("--witness-dir", default=None, help="Write one witness cover per achievable size")
    p_spectrum.add_argument("--plot", default=None, metavar="PATH")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.quiet:
        silence()
    elif args.verbose:
        set_level("DEBUG")
    config = _run_config(args)
    try:
        return COMMANDS[args.command](args, config)
    except LatcovError as exc:
        logger.error(str(exc))
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
