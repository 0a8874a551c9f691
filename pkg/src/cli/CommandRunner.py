import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

from pydantic import ValidationError

from src.candim.CanonicalDimension import build_report
from src.chow.ChowRing import ChowRing
from src.chow.MultiDegree import MultiDegree
from src.chow.ProductExpansion import ProductExpansion
from src.chow.backends import backend_for
from src.config.Settings import Settings
from src.exceptions import InvalidDegree, RankTooLarge, SchubertError, UnknownType
from src.oracle.DenseChowTable import MAX_ORACLE_RANK
from src.oracle.OracleComparison import SELFTEST_LABELS, compare_all
from src.rootsys.CartanLoaderInterface import CartanLoaderInterface
from src.rootsys.CartanTypes import LABEL_PATTERN, parse_label
from src.rootsys.RootSystem import RootSystem, build_root_system
from src.rootsys.file.CartanFileLoader import CartanFileLoader
from src.rootsys.labeled.LabeledCartanLoader import LabeledCartanLoader
from src.search.MultiplicityFreeSearch import max_multiplicity_free_degree, verify_multidegree
from src.search.SearchConfig import SearchConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schubert-candim",
        description="Upper bounds for the canonical dimension of split groups from multiplicity-free Schubert divisor products.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    roots = commands.add_parser("roots", help="print the root system summary and the node numbering")
    roots.add_argument("--type", required=True, help="Cartan type label (A3, E6, ...) or a Cartan matrix file")
    roots.add_argument("--list", action="store_true", help="also list every positive root with its coroot")

    product = commands.add_parser("product", help="Schubert expansion of a divisor monomial")
    product.add_argument("--type", required=True, help="Cartan type label or Cartan matrix file")
    product.add_argument("--degrees", required=True, help="exponents n1,...,nr")
    product.add_argument("--json", action="store_true", help="print the expansion as JSON")
    product.add_argument("--backend", choices=["arbitrary", "checked", "checked128"], default="arbitrary")

    for name, text in (
        ("mfsearch", "largest multiplicity-free total degree"),
        ("bound", "canonical dimension upper bound report (JSON)"),
    ):
        command = commands.add_parser(name, help=text)
        command.add_argument("--type", required=True, help="Cartan type label or Cartan matrix file")
        command.add_argument("--target", type=int, help="stop at the first multiplicity-free monomial of this total")
        command.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes")
        command.add_argument("--checkpoint", help="write settled subtrees to this JSON-lines file")
        command.add_argument("--resume", help="replay this checkpoint before searching")
        command.add_argument("--no-symmetry", action="store_true", help="disable diagram symmetry reduction")
        command.add_argument("--memo-cap", type=int, help="settled non-multiplicity-free entries kept in memory")
        command.add_argument("--backend", choices=["arbitrary", "checked", "checked128"], default="arbitrary")
        if name == "mfsearch":
            command.add_argument("--verify", help="only certify the multidegree n1,...,nr")

    selftest = commands.add_parser("selftest", help="compare the engine with the dense oracle")
    selftest.add_argument("--max-rank", type=int, default=MAX_ORACLE_RANK)
    return parser


def loader_for(type_arg: str) -> CartanLoaderInterface:
    """
    A type label selects the built-in tables, anything else is read as a matrix file.
    """
    if LABEL_PATTERN.match(type_arg.strip()):
        parse_label(type_arg)
        return LabeledCartanLoader(type_arg)
    if not Path(type_arg).is_file():
        raise UsageError(f"--type: '{type_arg}' is neither a type label nor a readable file")
    return CartanFileLoader(type_arg)


def search_config(args: argparse.Namespace) -> SearchConfig:
    values: Dict[str, Any] = {
        "target": args.target,
        "thread_count": args.threads,
        "memo_capacity": args.memo_cap,
        "coefficient_backend": args.backend,
        "checkpoint_path": args.checkpoint,
        "resume_path": args.resume,
        "symmetry_reduction": not args.no_symmetry,
    }
    # unset flags keep the environment defaults
    return SearchConfig(**{key: value for key, value in values.items() if value is not None})


def run(argv: List[str], out: Optional[TextIO] = None) -> int:
    """
    Execute one command line.

    Returns:
        int: 0 success, 1 computational error, 2 usage error, 3 selftest mismatch
    """
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else EXIT_USAGE

    try:
        settings = Settings.from_env()
        _configure_logging(settings.log_level)
        if args.command == "selftest":
            return _selftest(args, out)

        loader = loader_for(args.type)
        cfg = search_config(args) if args.command in ("mfsearch", "bound") else None
        rs = build_root_system(loader.load())

        if args.command == "roots":
            return _roots(rs, loader, args, out)
        if args.command == "product":
            deg = MultiDegree.parse(args.degrees, rs.rank)
            return _product(rs, deg, args, out)
        if args.command == "mfsearch" and args.verify is not None:
            deg = MultiDegree.parse(args.verify, rs.rank)
            return _verify(rs, deg, out)
        if args.command == "mfsearch":
            return _mfsearch(rs, cfg, out)
        return _bound(rs, cfg, out)
    except (UsageError, OSError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UnknownType, InvalidDegree) as e:
        print(f"{e.name}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SchubertError as e:
        print(f"{e.name}: {e}", file=sys.stderr)
        return EXIT_ERROR


def _configure_logging(level: str) -> None:
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


def _roots(rs: RootSystem, loader: CartanLoaderInterface, args: argparse.Namespace, out: TextIO) -> int:
    print(f"type\t{rs.label}", file=out)
    print(f"rank\t{rs.rank}", file=out)
    print(f"positive roots\t{len(rs.positive_roots)}", file=out)
    print(f"dim G/B\t{rs.dim_flag}", file=out)
    print(f"highest root\t{rs.highest_root}", file=out)
    print(f"weyl group order\t{rs.weyl_order()}", file=out)
    print(f"degrees\t{' '.join(str(d) for d in rs.degrees())}", file=out)
    print(f"poincare\t{' '.join(str(c) for c in rs.poincare_coefficients())}", file=out)
    print("numbering:", file=out)
    print(loader.describe(), file=out)
    if args.list:
        for root, coroot in zip(rs.positive_roots, rs.coroot_table):
            print(f"{' '.join(str(x) for x in root.coords)}\t{' '.join(str(k) for k in coroot)}", file=out)
    return EXIT_OK


def _product(rs: RootSystem, deg: MultiDegree, args: argparse.Namespace, out: TextIO) -> int:
    ring = ChowRing(rs, backend_for(args.backend))
    expansion = ProductExpansion.of(ring, deg, ring.product_of_divisors(deg))
    if args.json:
        print(expansion.model_dump_json(indent=2), file=out)
    else:
        for line in expansion.to_lines():
            print(line, file=out)
    return EXIT_OK


def _verify(rs: RootSystem, deg: MultiDegree, out: TextIO) -> int:
    witness = verify_multidegree(rs, deg)
    if witness is None:
        print(f"not multiplicity-free\t{deg}", file=out)
        return EXIT_ERROR
    print(f"multiplicity-free\t{deg}\ttotal {deg.total}\twitness {witness.word}", file=out)
    return EXIT_OK


def _mfsearch(rs: RootSystem, cfg: SearchConfig, out: TextIO) -> int:
    result = max_multiplicity_free_degree(rs, cfg)
    print(f"N\t{result.max_degree}", file=out)
    print(f"witness\t{result.witness.degrees}\t{result.witness.word}", file=out)
    print(f"exhaustive\t{json.dumps(result.exhaustive)}", file=out)
    return EXIT_OK


def _bound(rs: RootSystem, cfg: SearchConfig, out: TextIO) -> int:
    result = max_multiplicity_free_degree(rs, cfg)
    print(build_report(rs, result).to_json(), file=out)
    return EXIT_OK


def _selftest(args: argparse.Namespace, out: TextIO) -> int:
    if args.max_rank > MAX_ORACLE_RANK:
        raise RankTooLarge(f"the oracle handles rank <= {MAX_ORACLE_RANK}")
    labels = [label for label in SELFTEST_LABELS if parse_label(label)[1] <= args.max_rank]

    failed = False
    for label in labels:
        report = compare_all(label)
        print(report.summary(), file=out)
        if not report.ok:
            failed = True
            for line in report.mismatches[:50]:
                print(f"  {line}", file=out)
    print("selftest failed" if failed else "selftest passed", file=out)
    return EXIT_MISMATCH if failed else EXIT_OK
