"""
Command-line front end

    python -m app.cli topo gen --kind heavy_hexagon --size 1 --out g.json
    python -m app.cli map grow --graph g.json --strategy homogeneous --seed 7 --out m.json
    python -m app.cli map verify --in m.json
    python -m app.cli map export --in m.json --format table
    python -m app.cli cost excitation --map m.json --graph g.json --modes 0,3

Exit codes: 0 on success, 1 when a mapping or tree fails validation, 2 on
usage errors and unreadable or invalid input.
"""

from pathlib import Path
from typing import List, Optional
import argparse
import json
import logging
import sys

from app.core.config import settings
from app.core.exceptions import BonsaiError, InvalidTreeError
from app.core.log_config import configure_logging
from app.models.mapping import ExportFormat, FixtureKind, GrowthConfig, Labelling, MappingKind, MappingSchema, RootPolicy
from app.models.topology import GraphSchema, TopologyKind
from app.services.bonsai import bonsai, label_tree
from app.services.classic_maps import classic_tree, fixture
from app.services.export import (
    dump_json,
    export_mapping,
    graph_from_schema,
    graph_to_dot,
    graph_to_schema,
    load_json,
    mapping_from_schema,
    mapping_to_schema,
    report_table,
)
from app.services.metrics import report
from app.services.topology import HardwareGraph, excitation_cost, generate, graph_metrics
from app.services.tree import QubitTree, pair_modes
from app.services.verify import check_mapping, oracle_check

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _load_graph(path: str) -> HardwareGraph:
    return graph_from_schema(load_json(_read(path), GraphSchema))


def _load_mapping(path: str):
    return mapping_from_schema(load_json(_read(path), MappingSchema))


def _root_policy(value: str) -> RootPolicy:
    return RootPolicy(value.replace("-", "_"))


def cmd_topo_gen(args: argparse.Namespace) -> int:
    g = generate(TopologyKind(args.kind), size=args.size, rows=args.rows, cols=args.cols)
    text = graph_to_dot(g) if args.format == "dot" else dump_json(graph_to_schema(g)) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_topo_metrics(args: argparse.Namespace) -> int:
    metrics = graph_metrics(_load_graph(args.graph))
    _emit(metrics.model_dump_json(indent=2, exclude={"distances"}) + "\n", args.out)
    return EXIT_OK


def cmd_map_grow(args: argparse.Namespace) -> int:
    cfg = GrowthConfig(
        root=args.root,
        root_policy=_root_policy(args.root_policy),
        seed=args.seed,
        labelling=Labelling(args.strategy),
        real_pairing=args.real,
    )
    m = bonsai(_load_graph(args.graph), cfg)
    _emit(dump_json(mapping_to_schema(m)) + "\n", args.out)
    return EXIT_OK


def cmd_map_classic(args: argparse.Namespace) -> int:
    m = pair_modes(classic_tree(MappingKind(args.kind), args.n), real=args.real)
    _emit(dump_json(mapping_to_schema(m)) + "\n", args.out)
    return EXIT_OK


def cmd_map_fixture(args: argparse.Namespace) -> int:
    value = fixture(FixtureKind(args.kind))
    if isinstance(value, HardwareGraph):
        text = dump_json(graph_to_schema(value))
    elif isinstance(value, QubitTree):
        tree = label_tree(value, Labelling(args.strategy)) if args.strategy else value
        text = dump_json(mapping_to_schema(pair_modes(tree)))
    else:
        text = dump_json(mapping_to_schema(value))
    _emit(text + "\n", args.out)
    return EXIT_OK


def cmd_map_verify(args: argparse.Namespace) -> int:
    m = _load_mapping(args.input)
    criteria = check_mapping(m, args.vacuum)
    passed = criteria.passed
    text = criteria.model_dump_json(indent=2)
    if args.oracle:
        oracle = oracle_check(m)
        passed = passed and oracle.passed
        text = json.dumps({"criteria": criteria.model_dump(), "oracle": oracle.model_dump()}, indent=2)
    _emit(text + "\n", args.out)
    if not passed:
        logger.error("Mapping failed verification")
        return EXIT_INVALID
    return EXIT_OK


def cmd_map_report(args: argparse.Namespace) -> int:
    m = _load_mapping(args.input)
    g = _load_graph(args.graph) if args.graph else None
    result = report(m, g, seed=args.seed, enumerate_doubles=args.all_doubles)
    text = report_table(result) if args.format == "table" else result.model_dump_json(indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_map_export(args: argparse.Namespace) -> int:
    m = _load_mapping(args.input)
    unicode = True if args.unicode else None
    _emit(export_mapping(m, ExportFormat(args.format), unicode), args.out)
    return EXIT_OK


def _mode_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def cmd_cost_excitation(args: argparse.Namespace) -> int:
    cost = excitation_cost(_load_mapping(args.input), _load_graph(args.graph), args.modes)
    _emit(cost.model_dump_json(indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bonsai", description="Fermion-to-qubit mappings from ternary trees")
    parser.add_argument("--log-level", default=None, help="Override LOG_LEVEL")
    groups = parser.add_subparsers(dest="group", required=True)

    topo = groups.add_parser("topo", help="Device graphs").add_subparsers(dest="command", required=True)
    gen = topo.add_parser("gen", help="Generate a device graph")
    gen.add_argument("--kind", required=True, choices=[k.value for k in TopologyKind])
    gen.add_argument("--size", type=int, help="n for linear/star/complete, rings d for heavy_hexagon")
    gen.add_argument("--rows", type=int)
    gen.add_argument("--cols", type=int)
    gen.add_argument("--format", choices=["json", "dot"], default="json")
    gen.add_argument("--out")
    gen.set_defaults(handler=cmd_topo_gen)

    metrics = topo.add_parser("metrics", help="Center, eccentricities and diameter of a graph")
    metrics.add_argument("--graph", required=True)
    metrics.add_argument("--out")
    metrics.set_defaults(handler=cmd_topo_metrics)

    mapping = groups.add_parser("map", help="Mappings").add_subparsers(dest="command", required=True)
    grow = mapping.add_parser("grow", help="Grow a hardware-tailored mapping")
    grow.add_argument("--graph", required=True)
    grow.add_argument("--strategy", choices=[s.value for s in Labelling], default=Labelling.HOMOGENEOUS.value)
    grow.add_argument("--seed", type=int, default=None, help="Defaults to BONSAI_SEED")
    grow.add_argument("--root-policy", choices=["center", "diameter-end"], default="center")
    grow.add_argument("--root", type=int, default=None)
    grow.add_argument("--real", action="store_true", help="Pair legs so every a_j is real")
    grow.add_argument("--out")
    grow.set_defaults(handler=cmd_map_grow)

    classic = mapping.add_parser("classic", help="Jordan-Wigner, Parity, Bravyi-Kitaev or JKMN")
    classic.add_argument("--kind", required=True, choices=[k.value for k in MappingKind])
    classic.add_argument("--n", type=int, required=True)
    classic.add_argument("--real", action="store_true")
    classic.add_argument("--out")
    classic.set_defaults(handler=cmd_map_classic)

    fixture_cmd = mapping.add_parser("fixture", help="Shipped trees, mappings and graphs")
    fixture_cmd.add_argument("--kind", required=True, choices=[k.value for k in FixtureKind])
    fixture_cmd.add_argument("--strategy", choices=[s.value for s in Labelling], help="Relabel tree fixtures")
    fixture_cmd.add_argument("--out")
    fixture_cmd.set_defaults(handler=cmd_map_fixture)

    verify = mapping.add_parser("verify", help="Check criteria A-D")
    verify.add_argument("--in", dest="input", required=True)
    verify.add_argument("--vacuum", help="Vacuum candidate bitstring, qubit 0 first")
    verify.add_argument("--oracle", action="store_true", help="Also run the dense check (small mappings)")
    verify.add_argument("--out")
    verify.set_defaults(handler=cmd_map_verify)

    report_cmd = mapping.add_parser("report", help="Weight, delocalisation and SWAP statistics")
    report_cmd.add_argument("--in", dest="input", required=True)
    report_cmd.add_argument("--graph")
    report_cmd.add_argument("--seed", type=int, default=None)
    report_cmd.add_argument("--all-doubles", action="store_true")
    report_cmd.add_argument("--format", choices=["json", "table"], default="json")
    report_cmd.add_argument("--out")
    report_cmd.set_defaults(handler=cmd_map_report)

    export = mapping.add_parser("export", help="Render a mapping")
    export.add_argument("--in", dest="input", required=True)
    export.add_argument("--format", choices=[f.value for f in ExportFormat], default=ExportFormat.TABLE.value)
    export.add_argument("--unicode", action="store_true", help="Use ½, ∓ and ± in tables")
    export.add_argument("--out")
    export.set_defaults(handler=cmd_map_export)

    cost = groups.add_parser("cost", help="Routing costs").add_subparsers(dest="command", required=True)
    excitation = cost.add_parser("excitation", help="Steiner cost of a single or double excitation")
    excitation.add_argument("--map", "--in", dest="input", required=True)
    excitation.add_argument("--graph", required=True)
    excitation.add_argument("--modes", type=_mode_list, required=True, help="Comma-separated modes: i,j or i,j,k,l")
    excitation.add_argument("--out")
    excitation.set_defaults(handler=cmd_cost_excitation)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    configure_logging(args.log_level)
    logger.debug(f"{settings.APP_TITLE} v{settings.APP_VERSION}: {args.group} {args.command}")
    try:
        return args.handler(args)
    except InvalidTreeError as e:
        logger.error(f"Invalid tree: {e}")
        return EXIT_INVALID
    except (BonsaiError, OSError) as e:
        logger.error(f"{args.group} {args.command} failed: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
