"""
Serialisation and rendering of trees, mappings, graphs and reports

JSON goes through the pydantic schemas in app.models; table output lists
every mode operator in the bracketed form a_j^(dagger) = 1/2 prefix(S_x -+ i S_y),
contracted to prefix P^+-_u when the mode is fully localised.
"""

from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Type, TypeVar
import csv
import io
import json
import logging

from pydantic import BaseModel, ValidationError

from app.core.config import settings
from app.core.exceptions import MissingSourceTreeError, SerializationError
from app.models.mapping import ExportFormat, LinkSchema, MappingSchema, ModeSchema, TreeSchema
from app.models.report import MappingReport
from app.models.topology import GraphSchema
from app.services.pauli import PauliString
from app.services.topology import HardwareGraph
from app.services.tree import (
    MajoranaMapping,
    QubitTree,
    check_mode,
    delocalisation,
    require_valid,
    swapped_modes,
)

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

Schema = TypeVar("Schema", bound=BaseModel)

ASCII_SYMBOLS = {"half": "1/2", "mp": "-+", "pm": "+-", "ladder": "P^+-", "ladder_flipped": "P^-+"}
UNICODE_SYMBOLS = {"half": "½", "mp": "∓", "pm": "±", "ladder": "P^±", "ladder_flipped": "P^∓"}


def tree_to_schema(t: QubitTree) -> TreeSchema:
    return TreeSchema(
        n=t.n_qubits,
        root=t.root,
        links=[LinkSchema(parent=up, child=down, label=label) for up, down, label in t.links()],
    )


def tree_from_schema(schema: TreeSchema) -> QubitTree:
    t = QubitTree.from_links(
        schema.n,
        schema.root,
        [(link.parent, link.child, link.label) for link in schema.links],
    )
    require_valid(t)
    return t


def graph_to_schema(g: HardwareGraph) -> GraphSchema:
    return GraphSchema(n=g.n_qubits, edges=[list(edge) for edge in g.edges])


def graph_from_schema(schema: GraphSchema) -> HardwareGraph:
    for edge in schema.edges:
        if len(edge) != 2:
            raise SerializationError(f"Edge {edge} must name exactly two qubits")
    return HardwareGraph(schema.n, schema.edges)


def mapping_to_schema(m: MajoranaMapping) -> MappingSchema:
    return MappingSchema(
        n=m.n_qubits,
        modes=[
            ModeSchema(qubit=m.mode_to_qubit[j], even=str(m.even[j]), odd=str(m.odd[j]))
            for j in range(m.n_modes)
        ],
        discarded=str(m.discarded) if m.discarded is not None else None,
        tree=tree_to_schema(m.source_tree) if m.source_tree is not None else None,
        virtual_edges=[list(edge) for edge in m.virtual_edges],
    )


def mapping_from_schema(schema: MappingSchema) -> MajoranaMapping:
    """
    Rebuild a mapping exactly as it was serialised

    The strings are taken verbatim; the tree, when present, is only attached.
    """
    n = schema.n
    return MajoranaMapping(
        n_modes=len(schema.modes),
        n_qubits=n,
        even=tuple(PauliString.parse(mode.even, n) for mode in schema.modes),
        odd=tuple(PauliString.parse(mode.odd, n) for mode in schema.modes),
        mode_to_qubit=tuple(mode.qubit for mode in schema.modes),
        source_tree=tree_from_schema(schema.tree) if schema.tree is not None else None,
        discarded=PauliString.parse(schema.discarded, n) if schema.discarded is not None else None,
        virtual_edges=tuple((int(u), int(v)) for u, v in schema.virtual_edges),
    )


def load_json(text: str, model: Type[Schema]) -> Schema:
    """
    Validate JSON text against a schema

    Raises:
        SerializationError: If the text is not valid JSON for the schema
    """
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise SerializationError(f"Invalid {model.__name__} document: {e.error_count()} error(s)") from e


def dump_json(schema: BaseModel) -> str:
    return schema.model_dump_json(indent=2, exclude_none=True)


def _factors(s: PauliString, qubits: List[int]) -> str:
    return "".join(f"{s.factor(u)}_{u}" for u in qubits)


def render_mode(m: MajoranaMapping, mode: int, unicode: Optional[bool] = None) -> str:
    """
    Bracketed operator of one mode, e.g. "1/2 X_0(X_1Z_4 -+ iY_1)" or "Z_0 P^+-_3"

    Modes whose even Majorana carries the Y factor (real pairing) render as
    -+i times the bracket of the standard pairing, with the inner sign flipped.

    Raises:
        MissingSourceTreeError: If the mapping has no source tree
    """
    t = m.source_tree
    if t is None:
        raise MissingSourceTreeError("The operator table needs a mapping built from a tree")
    check_mode(m, mode)
    symbols = UNICODE_SYMBOLS if (settings.UNICODE_OUTPUT if unicode is None else unicode) else ASCII_SYMBOLS
    u = m.mode_to_qubit[mode]
    swapped = mode in swapped_modes(m)
    x_string, y_string = (m.odd[mode], m.even[mode]) if swapped else (m.even[mode], m.odd[mode])

    ancestors = t.path_to(u)[:-1]
    x_suffix = sorted(x_string.support - set(ancestors), key=lambda q: (t.depth[q], q))
    y_suffix = sorted(y_string.support - set(ancestors), key=lambda q: (t.depth[q], q))
    prefix = _factors(x_string, ancestors)

    lead = f"{symbols['mp']}i " if swapped else ""
    if x_suffix == [u] and y_suffix == [u]:
        ladder = symbols["ladder_flipped"] if swapped else symbols["ladder"]
        body = f"{prefix} {ladder}_{u}" if prefix else f"{ladder}_{u}"
        return f"{lead}{body}"
    sign = symbols["pm"] if swapped else symbols["mp"]
    bracket = f"({_factors(x_string, x_suffix)} {sign} i{_factors(y_string, y_suffix)})"
    head = f"{symbols['half']} {prefix}" if prefix else symbols["half"]
    return f"{lead}{head}{bracket}"


def mapping_table(m: MajoranaMapping, unicode: Optional[bool] = None) -> str:
    lines = ["mode\tqubit\toperator"]
    lines.extend(
        f"{j}\t{m.mode_to_qubit[j]}\t{render_mode(m, j, unicode)}" for j in range(m.n_modes)
    )
    return "\n".join(lines) + "\n"


def mapping_csv(m: MajoranaMapping) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["mode", "qubit", "even", "odd", "even_weight", "odd_weight", "delocalisation"])
    for j in range(m.n_modes):
        writer.writerow([
            j,
            m.mode_to_qubit[j],
            str(m.even[j]),
            str(m.odd[j]),
            m.even[j].weight,
            m.odd[j].weight,
            delocalisation(m, j),
        ])
    return buffer.getvalue()


def tree_to_dot(t: QubitTree, virtual_edges=()) -> str:
    """Graphviz digraph of a tree; virtual edges are dashed"""
    virtual = {tuple(edge) for edge in virtual_edges}
    lines = ["digraph tree {", f'  "{t.root}" [shape=doublecircle];']
    for up, down, label in t.links():
        style = ", style=dashed" if (up, down) in virtual else ""
        lines.append(f'  "{up}" -> "{down}" [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(g: HardwareGraph) -> str:
    lines = ["graph device {"]
    lines.extend(f'  "{u}";' for u in range(g.n_qubits))
    lines.extend(f'  "{u}" -- "{v}";' for u, v in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_mapping(m: MajoranaMapping, fmt: ExportFormat = ExportFormat.JSON, unicode: Optional[bool] = None) -> str:
    """
    Render a mapping in one of the export formats

    Args:
        m: Mapping to export
        fmt: json, dot (source tree), table (bracketed operators) or csv
        unicode: Use ½, ∓ and ± in tables; defaults to settings.UNICODE_OUTPUT

    Raises:
        MissingSourceTreeError: For dot and table output of a mapping without a tree
    """
    fmt = ExportFormat(fmt)
    logger.debug(f"Exporting {m.n_modes}-mode mapping as {fmt.value}")
    if fmt is ExportFormat.JSON:
        return dump_json(mapping_to_schema(m)) + "\n"
    if fmt is ExportFormat.CSV:
        return mapping_csv(m)
    if fmt is ExportFormat.TABLE:
        return mapping_table(m, unicode)
    if m.source_tree is None:
        raise MissingSourceTreeError("DOT export needs a mapping built from a tree")
    return tree_to_dot(m.source_tree, m.virtual_edges)


def report_table(r: MappingReport) -> str:
    """Human-readable two-column summary of a report"""
    rows = [
        ("modes", r.n_modes),
        ("root", r.root),
        ("tree height", r.tree_height),
        ("weight min/mean/max", f"{r.weights.min}/{r.weights.mean:.3f}/{r.weights.max}"),
        ("mean delocalisation", f"{r.deloc.mean:.4f}"),
        ("localised modes", r.deloc.localised_modes),
        ("h_Z", r.h_z),
        ("NTO class", r.nto_class),
        ("virtual edges", r.virtual_edges),
    ]
    if r.swap is not None:
        rows.extend([
            ("single overhead max/mean", f"{r.swap.single_max}/{r.swap.single_mean:.3f}"),
            ("double overhead max/mean", f"{r.swap.double_max}/{r.swap.double_mean:.3f}"),
            ("doubles costed", f"{r.swap.double_count} ({'all' if r.swap.double_enumerated else 'sampled'})"),
        ])
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name.ljust(width)}  {'-' if value is None else value}" for name, value in rows) + "\n"


@lru_cache(maxsize=None)
def load_errata() -> Dict:
    """Known inconsistencies of the published heavy-hexagon table and fixtures"""
    with open(DATA_DIR / "heavy_hex_errata.json", encoding="utf-8") as handle:
        return json.load(handle)


@lru_cache(maxsize=None)
def load_golden_table() -> Dict[str, List[str]]:
    """Corrected ASCII operator rows of the 37-qubit fixture per labelling"""
    with open(DATA_DIR / "heavy_hex_table.json", encoding="utf-8") as handle:
        return json.load(handle)
