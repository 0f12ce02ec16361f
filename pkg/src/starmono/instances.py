"""Versioned JSON instance format shared by the CLI and the fixtures.

Schema (top-level key ``"schema": 1``):

* ``ring``: ``"Z"``, ``"Q"``, ``"Fp:<p>"`` or ``"Zn:<n>"``;
* ``degree``: the homology degree label of the decomposition;
* ``decomposition``: list of summand descriptors, ``{"free_rank": r,
  "torsion": ["d1", ...]}`` over Z and ``{"dim": d}`` over fields and Z/n;
* ``payload``: exactly one of

  - ``{"tuple": [{"row_index": j, "blocks": [matrix, ...]}, ...]}``
  - ``{"matrix": matrix}``
  - ``{"seifert": {"L": matrix, "M": matrix}}`` or ``{"L": ..., "S": ...}``
  - ``{"sequence_e": {"tuple_q": ..., "decomposition_qm1": ...,
    "degree_qm1": ..., "tuple_qm1": ..., "h_c": [group, ...],
    "ker_qm1": [group, ...]?}}``.

Scalars are decimal strings (rationals ``"p/q"`` reduced with q > 0, or a
bare integer string); this keeps arbitrary precision intact in JSON.  All
malformed content raises :class:`InstanceFormatError`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbelianGroup, ModuleHom
from .errors import InstanceFormatError, ShapeMismatch, StarMonoError
from .matrices import ExactMatrix
from .rings import Ring, ZZ, ring_from_label
from .sequence_e import CriticalValueDatum, data_from_tuples
from .star import BlockRowOperator, MonodromyTuple, StarDecomposition

SCHEMA_VERSION = 1


# -- serialization ---------------------------------------------------------------


def matrix_to_json(m: ExactMatrix) -> list[list[str]]:
    fmt = m.ring.format_scalar
    return [[fmt(v) for v in row] for row in m.entries]


def group_to_json(g: FgAbelianGroup, ring: Ring) -> dict:
    if ring.kind == "Z":
        return {"free_rank": g.free_rank, "torsion": [str(d) for d in g.invariant_factors]}
    if ring.kind == "Zn":
        return {"dim": len(g.invariant_factors)}
    return {"dim": g.free_rank}


def decomposition_to_json(dec: StarDecomposition) -> list[dict]:
    return [group_to_json(v, dec.ring) for v in dec.summands]


def tuple_to_json(tup: MonodromyTuple) -> list[dict]:
    return [
        {"row_index": op.row_index, "blocks": [matrix_to_json(b.matrix) for b in op.blocks]}
        for op in tup.operators
    ]


def instance_dict(ring: Ring, degree: int, decomposition, payload: dict, notes=None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "ring": ring.label(),
        "degree": degree,
        "decomposition": decomposition,
        "payload": payload,
    }
    if notes is not None:
        out["notes"] = notes
    return out


def tuple_instance(tup: MonodromyTuple, notes=None) -> dict:
    dec = tup.decomposition
    return instance_dict(
        dec.ring, dec.degree_q, decomposition_to_json(dec), {"tuple": tuple_to_json(tup)}, notes
    )


def matrix_instance(dec: StarDecomposition, m: ExactMatrix) -> dict:
    return instance_dict(
        dec.ring, dec.degree_q, decomposition_to_json(dec), {"matrix": matrix_to_json(m)}
    )


def seifert_instance(rank: int, payload: dict, notes=None) -> dict:
    return instance_dict(ZZ, 1, [{"free_rank": rank, "torsion": []}], {"seifert": payload}, notes)


def sequence_instance(tuple_q: MonodromyTuple, tuple_qm1: MonodromyTuple, h_c, ker=None) -> dict:
    dec_q = tuple_q.decomposition
    dec_b = tuple_qm1.decomposition
    body = {
        "tuple_q": tuple_to_json(tuple_q),
        "decomposition_qm1": decomposition_to_json(dec_b),
        "degree_qm1": dec_b.degree_q,
        "tuple_qm1": tuple_to_json(tuple_qm1),
        "h_c": [group_to_json(g, dec_q.ring) for g in h_c],
    }
    if ker is not None:
        body["ker_qm1"] = [group_to_json(g, dec_q.ring) for g in ker]
    return instance_dict(
        dec_q.ring, dec_q.degree_q, decomposition_to_json(dec_q), {"sequence_e": body}
    )


# -- parsing ----------------------------------------------------------------------


def _fail(msg: str) -> InstanceFormatError:
    return InstanceFormatError(msg)


def parse_group(ring: Ring, obj) -> FgAbelianGroup:
    if not isinstance(obj, dict):
        raise _fail("summand descriptor must be an object")
    try:
        if ring.kind == "Z":
            free = int(obj.get("free_rank", 0))
            torsion = tuple(int(str(d)) for d in obj.get("torsion", []))
            return FgAbelianGroup(free, torsion)
        dim = int(obj["dim"])
        if ring.kind == "Zn":
            return FgAbelianGroup(0, (ring.modulus,) * dim)
        return FgAbelianGroup(dim)
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail(f"bad summand descriptor {obj!r}: {exc}") from exc


def parse_matrix(ring: Ring, obj, rows: int, cols: int) -> ExactMatrix:
    if not isinstance(obj, list) or any(not isinstance(r, list) for r in obj):
        raise _fail("matrix must be a list of rows")
    if len(obj) != rows or any(len(r) != cols for r in obj):
        raise _fail(f"matrix must be {rows}x{cols}")
    try:
        data = [[ring.parse_scalar(str(v)) for v in row] for row in obj]
        return ExactMatrix.from_rows(ring, data, rows, cols)
    except (ValueError, ZeroDivisionError) as exc:
        raise _fail(f"bad matrix entry: {exc}") from exc


def parse_decomposition(ring: Ring, degree: int, obj) -> StarDecomposition:
    if not isinstance(obj, list) or not obj:
        raise _fail("decomposition must be a nonempty list of summands")
    try:
        return StarDecomposition(ring, degree, tuple(parse_group(ring, s) for s in obj))
    except (ValueError, StarMonoError) as exc:
        raise _fail(f"bad decomposition: {exc}") from exc


def parse_tuple(dec: StarDecomposition, obj) -> MonodromyTuple:
    if not isinstance(obj, list) or len(obj) != dec.t:
        raise _fail(f"tuple payload must list {dec.t} operators")
    ops = []
    for k, entry in enumerate(obj, start=1):
        if not isinstance(entry, dict):
            raise _fail("each tuple entry must be an object")
        if int(entry.get("row_index", -1)) != k:
            raise _fail(f"operator {k} must carry row_index {k}")
        blocks_json = entry.get("blocks")
        if not isinstance(blocks_json, list) or len(blocks_json) != dec.t:
            raise _fail(f"operator {k} must carry {dec.t} blocks")
        target = dec.summands[k - 1]
        blocks = []
        for i, bj in enumerate(blocks_json):
            src = dec.summands[i]
            mat = parse_matrix(dec.ring, bj, target.ngens, src.ngens)
            try:
                blocks.append(ModuleHom(dec.ring, src, target, mat))
            except (ValueError, ShapeMismatch) as exc:
                raise _fail(f"operator {k}, block {i + 1}: {exc}") from exc
        try:
            ops.append(BlockRowOperator(dec, k, tuple(blocks)))
        except StarMonoError as exc:
            raise _fail(f"operator {k}: {exc}") from exc
    return MonodromyTuple(dec, tuple(ops))


@dataclass(frozen=True)
class Instance:
    """Parsed instance file."""

    ring: Ring
    degree: int
    decomposition: StarDecomposition
    kind: str  # "tuple" | "matrix" | "seifert" | "sequence_e"
    tuple: MonodromyTuple | None = None
    matrix: ModuleHom | None = None
    seifert: dict | None = None
    sequence: dict | None = None


def parse_instance(doc) -> Instance:
    if not isinstance(doc, dict):
        raise _fail("instance must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise _fail(f"unsupported schema {doc.get('schema')!r}; expected {SCHEMA_VERSION}")
    try:
        ring = ring_from_label(str(doc.get("ring", "")))
    except ValueError as exc:
        raise _fail(str(exc)) from exc
    degree = doc.get("degree", 0)
    if not isinstance(degree, int) or degree < 0:
        raise _fail("degree must be a nonnegative integer")
    dec = parse_decomposition(ring, degree, doc.get("decomposition"))
    payload = doc.get("payload")
    if not isinstance(payload, dict) or len(payload) != 1:
        raise _fail("payload must be an object with exactly one key")
    (kind, body), = payload.items()
    if kind == "tuple":
        return Instance(ring, degree, dec, "tuple", tuple=parse_tuple(dec, body))
    if kind == "matrix":
        n = dec.total_dim
        mat = parse_matrix(ring, body, n, n)
        try:
            hom = ModuleHom(ring, dec, dec, mat)
        except (ValueError, ShapeMismatch) as exc:
            raise _fail(f"bad full operator: {exc}") from exc
        return Instance(ring, degree, dec, "matrix", matrix=hom)
    if kind == "seifert":
        if ring != ZZ:
            raise _fail("seifert payloads require ring Z")
        if any(v.invariant_factors for v in dec.summands):
            raise _fail("seifert payloads require a torsion-free decomposition")
        n = dec.total_dim
        if not isinstance(body, dict) or "L" not in body:
            raise _fail("seifert payload needs L plus one of M, S")
        left = parse_matrix(ring, body["L"], n, n)
        out = {"L": left}
        if "M" in body and "S" in body:
            raise _fail("seifert payload takes either M or S, not both")
        if "M" in body:
            out["M"] = parse_matrix(ring, body["M"], n, n)
        elif "S" in body:
            out["S"] = parse_matrix(ring, body["S"], n, n)
        else:
            raise _fail("seifert payload needs one of M, S")
        return Instance(ring, degree, dec, "seifert", seifert=out)
    if kind == "sequence_e":
        if not isinstance(body, dict):
            raise _fail("sequence_e payload must be an object")
        try:
            tuple_q = parse_tuple(dec, body.get("tuple_q"))
            degree_b = body.get("degree_qm1", max(0, degree - 1))
            dec_b = parse_decomposition(ring, degree_b, body.get("decomposition_qm1"))
            tuple_b = parse_tuple(dec_b, body.get("tuple_qm1"))
            hc_json = body.get("h_c")
            if not isinstance(hc_json, list) or len(hc_json) != dec.t:
                raise _fail(f"h_c must list {dec.t} groups")
            h_c = [parse_group(ring, g) for g in hc_json]
            ker = None
            if "ker_qm1" in body:
                kj = body.get("ker_qm1")
                if not isinstance(kj, list) or len(kj) != dec.t:
                    raise _fail(f"ker_qm1 must list {dec.t} groups")
                ker = [parse_group(ring, g) for g in kj]
        except InstanceFormatError:
            raise
        except StarMonoError as exc:
            raise _fail(str(exc)) from exc
        return Instance(
            ring, degree, dec, "sequence_e",
            sequence={"tuple_q": tuple_q, "tuple_qm1": tuple_b, "h_c": h_c, "ker_qm1": ker},
        )
    raise _fail(f"unknown payload kind {kind!r}")


def sequence_data_from_instance(inst: Instance) -> tuple:
    """Critical-value data for a parsed sequence_e instance.

    Kernels are recomputed from the degree-(q-1) tuple unless the file pinned
    them, in which case the declared groups are used (and later cross-checked).
    """
    seq = inst.sequence
    tuple_q, tuple_b = seq["tuple_q"], seq["tuple_qm1"]
    data = data_from_tuples(tuple_q, tuple_b, h_c=seq["h_c"])
    if seq["ker_qm1"] is not None:
        data = tuple(
            CriticalValueDatum(d.index, d.summand, d.operator, declared, d.h_c)
            for d, declared in zip(data, seq["ker_qm1"])
        )
    return data
