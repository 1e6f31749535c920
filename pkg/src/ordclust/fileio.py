"""JSON file formats for spaces, trees, truths and reports, plus the sweep CSV.

All documents carry a schema version.  Trees round-trip bit exactly; space
matrices may be given dense (row major) or as sparse [i, j, value] triples
with missing entries defaulting to 0 and similarity triples symmetrised.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np

from .metrics import QualityReport
from .poset import Clustering, CrispRelation, OrderedSimilaritySpace
from .synth import PlantedTruth
from .trees import Internal, Leaf, OrderedSplit, TreeNode

__all__ = [
    "SCHEMA_VERSION",
    "space_to_dict",
    "space_from_dict",
    "save_space",
    "load_space",
    "tree_to_dict",
    "tree_from_dict",
    "save_tree",
    "load_tree",
    "save_truth",
    "load_truth",
    "build_report",
    "save_report",
    "load_report",
    "write_sweep_csv",
    "SWEEP_FIELDS",
]

SCHEMA_VERSION = 1

SWEEP_FIELDS = ["alpha", "val_sd", "val_g", "val_alpha", "ari", "order_agreement", "loops"]


def _matrix_from_spec(block, n: int, name: str, symmetrize: bool) -> np.ndarray:
    out = np.zeros((n, n))
    if block is None:
        return out
    if "dense" in block:
        flat = np.asarray(block["dense"], dtype=float)
        if flat.size != n * n:
            raise ValueError(f"{name} dense block must have {n * n} entries")
        return flat.reshape(n, n)
    if "triples" in block:
        for entry in block["triples"]:
            i, j, v = int(entry[0]), int(entry[1]), float(entry[2])
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"{name} triple index ({i}, {j}) out of range")
            out[i, j] = v
            if symmetrize:
                out[j, i] = v
        return out
    raise ValueError(f"{name} block needs either 'dense' or 'triples'")


def space_from_dict(doc: dict) -> OrderedSimilaritySpace:
    n = int(doc["n"])
    if n < 1:
        raise ValueError("n must be positive")
    s = _matrix_from_spec(doc.get("similarity"), n, "similarity", symmetrize=True)
    w = _matrix_from_spec(doc.get("omega"), n, "omega", symmetrize=False)
    labels = doc.get("labels")
    if labels is not None:
        labels = tuple(str(x) for x in labels)
    return OrderedSimilaritySpace.from_matrices(s, w, labels)


def space_to_dict(space: OrderedSimilaritySpace) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "n": space.n,
        "similarity": {"dense": space.similarity.s.reshape(-1).tolist()},
        "omega": {"dense": space.omega.w.reshape(-1).tolist()},
    }
    if space.labels is not None:
        doc["labels"] = list(space.labels)
    return doc


def save_space(space: OrderedSimilaritySpace, path) -> None:
    Path(path).write_text(json.dumps(space_to_dict(space), indent=1))


def load_space(path) -> OrderedSimilaritySpace:
    return space_from_dict(json.loads(Path(path).read_text()))


def tree_to_dict(tree: TreeNode) -> dict:
    if isinstance(tree, Leaf):
        return {"leaf": tree.element}
    return {"left": tree_to_dict(tree.left), "right": tree_to_dict(tree.right)}


def tree_from_dict(doc: dict) -> TreeNode:
    if "leaf" in doc:
        return Leaf(int(doc["leaf"]))
    if "left" in doc and "right" in doc:
        return Internal(tree_from_dict(doc["left"]), tree_from_dict(doc["right"]))
    raise ValueError("tree node needs either 'leaf' or 'left'/'right'")


def save_tree(tree: TreeNode, path, meta: dict | None = None) -> None:
    doc = {"schema": SCHEMA_VERSION, "tree": tree_to_dict(tree), "meta": meta or {}}
    Path(path).write_text(json.dumps(doc, indent=1))


def load_tree(path) -> tuple[TreeNode, dict]:
    doc = json.loads(Path(path).read_text())
    return tree_from_dict(doc["tree"]), doc.get("meta", {})


def save_truth(truth: PlantedTruth, path) -> None:
    doc = {
        "schema": SCHEMA_VERSION,
        "n": truth.clustering.n,
        "blocks": [list(b) for b in truth.clustering.blocks],
        "order_edges": [[int(x), int(y)] for x, y in truth.order.edges()],
        "block_pair": None
        if truth.block_pair is None
        else {"a": list(truth.block_pair.a), "b": list(truth.block_pair.b)},
    }
    Path(path).write_text(json.dumps(doc, indent=1))


def load_truth(path) -> PlantedTruth:
    doc = json.loads(Path(path).read_text())
    n = int(doc["n"])
    clustering = Clustering(tuple(tuple(int(i) for i in b) for b in doc["blocks"]))
    order = CrispRelation.from_edges(n, [(int(x), int(y)) for x, y in doc["order_edges"]])
    pair = doc.get("block_pair")
    block_pair = None if pair is None else OrderedSplit(tuple(pair["a"]), tuple(pair["b"]))
    return PlantedTruth(clustering=clustering, order=order, block_pair=block_pair)


def config_hash(parts: dict) -> str:
    canonical = json.dumps(parts, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def build_report(
    report: QualityReport, value: float, alpha: float, solver: str, seed, inputs: dict
) -> dict:
    from . import __version__

    return {
        "schema": SCHEMA_VERSION,
        "metrics": report.to_dict(),
        "value": value,
        "alpha": alpha,
        "solver": solver,
        "provenance": {
            "config_hash": config_hash(inputs),
            "seed": seed,
            "versions": {"ordclust": __version__, "numpy": np.__version__},
        },
    }


def save_report(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1))


def load_report(path) -> dict:
    return json.loads(Path(path).read_text())


def write_sweep_csv(rows: list[dict], path, fieldnames: list[str] | None = None) -> None:
    """One row per dict; blank cells for missing fields."""
    if fieldnames is None:
        fieldnames = list(SWEEP_FIELDS)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames, restval="")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in fieldnames})
