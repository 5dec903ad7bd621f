"""
Utility functions for writing tiltcell results
"""

import json
import logging
import os
import tempfile

import polars as pl

from .constants import SCHEMA_VERSION
from .edges import EdgeSet
from .nodes import NodeSet

logger = logging.getLogger(__name__)


def write_atomic(path, text: str):
    """write text to path through a temp file in the same directory and os.replace"""
    directory = os.path.dirname(os.path.abspath(str(path)))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp_", suffix=".part")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp_path, str(path))
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def dump_json(payload: dict) -> str:
    """versioned, key-sorted JSON so identical inputs give identical bytes"""
    return json.dumps({"schema": SCHEMA_VERSION, **payload}, sort_keys=True, indent=2) + "\n"


def frame_to_csv(frame: pl.DataFrame) -> str:
    return frame.write_csv()


def load_graph(resource_path, edge_name="edges.tsv", node_name="nodes.tsv"):
    """
    read in an alcove graph as a Node and Edge set.
    """
    node_set = NodeSet()
    edge_set = EdgeSet()
    node_set.load_node_set(os.path.join(resource_path, node_name))
    edge_set.load_edge_set(os.path.join(resource_path, edge_name))
    return node_set, edge_set


def write_graph(
    node_set: NodeSet,
    edge_set: EdgeSet,
    resource_path,
    edge_name="edges.tsv",
    node_name="nodes.tsv",
):
    """
    Write a graph represented as a Node and Edge set to Neo4j compatible tsv files.
    """
    os.makedirs(resource_path, exist_ok=True)
    node_set.write_node_set(os.path.join(resource_path, node_name))
    edge_set.write_edge_set(os.path.join(resource_path, edge_name))
    logger.info(f"wrote {len(node_set)} nodes and {len(edge_set)} edges to {resource_path}")
