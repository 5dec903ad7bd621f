"""
Canonical right cells on a length-truncated W^f.

The preorder graph has an edge x -> y (y <=_R x) whenever Nbar_y occurs with
a nonzero coefficient in the KL expansion of Nbar_x Hbar_s for some s in S.
Cells are the strongly connected components of this graph.
"""

import logging

import networkx as nx
import tqdm

from .affine import WfRep
from .constants import STABILITY_STEP
from .edges import EdgeSet
from .errors import InconclusiveTruncationError, InvalidConfigError
from .hecke import AntisphericalModule, N1Vector, specialize_v1
from .nodes import NodeSet

logger = logging.getLogger(__name__)


def preorder_graph(module: AntisphericalModule, truncation: int) -> nx.DiGraph:
    """right preorder edges among ball(L), labelled by the generators producing them"""
    if truncation < 1:
        raise InvalidConfigError(f"truncation L must be at least 1, got {truncation}")
    group = module.group
    ball = group.ball(truncation)
    members = set(ball)
    graph = nx.DiGraph()
    graph.add_nodes_from(ball)
    for x in tqdm.tqdm(ball, desc=f"{group.name} preorder", disable=not group.progress):
        kl = module.kl_element(x)
        for s in group.generator_indices:
            product = module.act_Hbar_s(kl, s)
            for y in module.kl_expand(product):
                if y == x or y not in members:
                    continue
                if graph.has_edge(x, y):
                    graph[x][y]["generators"].add(s)
                else:
                    graph.add_edge(x, y, generators={s})
    return graph


class CellPartition:
    """
    Cells of ball(L) with the order induced by <=_R.

    Cells are indexed in order of their shortest element, so index 0 is {e}.
    `order` is the condensation DAG on cell indices, an edge A -> B meaning B
    lies below A.
    """

    def __init__(self, graph: nx.DiGraph, truncation: int):
        self.truncation = truncation
        self.graph = graph
        components = [
            sorted(c, key=WfRep.sort_key) for c in nx.strongly_connected_components(graph)
        ]
        components.sort(key=lambda c: c[0].sort_key())
        self.cells = [frozenset(c) for c in components]
        self._sorted_cells = components
        self.cell_of = {x: i for i, cell in enumerate(self.cells) for x in cell}
        ## filled in by check_stability
        self.settled = frozenset()
        self.order = nx.DiGraph()
        self.order.add_nodes_from(range(len(self.cells)))
        for x, y in graph.edges:
            a, b = self.cell_of[x], self.cell_of[y]
            if a != b:
                self.order.add_edge(a, b)

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return f"CellPartition(L={self.truncation}, {len(self.cells)} cells)"

    def cell_containing(self, x: WfRep) -> int:
        if x not in self.cell_of:
            raise InconclusiveTruncationError(
                f"{x.label} lies outside the ball of length {self.truncation}", self.truncation
            )
        return self.cell_of[x]

    def elements(self, index: int) -> list:
        return self._sorted_cells[index]

    def ideal_members(self, indices, strict: bool = False) -> frozenset:
        """
        All y in the ball with y <=_R A for some cell A among `indices`
        (y <_R A when strict). A single index is accepted as well.
        """
        if isinstance(indices, int):
            indices = [indices]
        below = set()
        for index in indices:
            below.update(nx.descendants(self.order, index))
            if not strict:
                below.add(index)
        return frozenset(x for i in below for x in self.cells[i])

    def upper_closure(self, index: int) -> frozenset:
        """elements of the cell and of every cell above it"""
        above = nx.ancestors(self.order, index) | {index}
        return frozenset(x for i in above for x in self.cells[i])

    def settled_cells(self, inner: int) -> list:
        """indices of cells whose upper closure lies in ball(inner)"""
        return [
            i for i in range(len(self.cells))
            if all(x.length <= inner for x in self.upper_closure(i))
        ]

    def to_dict(self) -> dict:
        return {
            "L": self.truncation,
            "cells": [[x.label for x in cell] for cell in self._sorted_cells],
            "sizes": [len(cell) for cell in self._sorted_cells],
            "order": sorted([a, b] for a, b in self.order.edges),
            "settled": sorted(self.settled),
        }


def cell_partition(module: AntisphericalModule, truncation: int) -> CellPartition:
    partition = CellPartition(preorder_graph(module, truncation), truncation)
    logger.info(
        f"{module.group.name}: {len(partition)} cells in the ball of length {truncation}"
    )
    return partition


def compare_settled(partition: CellPartition, larger: CellPartition, inner: int) -> frozenset:
    """
    Every cell of `larger` whose upper closure lies in ball(inner) must be a
    cell of `partition` with the same upper closure. Cells that still grow
    pick up longer elements or longer ancestors, so they are left unsettled.

    Returns the settled cell indices of `partition`.
    """
    settled = set()
    for i in larger.settled_cells(inner):
        cell = larger.cells[i]
        x = larger.elements(i)[0]
        j = partition.cell_of.get(x)
        if j is None or partition.cells[j] != cell or partition.upper_closure(j) != larger.upper_closure(i):
            raise InconclusiveTruncationError(
                f"cell of {x.label} changes between L = {partition.truncation} and "
                f"L = {larger.truncation}; increase L",
                partition.truncation,
            )
        settled.add(j)
    return frozenset(settled)


def check_stability(module: AntisphericalModule, truncation: int) -> tuple:
    """
    Compute partitions at L and L + 2 and require the settled cells of the
    larger one to be cells of the smaller one.

    Returns both partitions with `settled` filled in on the smaller one;
    raises InconclusiveTruncationError on disagreement.
    """
    partition = cell_partition(module, truncation)
    larger = cell_partition(module, truncation + STABILITY_STEP)
    partition.settled = compare_settled(partition, larger, truncation - STABILITY_STEP)
    logger.info(
        f"{module.group.name}: {len(partition.settled)} of {len(partition)} cells settled at L = {truncation}"
    )
    return partition, larger


class TensorIdeal:
    """
    The KL ideal generated by the cells of `generators`: all y <=_R A for
    some generating cell A, or all y <_R A when strict.

    Generating cells must be settled. Survivors (ball minus ideal) must agree
    at L and L + 2 and stay inside ball(L - 2); elements beyond the ball are
    then ideal members.
    """

    def __init__(self, module: AntisphericalModule, generators, truncation: int, strict: bool = True):
        if isinstance(generators, WfRep):
            generators = [generators]
        self.module = module
        self.generators = tuple(generators)
        self.truncation = truncation
        self.strict = strict
        if not self.generators:
            raise InvalidConfigError("a tensor ideal needs at least one generating cell")
        labels = ", ".join(x.label for x in self.generators)
        for x in self.generators:
            if x.length > truncation - STABILITY_STEP:
                raise InconclusiveTruncationError(
                    f"generating element {x.label} is too long for L = {truncation}", truncation
                )
        self.partition, larger = check_stability(module, truncation)
        for x in self.generators:
            if self.partition.cell_containing(x) not in self.partition.settled:
                raise InconclusiveTruncationError(
                    f"cell of {x.label} is not settled at L = {truncation}", truncation
                )
        survivors = self._survivors(self.partition)
        if survivors != self._survivors(larger) or any(
            x.length > truncation - STABILITY_STEP for x in survivors
        ):
            raise InconclusiveTruncationError(
                f"complement of the ideal below {labels} is not bounded within L = {truncation}",
                truncation,
            )
        self.survivors = survivors
        logger.info(
            f"ideal {'<' if strict else '<='} cells of {labels}: {len(survivors)} surviving alcoves"
        )

    def _survivors(self, partition: CellPartition) -> frozenset:
        indices = {partition.cell_containing(x) for x in self.generators}
        members = partition.ideal_members(indices, strict=self.strict)
        return frozenset(x for x in partition.graph.nodes if x not in members)

    def __contains__(self, x: WfRep) -> bool:
        return x not in self.survivors

    @property
    def cells(self) -> list:
        """generating cells, one per distinct cell among the generators"""
        indices = sorted({self.partition.cell_containing(x) for x in self.generators})
        return [self.partition.elements(i) for i in indices]

    @property
    def cell(self) -> list:
        return self.cells[0]

    def surviving_alcoves(self) -> list:
        return sorted(self.survivors, key=WfRep.sort_key)


def ideal_members(partition: CellPartition, index: int) -> frozenset:
    return partition.ideal_members(index)


def n1_submodule_member(module: AntisphericalModule, n: N1Vector, ideal, truncation: int) -> bool:
    """
    Whether n lies in the span of Nbar^1_y, y in the ideal, by unitriangular
    elimination from the longest support element down.
    """
    while n:
        y = max(n.terms, key=WfRep.sort_key)
        if y.length > truncation:
            raise InconclusiveTruncationError(
                f"support element {y.label} lies outside the ball of length {truncation}", truncation
            )
        if y not in ideal:
            return False
        n = n - specialize_v1(module.kl_element(y)).scale(n[y])
    return True


def closure_failures(module: AntisphericalModule, ideal, truncation: int) -> list:
    """pairs (y, z) with y in the ideal and z outside it in the KL support of Nbar_y Hbar_s"""
    failures = []
    ball = module.group.ball(truncation)
    for y in ball:
        if y.length >= truncation or y not in ideal:
            continue
        for s in module.group.generator_indices:
            for z in module.kl_expand(module.act_Hbar_s(module.kl_element(y), s)):
                if z.length <= truncation and z not in ideal:
                    failures.append((y, z))
    return failures


def export_graph(partition: CellPartition, group) -> tuple:
    """NodeSet and EdgeSet of the preorder graph in Neo4j tsv layout"""
    node_set = NodeSet(node_set_name=f"{group.name}_alcoves")
    edge_set = EdgeSet(edge_set_name=f"{group.name}_leq_R")
    for x in sorted(partition.graph.nodes, key=WfRep.sort_key):
        node_set.update_nodes(
            {
                "curie:ID": x.label,
                ":LABEL": "alcove",
                "name": " ".join(f"s{s}" for s in x.word) or "e",
                "length:int": str(x.length),
                "cell:int": str(partition.cell_of[x]),
                "finite_part": str([list(row) for row in x.element.finite]),
                "translation": str(list(x.element.translation)),
            }
        )
    for x, y, data in sorted(
        partition.graph.edges(data=True), key=lambda e: (e[0].sort_key(), e[1].sort_key())
    ):
        edge_set.update_edges(
            {
                ":START_ID": x.label,
                ":END_ID": y.label,
                ":TYPE": "leq_R",
                "generators:string[]": {str(s) for s in data["generators"]},
            }
        )
    return node_set, edge_set
