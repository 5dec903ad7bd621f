from tiltcell import (
    AntisphericalModule,
    affine_group,
    load_graph,
    root_system_from_type,
    write_graph,
)
from tiltcell.core.cells import check_stability, export_graph
from tiltcell.core.constants import TILTCELL_CACHE
from tiltcell.core.svg import emit_svg_alcoves
from tiltcell.core.utils import write_atomic
import logging

logger = logging.getLogger(__name__)

if __name__ == "__main__":
    ## rank 2 types get a picture as well
    for type_string, level, truncation in [("A2", 5, 10), ("B2", 5, 10), ("G2", 7, 14)]:
        group = affine_group(root_system_from_type(type_string), level)
        module = AntisphericalModule(group, cache_dir=TILTCELL_CACHE)
        partition, _ = check_stability(module, truncation)
        module.save_cache()

        # 1. Neo4j tsv files of the preorder graph
        resource_path = f"graphs/{type_string}/"
        node_set, edge_set = export_graph(partition, group)
        write_graph(node_set, edge_set, resource_path=resource_path)
        node_set, edge_set = load_graph(resource_path=resource_path)
        logger.info(f"{type_string}: {len(node_set)} alcoves, {len(edge_set)} preorder edges")

        # 2. alcoves coloured by cell
        categories = {x: f"cell {i}" for x, i in partition.cell_of.items()}
        write_atomic(
            f"graphs/{type_string}/cells.svg",
            emit_svg_alcoves(group, partition.graph.nodes, categories),
        )
