from tiltcell import (
    TensorIdeal,
    TiltingCategory,
    AntisphericalModule,
    affine_group,
    root_system_from_type,
    radical_basis,
    radical_dim,
)
from tiltcell.core.constants import TILTCELL_CACHE
from tiltcell.core.utils import dump_json, write_atomic
import logging

logger = logging.getLogger(__name__)

if __name__ == "__main__":
    # 1. G2 at l = 7, KL data cached between runs
    root_system = root_system_from_type("G2")
    group = affine_group(root_system, 7)
    module = AntisphericalModule(group, cache_dir=TILTCELL_CACHE)
    category = TiltingCategory(module)

    # 2. Andersen quotient: only Q(0) survives
    andersen = TensorIdeal(module, module.identity, 14)
    logger.info(f"Andersen quotient basis: {category.quotient_basis(andersen)}")

    # 3. ideal strictly below the cell of s_0
    subregular = TensorIdeal(module, group.rep(group.generators[0]), 14)
    logger.info(f"cell of s_0 has {len(subregular.cell)} alcoves")
    ring = category.quotient_ring(subregular)
    module.save_cache()

    # 4. the radical of the 24 dimensional quotient ring
    basis = radical_basis(ring)
    logger.info(f"quotient ring of dimension {ring.dimension}, radical dimension {radical_dim(ring)}")
    write_atomic(
        "g2_subregular_quotient.json",
        dump_json(
            {
                **ring.to_dict(),
                "radical_basis": [[str(c) for c in vector] for vector in basis],
            }
        ),
    )
    ring.to_frame().write_csv("g2_subregular_quotient.csv")
