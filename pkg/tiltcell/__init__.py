from .core.errors import (
    TiltcellError,
    InvalidConfigError,
    InconclusiveTruncationError,
    InvariantViolationError,
)
from .core.rootdata import (
    CartanDatum,
    RootSystem,
    build_root_system,
    cartan_datum,
    root_system_from_type,
    pairing_coroot,
    weyl_orbit,
    dominant_rep_signed,
)
from .core.characters import (
    FormalCharacter,
    weight_multiplicities,
    weyl_dim,
    ch_point,
    tensor_weyl_factors,
)
from .core.affine import AffineElement, AffineGroup, WfRep, affine_group
from .core.hecke import (
    LaurentPolynomial,
    AntisphericalVector,
    N1Vector,
    AntisphericalModule,
    specialize_v1,
)
from .core.cells import (
    CellPartition,
    TensorIdeal,
    preorder_graph,
    cell_partition,
    n1_submodule_member,
)
from .core.tilting import (
    TiltingCharacter,
    TiltingCategory,
    QuotientRing,
    radical_dim,
    radical_basis,
)
from .core.nodes import NodeSet
from .core.edges import EdgeSet
from .core.utils import load_graph, write_graph
import logging

logging.basicConfig(
    format=("%(levelname)s: [%(asctime)s] %(name)s" " - %(message)s"),
    level=logging.INFO,
    datefmt="%Y-%m-%d %H:%M:%S",
)
logging.getLogger("matplotlib").setLevel(logging.ERROR)
logging.getLogger("PIL").setLevel(logging.ERROR)
logger = logging.getLogger("tiltcell")
