"""Strong-diameter padded decompositions, Core-Partition and sparse covers."""

from .clustering import (
    Cluster,
    Partition,
    PaddingWitness,
    Trace,
    carve_cones,
    cluster_starting_times,
    cone_partition,
    padded_decompose,
    padding_floor,
    padding_witness,
)
from .core import CorePartition, core_partition, skeleton_paths
from .cover import Cover, gap_padded, sparse_cover
from .generators import FamilySpec, calibrate_delta, generate
from .graph import (
    DistanceField,
    Graph,
    PreconditionError,
    ball,
    connected_components,
    shortest_paths,
    strong_diameter,
    weak_diameter,
)
from .nets import CenterSet, check_centers, default_lambda, greedy_net, measure, net_on_path
from .rng import Rng, TexpParams, texp_cdf, texp_density, texp_sample
from .schemes import (
    SchemeConfig,
    as_separating_bound,
    core_to_padded,
    decompose,
    decompose_doubling,
    decompose_minor_free,
    replay,
)
from .verify import check_cover, check_partition, estimate_padding, estimate_separating

__version__ = "0.1.0"
