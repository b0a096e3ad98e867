"""Multipartite invariants, geometric measures, linearization and convex roofs."""

from .invariants import (
    METRIC,
    FilterResult,
    PurityDistribution,
    bipartitions,
    filters_F4,
    n_tangle,
    purity_distribution,
    residual_tangle,
    three_tangle,
)
from .geometric import LocalizableResult, geometric_measure, localizable_entanglement
from .linearize import (
    MINKOWSKI,
    PRINTED_H,
    PRINTED_J,
    LinearTranslation,
    antilinear_to_linear,
    local_linear_tensor,
    printed_G,
)
from .roof import RoofConfig, RoofEstimate, convex_roof_estimate, ghz_w_mixture, ghz_w_scan
