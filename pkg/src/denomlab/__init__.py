"""denomlab: smallest denominators of rationals in small regions, Farey
fraction statistics in any dimension, the associated closed-form limit laws,
and reproducible experiments that check the laws numerically."""

from .analytic import (
    eta_cdf,
    eta_density,
    eta_survival,
    hall_H,
    moment_M_closed,
    moment_M_quadrature,
    scale_L_to_s,
    scale_s_to_L,
)
from .exactnum import PrimitivePoint, cf_expansion, cf_value, rat_parse, rat_str
from .farey import (
    FareyLevel,
    farey_count,
    farey_distance,
    farey_next_1d,
    iter_farey,
    sigma_1,
    sigma_Q,
)
from .qmin import QminAnswer, qmin_1d_fast, qmin_bruteforce_oracle, qmin_nd_search
from .regions import QueryRegion, RegionSpec, region_parse, region_serialize, unit_box
from .resonance import min_resonance_order, resonance_scaling_experiment
from .stats import (
    EmpiricalCdf,
    ExperimentPlan,
    distance_moment_experiment,
    ks_distance,
    pigeonhole_experiment,
    qmin_distribution_experiment,
    qmin_moment_experiment,
    void_statistic_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "EmpiricalCdf",
    "ExperimentPlan",
    "FareyLevel",
    "PrimitivePoint",
    "QminAnswer",
    "QueryRegion",
    "RegionSpec",
    "cf_expansion",
    "cf_value",
    "distance_moment_experiment",
    "eta_cdf",
    "eta_density",
    "eta_survival",
    "farey_count",
    "farey_distance",
    "farey_next_1d",
    "hall_H",
    "iter_farey",
    "ks_distance",
    "min_resonance_order",
    "moment_M_closed",
    "moment_M_quadrature",
    "pigeonhole_experiment",
    "qmin_1d_fast",
    "qmin_bruteforce_oracle",
    "qmin_distribution_experiment",
    "qmin_moment_experiment",
    "qmin_nd_search",
    "rat_parse",
    "rat_str",
    "region_parse",
    "region_serialize",
    "resonance_scaling_experiment",
    "scale_L_to_s",
    "scale_s_to_L",
    "sigma_1",
    "sigma_Q",
    "unit_box",
    "void_statistic_experiment",
    "__version__",
]
