"""Capacity-region bounds for 3-user partially connected Gaussian interference channels."""

__version__ = "0.1.0"

from .channel import ChannelParams, ChannelType, RateTriple, side_info_graph  # noqa: E402
from .geometry import HalfSpaceRegion, LinearConstraint  # noqa: E402
from .outer import outer_region, relaxed_outer_region  # noqa: E402
from .inner import GridSpec, inner_region  # noqa: E402
from .certify import certify, delta_report  # noqa: E402

__all__ = [
    "ChannelParams",
    "ChannelType",
    "RateTriple",
    "side_info_graph",
    "HalfSpaceRegion",
    "LinearConstraint",
    "outer_region",
    "relaxed_outer_region",
    "GridSpec",
    "inner_region",
    "certify",
    "delta_report",
]
