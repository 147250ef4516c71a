"""Fair division of two-dimensional cakes into square and fat pieces."""

from .geometry import (INF, NEG_INF, Frame, GeometryError, Rect, RectilinearRegion, Square,
                       Staircase, disjoint_and_contained, is_r_fat, l_shape_cover,
                       region_from_polygon, region_subtract, staircase_remove_shadow)
from .measure import (InsufficientValue, PiecewiseUniformMeasure, TargetExceedsValue,
                      eval_region, mark_corner_square, mark_vertical, scale)
from .agents import (AdversarialAgent, HonestAgent, PartnerVector, ProtocolRuleViolation,
                     adversarial_agent, honest_bid_lshape, honest_eval_square_to_squares,
                     honest_staircase_bids, make_agent)
from .protocols import (Allocation, PreconditionError, UnsupportedPlayerCount,
                        divide_2fat, divide_3walls, divide_4walls, divide_archipelago,
                        divide_halfplane, divide_plane, divide_rectangle_1d,
                        divide_square_to_squares, divide_staircase, divide_two_player_square,
                        guarantee, partition_to_rooms)
from .bounds import (PoolInstance, PropBound, SizeLimit, cover_number_bruteforce,
                     independence_number_bruteforce, max_disjoint_two_pool_squares,
                     pools_quarterplane, pools_rectilinear, pools_square, prop_bound,
                     verify_allocation)

__version__ = "0.1.0"
