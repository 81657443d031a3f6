from camp_locomotion.utils.log import log
from camp_locomotion.utils.seeding import SeedLike, dump_rng_state, load_rng_state, make_rng, stream_rng

__all__ = ['log', 'SeedLike', 'make_rng', 'stream_rng', 'dump_rng_state', 'load_rng_state']
