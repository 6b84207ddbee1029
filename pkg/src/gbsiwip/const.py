# -*- coding: utf-8 -*-

"""
"""

SCHEMA_VERSION = "1.0"

# parameter keys, read with params.get(KEY, default)
MAX_L = "max_l"
MAX_ITERATIONS = "max_iterations"
MAX_ROUNDS = "max_rounds"
MAX_SWEEP = "max_sweep"
SAMPLE_SIZE = "sample_size"
SAMPLE_SEED = "sample_seed"
EXTRA_ROUNDS = "extra_rounds"
MAX_CACHE = "max_cache"

# generator name prefixes of the marking
VERTEX_GENERATOR = "a"
EDGE_GENERATOR = "t"
GENERATOR_SEPARATOR = ":"

# reducibility certificate kinds
INVARIANT_SUBGRAPH = "invariant-subgraph"
SINGLE_EDGE = "single-edge"
ISOMETRY = "isometry"
PERIODIC_PARTITION = "periodic-partition"

# pipeline modes
MODE_VALIDATE = "validate"
MODE_ATOROIDAL = "atoroidal"
MODE_IWIP = "iwip"
MODE_ALL = "all"
MODES = [MODE_VALIDATE, MODE_ATOROIDAL, MODE_IWIP, MODE_ALL]

# stage names used in reports and errors
STAGE_INPUT = "input"
STAGE_VALIDATE = "validate"
STAGE_VERIFY = "verify"
STAGE_COLLAPSE = "collapse"
STAGE_PINPS = "pinps"
STAGE_ATOROIDAL = "atoroidal"
STAGE_IWIP = "iwip"

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_BOUND_EXHAUSTED = 3
