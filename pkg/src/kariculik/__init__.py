"""Kari-Culik Wang tilesets: transducer-based construction, exact
Sturmian tiling synthesis, substitutive-pair entropy experiments, and
cylinder/torus search."""

from .core import (
    DomainError,
    EdgeColor,
    L0,
    L0P,
    L1,
    L2,
    Patch,
    StructuralError,
    Tile,
    TileSet,
    Violation,
    border_profile,
    count_patterns,
    find_occurrences,
    validate_patch,
)
from .automata import (
    Transducer,
    Transition,
    build_culik_m2,
    build_m13,
    build_m2,
    culik13,
    kari12,
    transducer_to_tiles,
    verify_run,
)
from .sturmian import (
    DOUBLE,
    THIRD,
    Orbit,
    Rational,
    beatty_word,
    orbit,
    phi,
    return_time_bound,
    rho,
    row_states,
    synthesize,
)
from .entropy import (
    FlipSite,
    SubstitutivePair,
    apply_flip,
    case_check,
    catalog,
    disjoint_flip_density,
    entropy_bounds,
    find_flip_sites,
    is_substitutive_pair,
    locate_runs,
    search_pairs,
)
from .cylinder import Ring, cylindricity, enumerate_rings, torus_violations, witness_patch

__version__ = "0.1.0"
