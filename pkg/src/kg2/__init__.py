"""Single-vertex 2-graphs, their atomic representations and wandering vectors."""
from .core import (
    EMPTY,
    NormalWord,
    Theta2Graph,
    anti_normal_form,
    concat,
    enumerate_words,
    flip_from_permutation,
    flip_theta,
    identity_theta,
    make_theta,
    normal_form,
    parse_word,
    random_theta,
)
from .periodicity import (
    AperiodicityCertificate,
    DegeneratePeriodicity,
    PeriodWitness,
    check_period,
    find_period,
    verify_witness,
)
from .atomic import (
    AtomicGraph,
    DilationResult,
    RepClass,
    atomic_graph,
    classify,
    dilate,
    export_dot,
    twisted_pair,
    validate,
)
from .wandering import check_conditions, find_wandering, is_wandering, verify_no_wandering_periodic

__version__ = "0.1.0"
