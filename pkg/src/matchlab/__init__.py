"""matchlab: a lab for distributed maximal matching in the LOCAL model."""

from .errors import MatchlabError
from .kernels import BACKEND
from .local import (
    ALGORITHMS,
    BOT,
    BallAlgorithm,
    ColouredGraph,
    MatchingOutput,
    broken_lazy,
    build_algorithm,
    greedy,
    run_on_graph,
    simulate_rounds,
    verify_matching,
    view_tree,
)
from .systems import ColourSystem, FiniteColourSystem, RootedBall
from .templates import Template, extend, realise, zero_template
from .adversary import run_induction
from .certificates import Certificate, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "BACKEND", "BOT", "BallAlgorithm", "Certificate", "ColourSystem",
    "ColouredGraph", "FiniteColourSystem", "MatchingOutput", "MatchlabError", "RootedBall",
    "Template", "broken_lazy", "build_algorithm", "extend", "greedy", "realise",
    "run_induction", "run_on_graph", "simulate_rounds", "verify_certificate",
    "verify_matching", "view_tree", "zero_template",
]
