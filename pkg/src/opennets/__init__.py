"""Open Petri nets: gluing, processes and bounded reachability semantics."""

from .caps import ExplorationCaps, Verdict
from .multiset import Multiset
from .opennet import OpenPetriNet, compose_open, mk_open, tensor_open
from .petri import PetriNet

__version__ = "0.1.0"

__all__ = [
    "ExplorationCaps",
    "Multiset",
    "OpenPetriNet",
    "PetriNet",
    "Verdict",
    "compose_open",
    "mk_open",
    "tensor_open",
]
