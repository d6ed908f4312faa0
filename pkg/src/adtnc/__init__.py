"""Algebraic network coding for ADT deterministic networks.

Finite-field and rational-function arithmetic (:mod:`adtnc.galois`), the
port-level network model (:mod:`adtnc.netmodel`), matrices and transfer
operators (:mod:`adtnc.linalg`), min-cut (:mod:`adtnc.mincut`), code
construction and verification (:mod:`adtnc.codecon`), link failures
(:mod:`adtnc.erasim`), unit-delay networks (:mod:`adtnc.delaynet`) and the
``adtnc`` command line (:mod:`adtnc.cli`).
"""

from ._kernels import BACKEND
from .codecon import (
    CodeResult,
    CodeVerdict,
    InfeasibleError,
    construct,
    construct_disjoint_multicast,
    construct_two_level,
    random_code,
    simulate_ports,
    solve_multiple_multicast,
    system_matrix,
    verify,
)
from .delaynet import delayed_system_matrix, delayed_transfer, nonsingular, simulate_time
from .erasim import FailureModel, apply_failure, static_solution, time_average_mincut
from .galois import GF, FieldElement, Polynomial, RationalField, RationalFunction, make_rng
from .linalg import Matrix, build_F, transfer_matrix
from .mincut import CutValueReport, mincut, mincut_algebraic, mincut_enumeration
from .netfile import fixture, fixtures, load_network, save_network
from .netmodel import (
    CodeAssignment,
    Connection,
    ConnectionSet,
    Network,
    NetworkError,
    Node,
    add_super_destination,
    add_super_source,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CodeAssignment",
    "CodeResult",
    "CodeVerdict",
    "Connection",
    "ConnectionSet",
    "CutValueReport",
    "FailureModel",
    "FieldElement",
    "GF",
    "InfeasibleError",
    "Matrix",
    "Network",
    "NetworkError",
    "Node",
    "Polynomial",
    "RationalField",
    "RationalFunction",
    "add_super_destination",
    "add_super_source",
    "apply_failure",
    "build_F",
    "construct",
    "construct_disjoint_multicast",
    "construct_two_level",
    "delayed_system_matrix",
    "delayed_transfer",
    "fixture",
    "fixtures",
    "load_network",
    "make_rng",
    "mincut",
    "mincut_algebraic",
    "mincut_enumeration",
    "nonsingular",
    "random_code",
    "save_network",
    "simulate_ports",
    "simulate_time",
    "solve_multiple_multicast",
    "static_solution",
    "system_matrix",
    "time_average_mincut",
    "transfer_matrix",
    "validate",
    "verify",
]
