"""Mechanical verification of hypergeometric identities.

Terminating identities are checked by exact rational (and exact jet)
arithmetic, infinite series numerically against closed forms, and a
supercongruence modulo ``p^2``.
"""

from .bigfloat import EvalContext
from .exact import harmonic, pochhammer
from .identities import REGISTRY, VerificationReport, verify, verify_all, verify_jet_limit
from .jets import LaurentJet, jet_combine, taylor_coefficient

__version__ = "0.1.0"

__all__ = [
    "EvalContext",
    "LaurentJet",
    "REGISTRY",
    "VerificationReport",
    "harmonic",
    "jet_combine",
    "pochhammer",
    "taylor_coefficient",
    "verify",
    "verify_all",
    "verify_jet_limit",
]
