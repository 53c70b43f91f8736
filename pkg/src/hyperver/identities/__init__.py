"""Catalogue of identities and the drivers that check them."""

from .acceptance import CRITERIA, CriterionResult, full_reports, quick_reports, run_acceptance
from .registry import REGISTRY, IdentityDescriptor, get, ids
from .verify import ROUTES, VerificationReport, verify, verify_all, verify_jet_limit

__all__ = [
    "CRITERIA",
    "CriterionResult",
    "IdentityDescriptor",
    "REGISTRY",
    "ROUTES",
    "VerificationReport",
    "full_reports",
    "get",
    "ids",
    "quick_reports",
    "run_acceptance",
    "verify",
    "verify_all",
    "verify_jet_limit",
]
