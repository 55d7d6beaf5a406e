"""Exact verification tools for Brumer-Stark style statements over abelian CM extensions."""
from .casefile import CaseFile, load_case
from .checks import check_annihilation, check_brumer_stark, check_fitting_equality, verify
from .groups import FiniteAbelianGroup
from .group_ring import GroupRingElement, MinusElement
from .stickelberger import assemble_theta, kubota_oracle_theta, theta_for_conductor

__version__ = "0.1.0"

__all__ = [
    "CaseFile", "load_case",
    "check_annihilation", "check_brumer_stark", "check_fitting_equality", "verify",
    "FiniteAbelianGroup", "GroupRingElement", "MinusElement",
    "assemble_theta", "kubota_oracle_theta", "theta_for_conductor",
]
