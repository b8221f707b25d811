"""envelkit: exact computations with universal enveloping algebras of small solvable Lie algebras."""
from .catalog import CatalogId, construct, enumerate_ids, group_of, identify, iso_within_family
from .distinguish import Certificate, Fingerprint, certify_distinct_U, fingerprint, paper_repro
from .errors import EnvelkitError
from .invariants import (
    ad_generated_algebra,
    build_Ltilde,
    build_Utilde,
    check_corollary2_bound,
    check_semidirect_criterion,
    index_and_semiradical,
)
from .liealg import LieAlgebra, abelian, quotient, semidirect
from .pbw import AdaptedOrder, PbwElement, in_M_omega, in_MU, reduce_mod_M_omega
from .scalars import QQ, Field, Fp

__version__ = "0.1.0"

__all__ = [
    "AdaptedOrder",
    "CatalogId",
    "Certificate",
    "EnvelkitError",
    "Field",
    "Fingerprint",
    "Fp",
    "LieAlgebra",
    "PbwElement",
    "QQ",
    "abelian",
    "ad_generated_algebra",
    "build_Ltilde",
    "build_Utilde",
    "certify_distinct_U",
    "check_corollary2_bound",
    "check_semidirect_criterion",
    "construct",
    "enumerate_ids",
    "fingerprint",
    "group_of",
    "identify",
    "in_MU",
    "in_M_omega",
    "index_and_semiradical",
    "iso_within_family",
    "paper_repro",
    "quotient",
    "reduce_mod_M_omega",
    "semidirect",
]
