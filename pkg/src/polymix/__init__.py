"""polymix: mixes of rotation groups of regular convex polytopes.

The mix of two directly regular polytopes is the subgroup of the direct
product of their rotation groups generated by the paired generators; it is
their minimal common cover. This package builds those groups explicitly,
reports flag and face counts, decides whether a mix is again a polytope,
and cross-checks everything against a small-scale face-lattice oracle.
"""

from polymix._kernel import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from polymix.analyzer import (
    Analyzer,
    StructureReport,
    Verdict,
    face_vector,
    polytopality,
    report,
    schlafli_of_mix,
)
from polymix.cli import parse_expression, verify_tables
from polymix.mixer import (
    Budgets,
    MixExpression,
    SizeIdentityReport,
    Workspace,
    build,
    comix_order,
    covers,
    gcd_trivial_comix,
    mix_order,
    size_identity_check,
)
from polymix.oracle import OracleCheck, build_flag_graph, check_polytope
from polymix.words import SchlafliSymbol

__all__ = [
    "KERNEL_IMPLEMENTATION",
    "Analyzer",
    "Budgets",
    "MixExpression",
    "OracleCheck",
    "SchlafliSymbol",
    "SizeIdentityReport",
    "StructureReport",
    "Verdict",
    "Workspace",
    "build",
    "build_flag_graph",
    "check_polytope",
    "comix_order",
    "covers",
    "face_vector",
    "gcd_trivial_comix",
    "mix_order",
    "parse_expression",
    "polytopality",
    "report",
    "schlafli_of_mix",
    "size_identity_check",
    "verify_tables",
]
__version__ = "0.1.0"
