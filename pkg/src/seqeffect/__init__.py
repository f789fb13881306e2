"""Exact arithmetic for the sequential effect algebra E0 and an axiom checker for it."""

from seqeffect.poly import (
    AlgebraConfig,
    ConfigMismatchError,
    FullProduct,
    SignRuleError,
    TruncPoly,
    map_F,
    map_F3,
    map_G,
    map_G3,
    monomial,
    oracle_full_product,
    poly_add,
    poly_sub_checked,
    poly_zero,
)
from seqeffect.algebra import (
    Branch,
    Element,
    MembershipError,
    RootCertificate,
    certify,
    enumerate_roots,
    le,
    make,
    ominus,
    one,
    oplus,
    orthosupplement,
    power,
    seq,
    zero,
)

from seqeffect._version import __version__

__all__ = [
    "AlgebraConfig",
    "Branch",
    "ConfigMismatchError",
    "Element",
    "FullProduct",
    "MembershipError",
    "RootCertificate",
    "SignRuleError",
    "TruncPoly",
    "certify",
    "enumerate_roots",
    "le",
    "make",
    "map_F",
    "map_F3",
    "map_G",
    "map_G3",
    "monomial",
    "ominus",
    "one",
    "oplus",
    "oracle_full_product",
    "orthosupplement",
    "poly_add",
    "poly_sub_checked",
    "poly_zero",
    "power",
    "seq",
    "zero",
]
