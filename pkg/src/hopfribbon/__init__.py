"""Exact arithmetic for finite-dimensional Hopf algebras, Drinfeld doubles and ribbon elements."""

from .catalog import catalog_ids, group_algebra, load, sweedler, taft, trivial
from .double import (
    QuasiTriangularData,
    central_elements,
    double,
    drinfeld_element,
    factorizable,
    monodromy,
    verify_quasitriangular,
)
from .hopf import (
    HopfAlgebra,
    characters,
    cop,
    dual,
    from_json,
    grouplikes,
    hit_left,
    hit_right,
    op,
    validate_axioms,
)
from .linalg import ExactArray, Field, common_kernel, einsum, inverse, kernel, rank, rref, solve
from .radford import RadfordData, compute_integrals, distinguished_grouplikes, radford_data, radford_s4_check
from .ribbon import (
    ClassificationReport,
    KRPair,
    PivotalElement,
    RibbonCertificate,
    TheoremViolation,
    classify,
    kr_pairs,
    modular_verdict,
    pair_to_ribbon,
    pivotal_grouplikes,
    ribbon_elements_direct,
    spherical_dsps,
)

__version__ = "0.1.0"
