"""Pivotal grouplikes, ribbon elements and square-root pairs of a double.

Two independent enumerations are compared:

* direct: every grouplike ``p`` of ``D(H)`` implementing ``S^2`` gives a
  candidate ``v = u p^{-1}`` which is kept only if it passes the five
  ribbon axioms;
* pairs: ``(ℓ, β) ∈ G(H) × G(H*)`` with ``ℓ^2 = a``, ``β^2 = α`` and
  ``S^2(h) = ℓ (β ⇀ h ↼ β^{-1}) ℓ^{-1}``, computed inside ``H`` only.

Each pair is embedded in the double and must land on a certified ribbon
element; the map must be a bijection onto the direct list.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .double import (
    QuasiTriangularData,
    double,
    double_grouplikes,
    embed_pair,
    factorizable,
    verify_quasitriangular,
)
from .hopf import (
    HopfAlgebra,
    antipode_power,
    character_inverse,
    characters,
    convolution,
    grouplikes,
    hit_left_matrix,
    hit_right_matrix,
)
from .linalg import ExactArray, einsum
from .radford import RadfordData, radford_data

# which element of G(H*) x G(H) a pair is sent to before forming v = u p^{-1}
PAIR_EMBEDDING = "beta_ell"


class TheoremViolation(ArithmeticError):
    """The pair enumeration and the direct enumeration disagree."""


class ConventionFault(ArithmeticError):
    """A valid pair did not certify after embedding into the double."""


@dataclass
class PivotalElement:
    index: int
    p: ExactArray
    implements_s2: bool


@dataclass
class RibbonCertificate:
    v: ExactArray
    pivotal: PivotalElement
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass
class KRPair:
    ell: int
    beta: int
    conditions: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())


@dataclass
class ClassificationReport:
    algebra: str
    dim_double: int
    pivotal_count: int
    ribbon_certificates: list[RibbonCertificate]
    kr_pairs: list[KRPair]
    bijection_verified: bool
    spherical_dsps: bool
    factorizable: bool
    modular: bool
    warnings: list[str] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)

    @property
    def ribbon_count(self) -> int:
        return len(self.ribbon_certificates)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "dim_double": self.dim_double,
            "pivotal_count": self.pivotal_count,
            "ribbon_count": self.ribbon_count,
            "kr_pair_count": len(self.kr_pairs),
            "bijection": self.bijection_verified,
            "ribbon_elements": [c.v.tolist_str() for c in self.ribbon_certificates],
            "kr_pairs": [{"ell": k.ell, "beta": k.beta} for k in self.kr_pairs],
            "spherical_dsps": self.spherical_dsps,
            "factorizable": self.factorizable,
            "modular": self.modular,
            "warnings": self.warnings,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# direct enumeration


def _conjugation_matrix(a: HopfAlgebra, p: ExactArray, p_inv: ExactArray) -> ExactArray:
    return a.left_mult_matrix(p) @ a.right_mult_matrix(p_inv)


def pivotal_grouplikes(qt: QuasiTriangularData) -> list[PivotalElement]:
    """Grouplikes ``p`` of the algebra with ``S^2 = Ad(p)``."""
    a = qt.algebra
    G = double_grouplikes(qt) if qt.base is not None else qt.grouplikes
    S2 = antipode_power(a, 2)
    out = []
    for i, p in enumerate(G.elements):
        if _conjugation_matrix(a, p, a.S(p)).equals(S2):
            out.append(PivotalElement(i, p, True))
    return out


def certify(qt: QuasiTriangularData, v: ExactArray, pivotal: PivotalElement) -> RibbonCertificate:
    """Evaluate the five ribbon axioms for ``v`` exactly."""
    a = qt.algebra
    u = qt.u
    checks = {
        "central": a.left_mult_matrix(v).equals(a.right_mult_matrix(v)),
        "antipode_fixed": a.S(v).equals(v),
        "counit_one": a.epsilon(v) == 1,
        "square": a.product(v, v).equals(a.product(u, a.S(u))),
    }
    # Δ(v) = Q^{-1}(v ⊗ v)  <=>  Q Δ(v) = v ⊗ v
    checks["comult"] = qt.monodromy_times(a.coproduct(v)).equals(einsum("i,j->ij", v, v))
    return RibbonCertificate(v, pivotal, checks)


def candidate(qt: QuasiTriangularData, p: ExactArray) -> ExactArray:
    """``v = u p^{-1}``."""
    a = qt.algebra
    return a.product(qt.u, a.S(p))


def ribbon_elements_direct(qt: QuasiTriangularData,
                           pivotals: list[PivotalElement] | None = None) -> list[RibbonCertificate]:
    if pivotals is None:
        pivotals = pivotal_grouplikes(qt)
    seen = set()
    out = []
    for piv in pivotals:
        cert = certify(qt, candidate(qt, piv.p), piv)
        if cert.ok and cert.v.key() not in seen:
            seen.add(cert.v.key())
            out.append(cert)
    return out


# ---------------------------------------------------------------------------
# square-root pairs inside H


def kr_pairs(h: HopfAlgebra, rad: RadfordData | None = None) -> list[KRPair]:
    """All ``(ℓ, β)`` with ``ℓ^2 = a``, ``β^2 = α`` and ``S^2 = Ad(ℓ) ∘ (β ⇀ · ↼ β^{-1})``.

    Indices refer to ``grouplikes(h)`` and ``characters(h)``.
    """
    rad = rad or radford_data(h)
    G = grouplikes(h)
    X = characters(h)
    S2 = antipode_power(h, 2)
    hits = [hit_left_matrix(h, b) @ hit_right_matrix(h, character_inverse(h, b)) for b in X.elements]
    beta_sq = [convolution(h, b, b).equals(rad.alpha) for b in X.elements]
    out = []
    for i, ell in enumerate(G.elements):
        ell_sq = h.product(ell, ell).equals(rad.a)
        conj = _conjugation_matrix(h, ell, h.S(ell))
        for j in range(len(X)):
            cond = {
                "square_ell": ell_sq,
                "square_beta": beta_sq[j],
                "s2_conjugation": (conj @ hits[j]).equals(S2),
            }
            if all(cond.values()):
                out.append(KRPair(i, j, cond))
    return out


def pair_element(h: HopfAlgebra, pair: KRPair, convention: str = PAIR_EMBEDDING) -> ExactArray:
    """The grouplike of ``D(h)`` a pair is sent to."""
    ell = grouplikes(h).elements[pair.ell]
    beta = characters(h).elements[pair.beta]
    if convention == "beta_ell":
        return embed_pair(h, beta, ell)
    if convention == "inverse":
        return embed_pair(h, character_inverse(h, beta), h.S(ell))
    if convention == "beta_inverse":
        return embed_pair(h, character_inverse(h, beta), ell)
    if convention == "ell_inverse":
        return embed_pair(h, beta, h.S(ell))
    raise ValueError(f"unknown pair embedding {convention!r}")


def pair_to_ribbon(h: HopfAlgebra, pair: KRPair, qt: QuasiTriangularData | None = None,
                   convention: str = PAIR_EMBEDDING) -> RibbonCertificate:
    """Embed a pair as ``p ∈ G(D(h))`` and certify ``v = u p^{-1}``.

    Raises:
        ConventionFault: the candidate failed a ribbon axiom.
    """
    qt = qt or double(h)
    p = pair_element(h, pair, convention)
    a = qt.algebra
    piv = PivotalElement(-1, p, _conjugation_matrix(a, p, a.S(p)).equals(antipode_power(a, 2)))
    cert = certify(qt, candidate(qt, p), piv)
    if not (cert.ok and piv.implements_s2):
        failed = [k for k, ok in cert.checks.items() if not ok]
        if not piv.implements_s2:
            failed.append("implements_s2")
        raise ConventionFault(f"pair (ell={pair.ell}, beta={pair.beta}) failed {', '.join(failed)}")
    return cert


# ---------------------------------------------------------------------------
# verdicts


def spherical_dsps(h: HopfAlgebra, rad: RadfordData | None = None) -> bool:
    """``α = ε`` and some ``p ∈ G(H)`` has ``S^2 = Ad(p)`` and ``p^2 = a``."""
    rad = rad or radford_data(h)
    if not rad.unimodular:
        return False
    S2 = antipode_power(h, 2)
    for p in grouplikes(h).elements:
        if h.product(p, p).equals(rad.a) and _conjugation_matrix(h, p, h.S(p)).equals(S2):
            return True
    return False


def _check_distinguished_double(h: HopfAlgebra, rad: RadfordData, qt: QuasiTriangularData) -> list[str]:
    """Compare ``a_{D(H)}`` with the image of ``(α_H, a_H)``."""
    rad_d = radford_data(qt.algebra)
    notes = []
    if not rad_d.unimodular:
        raise TheoremViolation("the double is not unimodular")
    images = {
        "(alpha, a)": embed_pair(h, rad.alpha, rad.a),
        "(alpha^-1, a^-1)": embed_pair(h, character_inverse(h, rad.alpha), h.S(rad.a)),
        "(alpha, a^-1)": embed_pair(h, rad.alpha, h.S(rad.a)),
        "(alpha^-1, a)": embed_pair(h, character_inverse(h, rad.alpha), rad.a),
    }
    matches = [name for name, x in images.items() if x.equals(rad_d.a)]
    if matches:
        notes.append(f"distinguished grouplike of the double equals the image of {matches[0]}")
    else:
        notes.append("distinguished grouplike of the double matches no image of (alpha, a)")
    if not rad_d.s4.ok:
        raise TheoremViolation("S^4 formula fails on the double")
    return notes


def classify(h: HopfAlgebra, qt: QuasiTriangularData | None = None, verify: bool = True) -> ClassificationReport:
    """Run both enumerations, match them, and decide sphericity and modularity.

    Raises:
        TheoremViolation: the enumerations do not correspond bijectively.
    """
    qt = qt or double(h)
    warnings = list(qt.notes)
    notes = []
    if verify:
        rep = verify_quasitriangular(qt)
        if not rep.ok:
            raise TheoremViolation(f"quasitriangular identities fail: {rep.failures[0]}")
    rad = radford_data(h)
    if not rad.s4.ok:
        raise TheoremViolation(f"S^4 formula fails on {h.name}")
    warnings += grouplikes(h).warnings + characters(h).warnings
    pivotals = pivotal_grouplikes(qt)
    direct = ribbon_elements_direct(qt, pivotals)
    pairs = kr_pairs(h, rad)

    direct_keys = {c.v.key(): i for i, c in enumerate(direct)}
    image = []
    for pair in pairs:
        try:
            cert = pair_to_ribbon(h, pair, qt)
        except ConventionFault as exc:
            raise TheoremViolation(str(exc)) from exc
        image.append(direct_keys.get(cert.v.key()))
    bijection = (
        len(pairs) == len(direct)
        and None not in image
        and len(set(image)) == len(image)
    )
    if not bijection:
        raise TheoremViolation(
            f"{len(pairs)} square-root pairs vs {len(direct)} ribbon elements for {h.name}")
    notes += _check_distinguished_double(h, rad, qt)
    fact = factorizable(qt)
    if not fact:
        raise TheoremViolation(f"the double of {h.name} is not factorizable")
    sph = spherical_dsps(h, rad)
    modular = fact and bool(direct)
    if sph and not modular:
        raise TheoremViolation("spherical but not modular")
    return ClassificationReport(
        algebra=h.name,
        dim_double=qt.dim,
        pivotal_count=len(pivotals),
        ribbon_certificates=direct,
        kr_pairs=pairs,
        bijection_verified=bijection,
        spherical_dsps=sph,
        factorizable=fact,
        modular=modular,
        warnings=warnings,
        notes=notes,
    )


def modular_verdict(h: HopfAlgebra, report: ClassificationReport | None = None) -> bool:
    report = report or classify(h)
    return report.factorizable and report.ribbon_count > 0
