"""The two factorizations compared, and the monadicity checkers built on them."""

from __future__ import annotations

from dataclasses import dataclass

from .descent import descent_factorize
from .errors import CertificationFailure, NoKanExtension, SemfactError
from .fincat.adjunction import find_left_adjoint
from .fincat.core import FinFunctor, check_functor, compose_functors, is_invertible_functor, op_dual
from .fincat.search import find_isomorphism, is_equivalence
from .monad import check_preservation, semantic_factorize
from .verdict import Verdict


@dataclass(eq=False)
class ComparisonReport:
    preservation: object
    descent_side: tuple | None
    em_side: tuple | None
    phi: FinFunctor | None
    iso_verified: bool
    commutation_verified: bool
    descent_error: str | None = None
    em_error: str | None = None
    constrained_iso: FinFunctor | None = None
    soundness: bool | None = None

    @property
    def isomorphic(self):
        return self.iso_verified or self.constrained_iso is not None


def _comparison_functor(ell, dc, em):
    """Φ(w, ψ) = (w, ℓψ), identity on underlying morphisms; None if ill-formed."""
    st = dc.structured
    om = {}
    for (w, psi), name in dc.obj_of.items():
        target = em.obj_of.get((w, ell.mor(psi)))
        if target is None:
            return None
        om[name] = target
    mm = {}
    for name, m in st.under.items():
        key = (om[st.src[name]], om[st.dst[name]], m)
        if key not in em.structured.lookup:
            return None
        mm[name] = em.structured.lookup[key]
    phi = FinFunctor(dc.category, em.algebras, om, mm)
    try:
        check_functor(phi)
    except SemfactError:
        return None
    return phi


def compare_factorizations(p: FinFunctor, certify=True, family=None, limit=None) -> ComparisonReport:
    descent_side = em_side = None
    descent_error = em_error = None
    try:
        descent_side = descent_factorize(p, certify=certify, family=family)
    except SemfactError as exc:
        if type(exc).__name__ == "BoundExceeded":
            raise
        descent_error = f"{type(exc).__name__}: {exc}"
    try:
        em_side = semantic_factorize(p, certify=certify, family=family, limit=limit)
    except NoKanExtension as exc:
        em_error = f"NoKanExtension: {exc}"
    cok = descent_side[2] if descent_side else None
    pres = check_preservation(p, cok=cok, limit=limit)
    rep = ComparisonReport(pres, descent_side, em_side, None, False, False, descent_error, em_error)
    if not (descent_side and em_side):
        return rep
    pH, dp, _, dc = descent_side
    pt, em = em_side
    if pres.verdict:
        phi = _comparison_functor(pres.ell, dc, em)
        rep.soundness = phi is not None
        if phi is None:
            raise CertificationFailure("comparison functor is ill-formed although preservation holds")
        rep.phi = phi
        rep.iso_verified = is_invertible_functor(phi)
        rep.commutation_verified = (
            compose_functors(em.u, phi) == dp and compose_functors(phi, pH) == pt
        )
    else:
        rep.constrained_iso = find_isomorphism(
            dc.category, em.algebras, [("after", pH, pt), ("before", em.u, dp)], limit=limit,
        )
    return rep


def has_left_adjoint(p: FinFunctor, limit=None) -> bool:
    return find_left_adjoint(p, limit) is not None


def is_effective_faithful(p: FinFunctor, certify=True, family=None) -> Verdict:
    pH, dp, cok, dc = descent_factorize(p, certify=certify, family=family)
    eq = is_equivalence(pH)
    return Verdict(eq.holds, {"pH": pH, "descent_category": dc.category, "equivalence": eq.witness})


def is_monadic(p: FinFunctor, certify=True, family=None, limit=None) -> Verdict:
    try:
        pt, em = semantic_factorize(p, certify=certify, family=family, limit=limit)
    except NoKanExtension as exc:
        return Verdict(False, {"reason": f"NoKanExtension: {exc}"})
    eq = is_equivalence(pt)
    return Verdict(eq.holds, {"pt": pt, "algebras": em.algebras, "equivalence": eq.witness})


def is_comonadic(p: FinFunctor, certify=True, family=None, limit=None) -> Verdict:
    return is_monadic(op_dual(p), certify=certify, family=family, limit=limit)


@dataclass(frozen=True)
class CrosscheckReport:
    has_left_adjoint: bool
    effective_faithful: bool
    monadic: bool

    @property
    def consistent(self):
        return self.monadic == (self.has_left_adjoint and self.effective_faithful)

    def bits(self):
        return (self.has_left_adjoint, self.effective_faithful, self.monadic)


def monadicity_crosscheck(p: FinFunctor, certify=True, family=None, limit=None) -> CrosscheckReport:
    return CrosscheckReport(
        has_left_adjoint(p, limit),
        bool(is_effective_faithful(p, certify=certify, family=family)),
        bool(is_monadic(p, certify=certify, family=family, limit=limit)),
    )
