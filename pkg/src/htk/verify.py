"""Run every identity on one object and collect the verdicts.

Each stage is guarded: an exception inside a stage becomes a failed verdict
carrying the exception text, so one broken input never hides the rest of the
report.
"""

from __future__ import annotations

import logging
from typing import Callable

from htk.comodule import (
    ComoduleAlgebraData,
    GaloisObjectData,
    check_comodule_algebra,
    check_regular_gamma,
    coinvariants_closed,
    galois_identities,
    galois_status,
    make_galois,
)
from htk.errors import HtkError
from htk.exactlin import check_maps_equal
from htk.hopfcore import HopfData, check_algebra, check_antipode_properties, check_hopf
from htk.report import Report, Verdict
from htk.torsor import (
    TorsorData,
    check_reconstruction,
    check_scalar_lemma,
    check_theta_forms,
    check_theta_identities,
    check_theta_s2_colinear,
    check_torsor_axioms,
    derive_torsor,
    left_hopf_coinvariants,
)
from htk.ydribbon import (
    YDModuleData,
    check_braided_commutativity,
    check_functor_F,
    check_hexagons,
    check_module_algebra,
    check_ribbon_property,
    check_ribbon_theta,
    check_theta_algebra_map_via_ribbon,
    check_theta_matches_torsor,
    check_theta_naturality,
    check_yd,
    mu_action,
    tensor_yd,
    trivial_yd,
)

log = logging.getLogger(__name__)

HEXAGON_MAX_DIM = 4


def _guard(rep: Report, stage: str, fn: Callable[[], Report | Verdict | None]):
    """Run ``fn`` and merge its verdicts; on error add a failed ``stage`` verdict."""
    try:
        out = fn()
    except HtkError as exc:
        log.debug("stage %s raised", stage, exc_info=True)
        rep.add(Verdict(f"{stage}.error", False, detail=f"{type(exc).__name__}: {exc}"))
        return None
    if isinstance(out, Verdict):
        rep.add(out)
    elif isinstance(out, Report):
        rep.extend(out)
    return out


def check_hopf_full(h: HopfData) -> Report:
    rep = Report("hopf algebra")
    _guard(rep, "hopf", lambda: check_hopf(h))
    if rep.passed:
        _guard(rep, "antipode", lambda: check_antipode_properties(h))
    return rep


def check_comodule_full(d: ComoduleAlgebraData) -> Report:
    """Hopf checks on ``H``, algebra checks on ``T``, coaction laws, coinvariants."""
    rep = Report("comodule algebra")
    rep.extend(check_hopf_full(d.H))
    if not d.regular:
        # the algebra laws of H carry the same names; tag those of T
        _guard(rep, "T.algebra", lambda: _prefixed(check_algebra(d.T), "T."))
    if rep.passed:
        _guard(rep, "comodule", lambda: check_comodule_algebra(d))
    if rep.passed:
        _guard(rep, "coinvariants", lambda: coinvariants_closed(d))
    return rep


def check_torsor_full(t: TorsorData, galois: ComoduleAlgebraData | None = None) -> Report:
    """Algebra checks, axioms, and agreement with the torsor of ``galois`` if given."""
    rep = Report("quantum torsor")
    _guard(rep, "algebra", lambda: check_algebra(t.T))
    if not rep.passed:
        return rep
    _guard(rep, "torsor", lambda: check_torsor_axioms(t))
    if galois is not None:

        def compare():
            g = make_galois(galois, verify=False)
            ref = derive_torsor(g, verify=False)
            n = t.T.dim
            out = Report()
            out.add(check_maps_equal("torsor.matches_galois_mu", t.mu, ref.mu, (n,), (n, n, n)))
            out.add(check_maps_equal("torsor.matches_galois_theta", t.theta, ref.theta))
            return out

        _guard(rep, "torsor_source", compare)
    return rep


def check_yd_full(m: YDModuleData) -> Report:
    rep = Report("yetter-drinfeld module")
    rep.extend(check_hopf_full(m.H))
    if rep.passed:
        _guard(rep, "yd", lambda: check_yd(m))
    if rep.passed:
        _guard(rep, "ribbon", lambda: check_ribbon_theta(m))
    return rep


def check_object(obj) -> Report:
    """Dispatch on the kind of object."""
    if isinstance(obj, HopfData):
        return check_hopf_full(obj)
    if isinstance(obj, ComoduleAlgebraData):
        return check_comodule_full(obj)
    if isinstance(obj, TorsorData):
        return check_torsor_full(obj)
    if isinstance(obj, YDModuleData):
        return check_yd_full(obj)
    raise TypeError(f"cannot check {type(obj).__name__}")


def _yd_suite(rep: Report, g: GaloisObjectData, t: TorsorData | None):
    try:
        m = mu_action(g, verify=False)
    except HtkError as exc:
        rep.add(Verdict("mu_action.error", False, detail=f"{type(exc).__name__}: {exc}"))
        return
    k = trivial_yd(g.H)
    T = g.T
    _guard(rep, "yd", lambda: check_yd(m))
    _guard(rep, "yd_algebra", lambda: check_module_algebra(m, T.mult, T.unit))
    _guard(rep, "braided", lambda: check_braided_commutativity(g, m))
    _guard(rep, "ribbon", lambda: check_ribbon_theta(m))
    _guard(rep, "ribbon", lambda: check_ribbon_property(m, m))
    _guard(rep, "ribbon", lambda: _renamed(check_ribbon_property(m, k), "with_unit"))
    if t is not None:
        _guard(rep, "ribbon", lambda: check_theta_matches_torsor(m, t.theta))
    _guard(rep, "F", lambda: check_functor_F(m, m))
    extras = [("mult", tensor_yd(m, m), T.mult), ("unit", k, T.unit)]
    _guard(rep, "naturality", lambda: check_theta_naturality(m, extras))
    _guard(rep, "algebra_chain", lambda: check_theta_algebra_map_via_ribbon(g, m))
    if T.dim <= HEXAGON_MAX_DIM:
        _guard(rep, "hexagon", lambda: check_hexagons(m, m, m))
    _guard(rep, "hexagon", lambda: _renamed(check_hexagons(m, k, m), "with_unit"))


def _prefixed(rep: Report, prefix: str) -> Report:
    return Report(rep.title, [Verdict(f"{prefix}{v.name}", v.passed, v.label, v.witness, v.detail) for v in rep])


def _renamed(rep: Report, suffix: str) -> Report:
    return Report(rep.title, [Verdict(f"{v.name}.{suffix}", v.passed, v.label, v.witness, v.detail) for v in rep])


def verify_galois(g: GaloisObjectData, with_yd: bool = True) -> Report:
    """Every identity for an already constructed Galois object."""
    rep = Report("galois object")
    _guard(rep, "gamma", lambda: galois_identities(g))
    if g.base.regular:
        _guard(rep, "gamma", lambda: check_regular_gamma(g))
    try:
        t = derive_torsor(g, verify=False)
    except HtkError as exc:
        rep.add(Verdict("torsor.derive", False, detail=f"{type(exc).__name__}: {exc}"))
        t = None
    if t is not None:
        _guard(rep, "torsor", lambda: check_torsor_axioms(t))
        _guard(rep, "theta", lambda: check_theta_forms(g))
    _guard(rep, "scalar", lambda: check_scalar_lemma(g))
    if t is not None:
        _guard(rep, "theta", lambda: check_theta_identities(g, t))
        _guard(rep, "theta", lambda: check_theta_s2_colinear(g, t))
        _guard(rep, "hcoinv", lambda: left_hopf_coinvariants(g, t)[1])
        _guard(rep, "recon", lambda: check_reconstruction(g, t))
    if with_yd:
        _yd_suite(rep, g, t)
    return rep


def verify_paper(d: ComoduleAlgebraData, with_yd: bool = True) -> Report:
    """Structure checks, the Galois property, then every identity."""
    rep = Report("full verification")
    rep.extend(check_comodule_full(d))
    if not rep.passed:
        return rep
    status = galois_status(d)
    rep.extend(status)
    if not status.passed:
        return rep
    try:
        g = make_galois(d, verify=False)
    except HtkError as exc:
        rep.add(Verdict("galois.construct", False, detail=f"{type(exc).__name__}: {exc}"))
        return rep
    rep.extend(verify_galois(g, with_yd))
    return rep
