"""Conversion of domain records into the JSON payloads of src/utils/types.py."""
from typing import List, Optional, Sequence, Tuple

from ..core.exactmath import determinant, inertia
from ..core.hj import HJString, LensSpace, cpq_string, dual_string, hj_expand, hj_value, is_wahl_string, lens_of_chain
from ..core.plumbing import ConfigurationMatch, PlumbingGraph, chain_string, intersection_matrix
from ..core.quotients import FamilyCounts, FixedPointDatum, QuotientInventory, QuotientPipelineResult
from ..core.singularities import CyclicQuotientType, TClassification, TFactorization, classify_T, qg_deformation_dim, resolve
from ..core.smoothing import SmoothingReport, family_polynomial
from ..core.surfaces import FourManifoldInvariants
from ..core.surgery import GeographyReport, geography_report
from .errors import CalculusError
from .string import format_gauss, format_point, format_rational
from .types import (
    BlowdownPayload,
    CkClPayload,
    ClassifyPayload,
    CpqPayload,
    FixedPointPayload,
    GeographyPayload,
    HJExpandPayload,
    InventoryEntryPayload,
    InvariantsPayload,
    LensPayload,
    PlumbPayload,
    QuotientDemoPayload,
    ResolvePayload,
    SmoothPayload,
    SurfacePayload,
    TTypePayload,
    W4nPayload,
)


def lens_payload(lens: LensSpace) -> LensPayload:
    return {"m": lens.m, "q": lens.q}


def hj_expand_payload(m: int, q: int) -> HJExpandPayload:
    string = hj_expand(m, q)
    return {
        "m": m,
        "q": q,
        "string": list(string.terms),
        "value": format_rational(hj_value(string)),
        "dual": list(dual_string(m, q).terms),
        "lens": lens_payload(lens_of_chain(string)),
    }


def cpq_payload(p: int, q: int) -> CpqPayload:
    string = cpq_string(p, q)
    return {
        "p": p,
        "q": q,
        "string": list(string.terms),
        "value": format_rational(hj_value(string)),
        "length": len(string),
        "lens": lens_payload(lens_of_chain(string)),
        "wahl": is_wahl_string(string),
    }


def t_type_payload(t: TFactorization) -> TTypePayload:
    return {"d": t.d, "n": t.n, "a": t.a}


def classify_payload(t: CyclicQuotientType, a: int, b: int) -> ClassifyPayload:
    c: TClassification = classify_T(t)
    return {
        "r": t.r,
        "a": a,
        "b": b,
        "q": t.q,
        "normal_form": str(t),
        "kind": c.kind,
        "label": str(c),
        "rdp_index": c.rdp_index,
        "t_type": t_type_payload(c.t_type) if c.t_type is not None else None,
        "annotations": [t_type_payload(x) for x in c.annotations],
        "qg_deformation_dim": qg_deformation_dim(c) if c.kind == "t_type" else None,
    }


def resolve_payload(t: CyclicQuotientType) -> ResolvePayload:
    data = resolve(t)
    return {
        "r": t.r,
        "q": t.q,
        "string": list(data.string.terms),
        "discrepancies": [format_rational(x) for x in data.discrepancies],
        "delta_K2": format_rational(data.delta_K2),
        "delta_chi": data.delta_chi,
    }


def plumb_payload(g: PlumbingGraph, matches: Sequence[ConfigurationMatch]) -> PlumbPayload:
    matrix = intersection_matrix(g)
    n_minus, n_zero, n_plus = inertia(matrix)
    chain: Optional[HJString]
    try:
        chain = chain_string(g)
    except CalculusError:
        chain = None
    return {
        "vertices": [v.id for v in g.vertices],
        "matrix": [[int(x) for x in row] for row in matrix.entries],
        "determinant": format_rational(determinant(matrix)),
        "inertia": {"negative": n_minus, "zero": n_zero, "positive": n_plus},
        "negative_definite": n_zero == 0 and n_plus == 0,
        "chain": list(chain.terms) if chain is not None else None,
        "boundary": lens_payload(lens_of_chain(chain)) if chain is not None else None,
        "cpq_matches": [
            {"p": x.p, "q": x.q, "vertex_ids": list(x.vertex_ids), "reversed": x.reversed} for x in matches
        ],
    }


def invariants_payload(m: FourManifoldInvariants) -> InvariantsPayload:
    return {
        "chi": m.chi,
        "sigma": m.sigma,
        "b1": m.b1,
        "c1sq": m.c1sq,
        "chi_h": format_rational(m.chi_h),
        "b2": m.b2,
        "bplus": format_rational(m.bplus),
        "bminus": format_rational(m.bminus),
        "notes": list(m.notes),
    }


def geography_payload(report: GeographyReport) -> GeographyPayload:
    return {
        "noether_holds": report.noether.holds,
        "noether_margin": format_rational(report.noether.margin),
        "general_type_possible": report.noether.general_type_possible,
        "caveat": report.noether.caveat,
        "bmy_holds": report.bmy_holds,
        "bmy_margin": format_rational(report.bmy_margin),
        "issues": list(report.issues),
        "en": report.en,
    }


def surface_payload(construction: str, m: FourManifoldInvariants) -> SurfacePayload:
    return {
        "construction": construction,
        "invariants": invariants_payload(m),
        "geography": geography_payload(geography_report(m)),
    }


def blowdown_payload(
    m: FourManifoldInvariants, plan: Sequence[Tuple[int, int]], result: FourManifoldInvariants
) -> BlowdownPayload:
    return {
        "input": invariants_payload(m),
        "plan": [[p, q] for p, q in plan],
        "result": invariants_payload(result),
        "geography": geography_payload(geography_report(result)),
    }


def w4n_payload(n: int, m: FourManifoldInvariants) -> W4nPayload:
    noether = geography_report(m).noether
    base = invariants_payload(m)
    return {
        "n": n,
        "chi": base["chi"],
        "sigma": base["sigma"],
        "b1": base["b1"],
        "c1sq": base["c1sq"],
        "chi_h": base["chi_h"],
        "b2": base["b2"],
        "bplus": base["bplus"],
        "bminus": base["bminus"],
        "notes": base["notes"],
        "noether_holds": noether.holds,
        "noether_margin": format_rational(noether.margin),
    }


def fixed_point_payload(point: FixedPointDatum) -> FixedPointPayload:
    return {"z": format_point(point.z), "w": format_point(point.w), "weight": point.tangent_weight}


def inventory_payload(inv: QuotientInventory) -> List[InventoryEntryPayload]:
    return [
        {
            "type": str(e.type),
            "r": e.type.r,
            "q": e.type.q,
            "classification": str(classify_T(e.type)),
            "multiplicity": e.multiplicity,
        }
        for e in inv.entries
    ]


def quotient_demo_payload(result: QuotientPipelineResult, blown_down: FourManifoldInvariants) -> QuotientDemoPayload:
    return {
        "genus": result.genus,
        "genus_other": result.genus_other,
        "fixed_points": [fixed_point_payload(p) for p in result.fixed_points],
        "fixed_points_other": [fixed_point_payload(p) for p in result.fixed_points_other],
        "quotient_curve_genus": result.quotient_curve_genus,
        "inventory": inventory_payload(result.inventory),
        "quotient_chi": result.quotient_chi,
        "lefschetz": {str(j): format_gauss(v) for j, v in sorted(result.lefschetz.items())},
        "invariants": invariants_payload(result.invariants),
        "fibration_chi": result.fibration_chi,
        "en": result.en,
        "blown_down": invariants_payload(blown_down),
    }


def ck_cl_payload(counts: FamilyCounts) -> CkClPayload:
    return {
        "k": counts.k,
        "l": counts.l,
        "genus_k": counts.genus_k,
        "genus_l": counts.genus_l,
        "fixed_points_k": counts.fixed_points_k,
        "fixed_points_l": counts.fixed_points_l,
        "inventory": inventory_payload(counts.inventory),
        "invariants": invariants_payload(counts.invariants),
        "en": counts.en,
    }


def smooth_payload(report: SmoothingReport) -> SmoothPayload:
    spec = report.spec
    return {
        "d": spec.d,
        "n": spec.n,
        "a": spec.a,
        "t": [format_rational(x) for x in spec.t],
        "polynomial": str(family_polynomial(spec).as_expr()),
        "central_fibre": str(report.central_fibre),
        "classification": str(report.classification),
        "string": list(report.resolution.string.terms),
        "discrepancies": [format_rational(x) for x in report.resolution.discrepancies],
        "delta_K2": format_rational(report.resolution.delta_K2),
        "action_preserves": report.action_preserves,
        "fiber_smooth": report.fiber_smooth,
        "action_free": report.action_free,
        "milnor_number": report.milnor_number,
        "k": report.k,
        "delta_chi": report.delta_chi,
        "delta_sigma": report.delta_sigma,
        "cpq_candidates": [[p, q] for p, q in report.cpq.candidates],
        "cpq_matches": [[p, q] for p, q in report.cpq.matches],
    }
