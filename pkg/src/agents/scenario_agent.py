import logging
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Callable, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict

from config import (
    CLASS_T_SCAN_MAX_R,
    CPQ_SCAN_MAX_P,
    EXIT_ERROR,
    EXIT_MISMATCH,
    EXIT_OK,
    HJ_SCAN_MAX_M,
    SCENARIO_WORKERS,
    SMOOTHING_RANDOM_SEED,
    SMOOTHING_RANDOM_TRIALS,
    WAHL_SCAN_MAX_R,
)
from ..core.exactmath import GaussRational, determinant, inertia
from ..core.hj import (
    LensSpace,
    chain_matrix,
    cpq_string,
    dual_string,
    hj_expand,
    hj_value,
    is_wahl_string,
    lens_equivalent,
    lens_of_chain,
)
from ..core.quotients import QuotientPipelineResult, ck_cl_counts, e4_curve, product_pipeline
from ..core.singularities import classify_T, normalize
from ..core.smoothing import TFamilySpec, action_free, action_preserves, central_fibre_type, family_polynomial, fiber_smooth
from ..core.surfaces import (
    FourManifoldInvariants,
    HirzebruchClass,
    det_twisted_cotangent,
    double_cover,
    hirzebruch_invariants,
    is_effective,
    negative_section,
    projective_plane_double_cover,
    projective_plane_invariants,
    recognize_en,
    split_preimage,
)
from ..core.surgery import e4_invariants, full_blow_down, noether_check, normal_connected_sum, plan_from_inventory, w4n
from ..utils.string import format_rational
from ..utils.types import ScenarioPayload, VerifyPayload

logger = logging.getLogger(__name__)

Values = Dict[str, Any]


class Scenario(BaseModel):
    """A named check: expected values with provenance and the computation producing them."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    criterion: int
    provenance: str
    expected: Values
    compute: Callable[[], Values]


class ScenarioResult(BaseModel):
    """Outcome of one scenario; pass iff computed equals expected exactly."""

    model_config = ConfigDict(frozen=True)

    name: str
    criterion: int
    provenance: str
    expected: Values
    computed: Values
    status: Literal["pass", "fail", "error"]
    error: Optional[str] = None

    def to_payload(self) -> ScenarioPayload:
        return {
            "name": self.name,
            "criterion": self.criterion,
            "provenance": self.provenance,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "error": self.error,
        }


@lru_cache(maxsize=1)
def _e4_pipeline() -> QuotientPipelineResult:
    return product_pipeline(e4_curve())


def _invariant_values(m: FourManifoldInvariants) -> Values:
    return {"chi": m.chi, "sigma": m.sigma, "c1sq": m.c1sq, "chi_h": format_rational(m.chi_h)}


def _z4_quotient() -> Values:
    result = _e4_pipeline()
    weights: Dict[str, List[int]] = {}
    for point in result.fixed_points:
        key = "[0:1]" if point.z[0] == 0 else "[1:0]"
        weights.setdefault(key, []).append(point.tangent_weight)
    return {
        "fixed_point_weights": {k: sorted(v) for k, v in sorted(weights.items())},
        "product_fixed_points": result.inventory.total_points,
        "inventory": {str(e.type): e.multiplicity for e in result.inventory.entries},
        "classification": {str(e.type): str(classify_T(e.type)) for e in result.inventory.entries},
        **_invariant_values(result.invariants),
        "en": result.en,
    }


def _z4_cross_checks() -> Values:
    result = _e4_pipeline()
    blown_down = full_blow_down(result.invariants, plan_from_inventory(result.inventory))
    return {
        "quotient_curve_genus": result.quotient_curve_genus,
        "quotient_chi": result.quotient_chi,
        "lefschetz": {str(j): str(v) for j, v in sorted(result.lefschetz.items())},
        "fibration_chi": result.fibration_chi,
        "blown_down": [blown_down.chi, blown_down.sigma],
    }


def _w4n_table() -> Values:
    table = {n: w4n(n) for n in range(1, 10)}
    return {
        "chi_h": {str(n): format_rational(m.chi_h) for n, m in table.items()},
        "c1sq": {str(n): m.c1sq for n, m in table.items()},
        "sigma": {str(n): m.sigma for n, m in table.items()},
        "bplus": {str(n): format_rational(m.bplus) for n, m in table.items()},
        "noether_fails": [n for n, m in table.items() if not noether_check(m).holds],
    }


def _normal_sum() -> Values:
    summed = normal_connected_sum(e4_invariants(), projective_plane_invariants(), 0, -4, 4)
    return {"chi": summed.chi, "sigma": summed.sigma, "matches_w41": (summed.chi, summed.sigma) == (w4n(1).chi, w4n(1).sigma)}


def _double_cover() -> Values:
    L = HirzebruchClass(e=4, a=2, b=8)
    cover = double_cover(hirzebruch_invariants(4), L)
    preimage = split_preimage(negative_section(4), 2 * L)
    det = det_twisted_cotangent(4, HirzebruchClass(e=4, a=1, b=2))
    return {
        **_invariant_values(cover),
        "en": recognize_en(cover),
        "c0_preimage": {"components": preimage.components, "each_selfint": preimage.each_selfint},
        "det_twisted_cotangent": [det.a, det.b],
        "det_effective": is_effective(det),
    }


def _continued_fractions() -> Values:
    roundtrip = determinants = 0
    for m in range(2, HJ_SCAN_MAX_M + 1):
        for q in range(1, m):
            if gcd(m, q) != 1:
                continue
            string = hj_expand(m, q)
            if hj_value(string) != Fraction(m, q):
                roundtrip += 1
            if abs(determinant(chain_matrix(string))) != m:
                determinants += 1

    not_definite = lens_mismatches = 0
    for p in range(2, CPQ_SCAN_MAX_P + 1):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            string = cpq_string(p, q)
            n_minus, _, _ = inertia(chain_matrix(string))
            if n_minus != len(string):
                not_definite += 1
            if not lens_equivalent(lens_of_chain(string), LensSpace.of(p * p, 1 - p * q), allow_reversal=True):
                lens_mismatches += 1

    return {
        "roundtrip_failures": roundtrip,
        "determinant_failures": determinants,
        "not_negative_definite": not_definite,
        "lens_mismatches": lens_mismatches,
        "cpq_2_1": list(cpq_string(2, 1).terms),
        "cpq_3_1": list(cpq_string(3, 1).terms),
        "dual_9_2": list(dual_string(9, 2).terms),
    }


def _class_t() -> Values:
    oracle = set()
    for n in range(2, CLASS_T_SCAN_MAX_R + 1):
        for d in range(1, CLASS_T_SCAN_MAX_R // (n * n) + 1):
            for a in range(1, n):
                if gcd(a, n) == 1:
                    oracle.add((d * n * n, d * n * a - 1))

    mismatches = 0
    for r in range(2, CLASS_T_SCAN_MAX_R + 1):
        for q in range(1, r):
            if gcd(r, q) != 1:
                continue
            expected = q == r - 1 or (r, q) in oracle
            if classify_T(normalize(r, 1, q)).is_class_t != expected:
                mismatches += 1

    wahl_failures = 0
    n = 2
    while n * n <= WAHL_SCAN_MAX_R:
        for a in range(1, n):
            if gcd(a, n) == 1 and not is_wahl_string(hj_expand(n * n, n * a - 1)):
                wahl_failures += 1
        n += 1

    return {
        "oracle_mismatches": mismatches,
        "1/4(1,1)": str(classify_T(normalize(4, 1, 1))),
        "1/4(1,3)": str(classify_T(normalize(4, 1, 3))),
        "1/9(1,2)": str(classify_T(normalize(9, 1, 2))),
        "wahl_failures": wahl_failures,
    }


def _smoothing() -> Values:
    generic = TFamilySpec.of(1, 2, 1, [1])
    central = TFamilySpec.of(1, 2, 1, [0])
    special = TFamilySpec.of(2, 2, 1, [0, 1])

    preserves_failures = 0
    for d in range(1, 5):
        for n in range(2, 7):
            for a in range(1, n):
                if gcd(a, n) == 1 and not action_preserves(TFamilySpec.of(d, n, a, [1] * d)):
                    preserves_failures += 1

    rng = random.Random(SMOOTHING_RANDOM_SEED)
    resultant_mismatches = joint_failures = 0
    for _ in range(SMOOTHING_RANDOM_TRIALS):
        d, n = rng.randint(1, 3), rng.randint(2, 4)
        a = rng.choice([x for x in range(1, n) if gcd(x, n) == 1])
        spec = TFamilySpec.of(d, n, a, [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(d)])
        p = family_polynomial(spec)
        smooth = fiber_smooth(spec)
        if smooth != (p.resultant(p.diff()) != 0):
            resultant_mismatches += 1
        if spec.t[0] != 0 and smooth and not action_free(spec):
            joint_failures += 1

    return {
        "generic": {"smooth": fiber_smooth(generic), "free": action_free(generic)},
        "central": {"smooth": fiber_smooth(central), "free": action_free(central)},
        "d2_t01_smooth": fiber_smooth(special),
        "central_fibre": str(central_fibre_type(generic)),
        "preserves_failures": preserves_failures,
        "resultant_mismatches": resultant_mismatches,
        "joint_failures": joint_failures,
    }


def _consistency() -> Values:
    result = _e4_pipeline()
    outputs = [result.invariants, e4_invariants(), projective_plane_double_cover(8)]
    outputs += [w4n(n) for n in range(1, 10)]
    outputs += [double_cover(hirzebruch_invariants(4), HirzebruchClass(e=4, a=2, b=8))]
    outputs += [ck_cl_counts(k, l).invariants for k in range(1, 4) for l in range(1, 4)]
    outputs += [normal_connected_sum(e4_invariants(), projective_plane_invariants(), 0, -4, 4)]
    m = result.invariants
    lefschetz_total = sum(result.lefschetz.values(), GaussRational(0))
    return {
        "noether_identity_failures": sum(1 for x in outputs if not x.noether_holds()),
        "sigma_routes_agree": m.c1sq - 8 * m.chi_h == Fraction(m.c1sq - 2 * m.chi, 3),
        "lefschetz_imaginary_part": format_rational(lefschetz_total.im),
        "ck_cl_2_2_matches_pipeline": ck_cl_counts(2, 2).invariants.model_dump() == m.model_dump(),
        "p2_octic": _invariant_values(projective_plane_double_cover(8)),
    }


def default_scenarios() -> List[Scenario]:
    """The verify suite, in reporting order."""
    return [
        Scenario(
            name="z4_quotient_pipeline",
            criterion=1,
            provenance="WORKED EXAMPLE: Z_4 quotient of C x C, chi = 48, sigma = -32, c1^2 = 0, E(4)",
            expected={
                "fixed_point_weights": {"[0:1]": [1, 1], "[1:0]": [3, 3]},
                "product_fixed_points": 16,
                "inventory": {"1/4(1,1)": 8, "1/4(1,3)": 8},
                "classification": {"1/4(1,1)": "T(d=1,n=2,a=1)", "1/4(1,3)": "A_3"},
                "chi": 48,
                "sigma": -32,
                "c1sq": 0,
                "chi_h": 4,
                "en": 4,
            },
            compute=_z4_quotient,
        ),
        Scenario(
            name="w4n_table",
            criterion=2,
            provenance="WORKED EXAMPLE: W_{4,n}, n = 1..9, W_{4,1} violates the Noether inequality",
            expected={
                "chi_h": {str(n): 4 for n in range(1, 10)},
                "c1sq": {str(n): n for n in range(1, 10)},
                "sigma": {str(n): -32 + n for n in range(1, 10)},
                "bplus": {str(n): 7 for n in range(1, 10)},
                "noether_fails": [1],
            },
            compute=_w4n_table,
        ),
        Scenario(
            name="normal_sum_equals_blowdown",
            criterion=2,
            provenance="DERIVED: E(4) summed with CP^2 along a (-4)-sphere and a conic",
            expected={"chi": 47, "sigma": -31, "matches_w41": True},
            compute=_normal_sum,
        ),
        Scenario(
            name="sigma4_double_cover",
            criterion=3,
            provenance="WORKED EXAMPLE: double cover of Sigma_4 branched in |4(C0+4f)|, two (-4)-curves over C0",
            expected={
                "chi": 48,
                "sigma": -32,
                "c1sq": 0,
                "chi_h": 4,
                "en": 4,
                "c0_preimage": {"components": 2, "each_selfint": -4},
                "det_twisted_cotangent": [0, -2],
                "det_effective": False,
            },
            compute=_double_cover,
        ),
        Scenario(
            name="continued_fractions",
            criterion=4,
            provenance="WORKED EXAMPLE: unique continued fraction, lens space boundary L(p^2, 1 - pq)",
            expected={
                "roundtrip_failures": 0,
                "determinant_failures": 0,
                "not_negative_definite": 0,
                "lens_mismatches": 0,
                "cpq_2_1": [4],
                "cpq_3_1": [5, 2],
                "dual_9_2": [2, 2, 2, 3],
            },
            compute=_continued_fractions,
        ),
        Scenario(
            name="class_t_recognition",
            criterion=5,
            provenance="WORKED EXAMPLE: cyclic singularities of class T",
            expected={
                "oracle_mismatches": 0,
                "1/4(1,1)": "T(d=1,n=2,a=1)",
                "1/4(1,3)": "A_3",
                "1/9(1,2)": "T(d=1,n=3,a=1)",
                "wahl_failures": 0,
            },
            compute=_class_t,
        ),
        Scenario(
            name="smoothing_diagnostics",
            criterion=6,
            provenance="WORKED EXAMPLE: the family uv = y^{dn} + sum t_k y^{kn} and its Z_n action",
            expected={
                "generic": {"smooth": True, "free": True},
                "central": {"smooth": False, "free": False},
                "d2_t01_smooth": False,
                "central_fibre": "1/4(1,1)",
                "preserves_failures": 0,
                "resultant_mismatches": 0,
                "joint_failures": 0,
            },
            compute=_smoothing,
        ),
        Scenario(
            name="z4_quotient_cross_checks",
            criterion=7,
            provenance="DERIVED: orbit count, Lefschetz terms, genus 3 fibration over C/Z_4",
            expected={
                "quotient_curve_genus": 0,
                "quotient_chi": 16,
                "lefschetz": {"1": "4+4*i", "2": "4+0*i", "3": "4-4*i"},
                "fibration_chi": 48,
                "blown_down": [40, -24],
            },
            compute=_z4_cross_checks,
        ),
        Scenario(
            name="consistency_traps",
            criterion=7,
            provenance="DERIVED: Noether identity and the two signature routes",
            expected={
                "noether_identity_failures": 0,
                "sigma_routes_agree": True,
                "lefschetz_imaginary_part": 0,
                "ck_cl_2_2_matches_pipeline": True,
                "p2_octic": {"chi": 46, "sigma": -30, "c1sq": 2, "chi_h": 4},
            },
            compute=_consistency,
        ),
    ]


class ScenarioAgent:
    """Agent for running the verification scenarios and summarizing them."""

    def __init__(
        self,
        scenarios: Optional[List[Scenario]] = None,
        overrides: Optional[Dict[str, Values]] = None,
        workers: int = SCENARIO_WORKERS,
    ):
        """
        Initializes the agent with a scenario suite.

        Args:
            scenarios: Scenarios to run. If None, the default suite is used
            overrides: Replacement expected values, keyed by scenario name
            workers: Number of scenarios computed at the same time
        """
        self.scenarios = scenarios if scenarios is not None else default_scenarios()
        self.overrides = overrides or {}
        self.workers = workers
        unknown = set(self.overrides) - {s.name for s in self.scenarios}
        if unknown:
            raise ValueError(f"Overrides name unknown scenarios: {sorted(unknown)}")
        logger.debug(f"ScenarioAgent initialized with {len(self.scenarios)} scenarios")

    def _run_one(self, scenario: Scenario) -> ScenarioResult:
        expected = {**scenario.expected, **self.overrides.get(scenario.name, {})}
        try:
            computed = scenario.compute()
        except Exception as e:
            logger.error(f"Scenario {scenario.name} raised: {str(e)}")
            return ScenarioResult(
                name=scenario.name,
                criterion=scenario.criterion,
                provenance=scenario.provenance,
                expected=expected,
                computed={},
                status="error",
                error=f"{type(e).__name__}: {str(e)}",
            )
        status: Literal["pass", "fail"] = "pass" if computed == expected else "fail"
        if status == "fail":
            logger.warning(f"Scenario {scenario.name} does not match its expected values")
        else:
            logger.info(f"Scenario {scenario.name} passed")
        return ScenarioResult(
            name=scenario.name,
            criterion=scenario.criterion,
            provenance=scenario.provenance,
            expected=expected,
            computed=computed,
            status=status,
        )

    def run(self) -> List[ScenarioResult]:
        """
        Runs every scenario; results come back in declaration order.

        Returns:
            List[ScenarioResult]: One result per scenario
        """
        with ThreadPoolExecutor(max_workers=max(1, self.workers)) as pool:
            return list(pool.map(self._run_one, self.scenarios))

    @staticmethod
    def exit_code(results: List[ScenarioResult]) -> int:
        if any(r.status == "error" for r in results):
            return EXIT_ERROR
        if any(r.status == "fail" for r in results):
            return EXIT_MISMATCH
        return EXIT_OK

    def verify(self) -> VerifyPayload:
        """Runs the suite and packages it as the verify payload."""
        results = self.run()
        code = self.exit_code(results)
        return {
            "passed": code == EXIT_OK,
            "exit_code": code,
            "scenarios": [r.to_payload() for r in results],
        }
