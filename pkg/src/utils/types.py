"""
JSON payload shapes of every CLI command.

These TypedDicts are the output schema: RenderAgent validates each payload
against its shape with extra keys forbidden. Numbers that may be
non-integral are ints when integral and "a/b" strings otherwise.
"""
from typing import Any, Dict, List, Optional, Union

from pydantic import ConfigDict, with_config
from typing_extensions import TypedDict

RationalJSON = Union[int, str]

_STRICT = ConfigDict(extra="forbid")


@with_config(_STRICT)
class LensPayload(TypedDict):
    m: int
    q: int


@with_config(_STRICT)
class HJExpandPayload(TypedDict):
    """
    Attributes:
        string: Terms b_1, ..., b_k of the expansion
        value: hj_value of the string, equal to m/q
        dual: Expansion of m/(m - q)
    """

    m: int
    q: int
    string: List[int]
    value: RationalJSON
    dual: List[int]
    lens: LensPayload


@with_config(_STRICT)
class CpqPayload(TypedDict):
    p: int
    q: int
    string: List[int]
    value: RationalJSON
    length: int
    lens: LensPayload
    wahl: bool


@with_config(_STRICT)
class TTypePayload(TypedDict):
    d: int
    n: int
    a: int


@with_config(_STRICT)
class ClassifyPayload(TypedDict):
    """
    Attributes:
        normal_form: "1/r(1,q)" or "smooth"
        kind: smooth, rdp_a, t_type or not_class_t
        annotations: Every (d, n, a) factorization, also for RDPs
    """

    r: int
    a: int
    b: int
    q: int
    normal_form: str
    kind: str
    label: str
    rdp_index: Optional[int]
    t_type: Optional[TTypePayload]
    annotations: List[TTypePayload]
    qg_deformation_dim: Optional[int]


@with_config(_STRICT)
class ResolvePayload(TypedDict):
    r: int
    q: int
    string: List[int]
    discrepancies: List[RationalJSON]
    delta_K2: RationalJSON
    delta_chi: int


@with_config(_STRICT)
class InertiaPayload(TypedDict):
    negative: int
    zero: int
    positive: int


@with_config(_STRICT)
class MatchPayload(TypedDict):
    p: int
    q: int
    vertex_ids: List[str]
    reversed: bool


@with_config(_STRICT)
class PlumbPayload(TypedDict):
    """
    Attributes:
        matrix: Intersection form in declaration order of vertices
        chain: HJ string when the graph is a linear chain of spheres
        boundary: Lens space boundary of such a chain
    """

    vertices: List[str]
    matrix: List[List[int]]
    determinant: RationalJSON
    inertia: InertiaPayload
    negative_definite: bool
    chain: Optional[List[int]]
    boundary: Optional[LensPayload]
    cpq_matches: List[MatchPayload]


@with_config(_STRICT)
class InvariantsPayload(TypedDict):
    chi: int
    sigma: int
    b1: int
    c1sq: int
    chi_h: RationalJSON
    b2: int
    bplus: RationalJSON
    bminus: RationalJSON
    notes: List[str]


@with_config(_STRICT)
class GeographyPayload(TypedDict):
    noether_holds: bool
    noether_margin: RationalJSON
    general_type_possible: bool
    caveat: str
    bmy_holds: bool
    bmy_margin: RationalJSON
    issues: List[str]
    en: Optional[int]


@with_config(_STRICT)
class SurfacePayload(TypedDict):
    """Invariants of a constructed or given surface, with E(n) recognition."""

    construction: str
    invariants: InvariantsPayload
    geography: GeographyPayload


@with_config(_STRICT)
class BlowdownPayload(TypedDict):
    input: InvariantsPayload
    plan: List[List[int]]
    result: InvariantsPayload
    geography: GeographyPayload


@with_config(_STRICT)
class W4nPayload(TypedDict):
    n: int
    chi: int
    sigma: int
    b1: int
    c1sq: int
    chi_h: RationalJSON
    b2: int
    bplus: RationalJSON
    bminus: RationalJSON
    notes: List[str]
    noether_holds: bool
    noether_margin: RationalJSON


@with_config(_STRICT)
class FixedPointPayload(TypedDict):
    z: str
    w: str
    weight: int


@with_config(_STRICT)
class InventoryEntryPayload(TypedDict):
    type: str
    r: int
    q: int
    classification: str
    multiplicity: int


@with_config(_STRICT)
class QuotientDemoPayload(TypedDict):
    """
    Attributes:
        lefschetz: Fixed point contribution of g^j, keyed by j
        blown_down: Invariants after rationally blowing down the T-points
    """

    genus: int
    genus_other: int
    fixed_points: List[FixedPointPayload]
    fixed_points_other: List[FixedPointPayload]
    quotient_curve_genus: int
    inventory: List[InventoryEntryPayload]
    quotient_chi: int
    lefschetz: Dict[str, str]
    invariants: InvariantsPayload
    fibration_chi: int
    en: Optional[int]
    blown_down: InvariantsPayload


@with_config(_STRICT)
class CkClPayload(TypedDict):
    k: int
    l: int
    genus_k: int
    genus_l: int
    fixed_points_k: int
    fixed_points_l: int
    inventory: List[InventoryEntryPayload]
    invariants: InvariantsPayload
    en: Optional[int]


@with_config(_STRICT)
class SmoothPayload(TypedDict):
    d: int
    n: int
    a: int
    t: List[RationalJSON]
    polynomial: str
    central_fibre: str
    classification: str
    string: List[int]
    discrepancies: List[RationalJSON]
    delta_K2: RationalJSON
    action_preserves: bool
    fiber_smooth: bool
    action_free: bool
    milnor_number: int
    k: int
    delta_chi: int
    delta_sigma: int
    cpq_candidates: List[List[int]]
    cpq_matches: List[List[int]]


@with_config(_STRICT)
class ScenarioPayload(TypedDict):
    """
    Attributes:
        criterion: Acceptance criterion the scenario belongs to
        provenance: Where the expected values come from
        status: pass, fail or error
    """

    name: str
    criterion: int
    provenance: str
    expected: Dict[str, Any]
    computed: Dict[str, Any]
    status: str
    error: Optional[str]


@with_config(_STRICT)
class VerifyPayload(TypedDict):
    passed: bool
    exit_code: int
    scenarios: List[ScenarioPayload]


Payload = Union[
    HJExpandPayload,
    CpqPayload,
    ClassifyPayload,
    ResolvePayload,
    PlumbPayload,
    SurfacePayload,
    BlowdownPayload,
    W4nPayload,
    QuotientDemoPayload,
    CkClPayload,
    SmoothPayload,
    VerifyPayload,
]
