"""Versioned gallery of shift systems with golden JSON output."""

from __future__ import annotations

import json
from importlib import resources

from .shift_cyl import (
    Cylinder,
    H_sigma,
    contains,
    ShiftSystem,
    h_top,
    is_trivial,
    local_base,
    nub,
    s_sigma,
    scale,
    shift_image,
    tidy_check,
    u_minus,
    u_minusminus,
    u_plus,
    u_plusplus,
)

GALLERY_VERSION = 1
GOLDEN_RESOURCE = f"shift_gallery_v{GALLERY_VERSION}.json"


def probe(v: Cylinder, system: ShiftSystem) -> dict:
    system.admissible(v)
    pp_limit, pp_closed = u_plusplus(v, system)
    mm_limit, mm_closed = u_minusminus(v, system)
    return {
        "cylinder": v.to_json(),
        "s_exponent": s_sigma(v),
        "H_exponent": H_sigma(v),
        "u_plus": u_plus(v).to_json(),
        "u_minus": u_minus(v).to_json(),
        "u_plusplus": {"limit": pp_limit.to_json(), "closed": pp_closed},
        "u_minusminus": {"limit": mm_limit.to_json(), "closed": mm_closed},
        "contains_nub": contains(v, nub(system)),
        **tidy_check(v, system).to_json(),
    }


def system_report(name: str, system: ShiftSystem, probes=(), depth: int = 4) -> dict:
    sc = scale(system, depth=depth)
    h = h_top(system, depth=depth)
    nb = nub(system)
    return {
        "name": name,
        "system": system.to_json(),
        "nub": nb.to_json(),
        "nub_trivial": is_trivial(nb, system),
        "nub_stable": shift_image(nb, 1) == nb,
        "scale_exponent": sc.exponent,
        "scale_witness": sc.witness.to_json(),
        "h_top_exponent": h,
        "scale_equals_entropy": sc.exponent == h,
        "local_base": [
            {"n": n, "s_exponent": s_sigma(v), "H_exponent": H_sigma(v)}
            for n, v in ((n, local_base(system, n)) for n in range(3))
        ],
        "probes": {label: probe(c, system) for label, c in probes},
    }


def build_gallery(p: int = 2) -> dict:
    compact = ShiftSystem(p, 1, "FULL_COMPACT")
    right = ShiftSystem(p, 1, "RIGHT_OPEN")
    height = ShiftSystem(p, 2, "HEIGHT_OPEN")
    return {
        "gallery_version": GALLERY_VERSION,
        "p": p,
        "systems": [
            system_report(
                "bernoulli_compact",
                compact,
                [("G", compact.open_subgroup()),
                 ("single_zero", Cylinder(0, 0, 0, (1,), 0))],
            ),
            system_report(
                "bernoulli_right_open",
                right,
                [("U", right.open_subgroup())],
            ),
            system_report(
                "bernoulli_height_open",
                height,
                [("U", height.open_subgroup()),
                 ("V", Cylinder(0, 0, 1, (2,), 1))],
            ),
        ],
    }


def load_golden() -> dict:
    text = resources.files("tdlc_scale.data").joinpath(GOLDEN_RESOURCE).read_text("utf-8")
    return json.loads(text)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
