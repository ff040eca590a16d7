"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 when a checked identity
fails (the witness is printed).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import __version__
from .duality_qp import check_bridge
from .errors import InputError, IterationCapError, VerificationError
from .exact_arith import check_prime
from .gallery import build_gallery, dumps, load_golden, probe
from .lattice_qp import (
    DEFAULT_WINDOW,
    Lattice,
    default_max_steps,
    entropy_exponent,
    random_lattice,
    random_matrix,
    tidy_iterate,
)
from .matrices import as_matrix, require_invertible, to_json
from .scale_core import run_properties, scale
from .shift_cyl import Cylinder, ShiftSystem, h_top, nub, scale as shift_scale


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {what}: {exc}") from None


def _job_input(args) -> Dict[str, Any]:
    """Merge ``--input`` file contents with inline flags (flags win)."""
    data: Dict[str, Any] = {}
    if getattr(args, "input", None):
        path = Path(args.input)
        if not path.is_file():
            raise InputError(f"input file {path} does not exist")
        text = path.read_text("utf-8")
        if path.suffix.lower() == ".toml":
            try:
                data = tomllib.loads(text)
            except tomllib.TOMLDecodeError as exc:
                raise InputError(f"malformed TOML in {path}: {exc}") from None
        else:
            data = _load_json(text, str(path))
        if not isinstance(data, dict):
            raise InputError("input JSON must be an object")
    if getattr(args, "p", None) is not None:
        data["p"] = args.p
    if getattr(args, "matrix", None):
        data["matrix"] = _load_json(args.matrix, "--matrix")
    if getattr(args, "lattice", None):
        data["lattice"] = _load_json(args.lattice, "--lattice")
    return data


def _matrix_job(data: Dict[str, Any]):
    if "p" not in data:
        raise InputError("missing prime 'p'")
    if "matrix" not in data:
        raise InputError("missing 'matrix'")
    p = check_prime(_as_int(data["p"], "p"))
    m = require_invertible(as_matrix(data["matrix"], square=True))
    lat = Lattice.standard(p, len(m))
    if "lattice" in data:
        basis = data["lattice"]
        if isinstance(basis, dict):
            basis = basis.get("basis")
        lat = Lattice(p, as_matrix(basis, square=True))
    return p, m, lat


def _as_int(x, what: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{what} must be an integer, got {x!r}")
    try:
        return int(x)
    except (TypeError, ValueError):
        raise InputError(f"{what} must be an integer, got {x!r}") from None


def _input_hash(data) -> str:
    canon = json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def _exp(e: int, p: int) -> Dict[str, str]:
    return {"value": f"{p}^{e}", "log": f"{e}*log {p}"}


# commands ------------------------------------------------------------------


def cmd_scale(args, data):
    p, m, _ = _matrix_job(data)
    rep = scale(m, p, window=args.window, max_steps=args.max_steps, seed=args.seed)
    out = rep.to_json()
    out["matrix"] = to_json(m)
    out["scale"] = _exp(rep.scale_exponent, p)
    out["entropy"] = _exp(rep.entropy_exponent, p)
    return out


def cmd_entropy(args, data):
    p, m, lat = _matrix_job(data)
    e, start = entropy_exponent(m, lat, window=args.window, max_steps=args.max_steps)
    return {"p": p, "lattice": lat.to_json(), "entropy_exponent": e,
            "stabilization_n": start, "entropy": _exp(e, p)}


def cmd_tidy(args, data):
    p, m, lat = _matrix_job(data)
    tr = tidy_iterate(m, lat, max_steps=args.max_steps)
    return {"p": p, "terminal_n": tr.terminal_n, "terminal_exponent": tr.terminal_exponent,
            "tidy_trace": tr.to_json(include_lattices=True),
            "scale": _exp(tr.terminal_exponent, p)}


def cmd_bridge(args, data):
    if "matrix" in data:
        _, m, lat = _matrix_job(data)
        return {"trials": [check_bridge(m, lat).to_json()]}
    p = check_prime(_as_int(data.get("p", 2), "p"))
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.trials):
        n = rng.randint(1, 3)
        m, lat = random_matrix(rng, p, n), random_lattice(rng, p, n)
        out.append(check_bridge(m, lat).to_json())
    return {"p": p, "trials": out}


def cmd_shift_gallery(args, data):
    systems = data.get("system")
    if systems is not None:
        system = ShiftSystem.from_json(systems)
        cyls = [system.admissible(Cylinder.from_json(c)) for c in data.get("cylinders", [])]
        sc = shift_scale(system, extra=cyls)
        h = h_top(system, extra=cyls)
        return {
            "system": system.to_json(),
            "nub": nub(system).to_json(),
            "scale_exponent": sc.exponent,
            "h_top_exponent": h,
            "cylinders": [probe(c, system) for c in cyls],
        }
    gallery = build_gallery()
    if args.check:
        golden = load_golden()
        if golden != gallery:
            raise VerificationError("shift gallery differs from the golden file",
                                    witness={"expected": golden, "actual": gallery})
    return gallery


def cmd_props(args, data):
    res = run_properties(args.trials, args.seed)
    if not res["passed"]:
        raise VerificationError("property suite failed", witness=res)
    return res


COMMANDS = {
    "scale": cmd_scale,
    "entropy": cmd_entropy,
    "tidy": cmd_tidy,
    "bridge": cmd_bridge,
    "shift-gallery": cmd_shift_gallery,
    "props": cmd_props,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdlc-scale",
        description="Exact scale and topological entropy of automorphisms of "
                    "Q_p^n and of shift groups.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="json")
    common.add_argument("--max-steps", type=int, default=None,
                        help="iteration cap (default: $TDLC_SCALE_MAX_STEPS or 64)")
    common.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    common.add_argument("--input", help="job file (.json or .toml)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("scale", "entropy", "tidy", "bridge"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--p", type=int)
        sp.add_argument("--matrix", help="JSON list of rows of rational strings")
        sp.add_argument("--lattice", help="JSON basis (columns generate)")
        if name == "bridge":
            sp.add_argument("--trials", type=int, default=20)
    sp = sub.add_parser("shift-gallery", parents=[common])
    sp.add_argument("--check", action="store_true", help="compare with the golden file")
    sp = sub.add_parser("props", parents=[common])
    sp.add_argument("--trials", type=int, default=50)
    return parser


def _text(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}{k}: [{', '.join(map(str, v))}]")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}- [{', '.join(map(str, v))}]")
            elif isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(report)
    return "\n".join(_text(report)) + "\n"


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_steps is None:
        args.max_steps = default_max_steps()
    envelope: Dict[str, Any] = {
        "command": args.command,
        "seed": args.seed,
        "caps": {"max_steps": args.max_steps, "window": args.window},
        "version": __version__,
    }
    try:
        data = _job_input(args)
        envelope["input_sha256"] = _input_hash(data)
        envelope["result"] = COMMANDS[args.command](args, data)
    except (VerificationError, IterationCapError) as exc:
        envelope["status"] = "violation"
        envelope["error"] = str(exc)
        envelope["witness"] = getattr(exc, "witness", None) or getattr(exc, "trace", None)
        stdout.write(render(_jsonable(envelope), args.format))
        return 2
    except InputError as exc:
        stderr.write(f"input error: {exc}\n")
        return 1
    envelope["status"] = "ok"
    stdout.write(render(envelope, args.format))
    return 0


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=_fallback))


def _fallback(o):
    if hasattr(o, "to_json"):
        return o.to_json()
    if hasattr(o, "__dict__"):
        return {k: _fallback(v) if not isinstance(v, (int, str, float, bool, type(None))) else v
                for k, v in vars(o).items()}
    return str(o)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
