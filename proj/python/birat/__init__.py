"""Exact birational diffeomorphisms of real rational surfaces.

Thin convenience layer over the C++ core: every helper builds a JSON request,
runs it through the same dispatcher as the CLI, and returns parsed JSON.
All values are exact encodings; rationals travel as "num/den" strings.
"""

import json

from birat._core import (  # noqa: F401
    BiratError,
    catalog_map,
    catalog_names,
    parse_map_expr,
    run,
)

__all__ = [
    "BiratError",
    "apply_map",
    "catalog",
    "catalog_names",
    "compose",
    "dehn_twist",
    "interp_circle",
    "map_expr",
    "regulous_eval",
    "run_request",
    "solve",
    "verify",
]


class RequestFailed(RuntimeError):
    def __init__(self, code, payload):
        super().__init__(f"request failed with exit code {code}: {payload}")
        self.code = code
        self.payload = payload


def run_request(command, payload, expect=(0,), **options):
    code, text = run(json.dumps({"command": command, "payload": payload}), **options)
    doc = json.loads(text)
    if code not in expect:
        raise RequestFailed(code, doc)
    return code, doc


def catalog(name):
    """Catalog map by registry name, as a JSON-shaped dict."""
    return json.loads(catalog_map(name))


def map_expr(expr):
    """Resolve NAME | compose(a,b) | id:Surface | inline JSON to a map dict."""
    return json.loads(parse_map_expr(expr))


def apply_map(map_or_expr, point):
    payload = {"map": map_or_expr, "point": point}
    _, doc = run_request("apply", payload)
    return doc["point"]


def compose(expr):
    _, doc = run_request("compose", {"expr": expr})
    return doc["map"]


def verify(lhs, rhs, seed=0):
    _, doc = run_request("verify", {"lhs": lhs, "rhs": rhs}, expect=(0, 2), seed=seed)
    return doc


def solve(P, Q, height_cap=64):
    _, doc = run_request("solve", {"P": P, "Q": Q, "height_cap": height_cap})
    return doc


def interp_circle(nodes):
    """nodes: list of {"z": rational, "rho": [r1, r2]}."""
    _, doc = run_request("interp-circle", {"nodes": nodes})
    return doc


def dehn_twist(eps="1/4", tol="1/20", fixed_levels=()):
    payload = {"eps": eps, "tol": tol, "fixed_levels": list(fixed_levels)}
    _, doc = run_request("dehn", payload)
    return doc


def regulous_eval(fn, point, k=None, pencil=None):
    payload = {"fn": fn, "point": point}
    if k is not None:
        payload["k"] = k
    if pencil is not None:
        payload["pencil"] = pencil
    code, doc = run_request("regulous-eval", payload, expect=(0, 2))
    doc["exit_code"] = code
    return doc
