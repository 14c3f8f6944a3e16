"""JSON encoding of rings, matrices, series, Witt vectors, groups and algebras.

Integers are written as decimal strings so arbitrary precision survives any
JSON reader; readers here accept plain JSON numbers as well.
"""
import json

from .hh0 import (
    AlgebraEndomorphism,
    FiniteGroup,
    FiniteRankAlgebra,
    GroupHom,
    GroupRing,
)
from .linalg import Matrix
from .rings import ZZ, Ring
from .series import TruncatedSeries
from .tomdieck import TomDieckVector
from .witt import GhostVector, TruncationSet, WittVector
from .zeta import GradedEndo


class ParseError(ValueError):
    """Input does not match the expected schema (CLI exit status 2)."""


def dumps(obj):
    """Deterministic serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e


def _guard(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise ParseError(f"{fn.__name__}: {type(e).__name__}: {e}") from e
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_guard
def ring_from_json(obj, default=ZZ):
    if obj is None:
        return default
    return Ring.from_json(obj)


def value_from_json(ring, obj):
    if isinstance(obj, int) and not isinstance(obj, bool):
        return ring(obj)
    return ring.value_from_json(obj)


# -- matrices ----------------------------------------------------------------

def matrix_to_json(m):
    return {"ring": m.ring.to_json(), "entries": [[v.to_json() for v in row] for row in m.rows]}


@_guard
def matrix_from_json(obj, default_ring=ZZ):
    if isinstance(obj, list):
        ring, rows = default_ring, obj
    else:
        ring, rows = ring_from_json(obj.get("ring"), default_ring), obj["entries"]
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("matrix entries must be a list of rows")
    return Matrix(ring, [[value_from_json(ring, v) for v in row] for row in rows])


# -- series ------------------------------------------------------------------

def series_to_json(s):
    return {"ring": s.ring.to_json(), "order": s.order, "coeffs": [c.to_json() for c in s.coeffs]}


@_guard
def series_from_json(obj, order=None):
    ring = ring_from_json(obj.get("ring"))
    coeffs = [value_from_json(ring, c) for c in obj["coeffs"]]
    declared = obj.get("order")
    target = order if order is not None else (int(declared) if declared is not None else len(coeffs) - 1)
    return TruncatedSeries(ring, coeffs, target)


# -- Witt and ghost vectors ------------------------------------------------------

def witt_to_json(v):
    return v.to_json()


@_guard
def witt_from_json(obj, cls=WittVector, order=None):
    """Read ``{"ring", "trunc", "coords"}``; ``coords`` may be a dict or a list (interval)."""
    if isinstance(obj, list):
        obj = {"coords": obj}
    ring = ring_from_json(obj.get("ring"))
    coords = obj["coords"]
    if "trunc" in obj:
        trunc = TruncationSet.from_json(obj["trunc"])
    else:
        n = len(coords) if order is None else order
        trunc = TruncationSet.interval(n)
    if isinstance(coords, list):
        if len(coords) != len(trunc):
            raise ParseError(f"expected {len(trunc)} coordinates, got {len(coords)}")
        coords = dict(zip(trunc.elements, coords))
    coords = {int(k): value_from_json(ring, v) for k, v in coords.items()}
    return cls(ring, trunc, coords)


def ghost_from_json(obj, order=None):
    return witt_from_json(obj, GhostVector, order)


@_guard
def tomdieck_from_json(obj):
    if isinstance(obj, dict):
        coords = obj["coords"]
        if isinstance(coords, dict):
            coords = [coords[str(n)] if str(n) in coords else coords[n] for n in range(1, len(coords) + 1)]
    else:
        coords = obj
    return TomDieckVector([int(c) for c in coords])


# -- groups, algebras, twists ----------------------------------------------------------

@_guard
def group_from_json(obj):
    return FiniteGroup.from_json(obj)


@_guard
def algebra_from_json(obj):
    return FiniteRankAlgebra.from_json(obj)


@_guard
def twist_from_json(obj, algebra):
    """A group endomorphism ``{"images": [...]}`` or an algebra endomorphism ``{"matrix": [[...]]}``."""
    if obj is None:
        return None
    if "images" in obj:
        if not algebra.is_group_ring():
            raise ParseError("group-element images given for a non-group-ring algebra")
        return AlgebraEndomorphism.from_group_hom(algebra, GroupHom(algebra.group, obj["images"]))
    return AlgebraEndomorphism(algebra, obj["matrix"])


def _group_ring_entry(A, v):
    if isinstance(v, int):
        return A(v)
    if isinstance(v, list):
        return A.element([int(c) for c in v])
    if isinstance(v, dict):
        labels = {lab: i for i, lab in enumerate(A.labels)}
        out = {}
        for k, c in v.items():
            idx = labels[k] if k in labels else int(k)
            out[idx] = out.get(idx, 0) + int(c)
        return A.element(out)
    raise ParseError(f"cannot read group ring element {v!r}")


@_guard
def algebra_matrix_from_json(obj, algebra):
    """Matrix over a group ring or algebra: entries are ints, coefficient lists or ``{label: coeff}``."""
    rows = obj["entries"] if isinstance(obj, dict) else obj
    if isinstance(algebra, GroupRing):
        return Matrix(algebra, [[_group_ring_entry(algebra, v) for v in row] for row in rows])
    return Matrix(algebra, [[algebra(v) if isinstance(v, int) else algebra([int(c) for c in v])
                             for v in row] for row in rows])


@_guard
def graded_from_json(obj):
    """``{"ring": ..., "components": [matrix, ...]}`` with matrices as nested lists or matrix objects."""
    if isinstance(obj, list):
        obj = {"components": obj}
    ring = ring_from_json(obj.get("ring"))
    comps = [matrix_from_json(c, ring) for c in obj.get("components", [])]
    return GradedEndo(tuple(comps), ring)
