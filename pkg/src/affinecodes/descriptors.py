"""JSON-style descriptions of the abstract groups that regular subgroups turn out to be.

A descriptor is a small tree of plain dicts and lists:

* ``{"cyclic": [n1, n2, ...]}``  the abelian group C_n1 x C_n2 x ...
* ``{"vector": {"q": q, "dim": k}}``  the additive group of F_q^k
* ``{"vmu": {"q": q, "dim": k, "mu": "zero" | "id"}}``  pairs ``(v, w)`` of F_q^k with
  ``(v1, w1)(v2, w2) = (v1 + v2 - mu(w1) w2, w1 + w2)``; ``mu = "id"`` needs ``k = 1``
* ``{"Fa": {"q": q}}``  shorthand for ``vmu`` with ``mu = "id"`` and ``k = 1``
* ``{"semidirect": {"base": "VxV", "q": q, "dim": k, "acting": "F" | "Fa", "action": "shear"}}``
  pairs ``(v, w)`` of F_q^k extended by an acting group ``A`` (F_q or the ``Fa`` group),
  whose element with last coordinate ``c`` sends ``(v, w)`` to ``(v - c w, w)``;
  ``acting`` defaults to ``"F"``
* ``{"product": [d1, d2, ...]}``  direct product
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import MalformedDescriptor
from .finite_field import FieldSpec, make_field, prime_factors
from .groups import TableGroup, abelian_table, direct_product_table


# older descriptor files spell the shear action "eq3.3"
SHEAR_NAMES = ("shear", "eq3.3")


def _field_of_order(q) -> FieldSpec:
    if not isinstance(q, int) or q < 2:
        raise MalformedDescriptor(f"field order must be an integer >= 2, got {q!r}")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise MalformedDescriptor(f"{q} is not a prime power")
    p = ps[0]
    a = round(math.log(q, p))
    while p**a < q:
        a += 1
    while p**a > q:
        a -= 1
    return make_field(p, a)


def _dim(node: dict, key: str = "dim") -> int:
    k = node.get(key)
    if not isinstance(k, int) or k < 0:
        raise MalformedDescriptor(f"{key} must be a non-negative integer, got {k!r}")
    return k


def _kind(node) -> tuple[str, object]:
    if not isinstance(node, dict) or len(node) != 1:
        raise MalformedDescriptor(f"descriptor nodes are single-key objects, got {node!r}")
    return next(iter(node.items()))


def descriptor_order(node) -> int:
    kind, body = _kind(node)
    if kind == "cyclic":
        if not isinstance(body, list) or not all(isinstance(n, int) and n >= 1 for n in body):
            raise MalformedDescriptor("cyclic expects a list of positive integers")
        return math.prod(body)
    if kind == "vector":
        return _field_of_order(body.get("q")).order ** _dim(body)
    if kind == "vmu":
        return _field_of_order(body.get("q")).order ** (2 * _dim(body))
    if kind == "Fa":
        return _field_of_order(body.get("q")).order ** 2
    if kind == "semidirect":
        F = _field_of_order(body.get("q"))
        acting = body.get("acting", "F")
        if acting not in ("F", "Fa"):
            raise MalformedDescriptor(f"acting must be 'F' or 'Fa', got {acting!r}")
        if body.get("base", "VxV") != "VxV":
            raise MalformedDescriptor(f"unknown base {body.get('base')!r}")
        if body.get("action", "shear") not in SHEAR_NAMES:
            raise MalformedDescriptor(f"unknown action {body.get('action')!r}")
        return F.order ** (2 * _dim(body)) * (F.order if acting == "F" else F.order**2)
    if kind == "product":
        if not isinstance(body, list):
            raise MalformedDescriptor("product expects a list of descriptors")
        return math.prod(descriptor_order(x) for x in body)
    raise MalformedDescriptor(f"unknown descriptor kind {kind!r}")


def _render(node) -> str:
    kind, body = _kind(node)
    if kind == "cyclic":
        return "×".join(f"C{n}" for n in body if n > 1) or "1"
    q = body.get("q") if isinstance(body, dict) else None
    if kind == "vector":
        k = body["dim"]
        return "1" if k == 0 else (f"F{q}" if k == 1 else f"F{q}^{k}")
    if kind == "vmu":
        k = body["dim"]
        return f"V{q}^{k}[{body['mu']}]"
    if kind == "Fa":
        return f"Fa{q}"
    if kind == "semidirect":
        k = body["dim"]
        base = f"F{q}" if k == 1 else f"F{q}^{k}"
        acting = f"F{q}" if body.get("acting", "F") == "F" else f"Fa{q}"
        if k == 0:
            return acting
        return f"({base}×{base})⋊{acting}"
    if kind == "product":
        parts = [_render(x) for x in body if descriptor_order(x) > 1]
        return " × ".join(parts) or "1"
    raise MalformedDescriptor(f"unknown descriptor kind {kind!r}")


@dataclass(frozen=True)
class GroupDescriptor:
    tree: str  # canonical JSON text, keeps the dataclass hashable

    @classmethod
    def from_tree(cls, tree) -> "GroupDescriptor":
        descriptor_order(tree)  # validates
        return cls(json.dumps(tree, sort_keys=True, separators=(",", ":"), ensure_ascii=False))

    @classmethod
    def from_json(cls, text: str) -> "GroupDescriptor":
        try:
            tree = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDescriptor(str(exc)) from exc
        return cls.from_tree(tree)

    def as_tree(self):
        return json.loads(self.tree)

    @property
    def order(self) -> int:
        return descriptor_order(self.as_tree())

    def render(self) -> str:
        return _render(self.as_tree())

    def to_json(self) -> str:
        return self.tree

    def __str__(self) -> str:
        return self.render()


def cyclic(*ns: int) -> dict:
    return {"cyclic": list(ns)}


def vector(q: int, dim: int) -> dict:
    return {"vector": {"q": q, "dim": dim}}


def semidirect(q: int, dim: int, acting: str) -> dict:
    return {"semidirect": {"base": "VxV", "q": q, "dim": dim, "acting": acting, "action": "shear"}}


def product(*parts: dict) -> dict:
    return {"product": list(parts)}


# -- concrete multiplication tables --------------------------------------------------


def _tuple_group(elements: list[tuple], mul) -> np.ndarray:
    index = {e: n for n, e in enumerate(elements)}
    n = len(elements)
    out = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            out[i, j] = index[mul(x, y)]
    return out


def _vectors(F: FieldSpec, k: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(F.order), repeat=k))


def _vadd(F, v, w):
    return tuple(F.add(a, b) for a, b in zip(v, w))


def _vsub_scaled(F, v, c, w):
    """v - c w."""
    return tuple(F.sub(a, F.mul(c, b)) for a, b in zip(v, w))


def _fa_mul(F, x, y):
    """Product in the order-q^2 group of pairs (s, t) with (s1,t1)(s2,t2) = (s1+s2-t1 t2, t1+t2)."""
    return (F.sub(F.add(x[0], y[0]), F.mul(x[1], y[1])), F.add(x[1], y[1]))


def _table(node) -> np.ndarray:
    kind, body = _kind(node)
    if kind == "cyclic":
        return abelian_table(*body) if body else np.zeros((1, 1), dtype=np.int64)
    if kind == "product":
        t = np.zeros((1, 1), dtype=np.int64)
        for part in body:
            t = direct_product_table(t, _table(part))
        return t
    F = _field_of_order(body.get("q"))
    if kind == "vector":
        k = _dim(body)
        vs = _vectors(F, k)
        return _tuple_group(vs, lambda x, y: _vadd(F, x, y))
    if kind in ("vmu", "Fa"):
        k = 1 if kind == "Fa" else _dim(body)
        mu = "id" if kind == "Fa" else body.get("mu")
        if mu not in ("zero", "id"):
            raise MalformedDescriptor(f"mu must be 'zero' or 'id', got {mu!r}")
        if mu == "id" and k != 1:
            raise MalformedDescriptor("mu = 'id' needs dim 1")
        vs = _vectors(F, k)
        elems = [(v, w) for v in vs for w in vs]
        if mu == "zero":
            return _tuple_group(elems, lambda x, y: (_vadd(F, x[0], y[0]), _vadd(F, x[1], y[1])))
        return _tuple_group(
            elems,
            lambda x, y: (_vsub_scaled(F, _vadd(F, x[0], y[0]), x[1][0], y[1]), _vadd(F, x[1], y[1])),
        )
    if kind == "semidirect":
        k = _dim(body)
        acting = body.get("acting", "F")
        vs = _vectors(F, k)
        if acting == "F":
            acts = [(c,) for c in range(F.order)]

            def amul(x, y):
                return (F.add(x[0], y[0]),)

        elif acting == "Fa":
            acts = [(s, t) for s in range(F.order) for t in range(F.order)]

            def amul(x, y):
                return _fa_mul(F, x, y)

        else:
            raise MalformedDescriptor(f"acting must be 'F' or 'Fa', got {acting!r}")
        elems = [(v, w, c) for v in vs for w in vs for c in acts]

        def mul(x, y):
            v1, w1, c1 = x
            v2, w2, c2 = y
            shear = c1[-1]  # the additive coordinate of the acting element
            return (_vsub_scaled(F, _vadd(F, v1, v2), shear, w2), _vadd(F, w1, w2), amul(c1, c2))

        return _tuple_group(elems, mul)
    raise MalformedDescriptor(f"unknown descriptor kind {kind!r}")


def build_descriptor_group(desc: GroupDescriptor | dict, verify: bool = True) -> TableGroup:
    """Concrete multiplication table; associativity is checked exhaustively up to order 256."""
    tree = desc.as_tree() if isinstance(desc, GroupDescriptor) else desc
    order = descriptor_order(tree)
    if order > 4096:
        raise MalformedDescriptor(f"group of order {order} is too large to tabulate")
    G = TableGroup(_table(tree))
    if verify and G.order <= 256:
        try:
            G.verify()
        except ValueError as exc:
            raise MalformedDescriptor(f"descriptor does not define a group: {exc}") from exc
    return G


__all__ = [
    "GroupDescriptor",
    "build_descriptor_group",
    "cyclic",
    "descriptor_order",
    "product",
    "semidirect",
    "vector",
]
