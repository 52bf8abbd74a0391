"""Operad dumps: per-rank complexes, action tables and a composition table."""

from __future__ import annotations

from typing import Dict, Mapping, Tuple

from ..chaincore import complex_from_json, complex_to_json
from ..lincomb import Key, LinComb
from ..symgrp import all_perms, check_perm
from .base import Operad, TruncationError
from .examples import TableOperad


def _lc_json(O: Operad, lc: Mapping[Key, int]) -> list:
    return sorted([O.label(k), c] for k, c in lc.items() if c)


def operad_to_json(O: Operad) -> dict:
    labels = [O.label(k) for n in range(1, O.max_rank + 1) for k in O.all_basis(n)]
    if len(set(labels)) != len(labels):
        raise ValueError(f"{O.name}: basis labels are not unique")
    ranks, action, table = [], [], []
    for n in range(1, O.max_rank + 1):
        C = O.component(n)
        ranks.append({"rank": n, "complex": complex_to_json(C)})
        for x in O.all_basis(n):
            for g in all_perms(n):
                action.append({"perm": list(g), "key": O.label(x), "value": _lc_json(O, O.act(g, x))})
    for n in range(1, O.max_rank + 1):
        for m in range(1, O.max_rank + 2 - n):
            for a in O.all_basis(n):
                for b in O.all_basis(m):
                    for i in range(1, m + 1):
                        try:
                            v = O.circ(a, i, b)
                        except TruncationError:
                            continue
                        table.append({"a": O.label(a), "i": i, "b": O.label(b),
                                      "value": _lc_json(O, v)})
    return {"name": O.name, "max_rank": O.max_rank, "truncated": bool(O.truncated),
            "unit": _lc_json(O, O.unit_element()), "ranks": ranks, "action": action,
            "compositions": table}


def operad_from_json(data: Mapping) -> TableOperad:
    def lc(terms) -> LinComb:
        out: LinComb = {}
        for k, c in terms:
            if int(c):
                out[str(k)] = out.get(str(k), 0) + int(c)
        return {k: c for k, c in out.items() if c}

    try:
        bases: Dict[int, Dict[int, list]] = {}
        diff: Dict[str, LinComb] = {}
        for r in data["ranks"]:
            C = complex_from_json(r["complex"])
            bases[int(r["rank"])] = {d: list(C.basis(d)) for d in C.degrees() if C.basis(d)}
            for x in C.keys():
                diff[x] = C.d(x)
        action: Dict[Tuple, LinComb] = {}
        for e in data["action"]:
            action[(check_perm(tuple(int(v) for v in e["perm"])), str(e["key"]))] = lc(e["value"])
        table = {(str(e["a"]), int(e["i"]), str(e["b"])): lc(e["value"])
                 for e in data["compositions"]}
        return TableOperad(str(data["name"]), int(data["max_rank"]), bases, diff, action, table,
                           lc(data["unit"]), bool(data.get("truncated", True)))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed operad JSON: {exc}") from exc

