"""Instance and result documents: strict JSON, wildcards by key omission.

An instance document carries ``version`` (must be 1), ``girls``, ``boys``,
``girl_lists``, ``boy_lists`` and optionally ``refusers``.  A person with
no entry in their list table is a wildcard; an explicit empty array is
rejected so that "no list" and "list emptied" can never be confused.
Serialization is canonical (fixed key order, two-space indent, UTF-8), so
identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .hall import HallViolator
from .instances import RawInstance, SmpInstance

INSTANCE_VERSION = 1

_INSTANCE_KEYS = ("version", "girls", "boys", "girl_lists", "boy_lists", "refusers")
_STATUSES = ("solved", "unsolvable", "infeasible")


class ParseError(ValueError):
    """The document is not valid JSON or violates the schema."""


@dataclass(frozen=True)
class ResultDoc:
    """Outcome of a solve run; exactly one payload per status."""

    status: str
    assignment: tuple[tuple[str, str], ...] | None = None
    violator: HallViolator | None = None
    infeasible_member: str | None = None


def _reject_duplicate_keys(pairs):
    table = {}
    for key, value in pairs:
        if key in table:
            raise ParseError(f"duplicate key '{key}'")
        table[key] = value
    return table


def _load_object(text: str) -> dict:
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    return doc


def _string_array(value, where: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ParseError(f"'{where}' must be an array of strings")
    return tuple(value)


def _list_table(value, field: str, owner: str) -> dict[str, tuple[str, ...]]:
    if not isinstance(value, dict):
        raise ParseError(f"'{field}' must be an object")
    table: dict[str, tuple[str, ...]] = {}
    for key, entries in value.items():
        arr = _string_array(entries, f"{field}.{key}")
        if not arr:
            raise ParseError(
                f"empty list for {owner} '{key}' (omit the key to mean no list)"
            )
        table[key] = arr
    return table


def parse_instance(text: str) -> RawInstance:
    """Parse an instance document; raises ParseError on any schema violation."""
    doc = _load_object(text)
    unknown = [k for k in doc if k not in _INSTANCE_KEYS]
    if unknown:
        raise ParseError(f"unknown keys: {unknown}")
    for key in _INSTANCE_KEYS[:-1]:
        if key not in doc:
            raise ParseError(f"missing key '{key}'")
    version = doc["version"]
    if isinstance(version, bool) or version != INSTANCE_VERSION:
        raise ParseError(f"unsupported version {version!r} (expected {INSTANCE_VERSION})")
    girls = _string_array(doc["girls"], "girls")
    boys = _string_array(doc["boys"], "boys")
    girl_lists = _list_table(doc["girl_lists"], "girl_lists", "girl")
    boy_lists = _list_table(doc["boy_lists"], "boy_lists", "boy")
    refusers = _string_array(doc.get("refusers", []), "refusers")
    return RawInstance.build(girls, boys, girl_lists, boy_lists, refusers)


def serialize_instance(instance: SmpInstance | RawInstance) -> str:
    """Canonical instance document; wildcard members have no list entry."""
    doc: dict = {
        "version": INSTANCE_VERSION,
        "girls": list(instance.girls),
        "boys": list(instance.boys),
        "girl_lists": {g: list(lst) for g, lst in instance.girl_lists.items() if lst},
        "boy_lists": {b: list(lst) for b, lst in instance.boy_lists.items() if lst},
    }
    refusers = getattr(instance, "refusers", ())
    if refusers:
        doc["refusers"] = list(refusers)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def serialize_result(result: ResultDoc) -> str:
    """Canonical result document with the status-specific payload."""
    doc: dict = {"status": result.status}
    if result.status == "solved":
        doc["assignment"] = [[g, b] for g, b in (result.assignment or ())]
    elif result.status == "unsolvable":
        v = result.violator
        doc["violator"] = {
            "side": v.side,
            "members": list(v.members),
            "union_size": v.union_size,
        }
    elif result.status == "infeasible":
        doc["infeasible_member"] = result.infeasible_member
    else:
        raise ValueError(f"unknown status {result.status!r}")
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse_result(text: str) -> ResultDoc:
    """Parse a result document; payloads must match the status exactly."""
    doc = _load_object(text)
    status = doc.get("status")
    if status not in _STATUSES:
        raise ParseError(f"status must be one of {list(_STATUSES)}")
    expected = {"solved": "assignment", "unsolvable": "violator", "infeasible": "infeasible_member"}
    payload_key = expected[status]
    keys = set(doc)
    if keys != {"status", payload_key}:
        raise ParseError(f"a {status} result must carry exactly 'status' and '{payload_key}'")
    if status == "solved":
        pairs = doc["assignment"]
        if not isinstance(pairs, list):
            raise ParseError("'assignment' must be an array of [girl, boy] pairs")
        out = []
        for item in pairs:
            if (
                not isinstance(item, list)
                or len(item) != 2
                or not all(isinstance(x, str) for x in item)
            ):
                raise ParseError("'assignment' must be an array of [girl, boy] pairs")
            out.append((item[0], item[1]))
        return ResultDoc("solved", assignment=tuple(out))
    if status == "unsolvable":
        v = doc["violator"]
        if not isinstance(v, dict) or set(v) != {"side", "members", "union_size"}:
            raise ParseError("'violator' must carry side, members and union_size")
        if v["side"] not in ("girls", "boys"):
            raise ParseError("violator side must be 'girls' or 'boys'")
        members = _string_array(v["members"], "violator.members")
        union_size = v["union_size"]
        if isinstance(union_size, bool) or not isinstance(union_size, int) or union_size < 0:
            raise ParseError("violator union_size must be a nonnegative integer")
        return ResultDoc(
            "unsolvable", violator=HallViolator(v["side"], members, union_size)
        )
    member = doc["infeasible_member"]
    if not isinstance(member, str):
        raise ParseError("'infeasible_member' must be a string")
    return ResultDoc("infeasible", infeasible_member=member)
