"""Smoke test for the Python extension.

Build and install the module first (see README), then run
    python3 python/smoke_test.py
"""

import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource

import beauville_py as bv

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMAS = {p.name: json.loads(p.read_text()) for p in (ROOT / "schema").glob("*.json")}
REGISTRY = Registry().with_resources(
    (s["$id"], Resource.from_contents(s)) for s in SCHEMAS.values()
)


def validate(doc, name):
    schema = SCHEMAS[name]
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def main():
    field = json.loads(bv.field(27))
    assert field == {"p": 3, "e": 3, "modulus": [1, 2, 0, 1]}, field

    for family, q in [("psl2", 7), ("sl2", 13), ("psl2", 49)]:
        doc = json.loads(bv.construct(family, q))
        validate(doc, "construction.schema.json")
        assert doc["report"]["pass"], (family, q)
        validate(doc["structure"], "structure.schema.json")
        report = json.loads(bv.verify_json(json.dumps(doc["structure"]), "fast"))
        validate(report, "report.schema.json")
        assert report["pass"], (family, q)
        print(f"{family} q={q}: ok ({doc['report']['effort']})")

    doc = json.loads(bv.construct("psl2", 11, "exhaustive"))
    doc["structure"]["t1"]["x"], doc["structure"]["t1"]["y"] = (
        doc["structure"]["t1"]["y"],
        doc["structure"]["t1"]["x"],
    )
    doc["structure"]["t1"]["z"] = doc["structure"]["t2"]["z"]
    report = json.loads(bv.verify_json(json.dumps(doc["structure"])))
    assert not report["pass"], "tampered structure must fail"

    row = json.loads(bv.table1_row(19))
    assert (row["d"], row["d_inv"], row["r"]) == (2, 10, 11), row

    try:
        bv.construct("psl2", 5)
    except ValueError as e:
        print(f"q=5 rejected: {e}")
    else:
        raise AssertionError("q = 5 must be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    sys.exit(main())
