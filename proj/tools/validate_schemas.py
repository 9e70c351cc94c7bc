#!/usr/bin/env python3
"""Validates JSON documents emitted by the orlicz binary against schemas/v1.

Usage: validate_schemas.py [path/to/orlicz]

Runs a sample of every subcommand that emits JSON and checks each document
against the schema its header names. Exits nonzero on the first failure.
"""
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft7Validator
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMA_DIR = ROOT / "schemas" / "v1"


def registry():
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(schema)))
    return Registry().with_resources(resources)


def validator_for(doc, reg):
    header = doc.get("schema", "")
    parts = header.split("/")
    if len(parts) != 3 or parts[0] != "orlicz":
        raise SystemExit(f"unrecognized schema header: {header!r}")
    name = f"{parts[1]}.schema.json"
    schema = json.loads((SCHEMA_DIR / name).read_text())
    return Draft7Validator(schema, registry=reg)


def main():
    binary = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "build" / "orlicz")
    reg = registry()

    with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as f:
        f.write("0,2\n0.25,0.5\n")
        csv = f.name
    space = json.dumps({
        "schema": "orlicz/space/v1", "kind": "orlicz",
        "young": {"schema": "orlicz/young/v1", "kind": "symbolic",
                  "term": "1 * t^{2} * log^{0} * loglog^{0} @ inf", "splice_pow": "2"},
    })

    invocations = [
        ["decide", "--scenario", "john", "--n", "3", "--m", "1",
         "--target", "zygmund", "--p", "2", "--q", "1"],
        ["decide", "--scenario", "mazya", "--n", "3", "--m", "1", "--alpha-m", "5/6",
         "--target", "exp-power", "--gamma", "6"],
        ["decide", "--scenario", "trace", "--n", "5", "--m", "2", "--d", "4",
         "--target", "linf"],
        ["witness", "--scenario", "john", "--n", "2", "--m", "1",
         "--target", "exp-power", "--gamma", "2", "--j-max", "3"],
        ["table", "--table", "1"],
        ["table", "--table", "2"],
        ["table", "--table", "3"],
        ["norm", "--space", space, "--input", csv],
        ["selftest"],
    ]
    for args in invocations:
        out = subprocess.run([binary] + args, capture_output=True, text=True, check=True)
        doc = json.loads(out.stdout)
        errors = list(validator_for(doc, reg).iter_errors(doc))
        if errors:
            print(f"FAIL {' '.join(args[:2])}: {errors[0].message}")
            return 1
        # Embedded documents carry their own headers; check those too.
        for key in ("verdict", "domination_selftest", "patched"):
            sub = doc.get(key)
            if isinstance(sub, dict) and "schema" in sub:
                suberrors = list(validator_for(sub, reg).iter_errors(sub))
                if suberrors:
                    print(f"FAIL {' '.join(args[:2])} [{key}]: {suberrors[0].message}")
                    return 1
        print(f"ok   {' '.join(args[:2])}")
    print("all documents schema-valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
