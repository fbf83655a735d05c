#!/usr/bin/env python3
"""Validate minflow CLI output and the test data files against schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    cli, schema_dir, data_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schemas = {}
    for p in sorted(schema_dir.glob("*.schema.json")):
        s = json.loads(p.read_text())
        jsonschema.Draft202012Validator.check_schema(s)
        schemas[p.name.removesuffix(".schema.json")] = s

    def check(doc, name, what):
        v = jsonschema.Draft202012Validator(schemas[name])
        errors = sorted(v.iter_errors(doc), key=lambda e: str(list(e.path)))
        for e in errors[:5]:
            print(f"FAIL {what}: {list(e.path)} {e.message}")
        if not errors:
            print(f"ok   {what}")
        return not errors

    runs = [
        ("catalog", ["catalog"]),
        ("group", ["catalog", "--show", "S4"]),
        ("group", ["catalog", "--show", "W2_2"]),
        ("verify-extension", ["verify-extension", "--group", "builtin:S3"]),
        ("verify-extension", ["verify-extension", "--group", "D4", "--section", "seeded-random", "--seed", "3"]),
        ("verify-semidirect", ["verify-semidirect", "--group", "builtin:C2|xC3"]),
        ("verify-semidirect", ["verify-semidirect", "--complement", "C2", "--factor", "C4", "--action", "trivial"]),
        ("verify-lemma-orbits", ["verify-lemma-orbits", "--group", "Q8"]),
        ("sweep", ["sweep", "--caps", "sweep_order=8"]),
        ("tower", ["tower", "--n", "2", "--d", "3"]),
        ("tower", ["tower", "--n", "3", "--d", "2"]),
        ("iso", ["iso", "--a", str(data_dir / "flow_c4.json"), "--b", str(data_dir / "flow_c4_relabeled.json")]),
        ("iso", ["iso", "--a", str(data_dir / "flow_c4.json"), "--b", str(data_dir / "flow_c4_two_orbits.json")]),
    ]
    ok = True
    for name, args in runs:
        proc = subprocess.run([cli, *args], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode} {proc.stderr.strip()}")
            ok = False
            continue
        ok &= check(json.loads(proc.stdout), name, " ".join(args))

    files = {"flow_c4.json": "flow", "flow_c4_relabeled.json": "flow", "flow_c4_two_orbits.json": "flow",
             "subgroup_s3_a3.json": "subgroup", "nonassociative.json": "group"}
    for f, name in files.items():
        ok &= check(json.loads((data_dir / f).read_text()), name, f)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
