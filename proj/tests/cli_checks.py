#!/usr/bin/env python3
"""End-to-end checks of the p5fiber CLI: schema validation, exit codes, determinism."""
import argparse
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def run(cli, args, expect=0):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        sys.exit(f"{' '.join(args)}: exit {proc.returncode}, wanted {expect}\n{proc.stdout[-2000:]}{proc.stderr[-2000:]}")
    return proc.stdout


def validator(schema_dir, name):
    schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def check(schema_dir, name, doc, label):
    errors = sorted(validator(schema_dir, name).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        sys.exit(f"{label}: does not match {name} schema at {list(e.path)}: {e.message}")
    print(f"ok  {label} ~ {name}")


def schemas(cli, schema_dir, data_dir):
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp)
        cases = [
            ("polytope", ["polytope"]),
            ("coloring", ["color", "verify"]),
            ("coloring", ["--coloring", str(data_dir / "reference.coloring"), "color", "verify"]),
            ("colorings", ["color", "search", "--limit", "3", "--search-coloring", "9"]),
            ("manifold", ["manifold"]),
            ("cubulation", ["cubulate", "--cell", "3:7"]),
            ("classify", ["--base-state", str(data_dir / "reference.state"), "game", "classify"]),
            ("classify", ["--partition", "1|2|3|4|5|6|7|8", "--base-state", "0x0", "game", "classify"]),
            ("survey", ["--samples", "64", "game", "survey"]),
            ("morse", ["--out", str(out / "morse"), "morse", "run", "--certificates"]),
            ("fiber", ["--out", str(out / "fiber"), "fiber"]),
            ("fiber", ["--t", "1/2", "fiber", "--fixture", "torus2"]),
            ("fixtures", ["fixtures"]),
        ]
        docs = {}
        for name, args in cases:
            doc = json.loads(run(cli, args))
            check(schema_dir, name, doc, " ".join(args))
            docs.setdefault(name, doc)
        check(schema_dir, "certificates", json.loads((out / "morse" / "certificates.json").read_text()), "certificates.json")
        check(schema_dir, "fiber_cells", json.loads((out / "fiber" / "fiber_cells.json").read_text()), "fiber_cells.json")

        for args, code in [
            (["--partition", "1,2", "game", "classify"], 2),
            (["--partition", "1,2,3,4,5,6,7,8", "morse", "run"], 2),
            (["--t", "0", "fiber"], 2),
            (["--t", "x", "fiber"], 2),
            (["--coloring", str(out / "missing.coloring"), "manifold"], 2),
            (["--search-coloring", "4", "manifold"], 2),
        ]:
            check(schema_dir, "error", json.loads(run(cli, args, expect=code)), " ".join(args) + f" (exit {code})")

        poly = docs["polytope"]
        t2 = json.loads(run(cli, ["--t", "1/2", "fiber", "--fixture", "torus2"]))["fiber"]
        survey = docs["survey"]
        examples = [
            ("polytope: 16 facets, 80 edges", len(poly["facets"]) == 16 and poly["adjacency"]["edge_count"] == 80),
            ("fiber on T2: pi0 = 1, Betti (1,1)", t2["components"] == 1 and t2["betti_gf2"] == [1, 1]),
            ("game survey: 4140 partitions", survey["partitions"] == 4140 and len(survey["rows"]) == 4140),
        ]
        for label, ok in examples:
            if not ok:
                sys.exit(f"example failed: {label}")
            print(f"ok  {label}")


def determinism(cli):
    runs = [
        (["morse", "run", "--certificates"], ["morse.json", "certificates.json"]),
        (["--samples", "64", "game", "survey"], ["survey.json"]),
        (["--samples", "64", "--format", "csv", "game", "survey"], ["survey.csv"]),
        (["fiber"], ["fiber.json", "fiber_cells.json"]),
    ]
    with tempfile.TemporaryDirectory() as tmp:
        for args, files in runs:
            outputs = []
            for i, jobs in enumerate(["1", "4", "4"]):
                d = Path(tmp) / f"{args[-1]}_{'_'.join(args[:2])}_{i}"
                stdout = run(cli, ["--jobs", jobs, "--seed", "0", "--out", str(d), *args])
                outputs.append((stdout, [(d / f).read_bytes() for f in files]))
            if any(o != outputs[0] for o in outputs[1:]):
                sys.exit(f"{' '.join(args)}: outputs differ across --jobs 1/4/4")
            print(f"ok  {' '.join(args)} byte-identical at --jobs 1, 4, 4")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("mode", choices=["schemas", "determinism"])
    ap.add_argument("--cli", required=True)
    ap.add_argument("--schemas", type=Path)
    ap.add_argument("--data", type=Path)
    a = ap.parse_args()
    if a.mode == "schemas":
        schemas(a.cli, a.schemas, a.data)
    else:
        determinism(a.cli)


if __name__ == "__main__":
    main()
