"""Runs the sepkit binary over the sample data, checks its exit codes and
checks every JSON report against the schemas in schemas/."""

import json
import pathlib
import random
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

SIM_KEYS = ("u", "op", "id", "verified")


def load_schemas(root):
    registry = Registry()
    schemas = {}
    for path in sorted(root.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))
        schemas[path.name.removesuffix(".schema.json")] = doc
    return {name: Draft202012Validator(doc, registry=registry) for name, doc in schemas.items()}


def run(binary, *args):
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    rows = [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]
    return proc.returncode, rows


def check(validators, name, row, where, strip=False):
    if row.get("status") == "error":
        name = "error"
    if strip:
        row = {k: v for k, v in row.items() if k not in SIM_KEYS}
    errors = sorted(validators[name].iter_errors(row), key=str)
    for e in errors:
        print(f"FAIL {where}: {e.message}")
    return not errors


def window_stream(points, window, as_lines):
    ups = []
    for i in range(len(points)):
        if i >= window:
            ups.append(("delete", i - window))
        ups.append(("insert", i))
    due = {pid: u + 1 for u, (op, pid) in enumerate(ups) if op == "delete"}
    lines = []
    for op, pid in ups:
        if op == "delete":
            lines.append({"op": "delete", "id": pid})
            continue
        x, y, c = points[pid]
        row = {"op": "insert", "id": pid, "color": c}
        if as_lines:
            row.update(m=str(x), c=str(-y))
        else:
            row.update(x=str(x), y=str(y))
        if pid in due:
            row["delete_at"] = due[pid]
        lines.append(row)
    return "".join(json.dumps(r) + "\n" for r in lines)


def main():
    binary, data, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    validators = load_schemas(schema_dir)
    ok = True
    ds1, ds2, ds3 = (str(data / f"ds{i}.csv") for i in (1, 2, 3))
    cases = [
        ("kmm-report", 0, ["solve", "--problem", "kmm", "--k", "1", ds3]),
        ("kmm-report", 3, ["solve", "--problem", "kmm", "--k", "0", ds3]),
        ("kmm-report", 0, ["solve", "--problem", "minmax", ds3]),
        ("kmm-report", 0, ["solve", "--problem", "minmis", ds2]),
        ("kmm-report", 0, ["oracle", "--problem", "kmm", "--k", "4", ds3]),
        ("approx-report", 0, ["solve", "--problem", "kmm-approx", "--k", "1", "--eps", "0.1", ds3]),
        ("approx-report", 3, ["solve", "--problem", "kmm-approx", "--k", "0", "--eps", "1", ds3]),
        ("strip-report", 0, ["solve", "--problem", "maxstrip", ds2]),
        ("strip-report", 3, ["solve", "--problem", "maxstrip", ds3]),
        ("line1d-report", 0, ["solve", "--dim", "1", "--problem", "kmm", "--k", "1", ds1]),
        ("line1d-report", 3, ["solve", "--dim", "1", "--problem", "kmm", "--k", "0", ds1]),
        ("line1d-report", 0, ["oracle", "--dim", "1", "--problem", "minmax", ds1]),
        ("error", 2, ["solve", "--problem", "kmm", "--k", "1", str(data / "missing.csv")]),
    ]
    for name, want, args in cases:
        code, rows = run(binary, *args)
        if code != want:
            print(f"FAIL {' '.join(args)}: exit {code}, expected {want}")
            ok = False
        if len(rows) != 1:
            print(f"FAIL {' '.join(args)}: expected one report, got {len(rows)} (exit {code})")
            ok = False
            continue
        ok &= check(validators, name, rows[0], " ".join(args))

    rng = random.Random(7)
    pts, xs = [], set()
    while len(pts) < 40:
        x, y = rng.randint(-500, 500), rng.randint(-500, 500)
        if x in xs:
            continue
        xs.add(x)
        pts.append((x, y, rng.choice("RB")))
    with tempfile.TemporaryDirectory() as tmp:
        lines = pathlib.Path(tmp, "lines.jsonl")
        lines.write_text(window_stream(pts, 8, True))
        points = pathlib.Path(tmp, "points.jsonl")
        points.write_text(window_stream(pts, 8, False))
        streams = [
            ("lp-row", False, ["simulate", "--verify", str(lines)]),
            ("lp-row", False, ["simulate", "--verify", "--k", "2", str(lines)]),
            ("strip-report", True, ["simulate", "--verify", "--problem", "maxstrip", str(points)]),
            ("line1d-report", True, ["simulate", "--verify", "--dim", "1", "--problem", "minmis", str(points)]),
            ("approx-report", True,
             ["simulate", "--verify", "--problem", "kmm-approx", "--k", "1", "--eps", "1", str(points)]),
        ]
        for name, strip, args in streams:
            code, rows = run(binary, *args)
            if code != 0 or not rows:
                print(f"FAIL {' '.join(args)}: exit {code}, {len(rows)} rows")
                ok = False
                continue
            for i, row in enumerate(rows):
                ok &= check(validators, name, row, f"{' '.join(args)} row {i}", strip)
    print("all reports valid" if ok else "schema violations found")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
