"""Runs the mantel binary and validates its JSON, CSV and sidecar outputs."""

import csv
import json
import re
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BINARY = Path(sys.argv[1])
SCHEMA = json.loads(Path(sys.argv[2]).read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)
MANIFEST = jsonschema.Draft202012Validator(
    {"$defs": SCHEMA["$defs"], "$ref": "#/$defs/manifest"})
SIX_DECIMALS = re.compile(r"^-?\d+\.\d{6}$")

failures = []


def run(*args):
    proc = subprocess.run([str(BINARY), *args], capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout, proc.stderr


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name}{': ' + detail if detail and not ok else ''}")
    if not ok:
        failures.append(name)


def check_json(name, *args):
    code, out, err = run(*args)
    if code != 0:
        check(name, False, f"exit {code}: {err.strip()}")
        return None
    doc = json.loads(out)
    errors = sorted(VALIDATOR.iter_errors(doc), key=str)
    check(name, not errors, "; ".join(e.message for e in errors[:3]))
    return doc


def check_csv(name, path, header, decimal_columns):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    check(f"{name} header", rows and rows[0] == header, str(rows[:1]))
    bad = [cell for row in rows[1:] for i, cell in enumerate(row)
           if i in decimal_columns and cell and not SIX_DECIMALS.match(cell)]
    check(f"{name} six decimals", rows[1:] and not bad, str(bad[:3]))
    sidecar = Path(str(path) + ".manifest.json")
    if not sidecar.exists():
        check(f"{name} sidecar", False, "missing")
        return
    errors = list(MANIFEST.iter_errors(json.loads(sidecar.read_text())))
    check(f"{name} sidecar", not errors, "; ".join(e.message for e in errors[:3]))


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    c5 = tmp / "c5.txt"
    c5.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")

    check_json("solve k5", "solve", "--n", "5", "--p", "1", "--what", "t,b,equal,strong")
    check_json("solve c5 all", "solve", "--graph", str(c5),
               "--what", "t,b,equal,strong,t_r,b_r")
    check_json("solve sampled", "solve", "--n", "14", "--p", "0.4", "--seed", "2")
    check_json("obstruct c5", "obstruct", "--graph", str(c5))
    check_json("obstruct k5", "obstruct", "--n", "5", "--p", "1")
    check_json("homology k5", "homology", "--n", "5", "--p", "1")
    check_json("homology sampled", "homology", "--n", "12", "--p", "0.6", "--seed", "4")
    check_json("analyze-cut full", "analyze-cut", "--n", "20", "--p", "0.6", "--seed", "4",
               "--chain", "--pair-gain", "--diagnostics", "--diag-cuts", "5",
               "--diag-pairs", "5")
    check_json("analyze-cut k4", "analyze-cut", "--n", "4", "--p", "1", "--pair-gain")
    check_json("threshold small", "threshold", "--n", "6", "--trials", "10", "--iterations", "3")

    sweep_out = tmp / "sweep.csv"
    code, _, err = run("--out", str(sweep_out), "sweep", "--n", "10",
                       "--grid", "geom:0.1:0.9:3", "--trials", "5", "--mode", "strong")
    check("sweep exit", code == 0, err)
    if code == 0:
        check_csv("sweep csv", sweep_out,
                  ["n", "p", "trials", "weak_count", "weak_lo", "weak_hi", "strong_count",
                   "strong_lo", "strong_hi", "inconclusive", "obstructions", "seed"],
                  {1, 4, 5, 7, 8})

    hom_out = tmp / "homology.csv"
    code, _, err = run("--out", str(hom_out), "homology", "--sweep", "--n", "16", "--k", "1",
                       "--trials", "5")
    check("homology sweep exit", code == 0, err)
    if code == 0:
        check_csv("homology csv", hom_out,
                  ["p", "trials", "h_k_zero_count", "fraction", "wilson_lo", "wilson_hi"],
                  {0, 3, 4, 5})

    edges_out = tmp / "g.txt"
    code, _, err = run("--out", str(edges_out), "sample", "--n", "8", "--p", "0.5")
    check("sample exit", code == 0, err)
    sidecar = Path(str(edges_out) + ".manifest.json")
    check("sample sidecar", sidecar.exists()
          and not list(MANIFEST.iter_errors(json.loads(sidecar.read_text()))))

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
