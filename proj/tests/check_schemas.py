"""Run the CLI and validate its JSON output against the shipped schemas."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, source = sys.argv[1], pathlib.Path(sys.argv[2])
config = str(source / "configs" / "fig3_gate.cfg")
schemas = source / "docs" / "schemas"


def schema(name):
    return json.loads((schemas / f"{name}.schema.json").read_text())


def run(*args):
    done = subprocess.run([cli, "-c", config, *args], capture_output=True, text=True, check=True)
    return done.stdout


def check(name, document):
    jsonschema.validate(document, schema(name))
    print(f"ok  {name}")


check("dress", json.loads(run("dress")))
check("dress", json.loads(run("dress", "--solve-zero")))
check("gate", json.loads(run("gate")))
check("gate", json.loads(run("gate", "--optimize")))

for args in (["modes"], ["fc", "--n-max", "2"], ["interactions", "--points", "5"],
             ["gate", "--trace", "--trace-points", "5"]):
    check("table", json.loads(run("--format", "json", *args)))
    header = run(*args).splitlines()[0].split(",")
    assert all(not cell[:1].isdigit() for cell in header), header
    print(f"ok  csv header {args[0]}")

with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp) / "ev.csv"
    run("-o", str(out), "evolve", "--n-max", "2")
    check("evolve_summary", json.loads(out.with_name("ev.csv.summary.json").read_text()))
    assert out.read_text().splitlines()[0] == "t_us,p_DD,p_Dm,p_mm,p_init,mean_phonon,norm"
    run("-o", str(out), "evolve", "--n-max", "2", "--no-phase", "--summary", str(out) + ".s")
    check("evolve_summary", json.loads(pathlib.Path(str(out) + ".s").read_text()))
