#
# Copyright 2026 The thermsub Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs each thermsub-cli subcommand with JSON output and validates the
documents, and the manifest sidecars, against the schemas directory."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    failures = 0

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        samples = tmp / "samples.csv"
        runs = [
            ("pmf", ["pmf", "--k", "3", "--m", "1", "--M", "2", "--mu0", "0.644"]),
            ("pmf", ["pmf", "--k", "0", "--M", "1", "--mu0", "0.5"]),
            ("polya", ["polya", "--k", "2", "--m", "1", "--M", "2"]),
            ("polya", ["polya", "--k", "4", "--m", "2", "--M", "5", "--exact"]),
            ("polya", ["polya", "--k", "0", "--m", "1", "--M", "3"]),
            ("urn", ["urn", "--scheme", "boson", "--k", "3", "--m", "2", "--M", "4", "--trials", "2000"]),
            ("urn", ["urn", "--scheme", "fermion", "--k", "4", "--m", "2", "--M", "4", "--trials", "100"]),
            ("quadrature", ["quadrature", "--k", "3", "--M", "1", "--mu0", "0.675", "--grid-step", "0.1"]),
            ("simulate", ["simulate", "--M", "2", "--k", "1", "--mu0", "0.6", "--groups", "300"]),
            ("simulate", ["simulate", "--M", "1", "--k", "6", "--mu0", "0.01", "--groups", "50",
                          "--mode", "physical"]),
        ]
        for schema, args in runs:
            proc = subprocess.run([cli, *args, "--format", "json"], capture_output=True, text=True)
            failures += check(schema, schemas, args, proc)

        subprocess.run([cli, "simulate", "--M", "2", "--k", "2", "--mu0", "0.6", "--groups", "1000",
                        "--out", str(samples)], check=True, capture_output=True)
        failures += check_file("manifest", schemas, pathlib.Path(str(samples) + ".manifest.json"))
        for args in (["fit", "--samples", str(samples), "--k", "2", "--M", "2", "--truth-mu0", "0.6"],
                     ["fit", "--samples", str(samples), "--k", "2", "--M", "2"]):
            proc = subprocess.run([cli, *args], capture_output=True, text=True)
            failures += check("fit", schemas, args, proc)

        args = ["figures", "--which", "3", "--out-dir", str(tmp / "figs")]
        proc = subprocess.run([cli, *args], capture_output=True, text=True)
        failures += check("figures", schemas, args, proc)
        for sidecar in (tmp / "figs").glob("*.manifest.json"):
            failures += check_file("manifest", schemas, sidecar)

    print("schema checks:", "FAILED" if failures else "all passed")
    return 1 if failures else 0


def check(schema, schemas, args, proc) -> int:
    if proc.returncode != 0:
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
        return 1
    return validate(schema, schemas, json.loads(proc.stdout), " ".join(args))


def check_file(schema, schemas, path) -> int:
    return validate(schema, schemas, json.loads(path.read_text()), str(path))


def validate(schema, schemas, doc, label) -> int:
    try:
        jsonschema.validate(doc, schemas[schema])
    except jsonschema.ValidationError as e:
        print(f"FAIL {label}: {e.message}")
        return 1
    print(f"ok   {label}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
