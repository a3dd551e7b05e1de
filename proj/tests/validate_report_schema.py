#!/usr/bin/env python3
# Copyright 2026 The nosig Authors
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

"""Runs each nosig subcommand with --format json and validates the output."""

import argparse
import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["reproduce", "--theta-steps", "16", "--decoder-samples", "8"],
    ["verify", "--trials", "40", "--dim1", "3", "--dim2", "2", "--decoder-samples", "8", "--record-timing"],
    ["counterexample-demo", "--samples", "20"],
]


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("nosig")
    parser.add_argument("schema")
    args = parser.parse_args()

    with open(args.schema, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    for run in RUNS:
        proc = subprocess.run([args.nosig, *run, "--format", "json"], capture_output=True, text=True, check=False)
        if proc.returncode != 0:
            print(f"FAIL {run[0]}: exit {proc.returncode}\n{proc.stderr}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
        for e in errors:
            print(f"FAIL {run[0]}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += len(errors)
        if not errors:
            print(f"ok   {run[0]}")

    # Schema must also reject a report missing its results block.
    broken = json.loads(subprocess.run([args.nosig, *RUNS[2], "--format", "json"], capture_output=True,
                                       text=True, check=True).stdout)
    del broken["counterexample_results"]
    if validator.is_valid(broken):
        print("FAIL schema accepted a counterexample-demo report without results")
        failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
