#!/usr/bin/env python3
# Copyright 2026 The uo Authors
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


"""Run every uo subcommand and validate the JSON reports against the schema."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

# Reports exercising the null / not-found branches the acceptance script skips.
EXTRA_RUNS = {
    "counterexample_exhausted.json": (["counterexample", "--components", "1"], 3),
    "entropy_single.json": (["entropy", "--dist", "uniform:0,1", "--b-grid", "0.5"], 0),
    "embed_nolink.json": (["embed", "--dist", "geometric:0.5"], 0),
    "diff_notp2.json": (["diff", "--dist", "logistic", "--b", "1", "--n-u", "33"], 0),
    "orders_lr.json": (["orders", "--dist", "normal:0,1", "--against", "normal:1,1",
                        "--order", "likelihood-ratio"], 0),
}


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--uo", required=True)
    ap.add_argument("--script", required=True)
    ap.add_argument("--schema", required=True)
    args = ap.parse_args()

    schema = json.loads(pathlib.Path(args.schema).read_text())
    validator_cls = jsonschema.validators.validator_for(schema)
    validator_cls.check_schema(schema)
    validator = validator_cls(schema)

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        out = pathlib.Path(tmp)
        subprocess.run(["sh", args.script, args.uo, str(out)], check=True)
        for name, (cmd, code) in EXTRA_RUNS.items():
            rc = subprocess.run([args.uo, *cmd, "--out", str(out / name)]).returncode
            if rc != code:
                print(f"FAIL {name}: exit {rc}, expected {code}")
                failures += 1

        reports = sorted(out.glob("*.json"))
        for path in reports:
            doc = json.loads(path.read_text())
            errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
            if errors:
                failures += 1
                print(f"FAIL {path.name}")
                for e in errors[:5]:
                    print(f"  at /{'/'.join(map(str, e.path))}: {e.message}")
            else:
                print(f"ok   {path.name}")

        # The schema must reject a report with a missing required field.
        broken = json.loads(reports[0].read_text())
        broken.pop(next(k for k in broken if k != "command"))
        if validator.is_valid(broken):
            print("FAIL schema accepted a report with a required field removed")
            failures += 1

    print(f"{len(reports)} reports, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
