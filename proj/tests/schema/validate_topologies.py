# Copyright 2026 The oshi-sim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates bundled and generated topologies against the JSON schema.

Usage: validate_topologies.py <schema> <oshi-sim binary> <topology.json>...
"""

import json
import subprocess
import sys

import jsonschema


def main(argv):
    schema_path, binary, *files = argv[1:]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)

    docs = []
    for path in files:
        with open(path) as f:
            docs.append((path, json.load(f)))
    for args in (["--model", "er", "--nodes", "12", "--p", "0.3"],
                 ["--model", "ba", "--overlay", "vxlan", "--tagged", "5"],
                 ["--model", "waxman", "--overlay", "vpn"]):
        out = subprocess.run([binary, "gen", *args], check=True, capture_output=True, text=True)
        docs.append(("gen " + " ".join(args), json.loads(out.stdout)))

    # A document the simulator rejects must fail the schema too.
    bad = json.loads(json.dumps(docs[0][1]))
    bad["links"][0]["cost"] = 0
    failures = 0
    if not list(validator.iter_errors(bad)):
        print("FAIL schema accepts a link with cost 0")
        failures += 1
    for name, doc in docs:
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"FAIL {name}: /{'/'.join(map(str, e.path))}: {e.message}")
        failures += len(errors)
        if not errors:
            print(f"PASS {name}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
