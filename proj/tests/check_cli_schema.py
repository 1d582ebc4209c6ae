#!/usr/bin/env python3
"""Run qmaass_cli commands and validate every JSON line against the record schema."""

import json
import subprocess
import sys

import jsonschema

# (arguments, expected exit status)
CASES = [
    (["coeff", "tc", "25"], 0),
    (["coeff", "tl", "-7", "--source", "both"], 0),
    (["series", "sigma", "--order", "20"], 0),
    (["series", "w2", "--order", "12"], 0),
    (["qeval", "fc", "1/5"], 0),
    (["qeval", "fl", "-3/4"], 0),
    (["hecke", "fl", "7", "1/3"], 0),
    (["hecke", "fc", "23", "2/7"], 0),
    (["identity", "tc", "73"], 0),
    (["identity", "tl", "31"], 0),
    (["compat", "--level", "4", "--pmin", "3", "--pmax", "13"], 0),
    (["cocycle", "fl", "--grid=0:1:8", "--hecke-p", "7"], 0),
    (["maass", "uc", "eval", "--z", "0.1,1.2"], 0),
    (["maass", "uc", "modularity", "--gamma", "R", "--z", "0,1"], 0),
    (["maass", "ul", "hecke", "--p", "7", "--z", "0.1,2"], 0),
    (["maass", "ul", "hecke", "--p", "7", "--z", "0.1,2", "--lambda", "2"], 1),
    (["selftest"], 0),
    (["qeval", "fl", "1/2"], 2),
    (["coeff", "bogus", "1"], 2),
    (["hecke", "fc", "3", "1/5"], 2),
]


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as fh:
        validator = jsonschema.Draft202012Validator(json.load(fh))
    failures = 0
    for args, want in CASES:
        proc = subprocess.run([cli, "--format", "json", *args], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != want:
            print(f"FAIL {label}: exit {proc.returncode}, expected {want}\n{proc.stderr}")
            failures += 1
            continue
        lines = [ln for ln in proc.stdout.splitlines() if ln.strip()]
        if want == 0 and not lines:
            print(f"FAIL {label}: no output")
            failures += 1
            continue
        for ln in lines:
            try:
                validator.validate(json.loads(ln))
            except (json.JSONDecodeError, jsonschema.ValidationError) as err:
                print(f"FAIL {label}: {err}")
                failures += 1
                break
        else:
            print(f"ok   {label} ({len(lines)} records)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
