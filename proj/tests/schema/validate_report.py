"""Runs the smc tool on the bundled models and validates every JSON report
against schemas/report.schema.json."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def main() -> int:
    tool, schema_path, models = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    runs = [
        ["pure_death.json", "F[0,1](x==0)", "1", ["--mode", "conservative"]],
        ["pure_death.json", "F[0,1](x==0)", "1", ["--mode", "fixed", "--n", "50"]],
        ["birth_death.json", "G[0,1](x <= 20)", "1", []],
        ["cell_cycle.json", "(a <= 4) U (y >= 5)", "1", ["--epsilon", "0.05"]],
        ["linear_death.json", "x >= 0", "1", []],
    ]
    failures = 0
    for model, formula, tmax, extra in runs:
        cmd = [tool, "verify", "--model", str(models / model), "--formula", formula, "--tmax", tmax,
               "--seed", "17", "--workers", "2", *extra]
        out = subprocess.run(cmd, check=True, capture_output=True, text=True).stdout
        errors = sorted(validator.iter_errors(json.loads(out)), key=str)
        print(f"{model} {formula!r} {' '.join(extra)}: {'ok' if not errors else 'INVALID'}")
        for e in errors:
            print(f"  {e.json_path}: {e.message}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
