"""Validates the GraphDocument of every fixture against the published schema.

Usage: validate.py <cellflow executable> <schema.json> <fixture dir>
"""
import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    exe, schema_path, fixture_dir = sys.argv[1:4]
    schema = json.loads(pathlib.Path(schema_path).read_text(encoding="utf-8"))
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    fixtures = sorted(pathlib.Path(fixture_dir).glob("*.json"))
    for fixture in fixtures:
        args = [exe, "analyze", str(fixture), "--lenient"]
        run = subprocess.run(args, capture_output=True, check=False)
        if run.returncode != 0:
            print(f"FAIL {fixture.name}: exit {run.returncode}: {run.stderr.decode()}")
            failures += 1
            continue
        document = json.loads(run.stdout)
        errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
        for error in errors[:5]:
            print(f"FAIL {fixture.name}: /{'/'.join(map(str, error.path))}: {error.message}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {fixture.name}")

    # The schema must reject what the reader rejects.
    broken = {"version": "cellflow-graph/2"}
    if validator.is_valid(broken):
        print("FAIL schema accepts a wrong version")
        failures += 1

    print(f"{len(fixtures) - failures}/{len(fixtures)} documents valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
