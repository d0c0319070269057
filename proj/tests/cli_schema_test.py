"""Runs the CLI over the sample data and validates every JSON output against schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

BINARY = sys.argv[1]
ROOT = pathlib.Path(sys.argv[2])
SCHEMAS = ROOT / "schemas"
DATA = ROOT / "data"

resources = []
for path in SCHEMAS.glob("*.schema.json"):
    doc = json.loads(path.read_text())
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)


def validate(instance, schema_name):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=registry).validate(instance)


failures = []


def at(point, n):
    """Coordinate n of a point document."""
    left, center, right = point["left_cycle"], point.get("center", []), point["right_cycle"]
    j = n + point.get("phase", 0)
    if 0 <= j < len(center):
        return center[j]
    if j >= len(center):
        return right[(j - len(center)) % len(right)]
    return left[j % len(left)]


def check(args, schema, expected_rc=0):
    runs = [subprocess.run([BINARY, *args], cwd=ROOT, capture_output=True, text=True) for _ in range(2)]
    label = " ".join(args)
    if runs[0].returncode != expected_rc:
        failures.append(f"{label}: exit {runs[0].returncode}, expected {expected_rc}: {runs[0].stderr.strip()}")
        return None
    if runs[0].stdout != runs[1].stdout:
        failures.append(f"{label}: output differs between identical runs")
    try:
        out = json.loads(runs[0].stdout)
        validate(out, schema)
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failures.append(f"{label}: {e}")
        return None
    return out


for name, schema in [
    ("golden.json", "sft.schema.json"),
    ("full2.json", "sft.schema.json"),
    ("full2_block.json", "sft.schema.json"),
    ("golden_decode.json", "code.schema.json"),
    ("embedding.json", "code.schema.json"),
    ("setup_swap.json", "setup.schema.json"),
    ("setup_full2.json", "setup.schema.json"),
    ("point_golden.json", "point.schema.json"),
]:
    try:
        validate(json.loads((DATA / name).read_text()), schema)
    except jsonschema.ValidationError as e:
        failures.append(f"data/{name}: {e.message}")

out = check(["sft-check", "data/golden.json"], "sft_check.schema.json")
if out and (out["mixing"], out["period"], out["primitivity_index"]) != (True, 1, 2):
    failures.append(f"sft-check golden: {out}")
check(["sft-check", "data/zero_row.json"], "error.schema.json", 2)
check(["sft-check", "data/malformed.json"], "error.schema.json", 2)
check(["sft-check", "data/missing.json"], "error.schema.json", 2)
check(["entropy", "data/golden.json", "--exact"], "entropy.schema.json")
out = check(["entropy", "data/full2.json", "--words", "10"], "entropy.schema.json")
if out and out["word_counts"][-1]["count"] != "1024":
    failures.append("entropy --words 10 on the full 2-shift should count 1024 words")
out = check(["entropy", "data/fixed_point.json"], "entropy.schema.json")
if out and out["entropy"]["hi"] != "0/1":
    failures.append("fixed point entropy should be 0")
out = check(["code-analyze", "data/identity_golden.json"], "code_analyze.schema.json")
if out and (out["degree"]["d_star"], out["left_closing"]["delay"], out["right_closing"]["delay"]) != (1, 0, 0):
    failures.append(f"identity code analysis: {out}")
out = check(["code-analyze", "data/golden_decode.json"], "code_analyze.schema.json")
if out and not (out["almost_invertible"] and out["left_closing"]["closing"] and out["right_closing"]["closing"]):
    failures.append("2-block decoding should be almost invertible and closing on both sides")
out = check(["code-analyze", "data/embedding.json"], "code_analyze.schema.json")
if out and (out["verdict"], out["factor"].get("missing_word")) != ("not a factor", ["2", "2"]):
    failures.append(f"embedding: {out}")
out = check(["ideal", "data/full2.json", "data/full2_block.json"], "ideal.schema.json")
if out and out["class"]["verdict"] != "EqualClass":
    failures.append("two log-2 presentations should be in the same class")
out = check(["ideal", "data/golden.json", "data/golden.json"], "ideal.schema.json")
if out and out["class"]["verdict"] != "EqualClass":
    failures.append("golden mean against itself should be EqualClass")
out = check(["ideal", "data/golden.json", "data/full2.json"], "ideal.schema.json")
if out and (out["status"], out["class"]) != ("entropy mismatch", None):
    failures.append("golden mean against the full 2-shift should be an entropy mismatch")
check(["conj", "data/setup_swap.json", "validate"], "conj_validate.schema.json")
out = check(["conj", "data/setup_full2.json", "gap"], "conj_gap.schema.json")
check(["conj", "data/setup_swap.json", "gap", "--n0", "3", "--n-max", "6"], "conj_gap.schema.json")
out = check(["conj", "data/setup_identity_golden.json", "eval", "--point", "data/point_golden.json"], "conj_eval.schema.json")
if out and any(at(out, n) != at(json.loads((DATA / "point_golden.json").read_text()), n) for n in range(-20, 21)):
    failures.append("identity setup should map a point to itself")
check(["conj", "data/setup_swap.json", "eval", "--point", "data/point_golden.json"], "conj_eval.schema.json")
check(["conj", "data/setup_swap.json", "eval", "--point", "data/point_excluded.json"], "error.schema.json", 3)
check(["conj", "data/setup_swap.json", "window", "--point", "data/point_golden.json"], "conj_window.schema.json")
out = check(["conj", "data/setup_swap.json", "roundtrip", "--samples", "25", "--seed", "7"], "conj_roundtrip.schema.json")
if out and (out["failures"] or out["passed"] != out["tested"]):
    failures.append(f"roundtrip failures: {out['failures']}")
rc = subprocess.run([BINARY, "--format", "bogus", "sft-check", "data/golden.json"], cwd=ROOT, capture_output=True).returncode
if rc != 2:
    failures.append(f"bad flag value should exit 2, got {rc}")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
