import json
import pathlib

import pytest

jsonschema = pytest.importorskip("jsonschema")
referencing = pytest.importorskip("referencing")

import modelmult as mm

SCHEMAS = pathlib.Path(__file__).resolve().parents[2] / "schemas" / "v1"


def validator(name):
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], referencing.Resource.from_contents(doc)))
    registry = referencing.Registry().with_resources(resources)
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


EXP = '{"type":"atomic_singular","atoms":[{"angle_turns":0,"weight":1}]}'


@pytest.mark.parametrize(
    "args",
    [
        ["mult-basis", "--u-zeros", "0", "--v-zeros", "0,0,0"],
        ["clark", "--u", EXP, "--truncation", "5"],
        ["ahern-clark", "--product", "E2_tilde", "--count", "6"],
        ["verify-example", "u-alpha-sublevel"],
    ],
)
def test_reports_match_envelope(args):
    code, out, _ = mm.run_cli(args)
    assert code == 0
    report = json.loads(out)
    validator("report").validate(report)
    assert report["schema"] == "modelmult/v1/" + args[0]


def test_nested_payloads():
    _, out, _ = mm.run_cli(["clark", "--u", EXP, "--truncation", "5"])
    result = json.loads(out)["result"]
    validator("measure").validate(result["measure"])
    _, out, _ = mm.run_cli(["ahern-clark", "--count", "4"])
    validator("zero-sequence").validate(json.loads(out)["result"]["sequence"])


def test_descriptors_and_errors():
    inner = validator("inner")
    u = mm.InnerFunction.product(
        mm.InnerFunction.finite_blaschke([0.5, 0.2j]), mm.InnerFunction.atomic_singular([(0.25, 2.0)])
    )
    inner.validate(u.to_json())
    inner.validate(mm.frostman_shift(u, 0.1).to_json())
    with pytest.raises(jsonschema.ValidationError):
        inner.validate({"type": "nope"})
    code, out, _ = mm.run_cli(["eval", "--u", '{"type":"finite_blaschke","zeros":[[0.1,0],"2"]}', "--z", "0"])
    assert code == 65
    err = json.loads(out)
    validator("error").validate(err)
    assert err["error"]["pointer"] == "/zeros/1"
