import copy
import json

import pytest

from brumer_stark.casefile import bundled_case, load_case, parse_case, validate
from brumer_stark.checks import (check_annihilation, check_brumer_stark, check_fitting_equality, verify)
from brumer_stark.cli import EXIT_FAIL, EXIT_INVALID, EXIT_PASS, EXIT_PRECISION, main
from brumer_stark.errors import (CharacterIdentityFails, InconsistentSets, NotQuadratic, SchemaError,
                                 UnknownElement)


@pytest.fixture
def doc():
    return json.loads(bundled_case().read_text())


def nabla(rows, prime=2, t=0, precision=64):
    return {"provenance": "synthetic", "prime": prime, "t": t, "precision": precision,
            "matrix": [[[{"element": list(g), "coefficient": a} for g, a in entry] for entry in row]
                       for row in rows]}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


MINIMAL = {"schema_version": 1, "group": {"invariants": [1]}, "places": []}


# loading ------------------------------------------------------------------------------
def test_minimal_file_loads():
    case = parse_case(copy.deepcopy(MINIMAL))
    assert case.group.order == 1 and case.places == []


def test_fixture_loads():
    case = load_case(bundled_case())
    assert case.group.invariants == (2,) and case.group.c == (1,)
    assert [v.label for v in case.places_of("T")] == ["5"]
    assert case.bs_unit["prime_label"] == "7"
    assert not case.warnings


def test_s_and_t_overlap(doc):
    doc["places"].append({"label": "5b", "kind": "S", "prime": 5})
    doc["places"][2]["label"] = "5b"
    with pytest.raises(InconsistentSets):
        parse_case(doc)


def test_schema_error_has_pointer(doc):
    doc["group"]["invariants"] = [0]
    with pytest.raises(SchemaError) as err:
        validate(doc)
    assert err.value.pointer == "/group/invariants/0"


def test_unknown_place_label(doc):
    doc["bs_unit"]["prime_label"] = "11"
    with pytest.raises(UnknownElement):
        parse_case(doc)


def test_distinguished_prime_must_split(doc):
    doc["places"].append({"label": "2", "kind": "none", "prime": 2})
    doc["bs_unit"]["prime_label"] = "2"
    with pytest.raises(InconsistentSets):
        parse_case(doc)


def test_missing_valuation(doc):
    doc["bs_unit"]["valuations"].pop()
    with pytest.raises(InconsistentSets):
        parse_case(doc)


def test_strict_provenance(doc):
    del doc["class_group"]["provenance"]
    assert parse_case(copy.deepcopy(doc)).warnings
    with pytest.raises(SchemaError):
        parse_case(doc, strict_provenance=True)


# checks --------------------------------------------------------------------------------
def test_fixture_brumer_stark():
    section = check_brumer_stark(load_case(bundled_case()))
    assert section["verdict"] == "pass"
    assert section["attestations"]["absolute_value_one"] == "attested"


def test_zero_valuations_fail(doc):
    for v in doc["bs_unit"]["valuations"]:
        v["ord"] = 0
    with pytest.raises(CharacterIdentityFails) as err:
        check_brumer_stark(parse_case(doc))
    assert err.value.character == (1,)


def test_trivial_group_vacuous():
    case = parse_case({**MINIMAL, "bs_unit": {"provenance": "x", "prime_label": "P",
                                              "valuations": [{"sigma": [0], "ord": 0}]},
                       "places": [{"label": "P", "kind": "none", "prime": 2, "decomposition": []}]})
    assert check_brumer_stark(case)["verdict"] == "pass"


def test_place_order_does_not_matter(doc):
    first = check_brumer_stark(parse_case(copy.deepcopy(doc)))
    doc["places"].reverse()
    assert check_brumer_stark(parse_case(doc)) == first


def test_annihilation_fixture():
    section = check_annihilation(load_case(bundled_case()))
    assert section["verdict"] == "pass"
    assert section["class_number_ratio"]["verdict"] == "pass"


def test_annihilation_negative_control(doc):
    doc["class_group"] = {"provenance": "synthetic", "invariants": [3], "actions": [[[-1]]]}
    del doc["class_group_plus"]
    section = check_annihilation(parse_case(doc))
    assert section["verdict"] == "fail"


def test_trivial_class_group(doc):
    doc["class_group"] = {"provenance": "synthetic", "invariants": [], "actions": [[]]}
    del doc["class_group_plus"]
    assert check_annihilation(parse_case(doc))["verdict"] == "pass"


def test_fitting_examples(doc):
    c, e = (1,), (0,)
    doc["nabla"] = nabla([[[(e, 1), (c, -1)]]], t=1)
    section = check_fitting_equality(parse_case(copy.deepcopy(doc)))
    assert section["verdict"] == "fail" and section["comparison"] == "A<B"
    doc["nabla"] = nabla([[[(e, 2)]]], t=0)
    assert check_fitting_equality(parse_case(copy.deepcopy(doc)))["verdict"] == "pass"
    doc["nabla"] = nabla([[[(e, 0)]]], t=0)
    section = check_fitting_equality(parse_case(copy.deepcopy(doc)))
    assert section["verdict"] == "fail" and "zero ideal" in section["reason"]


def test_fitting_not_quadratic(doc):
    doc["nabla"] = nabla([[[((0,), 2)], [((0,), 1)]]])
    with pytest.raises(NotQuadratic):
        check_fitting_equality(parse_case(doc))


def test_euler_shift_coherence(doc):
    # put the inert prime 2 into S and append the matching 1 - sigma_2^-1 block to nabla
    e, c = (0,), (1,)
    base = copy.deepcopy(doc)
    base["nabla"] = nabla([[[(e, 2)]]])
    shifted = copy.deepcopy(base)
    shifted["places"].append({"label": "2", "kind": "S", "prime": 2})
    shifted["nabla"] = nabla([[[(e, 2)], []], [[], [(e, 1), (c, -1)]]])
    a = check_fitting_equality(parse_case(base))
    b = check_fitting_equality(parse_case(shifted))
    assert a["verdict"] == b["verdict"] == "pass"
    assert a["comparison"] == b["comparison"]


def test_verify_report_shape():
    report = verify(load_case(bundled_case()))
    assert report["verdict"] == "pass"
    assert set(report["checks"]) == {"brumer_stark", "annihilation", "fitting_equality"}
    assert report["checks"]["fitting_equality"]["verdict"] == "skipped"


# command line --------------------------------------------------------------------------
def test_cli_fixture_passes(capsys):
    assert main(["verify", str(bundled_case())]) == EXIT_PASS
    assert "PASS" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path, doc, capsys):
    bad = copy.deepcopy(doc)
    for v in bad["bs_unit"]["valuations"]:
        v["ord"] = 0
    assert main(["verify", write(tmp_path, "bad.case", bad)]) == EXIT_FAIL
    broken = copy.deepcopy(doc)
    broken["places"][2]["kind"] = "S"
    broken["places"][1]["label"] = "5"
    assert main(["verify", write(tmp_path, "broken.case", broken)]) == EXIT_INVALID
    assert main(["verify", str(tmp_path / "missing.case")]) == EXIT_INVALID
    tight = copy.deepcopy(doc)
    tight["nabla"] = nabla([[[((0,), 2 ** 10)]]], precision=8)
    tight["parameters"]["t"] = 0
    assert main(["verify", write(tmp_path, "tight.case", tight)]) == EXIT_PRECISION
    # several files: the worst code wins
    assert main(["verify", str(bundled_case()), write(tmp_path, "bad2.case", bad)]) == EXIT_FAIL


def test_cli_strict_provenance(tmp_path, doc):
    del doc["class_group"]["provenance"]
    path = write(tmp_path, "loose.case", doc)
    assert main(["verify", path]) == EXIT_PASS
    assert main(["verify", "--strict-provenance", path]) == EXIT_INVALID


def test_cli_reports_are_deterministic(capsys):
    main(["verify", "--report", "json", str(bundled_case())])
    first = capsys.readouterr().out
    main(["verify", "--report", "json", str(bundled_case())])
    assert capsys.readouterr().out == first
    assert json.loads(first)["verdict"] == "pass"


def test_cli_theta(capsys):
    assert main(["theta", "--conductor", "3", "--smooth", "5", "--report", "json"]) == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["agree"] and out["dr_condition"] and out["integral"]
    assert out["l_value_assembly"] == "1*[0] + -1*[1]"


def test_cli_cohomology(capsys):
    assert main(["cohomology", "--group", "4", "--module", "trivial", "--degree", "2",
                 "--kind", "cohomology"]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == "Z/4"
    assert main(["cohomology", "--group", "2", "--c", "1", "--module", "trivial", "--degree", "2",
                 "--kind", "tor-"]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == "Z/2"


def test_cli_selftest(capsys):
    assert main(["selftest", "--seed", "1", "--draws", "3"]) == EXIT_PASS
    assert "tor: 3/3" in capsys.readouterr().out


def test_fitting_lost_to_precision_at_odd_prime(doc, tmp_path):
    doc["nabla"] = nabla([[[((0,), 3 ** 5)]]], prime=3, precision=4)
    assert main(["verify", write(tmp_path, "p3.case", doc)]) == EXIT_PRECISION
