import json

import pytest

from klrverify.config import ALL_CHECKS, ConfigError, beta_label, load_config, parse_config


def base(**over):
    raw = {"schema": 1, "name": "t", "cartan": {"matrix": [[2]], "labels": ["i"]},
           "lambda": {"i": 2}, "cases": [{"beta": {"i": 1}, "i": "i"}]}
    raw.update(over)
    return raw


def test_parse_defaults():
    cfg = parse_config(base())
    (case,) = cfg.cases
    assert case.beta == (1,) and case.i == 0 and case.checks == ALL_CHECKS
    assert case.id == "t:beta=i:i=i"
    assert cfg.bounds.degree_cap == 60 and cfg.bounds.D is None


def test_N_alias():
    assert parse_config(base(bounds={"N": 12})).bounds.degree_cap == 12


@pytest.mark.parametrize("raw, msg", [
    (base(schema=2), "schema"),
    (base(cartan={"matrix": [[2, -1], [0, 2]]}), "cartan axiom (iii)"),
    (base(cartan={"matrix": [[2]], "labels": ["i"]}, **{"lambda": {"j": 1}}), "unknown label"),
    (base(cases=[{"beta": {"i": -1}, "i": "i"}]), "Q+"),
    (base(cases=[{"beta": {}, "i": "k"}]), "unknown label"),
    (base(cases=[{"beta": {}, "i": "i", "checks": ["nope"]}]), "unknown checks"),
    (base(cases=[{"beta": {}, "i": "i"}, {"beta": {}, "i": "i"}]), "duplicate"),
    (base(**{"lambda": {"i": -1}}), "nonnegative"),
    ([], "JSON object"),
])
def test_config_errors(raw, msg):
    with pytest.raises(ConfigError, match=msg.replace("(", r"\(").replace(")", r"\)").replace("+", r"\+")):
        parse_config(raw)


def test_load_config(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(base()))
    assert load_config(p).name == "t"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(p)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")


def test_beta_label():
    cfg = parse_config({"cartan": {"matrix": [[2, -2], [-2, 2]], "labels": ["0", "1"]},
                        "cases": []})
    assert beta_label(cfg.datum, (0, 0)) == "0"
    assert beta_label(cfg.datum, (1, 0)) == "a0"
    assert beta_label(cfg.datum, (2, 1)) == "2a0+a1"
