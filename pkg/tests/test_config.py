import json

import pytest
from hypothesis import given, strategies as st

from cpnsurf.config import ConfigError, dump_config, load_config, parse_config


def test_defaults():
    cfg = parse_config({})
    assert cfg.n == 3 and cfg.sheets() == [0, 1, 2] and cfg.spectral.lam == 0.5


@given(n=st.integers(2, 12), seed=st.integers(0, 2**31), tau=st.floats(0.01, 10),
       lam_im=st.floats(-3, 3), res=st.integers(2, 200))
def test_roundtrip(n, seed, tau, lam_im, res):
    cfg = parse_config({"n": n, "seed": seed, "grid": {"resolution": res},
                        "spectral": {"lambda": [0.0, lam_im], "tau": tau}})
    again = parse_config(json.loads(dump_config(cfg)))
    assert again == cfg


def test_polynomial_curve(tmp_path):
    doc = {"n": 2, "curve": {"kind": "polynomial", "coefficients": [[1], [[0, 0], [1, 0.5]]]}, "sheet": 1}
    p = tmp_path / "c.json"
    p.write_text(json.dumps(doc))
    cfg = load_config(str(p))
    assert cfg.curve.build(2).evaluate(2.0)[1] == pytest.approx(2 + 1j)
    assert parse_config(json.loads(dump_config(cfg))) == cfg


@pytest.mark.parametrize("doc,msg", [
    ({"n": 1}, "n must be"),
    ({"n": 13}, "n must be"),
    ({"n": "3"}, "n must be"),
    ({"sheet": 3}, "sheet"),
    ({"space": "lorentz"}, "space"),
    ({"curve": {"kind": "spiral"}}, "curve"),
    ({"curve": {"kind": "polynomial", "coefficients": [[0], [0], [0]]}}, "zero"),
    ({"spectral": {"lambda": 1.0}}, "lambda"),
    ({"spectral": {"tau": -1}}, "tau"),
    ({"spectral": {"mu": 1}}, "unknown"),
    ({"grid": {"resolution": 1}}, "resolution"),
    ({"tolerance": 0}, "tolerance"),
    ({"colour": "red"}, "unknown"),
])
def test_rejects(doc, msg):
    with pytest.raises(ConfigError, match=msg):
        parse_config(doc)


def test_load_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ConfigError):
        load_config(str(bad))
