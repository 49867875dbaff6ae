import json

import pytest

from hilbp2.cli import run
from hilbp2.idealspace import parse_ideal
from hilbp2.scheme import PointedScheme


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_examples(capsys):
    assert call(capsys, "cone", "deg1", "--n", "4")[1] == {"classes": [{"a": 0, "b": 1}, {"a": 1, "b": -3}]}
    assert call(capsys, "kva", "--a", "7", "--k", "7")[1] == {"result": "pass"}
    assert call(capsys, "ideal", "colength", "--N", "3", "--gens", "u^2,u*v,v^2")[1] == {"colength": 3}


def test_output_is_stably_ordered(capsys):
    run(["ideal", "show", "--N", "3", "--gens", "u^2,u*v,v^2"])
    out = capsys.readouterr().out
    assert list(json.loads(out)) == ["N", "generators", "colength", "rows", "socle_dim"]


def test_exit_codes(capsys):
    code, _, err = call(capsys, "betacurve", "build", "--n", "3", "--eta", "u^2,u*v,v^2", "--f", "u", "--g", "v")
    assert code == 1 and "ValueError" in err
    code, _, err = call(capsys, "ideal", "colength", "--N", "3", "--gens", "u^^2")
    assert code == 2
    with pytest.raises(SystemExit) as e:
        run(["nonsense"])
    assert e.value.code == 2
    assert call(capsys, "verify", "nosuch")[0] == 2


def test_ideal_show_round_trips(capsys, tmp_path):
    _, out, _ = call(capsys, "ideal", "show", "--N", "4", "--gens", "u^2 - v^3, u*v")
    I = parse_ideal(out["N"], out["generators"])
    assert [[str(x) for x in r] for r in I.rows] == out["rows"]
    path = tmp_path / "i.json"
    path.write_text(json.dumps({"N": out["N"], "generators": out["generators"]}))
    assert call(capsys, "ideal", "colength", "--ideal", str(path))[1] == {"colength": out["colength"]}


def test_socle_and_mingens(capsys):
    assert call(capsys, "ideal", "socle", "--N", "3", "--gens", "u^2,u*v,v^2")[1]["socle_dim"] == 2
    assert call(capsys, "ideal", "mingens", "--N", "4", "--gens", "u^2,v^2")[1] == {"min_generators": 2}


def test_betacurve_build_recognize(capsys, tmp_path):
    code, out, _ = call(capsys, "betacurve", "build", "--n", "3", "--eta", "u^2,u*v,v^3", "--f", "v^2", "--g", "u")
    assert code == 0 and len(out["members"]) == 3
    members = [parse_ideal(m["N"], m["generators"]) for m in out["members"]]
    assert all(m.colength == 3 for m in members)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(out["members"]))
    code, rec, _ = call(capsys, "betacurve", "recognize", "--samples", str(path))
    assert code == 0
    eta = parse_ideal(rec["eta"]["N"], rec["eta"]["generators"])
    assert eta == parse_ideal(3, out["eta"]["generators"])


def test_betacurve_decompose(capsys, tmp_path):
    _, out, _ = call(capsys, "betacurve", "build", "--n", "3", "--eta", "u^2,u*v,v^3", "--f", "v^2", "--g", "u")
    fixed = {"coords": ["0", "0", "1"], "local": {"N": 1, "generators": []}}
    samples = [
        {"points": [{"coords": ["1", "2", "3"], "local": m}, fixed]} for m in out["members"]
    ]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(samples))
    code, dec, _ = call(capsys, "betacurve", "decompose", "--samples", str(path))
    assert code == 0 and dec["k"] == 3 and dec["point"] == ["1", "2", "3"]
    assert len(dec["fixed"]) == 1


def test_binform_class_example(capsys):
    code, out, _ = call(capsys, "binform", "class", "--n", "3", "--F", "U^2*V", "--G", "V^3", "--line", "x2")
    assert code == 0 and out["coprime"] is False
    code, out, _ = call(capsys, "binform", "class", "--n", "3", "--F", "U^3 - U*V^2", "--G", "V^3 + 2*U^3", "--line", "x2")
    assert code == 0 and out["coprime"] is True
    assert out["D_degree"] == 1 and out["B_degree"] == 4 and out["class"] == {"a": 1, "b": -2}


def test_binform_embed_round_trips(capsys):
    _, out, _ = call(capsys, "binform", "embed", "--n", "2", "--F", "U*V", "--G", "U^2+V^2", "--line", "x2")
    xi = PointedScheme.from_json(out)
    assert xi.length == 2 and xi.to_json() == out


def test_scheme_commands(capsys, tmp_path):
    path = tmp_path / "x.json"
    pts = [["1", "0", "0"], ["0", "1", "0"], ["1", "1", "0"]]
    path.write_text(json.dumps({"points": [{"coords": c, "local": {"N": 1, "generators": []}} for c in pts]}))
    code, out, _ = call(capsys, "h0", "--scheme", str(path), "--degree", "3")
    assert code == 0 and out["dim"] == 7
    code, out, _ = call(capsys, "phi1-fiber", "--scheme", str(path))
    assert code == 0 and out == {"fiber": "line", "line": "x2"}
    assert call(capsys, "collinear", "--scheme", str(path))[1] == {"line": "x2"}


def test_verify_is_deterministic(capsys):
    a = call(capsys, "verify", "pencils", "--n", "3", "--trials", "3", "--no-timings")
    b = call(capsys, "verify", "pencils", "--n", "3", "--trials", "3", "--no-timings")
    assert a == b and a[0] == 0 and a[1]["pass"] is True


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("HILB_SEED", "17")
    _, out, _ = call(capsys, "verify", "kva", "--no-timings")
    assert out["seed"] == 17
    _, out, _ = call(capsys, "verify", "kva", "--seed", "3", "--no-timings")
    assert out["seed"] == 3
