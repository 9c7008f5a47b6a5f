import io
import json

import numpy as np
import pytest

from coinwalk.cli import (
    EXIT_GATE,
    EXIT_IO,
    EXIT_RESOURCE,
    EXIT_USAGE,
    StateError,
    emit,
    load_delta_coin,
    main,
    parse_args,
    parse_complex,
    parse_state,
    read_csv,
)
from coinwalk.experiments import preset, run
from coinwalk.pair import bell_state


def call(*argv):
    out = io.StringIO()
    code = main(list(argv), stream=out)
    return code, out.getvalue()


@pytest.mark.parametrize(
    "text,value",
    [("1", 1), ("-0.5", -0.5), ("0.6+0.8i", 0.6 + 0.8j), ("1e-3-2i", 1e-3 - 2j), ("i", 1j), ("-2.5i", -2.5j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["x", "1+", "1+2", "1j", "--1", ""])
def test_parse_complex_rejects(text):
    with pytest.raises(StateError):
        parse_complex(text)


def test_parse_state_presets():
    np.testing.assert_allclose(parse_state("bell:phi-", 4), bell_state("phi-"))
    np.testing.assert_allclose(parse_state("L*R", 4), [0, 1, 0, 0])
    np.testing.assert_allclose(parse_state("L", 4), [1, 0, 0, 0])
    np.testing.assert_allclose(parse_state("sym", 2), np.array([1, 1j]) / np.sqrt(2))
    with pytest.raises(StateError):
        parse_state("bell:phi-", 2)
    with pytest.raises(StateError):
        parse_state("bell:nope", 4)
    with pytest.raises(StateError):
        parse_state("1,0,0", 4)
    with pytest.raises(StateError):
        parse_state("0,0", 2)


def test_parse_state_renormalizes(caplog):
    v = parse_state("1+0.0000001i,0", 2)
    assert np.linalg.norm(v) == pytest.approx(1, abs=1e-15)
    assert not caplog.records
    v = parse_state("3,4i", 2)
    np.testing.assert_allclose(v, [0.6, 0.8j])
    assert "renormalizing" in caplog.text


def test_parse_args():
    cfg = parse_args(["pair", "--state", "bell:phi+", "--steps", "100", "--out", "ps.csv"])
    assert cfg.subcommand == "pair" and cfg.steps == 100 and str(cfg.out) == "ps.csv"
    with pytest.raises(SystemExit) as e:
        parse_args(["pair", "--bogus"])
    assert e.value.code == EXIT_USAGE
    with pytest.raises(SystemExit):
        parse_args(["boson", "--state", "L"])


def test_asymptote_prints_value():
    assert call("asymptote", "--state", "bell:psi-") == (0, "0.25\n")
    assert call("asymptote", "--state", "L") == (0, "0.75 0.25\n")


def test_zero_step_single_timeseries():
    code, text = call("single", "--state", "L", "--steps", "0", "--what", "timeseries")
    assert code == 0
    assert text.splitlines() == ["t,p_minus", "0,1"]


def test_pair_to_file_round_trip(tmp_path):
    out = tmp_path / "ps.csv"
    assert call("pair", "--state", "bell:phi+", "--steps", "30", "--out", str(out))[0] == 0
    cols, data = read_csv(out)
    assert cols == ("t", "p_same")
    result = run(preset("fig2"))  # reference values through the library
    ref = result.tables["timeseries_phi+"].data[:31]
    assert np.array_equal(data, ref)
    meta = json.loads((tmp_path / "ps.meta.json").read_text())
    assert meta["spec"]["mode"] == "pair" and "half_line" in meta["conventions"]


def test_joint_csv_omits_zeros(tmp_path):
    out = tmp_path / "j.csv"
    call("boson", "--steps", "6", "--what", "joint", "--out", str(out))
    cols, data = read_csv(out)
    assert cols == ("m", "n", "p")
    assert np.all(data[:, 2] > 0) and np.all(data[:, 0] >= data[:, 1])
    assert data[:, 2].sum() == pytest.approx(1, abs=1e-12)


def test_json_output(tmp_path):
    out = tmp_path / "d.json"
    assert call("delta", "--state", "bell:phi-", "--steps", "10", "--what", "joint", "--what", "timeseries",
                "--format", "json", "--out", str(out))[0] == 0
    doc = json.loads(out.read_text())
    assert doc["tables"]["joint"]["bounds"] == [-10, 10]
    assert set(doc["summary"]["bell:phi-"]) >= {"final", "tail_average"}


def test_delta_final_exceeds_three_quarters(tmp_path):
    out = tmp_path / "d.csv"
    assert call("delta", "--state", "bell:phi-", "--steps", "200", "--out", str(out))[0] == 0
    _, data = read_csv(out)
    assert data[-1, 0] == 200 and data[-1, 1] > 0.75


def test_delta_coin_file(tmp_path):
    f = tmp_path / "coin.txt"
    coin = np.kron(np.array([[1, 1], [1, -1]]), np.array([[1, 1j], [1j, 1]])) / 2
    f.write_text("\n".join(" ".join(f"{z.real:.17g}{z.imag:+.17g}i" for z in row) for row in coin))
    np.testing.assert_allclose(load_delta_coin(str(f)), coin, atol=1e-15)
    f.write_text("1 " * 16)
    with pytest.raises(StateError):
        load_delta_coin(str(f))
    assert call("delta", "--state", "bell:phi-", "--steps", "3", "--delta-coin", str(f))[0] == EXIT_USAGE


def test_exit_codes(tmp_path):
    assert call("pair", "--state", "1,2,x,4")[0] == EXIT_USAGE
    assert call("preset", "nope")[0] == EXIT_USAGE
    assert call("delta", "--state", "bell:phi-", "--steps", "50", "--max-amps", "100")[0] == EXIT_RESOURCE
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert call("pair", "--state", "L", "--steps", "2", "--out", str(blocker / "x.csv"))[0] == EXIT_IO


def test_preset_gate_failure(monkeypatch, tmp_path):
    import coinwalk.cli as cli
    from coinwalk.experiments import ExperimentSpec

    def strict(name):
        return ExperimentSpec(name=name, mode="pair", steps=10, states=(("psi+", bell_state("psi+")),), tolerance=1e-6)

    monkeypatch.setattr(cli, "preset", strict)
    assert call("preset", "fig2", "--out", str(tmp_path) + "/")[0] == EXIT_GATE


def test_preset_files_and_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        d.mkdir()
        assert call("preset", "fig1", "--out", str(d) + "/")[0] == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == ["fig1.meta.json", "fig1_timeseries_LL.csv", "fig1_timeseries_LR.csv", "fig1_timeseries_SS.csv"]
    for n in names:
        assert (a / n).read_bytes() == (b / n).read_bytes()
    _, data = read_csv(a / "fig1_timeseries_LR.csv")
    assert data[80::2, 1].mean() == pytest.approx(3 / 8, abs=0.02)


def test_output_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv("COINWALK_OUTPUT_DIR", str(tmp_path))
    assert call("fermion", "--steps", "4")[0] == 0
    assert (tmp_path / "fermion_timeseries.csv").exists()


def test_sweep(tmp_path):
    out = tmp_path / "s.csv"
    assert call("sweep", "--samples", "5", "--seed", "3", "--steps", "40", "--out", str(out))[0] == 0
    cols, data = read_csv(out)
    assert cols[-2:] == ("ps_closed_form", "ps_simulated") and data.shape == (5, 11)
    assert np.all((data[:, -2] >= 0.25) & (data[:, -2] <= 0.75))
    again = tmp_path / "t.csv"
    call("sweep", "--samples", "5", "--seed", "3", "--steps", "40", "--out", str(again))
    assert out.read_bytes() == again.read_bytes()


def test_emit_round_trip(tmp_path):
    result = run(preset("fig6"))
    cfg = parse_args(["preset", "fig6", "--out", str(tmp_path) + "/"])
    paths = emit(result, cfg)
    for name, table in result.tables.items():
        cols, data = read_csv(tmp_path / f"fig6_{name}.csv")
        assert cols == table.columns
        assert np.array_equal(data, table.data)
    assert any(p.name == "fig6.meta.json" for p in paths)


def test_out_with_trailing_slash_creates_directory(tmp_path):
    target = tmp_path / "fresh"
    assert call("preset", "fig1_3", "--out", str(target) + "/")[0] == 0
    assert target.is_dir()
    assert sorted(p.name for p in target.iterdir()) == [
        "fig1_3.meta.json",
        "fig1_3_distribution.csv",
        "fig1_3_timeseries.csv",
    ]


def test_output_dir_env_need_not_exist(monkeypatch, tmp_path):
    monkeypatch.setenv("COINWALK_OUTPUT_DIR", str(tmp_path / "later"))
    assert call("boson", "--steps", "4")[0] == 0
    assert (tmp_path / "later").is_dir()
