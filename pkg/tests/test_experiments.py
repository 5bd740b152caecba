import hashlib
import json
from importlib import resources

import pytest

from benfordsim import (
    CheckpointRecord,
    ConfigError,
    ExperimentConfig,
    FragmentationPolicy,
    RandomStream,
    analyze,
    earthquake_fixture,
    new_system,
    parse_config,
    render_table,
    run,
    run_experiment,
    scheme_preset,
    tally_digits,
)
from benfordsim.experiments import CSV_HEADER, PRESET_NAMES, load_config

FIXTURE_SHA256 = "9b1cc669e5c013245c1b41d891499549c931b78fcffe966ad1edfa7dc17a1316"


# --- presets -----------------------------------------------------------------


def test_preset_parameters():
    a = scheme_preset("A", seed=1)
    assert (a.ball_count, a.initial_value, a.cycles) == (2000, 1.0, 8000)
    assert a.policy == FragmentationPolicy.random_uniform()

    b = scheme_preset("B", seed=1)
    assert (b.ball_count, b.cycles) == (1500, 10000)
    assert b.policy == FragmentationPolicy.fixed_ratio(0.5)

    c = scheme_preset("C", seed=1)
    assert (c.ball_count, c.cycles) == (1000, 3000)
    assert c.policy == FragmentationPolicy.fixed_ratio(0.85)


def test_staged_preset_checkpoints():
    gradual = scheme_preset("Gradual_A", seed=1)
    assert gradual.cycles == 13000
    assert gradual.checkpoints == (
        0, 500, 1000, 1500, 2000, 2500, 3000, 4000, 5000, 6000, 7000, 8000, 10000, 13000,
    )
    small = scheme_preset("Small_100", seed=1)
    assert (small.ball_count, small.cycles) == (100, 9000)
    assert small.checkpoints == (0, 50, 100, 150, 200, 250, 300, 350, 800, 2000, 5000, 9000)


def test_unknown_preset():
    with pytest.raises(ConfigError):
        scheme_preset("D", seed=1)
    assert set(PRESET_NAMES) == {"A", "B", "C", "Gradual_A", "Small_100"}


def test_config_validation():
    policy = FragmentationPolicy.random_uniform()
    with pytest.raises(ConfigError):
        ExperimentConfig(0, 1.0, 10, policy, seed=1, checkpoints=(10,))
    with pytest.raises(ConfigError):
        ExperimentConfig(5, 1.0, 10, policy, seed=1, checkpoints=(3, 3))
    with pytest.raises(ConfigError):
        ExperimentConfig(5, 1.0, 10, policy, seed=1, checkpoints=(5, 11))
    with pytest.raises(ConfigError):
        ExperimentConfig(5, -1.0, 10, policy, seed=1, checkpoints=(10,))


# --- run_experiment ----------------------------------------------------------


def small_config(seed=11, **overrides):
    params = dict(
        ball_count=60,
        initial_value=1.0,
        cycles=200,
        policy=FragmentationPolicy.random_uniform(),
        seed=seed,
        checkpoints=(0, 100, 200),
    )
    params.update(overrides)
    return ExperimentConfig(**params)


def test_cycle_zero_record_is_degenerate():
    _, records = run_experiment(small_config())
    first = records[0]
    assert first.cycle == 0
    assert first.digit_pct == (100.0,) + (0.0,) * 8
    assert first.ssd == pytest.approx(5634.0, abs=0.5)
    assert first.qtm == 1.0


def test_records_match_independent_recomputation():
    config = small_config()
    _, records = run_experiment(config)

    snapshots = {}
    system = new_system(config.ball_count, config.initial_value)
    run(
        system,
        config.policy,
        RandomStream(config.seed),
        config.cycles,
        checkpoints=config.checkpoints,
        on_checkpoint=lambda c, values: snapshots.__setitem__(c, values),
    )

    assert [r.cycle for r in records] == list(config.checkpoints)
    for record in records:
        report = analyze(snapshots[record.cycle])
        assert record.digit_pct == report.proportions_pct
        assert record.ssd == report.ssd
        assert record.q10 == report.q10
        assert record.q90 == report.q90
        assert record.qtm == report.qtm


def test_same_seed_reproduces_everything():
    config = small_config(seed=77)
    values_a, records_a = run_experiment(config)
    values_b, records_b = run_experiment(config)
    assert values_a == values_b
    assert records_a == records_b
    assert render_table(records_a) == render_table(records_b)


def test_final_values_are_analyzable():
    values, _ = run_experiment(small_config())
    assert len(values) == 60
    assert all(v > 0 for v in values)
    analyze(values)


# --- fixture -----------------------------------------------------------------


def test_fixture_shape_and_first_value():
    data = earthquake_fixture()
    assert len(data) == 40
    assert data[0] == 285.29
    assert data[-1] == 4112.13


def test_fixture_digit_counts():
    assert tally_digits(earthquake_fixture()).counts == (15, 8, 6, 4, 4, 0, 2, 1, 0)


def test_fixture_file_checksum():
    raw = (
        resources.files("benfordsim")
        .joinpath("data", "earthquake_intervals.csv")
        .read_bytes()
    )
    assert hashlib.sha256(raw).hexdigest() == FIXTURE_SHA256


# --- table rendering ---------------------------------------------------------


def parse_csv_table(text):
    """Test-side parser used as the round-trip oracle for render_table."""
    lines = text.strip().splitlines()
    assert lines[0] == CSV_HEADER
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        records.append(
            CheckpointRecord(
                cycle=int(cells[0]),
                digit_pct=tuple(float(c) for c in cells[1:10]),
                ssd=float(cells[10]),
                q10=float(cells[11]),
                q90=float(cells[12]),
                qtm=float(cells[13]),
            )
        )
    return records


def test_render_empty_table():
    assert render_table([]) == CSV_HEADER + "\n"
    assert json.loads(render_table([], "json")) == []


def test_render_degenerate_row():
    _, records = run_experiment(small_config())
    text = render_table(records[:1])
    line = text.splitlines()[1]
    assert line.startswith("0,100.0000,0.0000,")


def test_csv_round_trip_within_formatting_precision():
    _, records = run_experiment(small_config(seed=5))
    parsed = parse_csv_table(render_table(records))
    assert len(parsed) == len(records)
    for got, want in zip(parsed, records):
        assert got.cycle == want.cycle
        assert got.digit_pct == pytest.approx(want.digit_pct, abs=5e-5)
        assert got.ssd == pytest.approx(want.ssd, abs=5e-3)
        assert got.q10 == pytest.approx(want.q10, rel=1e-5)
        assert got.q90 == pytest.approx(want.q90, rel=1e-5)
        assert got.qtm == pytest.approx(want.qtm, rel=1e-5)


def test_json_round_trip_is_exact():
    _, records = run_experiment(small_config(seed=6))
    payload = json.loads(render_table(records, "json"))
    rebuilt = [
        CheckpointRecord(
            cycle=row["cycle"],
            digit_pct=tuple(row["digit_pct"]),
            ssd=row["ssd"],
            q10=row["q10"],
            q90=row["q90"],
            qtm=row["qtm"],
        )
        for row in payload
    ]
    assert rebuilt == records


def test_render_rejects_unknown_format():
    with pytest.raises(ConfigError):
        render_table([], "yaml")


# --- config files ------------------------------------------------------------


GOOD_CONFIG = """
# staged demonstration run
ball_count = 500
initial_value = 2.5
cycles = 1500
policy = fixed
ratio = 0.85
seed = 31415
checkpoints = 0, 750, 1500
lineage = true
"""


def test_parse_full_config():
    config = parse_config(GOOD_CONFIG)
    assert config.ball_count == 500
    assert config.initial_value == 2.5
    assert config.cycles == 1500
    assert config.policy == FragmentationPolicy.fixed_ratio(0.85)
    assert config.seed == 31415
    assert config.checkpoints == (0, 750, 1500)
    assert config.lineage_enabled is True


def test_parse_minimal_uniform_config_defaults():
    config = parse_config(
        "ball_count = 10\ninitial_value = 1\ncycles = 40\npolicy = uniform\nseed = 9\n"
    )
    assert config.policy == FragmentationPolicy.random_uniform()
    assert config.checkpoints == (40,)
    assert config.lineage_enabled is False


def test_seed_argument_overrides_file_seed():
    config = parse_config(GOOD_CONFIG, seed=1)
    assert config.seed == 1


def test_seed_required_somewhere():
    text = "ball_count = 10\ninitial_value = 1\ncycles = 40\npolicy = uniform\n"
    with pytest.raises(ConfigError, match="seed"):
        parse_config(text)
    assert parse_config(text, seed=4).seed == 4


def config_text(**overrides):
    fields = {
        "ball_count": "10",
        "initial_value": "1",
        "cycles": "40",
        "policy": "uniform",
        "seed": "2",
    }
    fields.update(overrides)
    return "".join(f"{k} = {v}\n" for k, v in fields.items() if v is not None)


@pytest.mark.parametrize(
    "overrides, message",
    [
        (dict(policy="fixed"), "ratio"),  # fixed without ratio
        (dict(ratio="0.5"), "ratio"),  # ratio with uniform
        (dict(policy="sometimes"), "policy"),
        (dict(colour="blue"), "unknown key"),
        (dict(cycles="soon"), "integer"),
        (dict(initial_value="lots"), "number"),
        (dict(lineage="maybe"), "lineage"),
        (dict(checkpoints="1; 2"), "checkpoints"),
    ],
)
def test_parse_config_rejections(overrides, message):
    with pytest.raises(ConfigError, match=message):
        parse_config(config_text(**overrides))


def test_parse_config_rejects_duplicates_and_bad_lines():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config(config_text() + "cycles = 50\n")
    with pytest.raises(ConfigError, match="line 6"):
        parse_config(config_text() + "just some words\n")


def test_parse_config_requires_core_keys():
    with pytest.raises(ConfigError, match="ball_count"):
        parse_config("cycles = 10\ninitial_value = 1\npolicy = uniform\nseed = 1")


def test_load_config_from_disk(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(GOOD_CONFIG)
    assert load_config(path) == parse_config(GOOD_CONFIG)
