import json

import pytest
from pydantic import ValidationError

from dyadic_lasso.config import get_base_settings, get_experiment_settings
from dyadic_lasso.config.run_config import RunConfig, load_run_config
from dyadic_lasso.dictionaries import DictionaryFamily
from dyadic_lasso.errors import ConfigError, RegimeError
from dyadic_lasso.geometry import NoiseLevel
from dyadic_lasso.oracle_spaces import TargetKind

RATES_TEXT = """\
# comentario
model.kind = sequence
target.q = 1.5
target.r = 0.1
experiment.name = rates
experiment.n_rep = 10
experiment.eps_grid = 0.1, 0.05, 0.025
"""


# ==========================================
# FICHERO DE EJECUCIÓN
# ==========================================

def test_parses_sections_and_lists(write_config):
    config = load_run_config(write_config(RATES_TEXT))
    assert config.model.kind == "sequence"
    assert config.target.kind is TargetKind.POWER_LAW
    assert config.target.q == 1.5
    assert config.experiment.name == "rates"
    assert config.experiment.n_rep == 10
    assert config.experiment.eps_grid == [0.1, 0.05, 0.025]
    assert config.eps_values() == [0.1, 0.05, 0.025]
    assert config.dictionary.family is DictionaryFamily.ORTHONORMAL


def test_regression_sections(write_config):
    config = load_run_config(write_config(
        "model.kind = regression\n"
        "model.n = 64\n"
        "model.sigma = 0.8\n"
        "dictionary.family = gaussian\n"
        "dictionary.p_max = 32\n"
        "target.kind = sparse\n"
        "target.support = 0, 3\n"
        "target.values = 1.0, -0.5\n"
        "experiment.name = fit\n"
    ))
    assert config.dictionary.family is DictionaryFamily.GAUSSIAN
    assert config.dictionary.p_max == 32
    assert config.target.support == [0, 3]
    assert config.target.values == [1.0, -0.5]
    assert config.eps_values() == pytest.approx([0.1])


def test_index_outside_open_interval(write_config):
    path = write_config(RATES_TEXT.replace("target.q = 1.5", "target.q = 2.5"))
    with pytest.raises(ValidationError, match=r"\(1, 2\)"):
        load_run_config(path)


@pytest.mark.parametrize(
    "text",
    [
        "experiment.name = fit\nmodelo.kind = sequence\n",
        "experiment.name = fit\nsinpunto = 1\n",
        "experiment.name = fit\ntarget.q =\n",
        "model.kind = sequence\n",
    ],
)
def test_malformed_files_raise_config_error(write_config, text):
    with pytest.raises(ConfigError):
        load_run_config(write_config(text))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError) as exc:
        load_run_config(tmp_path / "no-existe.cfg")
    assert exc.value.exit_code == 2


def test_unknown_key_is_rejected(write_config):
    with pytest.raises(ValidationError):
        load_run_config(write_config("experiment.name = fit\ntarget.qq = 1.5\n"))


def test_manifest_is_a_config_source(write_config, tmp_path):
    config = load_run_config(write_config(RATES_TEXT))
    manifest = tmp_path / "manifest.json"
    manifest.write_text(json.dumps({"version": "x", "config": config.model_dump(mode="json")}), encoding="utf-8")
    assert load_run_config(manifest) == config


def test_unreadable_manifest(tmp_path):
    manifest = tmp_path / "manifest.json"
    manifest.write_text("{no es json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_run_config(manifest)


# ==========================================
# RUIDO Y RÉGIMEN
# ==========================================

def test_sigma_converts_to_eps():
    config = RunConfig.model_validate({
        "model": {"kind": "regression", "n": 4, "sigma": 1.0},
        "experiment": {"name": "fit"},
    })
    assert config.model.noise_eps() == NoiseLevel.from_regression(1.0, 4).eps == pytest.approx(0.5)
    assert config.eps_values() == pytest.approx([0.5])


def test_noise_fields_are_exclusive():
    with pytest.raises(ValidationError):
        RunConfig.model_validate({
            "model": {"kind": "regression", "n": 4, "sigma": 1.0, "eps": 0.5},
            "experiment": {"name": "fit"},
        })
    with pytest.raises(ValidationError):
        RunConfig.model_validate({"model": {"sigma": 1.0}, "experiment": {"name": "fit"}})


def test_missing_noise_level():
    config = RunConfig.model_validate({"experiment": {"name": "fit"}})
    with pytest.raises(ConfigError):
        config.eps_values()


def test_check_regime(write_config):
    config = load_run_config(write_config(RATES_TEXT))
    config.check_regime()
    outside = load_run_config(write_config(RATES_TEXT.replace("0.1, 0.05, 0.025", "0.5")))
    with pytest.raises(RegimeError) as exc:
        outside.check_regime()
    assert exc.value.exit_code == 4


def test_seed_override(write_config):
    config = load_run_config(write_config(RATES_TEXT))
    assert config.with_overrides() is config
    replaced = config.with_overrides(seed=11)
    assert replaced.experiment.seed == 11
    assert config.experiment.seed == 0
    assert replaced.experiment.eps_grid == config.experiment.eps_grid


# ==========================================
# SETTINGS
# ==========================================

def test_settings_defaults(clean_settings):
    settings = get_experiment_settings()
    assert settings.SOLVER_TOL == pytest.approx(1e-8)
    assert settings.SANDWICH_GRID_RATIO == pytest.approx(2 ** 0.25)
    assert settings.MC_N_REP >= 2


def test_settings_read_environment(clean_settings, monkeypatch):
    monkeypatch.setenv("MC_N_REP", "17")
    monkeypatch.setenv("THREADS", "3")
    settings = get_experiment_settings()
    assert settings.MC_N_REP == 17
    assert settings.THREADS == 3


def test_settings_reject_unreachable_tolerance(clean_settings, monkeypatch):
    monkeypatch.setenv("SOLVER_TOL", "1e-16")
    with pytest.raises(ValidationError):
        get_experiment_settings()


def test_log_level_is_uppercased(clean_settings, monkeypatch):
    monkeypatch.setenv("LOG_LEVEL", "debug")
    assert get_base_settings().LOG_LEVEL == "DEBUG"
    get_base_settings.cache_clear()
    monkeypatch.setenv("LOG_LEVEL", "verbose")
    with pytest.raises(ValidationError):
        get_base_settings()
