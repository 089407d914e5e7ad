import pytest
from pydantic import ValidationError

from tomostar.config import RunConfig, load_conf, make_spec, tolerances
from tomostar.errors import ConfigError


def test_defaults_come_from_the_packaged_file():
    spec = make_spec()
    assert spec.node_count >= 8
    assert spec.damping == 0.0


def test_overrides_and_replace():
    spec = make_spec(node_count=64, damping=0.05)
    assert (spec.node_count, spec.damping) == (64, 0.05)
    other = spec.replace(seed=3)
    assert other.seed == 3 and other.node_count == 64


@pytest.mark.parametrize(
    "overrides",
    [{"node_count": 1}, {"node_count": 0}, {"damping": -0.1}, {"upper_cutoff": 0.0}, {"sample_count": -5}],
)
def test_invalid_spec(overrides):
    with pytest.raises(ConfigError):
        make_spec(**overrides)


def test_spec_is_frozen():
    spec = make_spec()
    with pytest.raises(ValidationError):
        spec.node_count = 12


def test_tolerances_per_suite():
    assert tolerances("tomogram")["zero_crossing_abs"] == 1e-8
    assert tolerances("h1")["last_ratio_rel"] == 2e-2


def test_local_override_file(tmp_path, monkeypatch):
    path = tmp_path / "override.toml"
    path.write_text("[quadrature]\nnode_count = 32\n\n[tolerances.h1]\nlast_ratio_rel = 0.5\n")
    monkeypatch.setenv("TOMOSTAR_CONF", str(path))
    conf = load_conf()
    assert conf["quadrature"]["node_count"] == 32
    assert conf["quadrature"]["damping"] == 0.0
    assert conf["tolerances"]["h1"]["last_ratio_rel"] == 0.5
    assert conf["tolerances"]["h1"]["off_manifold_ratio"] == 1e-6


def test_missing_override_file(tmp_path, monkeypatch):
    monkeypatch.setenv("TOMOSTAR_CONF", str(tmp_path / "missing.toml"))
    with pytest.raises(ConfigError):
        load_conf()


def test_run_config_seed_from_environment(monkeypatch):
    monkeypatch.setenv("TOMOSTAR_SEED", "99")
    assert RunConfig().seed == 99
    assert RunConfig(seed=5).seed == 5


def test_run_config_validation():
    with pytest.raises(ValidationError):
        RunConfig(convention="polar")
    with pytest.raises(ValidationError):
        RunConfig(format="xml")


def test_run_config_quadrature_precedence():
    cfg = RunConfig(node_count=48, seed=4)
    spec = cfg.quadrature(node_count=512, damping=0.1)
    assert (spec.node_count, spec.damping, spec.seed) == (48, 0.1, 4)


def test_run_config_hbar_defaults_per_command():
    assert RunConfig().hbar == 1.0
    assert RunConfig(command="tomogram").hbar == 1.0
    assert RunConfig(command="kernel").hbar == 0.5
    assert RunConfig(command="kernel", hbar=-0.2).hbar == -0.2


def test_run_config_hbar_from_environment(monkeypatch):
    monkeypatch.setenv("TOMOSTAR_HBAR", "0.25")
    assert RunConfig(command="kernel").hbar == 0.25


def test_run_config_verify_needs_positive_hbar():
    with pytest.raises(ValidationError):
        RunConfig(command="verify", hbar=0.0)
