"""
Tests for the VerificationEngine and its configuration.
"""

from concurrent.futures import ProcessPoolExecutor
from unittest.mock import patch

import pytest
import tomli_w

from algebra.grassmann import GrassmannContext, IndexSet
from engine import DEFAULT_CONFIG, ConfigManager, VerificationEngine, render_text, thread_cap
from models import RunConfig, SuiteReport, SuiteResult


@pytest.fixture
def config_path(tmp_path, monkeypatch):
    path = tmp_path / "config.toml"
    monkeypatch.setenv("QGR_CONFIG", str(path))
    return path


@pytest.fixture
def engine(config_path):
    return VerificationEngine()


def test_config_defaults_when_missing(config_path):
    config = ConfigManager().load()
    assert config == DEFAULT_CONFIG
    assert ConfigManager().config_path == config_path


def test_config_init_and_merge(config_path):
    manager = ConfigManager()
    assert manager.init() == config_path
    assert config_path.exists()
    config_path.write_bytes(tomli_w.dumps({"run": {"seed": 11}, "hspec": {"grid_bound": 2}}).encode())
    config = manager.load()
    assert config["run"]["seed"] == 11
    assert config["run"]["trials"] == DEFAULT_CONFIG["run"]["trials"]
    assert config["hspec"]["grid_bound"] == 2


def test_config_init_keeps_existing_file(config_path):
    config_path.write_text('[run]\nseed = 3\n')
    ConfigManager().init()
    assert ConfigManager().load()["run"]["seed"] == 3
    ConfigManager().init(overwrite=True)
    assert ConfigManager().load()["run"]["seed"] == DEFAULT_CONFIG["run"]["seed"]


def test_malformed_config_falls_back(config_path):
    config_path.write_text("[run\nseed = ")
    assert ConfigManager().load() == DEFAULT_CONFIG


def test_thread_cap(monkeypatch):
    monkeypatch.delenv("QGR_THREADS", raising=False)
    assert thread_cap() is None
    monkeypatch.setenv("QGR_THREADS", "3")
    assert thread_cap() == 3
    monkeypatch.setenv("QGR_THREADS", "many")
    assert thread_cap() is None


def test_run_config_overrides(config_path):
    config_path.write_text('[run]\nseed = 5\ntrials = 20\n')
    engine = VerificationEngine()
    rc = engine.run_config(m=2, n=5, suite="twist", trials=None, level_bound=3)
    assert rc.seed == 5
    assert rc.trials == 20
    assert (rc.m, rc.n, rc.suite) == (2, 5, "twist")
    assert rc.effective_level_bound == 3
    assert RunConfig().effective_level_bound == 8


def test_run_config_rejects_square_shape(engine):
    with pytest.raises(ValueError):
        engine.run_config(m=4, n=4)


def test_twist_suite(engine):
    report = engine.run(engine.run_config(suite="twist", trials=50))
    assert isinstance(report, SuiteReport)
    assert report.passed
    assert [s.suite for s in report.suites] == ["twist"]
    assert all(c.passed for c in report.suites[0].checks)
    names = {c.name for c in report.suites[0].checks}
    for level in range(-3, 4):
        assert f"level {level} product is associative" in names
        assert f"level {level} product has no zero divisors" in names


def test_relations_suite_extends_every_base_relation(engine):
    report = engine.run(engine.run_config(suite="relations"))
    suite = report.suites[0]
    assert suite.passed, suite.first_failure()
    muir = next(c for c in suite.checks if c.name == "Muir extension")
    assert muir.detail["extended"] == 6


@pytest.mark.parametrize("n", [4, 5])
def test_minor_and_qcomm_suites(engine, n):
    for suite in ("minor", "qcomm"):
        report = engine.run(engine.run_config(suite=suite, m=2, n=n))
        assert report.passed, report.first_failure()


def test_groupoid_suite_with_selected_maps(engine):
    report = engine.run(engine.run_config(suite="groupoid", maps=["theta1", "omega0"], level_bound=2))
    suite = report.suites[0]
    assert suite.passed, suite.first_failure()
    names = [c.name for c in suite.checks]
    assert "transport Theta_1" in names
    assert "transport Omega_0" in names
    assert "negative control detected" in names
    assert any("degree-2" in note for note in suite.notes)


def test_dehom_suite_single_chart(engine):
    report = engine.run(engine.run_config(suite="dehom", alphas=[3]))
    assert report.passed, report.first_failure()
    assert all(c.name.startswith("alpha=3") for c in report.suites[0].checks)


def test_tnn_suite(engine):
    report = engine.run(engine.run_config(suite="tnn", trials=10))
    assert report.passed, report.first_failure()


def test_reports_are_deterministic(engine):
    rc = engine.run_config(suite="twist", trials=30, seed=99)
    first = engine.run(rc).model_dump()
    second = engine.run(rc).model_dump()
    assert first == second


def test_suite_exception_becomes_error(engine):
    with patch.object(VerificationEngine, "suite_minor", side_effect=RuntimeError("boom")):
        report = engine.run(engine.run_config(suite="minor"))
    suite = report.suites[0]
    assert suite.status == "error"
    assert suite.error == "RuntimeError: boom"
    assert report.first_failure() == ("minor", None, "RuntimeError: boom")


def test_threads_keep_suite_order(engine):
    rc = engine.run_config(suite="all", threads=3, trials=5)
    with patch.object(VerificationEngine, "suite_hspec", side_effect=RuntimeError("skipped")), \
            patch.object(VerificationEngine, "suite_groupoid", side_effect=RuntimeError("skipped")), \
            patch.object(VerificationEngine, "suite_dehom", side_effect=RuntimeError("skipped")):
        report = engine.run(rc)
    assert [s.suite for s in report.suites] == rc.suites()


def test_normal_forms(engine):
    out = engine.normal_forms(2, 2, ["X[1,2]X[1,1]", "", "(1 - 1*u^4) * 1"])
    assert out == ["(1*u^-2) * X[1,1]X[1,2]", "(1 - 1*u^4) * 1"]


def test_map_image(engine):
    body = engine.map_image(GrassmannContext(2, 4), "omega1", IndexSet([3, 4]))
    assert body == {"map": "Omega_1", "source": [3, 4], "scalar": "1*u^-8", "q_exponent": -4, "set": [1, 2], "level": 1}


def test_le_count(engine):
    assert engine.le_count(2, 4) == {"m": 2, "n": 4, "count": 33}


def test_render_text(engine):
    report = engine.run(engine.run_config(suite="twist", trials=5))
    text = render_text(report)
    assert text.startswith("qgr 1.0.0 Gr(2,4) seed=7")
    assert "[PASSED] twist" in text


@pytest.mark.parametrize("threads,pooled", [(1, False), (2, True)])
def test_grid_pool_is_owned_by_run(engine, monkeypatch, threads, pooled):
    monkeypatch.delenv("QGR_THREADS", raising=False)
    seen = []

    def fake_hspec(ctx, rc, rng, grid_pool=None):
        seen.append(grid_pool)
        return SuiteResult(suite="hspec", status="passed")

    with patch.object(VerificationEngine, "suite_hspec", side_effect=fake_hspec):
        report = engine.run(engine.run_config(suite="hspec", threads=threads))
    assert report.passed
    assert isinstance(seen[0], ProcessPoolExecutor) is pooled
