from config import get_config


def test_defaults(monkeypatch):
    for name in ("KSAT_CHECKER", "KSAT_ORACLE_LIMIT", "KSAT_WORKERS", "KSAT_LOG_LEVEL", "DEBUG"):
        monkeypatch.delenv(name, raising=False)
    config = get_config()
    assert config.generator.checker_backend == "auto"
    assert config.oracle.max_n == 26
    assert config.harness.workers == 1
    assert config.log_level == "WARNING"
    assert config.solver.t_sweep_betas == (0.05, 0.1, 0.2, 0.4)


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("KSAT_CHECKER", "pysat")
    monkeypatch.setenv("KSAT_ORACLE_LIMIT", "12")
    monkeypatch.setenv("KSAT_WORKERS", "4")
    config = get_config()
    assert config.generator.checker_backend == "pysat"
    assert config.oracle.max_n == 12
    assert config.harness.workers == 4


def test_debug_raises_log_level(monkeypatch):
    monkeypatch.delenv("KSAT_LOG_LEVEL", raising=False)
    monkeypatch.setenv("DEBUG", "true")
    config = get_config()
    assert config.debug
    assert config.log_level == "DEBUG"


def test_explicit_log_level_wins(monkeypatch):
    monkeypatch.setenv("DEBUG", "1")
    monkeypatch.setenv("KSAT_LOG_LEVEL", "info")
    assert get_config().log_level == "INFO"
