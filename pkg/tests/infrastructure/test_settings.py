import pytest

from fusion2s.infrastructure.errors import InputError
from fusion2s.infrastructure.settings import Settings, get_settings


class TestSettings:

    def test_defaults(self, monkeypatch):
        for name in ["FUSION2S_MAX_GROUP", "FUSION2S_ORACLE_MAX_GROUP", "FUSION2S_EXHAUSTIVE_LIMIT",
                     "FUSION2S_TOLERANCE", "FUSION2S_SCAN_WORKERS"]:
            monkeypatch.delenv(name, raising=False)
        settings = get_settings()
        assert settings == Settings()
        assert settings.max_group_size == 4096
        assert settings.oracle_max_group_size == 64

    def test_env_override(self, monkeypatch):
        # Arrange
        monkeypatch.setenv("FUSION2S_MAX_GROUP", "128")
        monkeypatch.setenv("FUSION2S_TOLERANCE", "1e-6")

        # Act
        settings = get_settings()

        # Assert
        assert settings.max_group_size == 128
        assert settings.tolerance == pytest.approx(1e-6)

    def test_blank_value_uses_default(self, monkeypatch, mocker):
        mocker.patch("fusion2s.infrastructure.settings.os.cpu_count", return_value=3)
        monkeypatch.setenv("FUSION2S_SCAN_WORKERS", " ")
        assert get_settings().scan_workers == 3

    def test_scan_workers_default_survives_unknown_cpu_count(self, monkeypatch, mocker):
        mocker.patch("fusion2s.infrastructure.settings.os.cpu_count", return_value=None)
        monkeypatch.delenv("FUSION2S_SCAN_WORKERS", raising=False)
        assert get_settings().scan_workers == 1

    def test_scan_workers_override(self, monkeypatch):
        monkeypatch.setenv("FUSION2S_SCAN_WORKERS", "2")
        assert get_settings().scan_workers == 2

    def test_cached(self):
        assert get_settings() is get_settings()

    def test_not_a_number(self, monkeypatch):
        monkeypatch.setenv("FUSION2S_MAX_GROUP", "lots")
        with pytest.raises(InputError, match="FUSION2S_MAX_GROUP"):
            get_settings()

    def test_out_of_range(self, monkeypatch):
        monkeypatch.setenv("FUSION2S_ORACLE_MAX_GROUP", "0")
        with pytest.raises(InputError, match="Invalid fusion2s settings"):
            get_settings()
