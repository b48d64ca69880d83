import pytest
from ceerlab.CeerLabError import CeerLabError
from ceerlab.config import DEFAULT_HORIZON, DEFAULT_STAGES, get_horizon, get_stages


class TestConfig:
    """Flag > environment > default."""

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("CEERLAB_STAGES", raising=False)
        monkeypatch.delenv("CEERLAB_HORIZON", raising=False)
        assert get_stages() == DEFAULT_STAGES
        assert get_horizon() == DEFAULT_HORIZON

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("CEERLAB_STAGES", " 250 ")
        monkeypatch.setenv("CEERLAB_HORIZON", "40")
        assert get_stages() == 250
        assert get_horizon() == 40

    def test_override_wins(self, monkeypatch):
        monkeypatch.setenv("CEERLAB_STAGES", "250")
        assert get_stages(7) == 7

    def test_blank_value_falls_back(self, monkeypatch):
        monkeypatch.setenv("CEERLAB_HORIZON", "  ")
        assert get_horizon() == DEFAULT_HORIZON

    @pytest.mark.parametrize("raw", ["many", "-3", "1.5"])
    def test_invalid_values(self, monkeypatch, raw):
        monkeypatch.setenv("CEERLAB_STAGES", raw)
        with pytest.raises(CeerLabError, match="CEERLAB_STAGES"):
            get_stages()
