import os
import logging
import pytest
from unittest.mock import patch

from edge_powers.logging_config import default_log_file, setup_logging


def test_setup_logging_defaults(isolated_home):
    with patch('logging.basicConfig') as mock_basic_config:
        setup_logging()

        _, kwargs = mock_basic_config.call_args
        assert kwargs['level'] == logging.INFO
        assert kwargs['force'] is True

        handlers = kwargs['handlers']
        assert len(handlers) == 2
        assert any(isinstance(h, logging.StreamHandler) for h in handlers)
        assert any(isinstance(h, logging.FileHandler) and h.baseFilename.endswith("edge_powers.log") for h in handlers)
    assert default_log_file() == os.path.join(str(isolated_home), "edge_powers.log")


def test_setup_logging_env_var():
    with patch.dict(os.environ, {"EDGE_POWERS_LOG_LEVEL": "DEBUG"}):
        with patch('logging.basicConfig') as mock_basic_config:
            setup_logging()
            _, kwargs = mock_basic_config.call_args
            assert kwargs['level'] == logging.DEBUG


def test_setup_logging_explicit_level_wins():
    with patch.dict(os.environ, {"EDGE_POWERS_LOG_LEVEL": "DEBUG"}):
        with patch('logging.basicConfig') as mock_basic_config:
            setup_logging(level="warning")
            _, kwargs = mock_basic_config.call_args
            assert kwargs['level'] == logging.WARNING


def test_setup_logging_without_file():
    with patch('logging.basicConfig') as mock_basic_config:
        setup_logging(log_file="")
        _, kwargs = mock_basic_config.call_args
        assert len(kwargs['handlers']) == 1


def test_setup_logging_nonexistent_log_dir(tmp_path):
    """Log dir doesn't exist -> created automatically."""
    log_file = str(tmp_path / "new_subdir" / "edge_powers.log")
    with patch('logging.basicConfig'):
        setup_logging(log_file=log_file)
    assert os.path.isdir(str(tmp_path / "new_subdir"))


@pytest.mark.skipif(hasattr(os, "geteuid") and os.geteuid() == 0, reason="root ignores permissions")
def test_setup_logging_unwritable_dir(tmp_path):
    """Unwritable log dir -> falls back to stream handler only."""
    bad_dir = tmp_path / "readonly"
    bad_dir.mkdir()
    os.chmod(str(bad_dir), 0o444)
    log_file = str(bad_dir / "edge_powers.log")
    try:
        with patch('logging.basicConfig') as mock_bc:
            setup_logging(log_file=log_file)
            _, kwargs = mock_bc.call_args
            handlers = kwargs['handlers']
            assert all(
                isinstance(h, logging.StreamHandler)
                and not isinstance(h, logging.FileHandler)
                for h in handlers
            )
    finally:
        os.chmod(str(bad_dir), 0o755)
