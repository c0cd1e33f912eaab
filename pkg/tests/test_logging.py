"""
Tests for logging setup.
"""

import logging

from graph_inertia.logging_config import PACKAGE_LOGGER, get_logger, setup_logging


class TestSetupLogging:
    """Test package logger configuration."""

    def test_console_only(self):
        """Test a single stderr handler at the requested level."""
        logger = setup_logging(level="warning")
        assert logger.name == PACKAGE_LOGGER
        assert len(logger.handlers) == 1
        assert logger.handlers[0].level == logging.WARNING

    def test_with_file(self, tmp_path):
        """Test the file handler records debug messages."""
        log_file = tmp_path / "logs" / "run.log"
        logger = setup_logging(level="ERROR", log_file=log_file)
        assert len(logger.handlers) == 2

        get_logger("graph_inertia.census").debug("enumerating")
        for handler in logger.handlers:
            handler.flush()
        assert "enumerating" in log_file.read_text()

    def test_repeated_setup(self, tmp_path):
        """Test handlers are replaced rather than stacked."""
        setup_logging(log_file=tmp_path / "a.log")
        logger = setup_logging(log_file=tmp_path / "b.log")
        assert len(logger.handlers) == 2

    def test_unknown_level(self):
        """Test an unknown level falls back to INFO."""
        logger = setup_logging(level="chatty")
        assert logger.handlers[0].level == logging.INFO
