import logging

import pytest
from _pytest.logging import LogCaptureFixture
from loguru import logger


@pytest.fixture
def caplog(caplog: LogCaptureFixture) -> LogCaptureFixture:
    """
    Route loguru records into pytest's caplog.

    Yields
    ------
    LogCaptureFixture
        The standard fixture, now also receiving loguru messages.
    """
    handler_id = logger.add(caplog.handler, format="{message}", level=logging.DEBUG)
    yield caplog
    logger.remove(handler_id)
