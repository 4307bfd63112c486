"""Unit tests for the __main__ module."""

import pytest
from pytest_mock import plugin

from guided_deconv import __main__


def test___main__(mocker: plugin.MockerFixture) -> None:
    """Tests that the entrypoint exits with the code of the command."""
    mock_run = mocker.patch("guided_deconv.__main__.commands.run", return_value=2)

    with pytest.raises(SystemExit) as exc_info:
        __main__.main_entrypoint()

    mock_run.assert_called_once_with()
    assert exc_info.value.code == 2
