"""Locate data files shipped inside the package."""

from importlib import resources
from pathlib import Path


def packaged_data_dir() -> Path:
    return Path(str(resources.files("sanvaad").joinpath("data")))
