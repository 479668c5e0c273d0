import os
from pathlib import Path

import pytest

from trees import ArteryWorkspace


@pytest.fixture
def artery_workspace(tmp_path: Path) -> ArteryWorkspace:
    return ArteryWorkspace(tmp_path)


@pytest.fixture
def clean_environ(monkeypatch):
    """Strip ambient OMNeT++ discovery channels so fixtures are in control."""
    monkeypatch.delenv("OMNETPP_ROOT", raising=False)
    monkeypatch.setenv("PATH", os.defpath)
    return monkeypatch
