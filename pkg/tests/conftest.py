import pytest

from hnlab.curvature import curvature_data
from hnlab.hnstruct import standard_frame
from hnlab.liealg import catalog_get
from hnlab.tensorcalc import levi_civita

CATALOG = ("g4_5", "g4_6")


@pytest.fixture(autouse=True)
def isolated_registry(tmp_path, monkeypatch):
    """Every test gets an empty registry directory of its own."""
    reg = tmp_path / "registry"
    monkeypatch.setenv("HNLAB_REGISTRY", str(reg))
    return reg


@pytest.fixture(scope="session")
def frame():
    return standard_frame()


@pytest.fixture(scope="session", params=CATALOG)
def alg(request):
    return catalog_get(request.param)


@pytest.fixture(scope="session")
def conn(alg, frame):
    return levi_civita(alg, frame)


@pytest.fixture(scope="session")
def curv(alg, frame):
    """(connection, CurvatureBundle, sectional table) for the catalog algebra."""
    return curvature_data(alg, frame)


def pytest_terminal_summary(terminalreporter):
    """Print the one-line verdict of every acceptance criterion that ran."""
    module = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
