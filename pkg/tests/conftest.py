from pathlib import Path

import pytest

import snarkdefect as sd

DATA = Path(__file__).parent / "data"

SEED = 20260815


@pytest.fixture(scope="session")
def petersen():
    return sd.petersen()


@pytest.fixture(scope="session")
def k4():
    return sd.CubicGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


@pytest.fixture(scope="session")
def k33():
    return sd.CubicGraph(6, ((0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5),
                             (2, 3), (2, 4), (2, 5)))


@pytest.fixture(scope="session")
def theta():
    # two vertices joined by a triple edge
    return sd.CubicGraph(2, ((0, 1), (0, 1), (0, 1)))


@pytest.fixture(scope="session")
def dumbbell():
    # two loops joined by a bridge
    return sd.CubicGraph(2, ((0, 0), (0, 1), (1, 1)))


@pytest.fixture(scope="session")
def prism():
    return sd.CubicGraph(6, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5),
                             (3, 4), (3, 5), (4, 5)))


@pytest.fixture(scope="session")
def cube():
    # Q3, vertices = 3-bit strings, edges flip one bit
    return sd.CubicGraph(8, ((0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3),
                             (2, 6), (3, 7), (4, 5), (4, 6), (5, 7), (6, 7)))


@pytest.fixture(scope="session")
def j3():
    return sd.flower_snark(3)


@pytest.fixture(scope="session")
def j5():
    return sd.flower_snark(5)


@pytest.fixture(scope="session")
def j7():
    return sd.flower_snark(7)


@pytest.fixture(scope="session")
def blanusa1():
    return sd.parse_graph6((DATA / "blanusa1.g6").read_text())


@pytest.fixture(scope="session")
def blanusa2():
    return sd.parse_graph6((DATA / "blanusa2.g6").read_text())
