import pytest

from qfca.qcat import QCategory, QTypedSet, discrete_category
from qfca.qdist import QDistributor
from qfca.quantaloid import build_preset


@pytest.fixture(scope="session")
def two():
    return build_preset("two")


@pytest.fixture(scope="session")
def luk3():
    return build_preset("lukasiewicz-chain", n=3)


@pytest.fixture(scope="session")
def godel3():
    return build_preset("godel-chain", n=3)


@pytest.fixture(scope="session")
def diag3():
    return build_preset("frame-diagonal", chain=3)


@pytest.fixture(scope="session")
def diagb4():
    return build_preset("frame-diagonal", boolean=2)


@pytest.fixture(scope="session")
def presets(two, luk3, godel3, diag3, diagb4):
    return {"two": two, "luk3": luk3, "godel3": godel3, "diag3": diag3, "diagb4": diagb4}


class Context:
    def __init__(self, A, B, phi):
        self.A, self.B, self.phi = A, B, phi


@pytest.fixture(scope="session")
def fix2id(two):
    A = discrete_category(two, QTypedSet(("a1", "a2"), ("*", "*")), name="A2")
    B = discrete_category(two, QTypedSet(("b1", "b2"), ("*", "*")), name="B2")
    one, zero = two.arrow("*", "*", "1"), two.arrow("*", "*", "0")
    phi = QDistributor(A, B, [[one, zero], [zero, one]], name="fix2id")
    return Context(A, B, phi)


@pytest.fixture(scope="session")
def fixl3(luk3):
    A = discrete_category(luk3, QTypedSet(("a",), ("*",)), name="SA")
    B = discrete_category(luk3, QTypedSet(("b",), ("*",)), name="SB")
    phi = QDistributor(A, B, [[luk3.arrow("*", "*", "1/2")]], name="fixl3")
    return Context(A, B, phi)


@pytest.fixture(scope="session")
def fixg3(godel3):
    A = discrete_category(godel3, QTypedSet(("a",), ("*",)), name="GA")
    B = discrete_category(godel3, QTypedSet(("b",), ("*",)), name="GB")
    phi = QDistributor(A, B, [[godel3.arrow("*", "*", "1/2")]], name="fixg3")
    return Context(A, B, phi)


def _dl3_categories(diag3):
    a = diag3.arrow
    A = QCategory(
        diag3, ("x", "y", "z"), ("2", "1", "0"),
        [[a("2", "2", "2"), a("2", "1", "1"), a("2", "0", "0")],
         [a("1", "2", "0"), a("1", "1", "1"), a("1", "0", "0")],
         [a("0", "2", "0"), a("0", "1", "0"), a("0", "0", "0")]],
        name="DA")
    B = QCategory(
        diag3, ("p", "q"), ("1", "2"),
        [[a("1", "1", "1"), a("1", "2", "1")],
         [a("2", "1", "0"), a("2", "2", "2")]],
        name="DB")
    return A, B


@pytest.fixture(scope="session")
def fixdl3(diag3):
    A, B = _dl3_categories(diag3)
    a = diag3.arrow
    phi = QDistributor(
        A, B,
        [[a("2", "1", "1"), a("2", "2", "2")],
         [a("1", "1", "1"), a("1", "2", "1")],
         [a("0", "1", "0"), a("0", "2", "0")]],
        name="fixdl3")
    return Context(A, B, phi)


@pytest.fixture(scope="session")
def all_contexts(fix2id, fixl3, fixdl3):
    return {"fix2id": fix2id, "fixl3": fixl3, "fixdl3": fixdl3}
