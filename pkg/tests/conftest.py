import pytest

from babyverma.envelope import BasisElement, ChiForm, lie_algebra


@pytest.fixture
def sl2():
    return lie_algebra(2, "sl")


@pytest.fixture
def sl3():
    return lie_algebra(3, "sl")


@pytest.fixture
def efh():
    return tuple(BasisElement.parse(x, 2) for x in "efh")


@pytest.fixture
def chi_f1(sl2):
    return ChiForm.from_dict(sl2, 5, {"f": 1})
