import numpy as np
import pytest
from hypothesis import settings

from planet.field import ComplexField, CyclotomicField

settings.register_profile("planet", max_examples=40, deadline=None)
settings.load_profile("planet")


@pytest.fixture
def cf():
    return ComplexField()


@pytest.fixture(params=[1, 3, 4, 12], ids=lambda n: f"Q(zeta_{n})")
def qf(request):
    return CyclotomicField(request.param)


@pytest.fixture(params=["complex", "cyclotomic12"])
def anyfield(request):
    return ComplexField() if request.param == "complex" else CyclotomicField(12)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
