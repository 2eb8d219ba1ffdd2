import hypothesis
import pytest

from lockupsim import FrictionModel, VehicleParams

hypothesis.settings.register_profile(
    "ci", deadline=None, max_examples=200, derandomize=True
)
hypothesis.settings.load_profile("ci")


@pytest.fixture(scope="session")
def vehicle():
    return VehicleParams(M=250.0, r=0.3, J=1.5)


@pytest.fixture(scope="session")
def dry():
    return FrictionModel.preset("dry_asphalt")


@pytest.fixture(scope="session")
def wet():
    return FrictionModel.preset("wet_asphalt")
