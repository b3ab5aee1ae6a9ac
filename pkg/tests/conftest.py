import pytest

from respkit import Kind, Oscillator, calibrate_coupling
from respkit.units import thermal_energy_angular

PAPER_E_R_CM = 2.0
PAPER_GAMMA_CM = 10.0
PAPER_OMEGA_C_CM = 10.0


@pytest.fixture(scope="session")
def osc():
    """Amide-I-like parameter set used throughout."""
    return Oscillator.from_wavenumbers(1650.0, 16.0, 300.0)


@pytest.fixture(scope="session")
def beta(osc):
    return osc.beta


@pytest.fixture(scope="session")
def dl_model():
    return calibrate_coupling(PAPER_E_R_CM, Kind.DRUDE_LORENTZ,
                              gamma_cm=PAPER_GAMMA_CM)


@pytest.fixture(scope="session")
def power_models():
    return {n: calibrate_coupling(PAPER_E_R_CM, Kind.POWER_EXP_CUTOFF,
                                  n=n, omega_c_cm=PAPER_OMEGA_C_CM)
            for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def all_models(dl_model, power_models):
    return {"drude_lorentz": dl_model,
            **{f"power_n{n}": m for n, m in power_models.items()}}


def _kT300():
    return thermal_energy_angular(300.0)
