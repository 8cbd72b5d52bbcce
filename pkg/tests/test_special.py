import numpy as np
import pytest
from scipy.special import sici

from hypersing import cosine_integral


def test_matches_reference_over_wide_range():
    # scipy's sici is the independent reference; the target accuracy is
    # 1e-12 on both sides of the series/continued-fraction switch at 4.
    z = np.concatenate(
        [
            np.geomspace(1e-6, 3.999, 400),
            np.linspace(4.0, 50.0, 300),
            np.geomspace(50.0, 1e6, 200),
        ]
    )
    ref = sici(z)[1]
    assert np.max(np.abs(cosine_integral(z) - ref)) <= 1e-12


def test_scalar_round_trip():
    assert cosine_integral(1.0) == pytest.approx(0.3374039229009681, abs=1e-14)
    assert isinstance(cosine_integral(2.5), float)


def test_rejects_nonpositive_arguments():
    with pytest.raises(ValueError):
        cosine_integral(0.0)
    with pytest.raises(ValueError):
        cosine_integral(np.array([1.0, -2.0]))
