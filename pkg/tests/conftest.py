import hypothesis
import hypothesis.strategies as st

from cvpower import PhasorTriple, angle_distance_deg

# Numeric identity tests run tiny numpy kernels; wall-clock deadlines only
# produce flaky failures on loaded machines.
hypothesis.settings.register_profile("cvpower", deadline=None)
hypothesis.settings.load_profile("cvpower")

finite_complex = st.complex_numbers(
    max_magnitude=1e6, allow_nan=False, allow_infinity=False, allow_subnormal=False
)

phasor_triples = st.tuples(finite_complex, finite_complex, finite_complex).map(
    lambda t: PhasorTriple(t)
)


def assert_angle_close(observed_deg: float, expected_deg: float, tol_deg: float, label: str = ""):
    dist = angle_distance_deg(observed_deg, expected_deg)
    assert dist <= tol_deg, f"{label} angle {observed_deg} vs {expected_deg} (arc {dist} > {tol_deg})"


EX1_VOLTAGES = [(1.0, 0.0), (1.0, -120.0), (1.0, 120.0)]
EX1_CURRENTS = [(1.0, -90.0), (0.2, -30.0), (0.8, -150.0)]

EX2_VOLTAGES = [(91.50, -5.50), (94.78, -123.81), (89.62, 121.25)]
EX2_CURRENTS = [(3.562, -38.28), (2.863, -166.17), (2.822, 74.76)]
EX2_RHO = 2.4
