import os

from hypothesis import HealthCheck, settings

# Deterministic property tests: the whole package is built around
# reproducible runs, so the test suite should be too.
settings.register_profile(
    "abelmax",
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "abelmax"))
