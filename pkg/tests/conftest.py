from hypothesis import HealthCheck, settings

# Deterministic property tests: the acceptance run must be reproducible.
settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")
