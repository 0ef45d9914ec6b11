import hypothesis

hypothesis.settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=50,
    deadline=None,
)
hypothesis.settings.load_profile("deterministic")
