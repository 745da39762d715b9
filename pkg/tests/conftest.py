from hypothesis import settings

# derandomized so that every run explores the same examples
settings.register_profile("default", derandomize=True, deadline=None, max_examples=200)
settings.load_profile("default")
