from hypothesis import settings

# exact rational arithmetic makes per-example timing uneven; rely on the
# acceptance runtimes instead of per-example deadlines
settings.register_profile("default", deadline=None)
settings.load_profile("default")
