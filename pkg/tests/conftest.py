import hypothesis

hypothesis.settings.register_profile("sdglab", deadline=None, max_examples=40)
hypothesis.settings.load_profile("sdglab")
