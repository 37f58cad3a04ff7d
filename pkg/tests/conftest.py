import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# first calls pay numba compile time; derandomize so runs are reproducible
settings.register_profile("repo", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("repo")
