import os
import sys

# make the in-tree reference oracle importable as `reference`
sys.path.insert(0, os.path.dirname(__file__))
