"""Make the flat top-level modules importable from tests, as cli.py does when run as a script."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
