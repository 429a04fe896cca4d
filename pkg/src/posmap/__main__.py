"""Entry point for ``python -m posmap``."""

import sys

from .cli import main

sys.exit(main())
