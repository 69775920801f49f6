"""Entry point for ``python -m pcband``."""

import sys

from pcband.cli import main

sys.exit(main())
