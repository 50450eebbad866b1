"""Entry point for `python -m reflectrec`."""

import sys

from .cli import main

sys.exit(main())
