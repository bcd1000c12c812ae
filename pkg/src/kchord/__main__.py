"""Run the command-line interface via ``python -m kchord``."""

from __future__ import annotations

import sys

from .cli import main

sys.exit(main())
