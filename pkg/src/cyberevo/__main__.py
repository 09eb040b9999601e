"""Allow ``python -m cyberevo`` as an alternative to the console script."""

from __future__ import annotations

import sys

from cyberevo.cli import main

if __name__ == "__main__":
    sys.exit(main())
