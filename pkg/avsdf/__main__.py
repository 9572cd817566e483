"""Allow running the command-line front end with ``python -m avsdf``"""
import sys

from .cli import main

sys.exit(main())
