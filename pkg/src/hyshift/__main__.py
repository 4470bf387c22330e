"""Allow ``python3 -m hyshift`` as an alias for the console script."""
import sys

from .cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
