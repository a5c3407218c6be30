import sys

from etaq.main import run

if __name__ == "__main__":
    # Run the command line
    sys.exit(run())
