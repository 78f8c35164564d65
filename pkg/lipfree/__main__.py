"""
Main executable
"""

import argparse
import logging
import sys

from . import (
    construct,
    doubling,
    norm,
    sample,
    suite,
    validate,
    witness,
)

parser = argparse.ArgumentParser(description="Lipschitz-free spaces of finite metric spaces.")
parser.add_argument("-v", "--verbose", action="store_true", help="log solver traces")
subparsers = parser.add_subparsers(help="Subcommand to run")
validate.setup(subparsers)
norm.setup(subparsers)
construct.setup(subparsers)
witness.setup(subparsers)
doubling.setup(subparsers)
suite.setup(subparsers)
sample.setup(subparsers)


def main():
    args = parser.parse_args()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
    )
    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        sys.exit(2)
    sys.exit(args.func(args))


if __name__ == "__main__":
    main()
