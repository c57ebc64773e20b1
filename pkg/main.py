"""
RIS-aided MIMO simulator - Main Entry Point
Joint channel estimation and beamforming experiments from the command line
"""

import logging
import os
import sys

from harness.cli import cli_main


def main():
    """
    Main entry point for the simulator CLI
    """
    # Get logging configuration from environment variables
    log_level = os.getenv("LOG_LEVEL", "warning").upper()
    logging.basicConfig(
        level=getattr(logging, log_level, logging.WARNING),
        format="%(asctime)s :: %(levelname)s :: %(name)s :: %(message)s",
    )

    try:
        sys.exit(cli_main(sys.argv[1:]))
    except KeyboardInterrupt:
        print("\n🛑 Stopped by user")
        sys.exit(130)


if __name__ == "__main__":
    main()
