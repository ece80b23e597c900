"""
Harmonia Main Entry Point
This module provides the main entry point for the Harmonia command line.
"""
import os
import sys

# Add the current directory to the path for imports
sys.path.insert(0, os.path.abspath("."))

from src.cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
