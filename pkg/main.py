#!/usr/bin/env python3
"""
Subclosure
Command-line entry point
"""

from src.cli.main import main

if __name__ == "__main__":
    main()
