#!/usr/bin/env python3
"""Run the linstab CLI from a checkout."""

from src.cli import main

if __name__ == "__main__":
    main()
