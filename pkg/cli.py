#!/usr/bin/env python3
"""
chaoskit - Command Line Interface launcher

Usage:
    python cli.py <command> [options]

Same commands as ``python -m chaoskit``; see ``python cli.py --help``.
"""

from chaoskit.cli import main

if __name__ == '__main__':
    main()
