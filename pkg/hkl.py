#!/usr/bin/env python3
"""
HKLab - Hilbert-Kunz multiplicity workbench
Command line front end for Groebner bases, Hilbert-Kunz functions and closed-form checks
"""

import sys

from cli import main

if __name__ == "__main__":
    sys.exit(main())
