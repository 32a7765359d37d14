"""
Command line package for HKLab
"""

from .main import main

__all__ = ['main']
