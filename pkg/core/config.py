"""
Configuration settings for HKLab
"""

import os
from fractions import Fraction


class Config:
    """Application configuration"""

    # Application settings
    APP_NAME = "HKLab - Hilbert-Kunz multiplicity workbench"
    APP_VERSION = "1.0.0"

    # Field and monomial limits
    EXPONENT_LIMIT = 2 ** 16
    CHARACTERISTIC_LIMIT = 2 ** 31
    INVERSE_TABLE_LIMIT = 2 ** 16
    MONOMIAL_ORDERS = ['grevlex', 'lex']
    DEFAULT_ORDER = 'grevlex'

    # Dimension search
    MAX_COVER_VARIABLES = 24

    # Hilbert-Kunz sampling
    DEFAULT_E_MAX = {2: 4, 3: 3}
    FALLBACK_E_MAX = 2
    FIT_METHODS = {
        "two-point": "two-point-fit",
        "last": "last-sample",
    }
    DEFAULT_FIT = "two-point"

    # Verification
    DEFAULT_TOLERANCE = Fraction(1, 20)
    ZIGZAG_MAX_DEGREE = 64

    # Output settings
    CSV_HEADER = ["e", "q", "length", "normalized_num", "normalized_den"]
    FLOAT_DIGITS = 6

    # Exit codes
    EXIT_OK = 0
    EXIT_VERIFY_FAILED = 1
    EXIT_INPUT_ERROR = 2
    EXIT_RESOURCE = 3

    # Concurrency
    THREADS_ENV = "HKLAB_THREADS"

    @classmethod
    def default_e_max(cls, p: int) -> int:
        """Default number of Frobenius steps for characteristic p"""
        return cls.DEFAULT_E_MAX.get(p, cls.FALLBACK_E_MAX)

    @classmethod
    def worker_count(cls) -> int:
        """Pool size: HKLAB_THREADS if set, otherwise the logical core count"""
        override = os.environ.get(cls.THREADS_ENV)
        if override:
            try:
                return max(1, int(override))
            except ValueError:
                pass
        return os.cpu_count() or 1
