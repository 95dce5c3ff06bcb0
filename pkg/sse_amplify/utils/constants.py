# Application-wide constants

# Gap amplification
WALK_LENGTH_NUMERATOR = 64  # t = ceil(64 / f(eps)^2)
LOWER_BOUND_DENOMINATOR = 32  # 1 - (1 - phi^2 / 32)^t
F_EXPONENT_LIMIT = 0.5  # f must grow strictly faster than sqrt(eps)
SSE_PRIME_SOUNDNESS_FACTOR = 8

# Output
SIGNIFICANT_DIGITS = 17

# Exit codes
EXIT_CODES = {
    "OK": 0,
    "INTERNAL_ERROR": 1,
    "NEGATIVE_ANSWER": 2,
    "GRAPH_INPUT": 3,
    "ORACLE_CAP": 4,
    "INVALID_PARAMETERS": 5,
    "WALK_BACKEND": 6,
    "REDUCTION": 7,
    "VERIFICATION_FAILED": 8,
    "USAGE": 64,
}

# Error messages
ERROR_MESSAGES = {
    "GENERAL_ERROR": "Something went wrong, rerun with --verbose for details",
    "PEEL_NOT_FOUND": "not found",
    "VERIFICATION_FAILED": "Verification suites reported violations",
}
