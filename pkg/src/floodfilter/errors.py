"""Shared exception type for data and validation failures."""


class DataError(ValueError):
    """An input file or value violates one of the pipeline's format contracts.

    The CLI maps this (and I/O errors) to exit code 1; messages always name
    the offending line number, tweet id, or model so failures are actionable.
    """
