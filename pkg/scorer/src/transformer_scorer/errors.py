"""Error type for user-facing data and configuration problems."""


class ScorerError(ValueError):
    """Invalid input data, configuration, or model directory.

    The CLI reports these on stderr and exits 1.
    """
