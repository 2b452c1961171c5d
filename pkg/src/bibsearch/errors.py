class DataError(Exception):
    """Base class for invalid input data or missing build artifacts.

    The CLI maps any DataError to exit code 2.
    """
