from typing import Optional


class FuzzySelectError(Exception):
    """Base class for every error raised by the services"""


class FrigValidationError(FuzzySelectError, ValueError):
    """Input data is malformed or violates a graph invariant"""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class PreconditionError(FuzzySelectError, ValueError):
    """A computation was asked for outside its domain"""
