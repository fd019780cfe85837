"""
Construction and verification exceptions.
"""

from typing import Any


class CMCAnnuliException(Exception):
    pass


class DomainException(CMCAnnuliException, ValueError):
    """
    A parameter lies outside the domain an operation is defined on.
    """

    pass


class NumericException(CMCAnnuliException):
    """
    A numerical procedure failed to reach its tolerance.

    Parameters
    ----------
    message : str
        Human readable diagnostic.
    estimate : float, optional
        The best value reached before giving up.
    table : list, optional
        Scan data collected while searching (e.g. for a sign change).
    """

    def __init__(
        self,
        message: str,
        estimate: float | None = None,
        table: list[Any] | None = None,
    ):
        super().__init__(message)
        self.estimate = estimate
        self.table = table


class QuadratureException(NumericException):
    pass


class BracketException(NumericException):
    pass


class SearchWindowException(NumericException):
    pass


class IntegrationException(NumericException):
    pass


class FrameDriftException(NumericException):
    pass


class ConsistencyException(CMCAnnuliException):
    pass


class MeshException(CMCAnnuliException):
    pass
