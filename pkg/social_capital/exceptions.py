"""
Exceptions raised while measuring social capital.

Every error records the stage of the pipeline it originated from so
the CLI can report where a run failed.
"""

from typing import Optional


class SocialCapitalError(Exception):
    """Base class for all social capital errors."""

    default_stage = 'core-model'

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.stage = stage or self.default_stage


class ValidationError(SocialCapitalError, ValueError):
    """A value violates an invariant of the domain model."""

    def __init__(self, message: str, field: Optional[str] = None, stage: Optional[str] = None):
        super().__init__(message, stage)
        self.field = field


class ParseError(SocialCapitalError):
    """A line of a contribution log could not be parsed."""

    default_stage = 'ingest'

    def __init__(self, message: str, line_number: int, field: Optional[str] = None):
        super().__init__(f'line {line_number}: {message}')
        self.line_number = line_number
        self.field = field


class ConfigError(SocialCapitalError):
    """Run configuration is missing or invalid."""

    default_stage = 'cli-report'


class DegenerateRelationError(SocialCapitalError, ArithmeticError):
    """Relation sum of a closure denominator is zero."""

    default_stage = 'link-engine'


class UnreachableError(SocialCapitalError):
    """No explicit path connects two agents."""

    default_stage = 'link-engine'


class NoPeersError(SocialCapitalError):
    """Subgroup has fewer than two agents."""

    default_stage = 'capital-engine'


class NoDataError(SocialCapitalError):
    """No events remain to be measured."""

    default_stage = 'ingest'
