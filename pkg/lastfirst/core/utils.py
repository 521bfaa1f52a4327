import logging
import sys
from functools import wraps
from typing import Optional

import click
from pydantic import BaseModel, ValidationError


class Error(BaseModel):
    code: Optional[str] = None
    message: str
    details: Optional[str] = None
    data: Optional[dict] = None


class ErrorResponse(BaseModel):
    error: Error


class LastfirstError(Exception):
    """Base error; ``exit_code`` is what the CLI terminates with."""

    exit_code: int = 1

    def __init__(self, message: str, data: dict | None = None):
        super().__init__(message)
        self.message = message
        self.data = data

    @property
    def content(self) -> dict:
        return ErrorResponse(
            error=Error(code=type(self).__name__, message=self.message, data=self.data)
        ).model_dump(exclude_none=True)


class ParseError(LastfirstError):
    exit_code = 2


class ConfigError(LastfirstError):
    exit_code = 3


class DegenerateInputError(LastfirstError):
    exit_code = 4


# space
class NonSquareError(ParseError):
    pass


class MixedTypeColumnError(ParseError):
    pass


class EmptyInputError(DegenerateInputError):
    pass


class NegativeEntryError(DegenerateInputError):
    pass


class RelativeRankViolationError(DegenerateInputError):
    pass


class AsymmetryUnderSymmetricFlagError(DegenerateInputError):
    pass


class ZeroVectorError(DegenerateInputError):
    pass


class ZeroRangeError(DegenerateInputError):
    pass


class IndexOutOfBoundsError(DegenerateInputError):
    pass


class LengthMismatchError(DegenerateInputError):
    pass


# landmark
class EmptyCandidatesError(DegenerateInputError):
    pass


class EmptySpaceError(DegenerateInputError):
    pass


class TooManyRequestedError(ConfigError):
    pass


class MismatchedSpaceError(ConfigError):
    pass


# complex
class EmptyCoverError(DegenerateInputError):
    pass


class InsufficientDimCapError(ConfigError):
    pass


# evalmetrics
class SingleSetError(DegenerateInputError):
    pass


class DegenerateLabelsError(DegenerateInputError):
    pass


class InsufficientTrainingError(DegenerateInputError):
    pass


class NoLandmarksError(DegenerateInputError):
    pass


class DegenerateFoldError(DegenerateInputError):
    pass


class SinglePeriodError(DegenerateInputError):
    pass


# synth
class InvalidWeightsError(ConfigError):
    pass


class InvalidGeometryError(ConfigError):
    pass


class CoreUtils:

    @staticmethod
    def exception_handling_decorator(func):
        """Log failures of a CLI command and exit with the error's code."""
        logger = logging.getLogger(__name__)

        @wraps(func)
        def wrap(*args, **kwargs):
            try:
                logger.debug(f"Calling {func.__name__} with kwargs: {kwargs}")
                result = func(*args, **kwargs)
                logger.debug(f"{func.__name__} completed successfully")
                return result
            except (click.exceptions.Exit, click.ClickException):
                raise
            except ValidationError as e:
                logger.error(f"Invalid configuration in {func.__name__}: {e}")
                body = ErrorResponse(
                    error=Error(code="ConfigError", message="Invalid configuration", details=str(e))
                )
                print(body.model_dump_json(), file=sys.stderr)
                raise click.exceptions.Exit(ConfigError.exit_code)
            except LastfirstError as e:
                logger.error(f"Error in {func.__name__}: {e.message}")
                print(ErrorResponse.model_validate(e.content).model_dump_json(), file=sys.stderr)
                raise click.exceptions.Exit(e.exit_code)
            except Exception as e:
                logger.error(f"Error in {func.__name__}: {str(e)}", exc_info=True)
                body = ErrorResponse(
                    error=Error(message=f"An unexpected error has occured.  {str(e)}")
                )
                print(body.model_dump_json(), file=sys.stderr)
                raise click.exceptions.Exit(1)

        return wrap
