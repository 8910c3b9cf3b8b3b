# core/exceptions.py
import logging

from django.core.management.base import CommandError

from qec.exceptions import (
    InvalidPair,
    PairUnsupported,
    QECError,
    UnknownCode,
    WordError,
)


logger = logging.getLogger('verification')

EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED_PAIR = 3


def exit_code_for(exc):
    if isinstance(exc, PairUnsupported):
        return EXIT_UNSUPPORTED_PAIR
    if isinstance(exc, (InvalidPair, UnknownCode, WordError)):
        return EXIT_USAGE
    return EXIT_VERIFICATION_FAILED


def error_payload(exc):
    """
    One consistent shape for every failure, whether printed as markdown or
    embedded in a JSON document.
    """
    if isinstance(exc, QECError):
        error = type(exc).__name__
        details = str(exc)
    else:
        # Anything else is a bug; keep the message generic.
        error = "InternalError"
        details = "An unexpected error occurred; see the log for the traceback."
    return {
        "error": error,
        "details": details,
        "exit_code": exit_code_for(exc),
    }


def command_error_for(exc):
    """
    Turns any exception raised below the CLI into a CommandError carrying
    the stable exit code contract. The full exception is logged first.
    """
    logger.error(f"Command failed: {exc}", exc_info=True)
    payload = error_payload(exc)
    return CommandError(f"{payload['error']}: {payload['details']}", returncode=payload["exit_code"])
