# qec/exceptions.py
"""Error types raised by the qutrit algebra, the codes and the generators."""


class QECError(Exception):
    """Base class for every error the toolkit raises on purpose."""
    default_detail = "Quantum error-correction check failed."

    def __init__(self, message=None, **context):
        self.context = context
        super().__init__(message or self.default_detail)


class WordError(QECError, ValueError):
    """A malformed operator word, ket string, qutrit index or size mismatch."""
    default_detail = "Malformed operator word."


class InvalidPair(QECError, ValueError):
    """A qutrit pair that is out of range, repeated, or otherwise not valid input."""
    default_detail = "Invalid qutrit pair."


class PairUnsupported(QECError):
    """Both qutrits of the pair sit in group g2; the generator refuses such pairs."""
    default_detail = "Pairs inside group g2 are not supported."


class NotAnEigenstate(QECError):
    def __init__(self, stabilizer_index, residual):
        super().__init__(
            f"State is not an eigenstate of stabilizer S{stabilizer_index + 1} (residual {residual:.3e}).",
            stabilizer_index=stabilizer_index,
            residual=residual,
        )


class UnrecognizedSyndrome(QECError):
    def __init__(self, syndrome):
        super().__init__(f"No correction registered for syndrome {syndrome}.", syndrome=syndrome)


class GenerationFailed(QECError):
    default_detail = "Stabilizer generation did not produce a valid set."


class SearchExhausted(QECError):
    default_detail = "Exhaustive search found no valid stabilizer set."


class NoWitness(QECError):
    default_detail = "No syndrome collision exists for this pair."


class AncillaNotDefinite(QECError):
    def __init__(self, stabilizer_index, probabilities):
        super().__init__(
            f"Ancilla for S{stabilizer_index + 1} did not read out a definite value "
            f"(probabilities {tuple(round(p, 6) for p in probabilities)}).",
            stabilizer_index=stabilizer_index,
            probabilities=probabilities,
        )


class CircuitError(QECError):
    default_detail = "Malformed extraction circuit."


class UnknownCode(QECError, ValueError):
    default_detail = "Unknown code identifier."
