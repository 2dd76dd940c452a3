"""Exception types shared across the workbench."""


class BadParameters(ValueError):
    """Parameter set violates a scheme or sampling invariant."""


class NotABasis(ValueError):
    """A vector family expected to be linearly independent is not."""


class NotACodeword(ValueError):
    """Input claimed to lie in a code does not."""


class DecodingFailure(RuntimeError):
    """Decoder could not produce a valid (codeword, error) split."""


class RankDrop(RuntimeError):
    """RAMESSES decryption found rank(V o E) < t; plaintext unrecoverable."""


class AttackFailure(RuntimeError):
    """An attack step failed; `step` names the failing stage."""

    def __init__(self, step: str, message: str = ""):
        super().__init__(f"{step}: {message}" if message else step)
        self.step = step
