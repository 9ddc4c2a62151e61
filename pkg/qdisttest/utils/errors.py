class QDistTestError(Exception):
    """Base class of the errors raised by qdisttest."""


class ConfigError(QDistTestError, ValueError):
    """Invalid experiment configuration, override or mode/size combination."""


class InvariantError(QDistTestError, RuntimeError):
    """A runtime invariant or build-gate did not hold."""


class CertificationError(InvariantError):
    """A polynomial failed its sup-norm certificate or exceeded the degree budget."""


EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INVARIANT = 3
