from .errors import CertificationError, ConfigError, InvariantError, QDistTestError  # noqa: F401

__all__ = ["QDistTestError", "ConfigError", "InvariantError", "CertificationError"]
