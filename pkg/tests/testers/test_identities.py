from __future__ import annotations

from qdisttest.testers.identities import (
    ensure_identities,
    quantum_offset_residual,
    staging_residual,
    telescoping_residual,
)


def test_residuals():
    assert telescoping_residual() == 0
    assert staging_residual() == 0
    assert quantum_offset_residual() == 0


def test_ensure_identities():
    assert ensure_identities() is None
