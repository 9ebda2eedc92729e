from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix

CONJUGATE = "Conjugate"
NOT_CONJUGATE = "NotConjugate"
UNKNOWN = "Unknown"


@dataclass
class ConjugacyVerdict:
    """Outcome of a conjugacy decision.

    ``witness`` is set only for Conjugate and satisfies the asserted identity
    exactly; ``certificate`` explains a NotConjugate; ``reason`` explains an
    Unknown.
    """

    status: str
    witness: Matrix | None = None
    certificate: str | None = None
    reason: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def conjugate(self) -> bool:
        return self.status == CONJUGATE

    @property
    def decided(self) -> bool:
        return self.status != UNKNOWN

    @classmethod
    def yes(cls, witness, **details):
        return cls(CONJUGATE, witness=witness, details=details)

    @classmethod
    def no(cls, certificate, **details):
        return cls(NOT_CONJUGATE, certificate=certificate, details=details)

    @classmethod
    def unknown(cls, reason, **details):
        return cls(UNKNOWN, reason=reason, details=details)

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.reason is not None:
            out["reason"] = self.reason
        for k, v in self.details.items():
            out[k] = v.to_json() if hasattr(v, "to_json") else v
        return out
