"""Three-valued outcome of a decision or a check."""

from __future__ import annotations

from dataclasses import dataclass

PROVED = "Proved"
REFUTED = "Refuted"
BOUNDED = "BoundedNoCounterexample"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: object = None
    height: int | None = None

    @property
    def refuted(self):
        return self.status == REFUTED

    @property
    def proved(self):
        return self.status == PROVED

    def __str__(self):
        if self.status == REFUTED:
            return f"Refuted({self.witness})"
        if self.status == BOUNDED:
            return f"BoundedNoCounterexample({self.height})"
        return self.status


def Proved():
    return Verdict(PROVED)


def Refuted(witness):
    return Verdict(REFUTED, witness)


def BoundedNoCounterexample(height):
    return Verdict(BOUNDED, None, height)
