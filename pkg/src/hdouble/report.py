"""Verification reports shared by every identity checker."""

import time
from dataclasses import dataclass
from enum import Enum

from .scalars import format_scalar


class RelationId(str, Enum):
    PENTAGON = "pentagon"
    REVERSED_PENTAGON = "reversed_pentagon"
    MIXED_PENTAGON_1 = "mixed_pentagon_1"
    MIXED_PENTAGON_2 = "mixed_pentagon_2"
    MIXED_PENTAGON_3 = "mixed_pentagon_3"
    MIXED_PENTAGON_4 = "mixed_pentagon_4"
    MIXED_PENTAGON_5 = "mixed_pentagon_5"
    MIXED_PENTAGON_6 = "mixed_pentagon_6"
    YANG_BAXTER = "yang_baxter"
    MIXED_PERMUTATION = "mixed_permutation"
    FG_RELATIONS = "fg_relations"
    HEISENBERG_RELATIONS = "heisenberg_relations"
    DRINFELD_RELATIONS = "drinfeld_relations"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Witness:
    """First failure found, in deterministic (lexicographic) order.

    basis is the input basis multi-index (checkers over several families
    prefix it with the family number); lhs/rhs list only the output
    coefficients on which the two sides differ.
    """

    basis: tuple
    lhs: tuple
    rhs: tuple

    def to_json(self):
        return {
            "basis": list(self.basis),
            "lhs": [[list(idx), format_scalar(v)] for idx, v in self.lhs],
            "rhs": [[list(idx), format_scalar(v)] for idx, v in self.rhs],
        }


@dataclass(frozen=True)
class VerificationReport:
    relation: str
    holds: bool
    witness: object
    space_dim: int
    elapsed: float

    def to_json(self):
        out = {
            "relation": str(self.relation),
            "holds": self.holds,
            "space_dim": self.space_dim,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out

    def __str__(self):
        status = "HOLDS" if self.holds else "FAILS"
        return "%s: %s (space %d, %.3f ms)" % (
            self.relation, status, self.space_dim, self.elapsed * 1000.0)


class Stopwatch:
    def __init__(self):
        self.start = time.perf_counter()

    def report(self, relation, holds, witness, space_dim):
        return VerificationReport(
            relation=str(relation), holds=holds, witness=witness,
            space_dim=space_dim, elapsed=time.perf_counter() - self.start)
