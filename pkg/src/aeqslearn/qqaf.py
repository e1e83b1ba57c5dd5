"""One-way machine semantics: runs, acceptance, agreement with a relation.

A machine reads the endmarked input L x_1 ... x_n R, applying one cached
unitary per symbol to the start state |0>.  Acceptance probability is the
mass on the accepting set; agreement with a relation at threshold eta is
evaluated exactly from amplitudes, never by sampling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadSymbol, LengthMismatch
from .gates import MachineEncoding, START_STATE, SYMBOLS, symbol_unitary
from .qcore import HermitianOperator, StateVector, subspace_probability


def bits_to_index(x: str) -> int:
    """Binary value of a bit string; the first character is most significant."""
    return int(x, 2) if x else 0


def index_to_bits(i: int, n: int) -> str:
    return format(i, f"0{n}b") if n else ""


def all_inputs(n: int):
    for i in range(1 << n):
        yield index_to_bits(i, n)


@dataclass(frozen=True)
class AgreementParams:
    """Accuracy threshold eta; must lie in (1/2, 1]."""

    eta: float

    def __post_init__(self):
        if not 0.5 < self.eta <= 1.0:
            raise ValueError(f"eta must lie in (1/2, 1], got {self.eta}")


class RelationTable:
    """Explicit membership table for a relation over {0,1}^n."""

    __slots__ = ("n", "members")

    def __init__(self, n: int, members):
        if n < 0:
            raise ValueError("input length must be non-negative")
        table = np.array(members, dtype=bool).reshape(-1)
        if table.size != 1 << n:
            raise LengthMismatch(f"need {1 << n} membership bits, got {table.size}")
        table.setflags(write=False)
        self.n = n
        self.members = table

    @classmethod
    def from_indices(cls, n: int, indices) -> "RelationTable":
        table = np.zeros(1 << n, dtype=bool)
        for i in indices:
            table[int(i)] = True
        return cls(n, table)

    @classmethod
    def from_strings(cls, n: int, strings) -> "RelationTable":
        idx = []
        for x in strings:
            if len(x) != n:
                raise LengthMismatch(f"string {x!r} does not have length {n}")
            idx.append(bits_to_index(x))
        return cls.from_indices(n, idx)

    @classmethod
    def from_predicate(cls, n: int, pred) -> "RelationTable":
        return cls(n, [pred(x) for x in all_inputs(n)])

    def contains(self, x) -> bool:
        i = bits_to_index(x) if isinstance(x, str) else int(x)
        return bool(self.members[i])

    def complement(self) -> "RelationTable":
        return RelationTable(self.n, ~self.members)

    @property
    def size(self) -> int:
        return int(self.members.sum())

    def __eq__(self, other) -> bool:
        return (isinstance(other, RelationTable) and self.n == other.n
                and bool(np.all(self.members == other.members)))

    def __repr__(self) -> str:
        return f"RelationTable(n={self.n}, size={self.size})"


class Machine:
    """A machine encoding together with its cached symbol unitaries."""

    __slots__ = ("encoding", "_unitaries", "lambda0")

    def __init__(self, encoding: MachineEncoding):
        self.encoding = encoding
        dim = encoding.states
        self._unitaries = {
            symbol: symbol_unitary(sd, encoding.m).entries
            for symbol, sd in zip(SYMBOLS, encoding.symbol_designs)
        }
        diag = np.ones(dim)
        diag[START_STATE] = 0.0
        self.lambda0 = HermitianOperator(np.diag(diag))

    @property
    def m(self) -> int:
        return self.encoding.m

    @property
    def dim(self) -> int:
        return self.encoding.states

    @property
    def s_acc(self) -> tuple[int, ...]:
        return self.encoding.s_acc

    def unitary(self, symbol: str) -> np.ndarray:
        return self._unitaries[symbol]

    def word_unitary(self, x: str) -> np.ndarray:
        """Matrix for the endmarked word: U_R U_{x_n} ... U_{x_1} U_L."""
        mat = self._unitaries["L"]
        for ch in x:
            if ch not in ("0", "1"):
                raise BadSymbol(f"input may contain only 0 and 1, got {ch!r}")
            mat = self._unitaries[ch] @ mat
        return self._unitaries["R"] @ mat

    def __repr__(self) -> str:
        return f"Machine(m={self.m}, s_acc={self.s_acc})"


def run(mach: Machine, x: str) -> StateVector:
    """Final state after reading the endmarked input from the start state."""
    v = np.zeros(mach.dim, dtype=complex)
    v[START_STATE] = 1.0
    v = mach.unitary("L") @ v
    for ch in x:
        if ch not in ("0", "1"):
            raise BadSymbol(f"input may contain only 0 and 1, got {ch!r}")
        v = mach.unitary(ch) @ v
    return StateVector(mach.unitary("R") @ v)


def acceptance_probability(mach: Machine, x: str) -> float:
    return subspace_probability(run(mach, x), mach.s_acc)


def agrees(mach: Machine, x: str, rel: RelationTable, params: AgreementParams) -> bool:
    """Does the acceptor match the relation on x at threshold eta?

    Members must be accepted with probability >= eta, non-members rejected
    with probability >= eta; equality counts as satisfying the threshold.
    """
    if len(x) != rel.n:
        raise LengthMismatch(f"input length {len(x)} vs relation length {rel.n}")
    p_acc = acceptance_probability(mach, x)
    if rel.contains(x):
        return p_acc >= params.eta
    return 1.0 - p_acc >= params.eta


def agreement_vector(mach: Machine, rel: RelationTable, params: AgreementParams) -> np.ndarray:
    """Agreement bit for every input of length n, in index order."""
    bits = np.zeros(1 << rel.n, dtype=bool)
    for i, x in enumerate(all_inputs(rel.n)):
        bits[i] = agrees(mach, x, rel, params)
    return bits


def agreement_count(mach: Machine, rel: RelationTable, params: AgreementParams) -> int:
    """Number of length-n inputs on which the machine agrees, by exact enumeration."""
    return int(agreement_vector(mach, rel, params).sum())


def e_operator(mach: Machine, x: str) -> HermitianOperator:
    """Conjugate the start-state projector complement by the word unitary."""
    u = mach.word_unitary(x)
    return HermitianOperator(u @ mach.lambda0.entries @ u.conj().T)
