"""CNF core: literal encoding, clauses, formulas, assignments, evaluation
and the exhaustive satisfiability oracle.

Literals are encoded as ints: code = 2*var + 1 for the negated literal -x_var,
code = 2*var for the positive literal x_var. Negation is XOR 1, so it is an
involution and the two polarities of a variable are adjacent codes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

Literal = int
Clause = tuple[int, ...]
Assignment = frozenset[int]

# Guardrail for the exhaustive oracle: 2^n assignments are enumerated.
ORACLE_MAX_VARS = 26


class GuardrailError(ValueError):
    """A size guardrail was exceeded (exhaustive oracle, closure, batch caps)."""


def make_literal(var: int, negative: bool = False) -> Literal:
    return 2 * var + (1 if negative else 0)


def negate(lit: Literal) -> Literal:
    """Flip a literal's polarity; negate(negate(l)) == l."""
    return lit ^ 1


def var_of(lit: Literal) -> int:
    return lit >> 1


def is_negative(lit: Literal) -> bool:
    return bool(lit & 1)


def literal_str(lit: Literal) -> str:
    """Human-readable form: x3 / -x3."""
    return f"-x{lit >> 1}" if lit & 1 else f"x{lit >> 1}"


def parse_literal(text: str) -> Literal:
    """Inverse of literal_str; accepts 'x3' and '-x3'."""
    s = text.strip()
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    if not s.startswith("x") or not s[1:].isdigit():
        raise ValueError(f"not a literal: {text!r}")
    return make_literal(int(s[1:]), neg)


def make_clause(literals) -> Clause:
    """Canonicalize a clause: sorted by variable, distinct non-contradictory vars."""
    lits = tuple(sorted(literals, key=var_of))
    seen = set()
    for lit in lits:
        v = var_of(lit)
        if v in seen:
            raise ValueError(f"duplicate or contradictory variable x{v} in clause")
        seen.add(v)
    return lits


@dataclass(frozen=True)
class Formula:
    """A width-k CNF formula over variables x0..x(n-1). Immutable."""

    n: int
    clauses: tuple[Clause, ...]
    width: int = 3

    def __post_init__(self):
        for cid, clause in enumerate(self.clauses):
            if len(clause) != self.width:
                raise ValueError(f"clause {cid} has width {len(clause)}, expected {self.width}")
            for lit in clause:
                if not 0 <= var_of(lit) < self.n:
                    raise ValueError(f"clause {cid}: variable x{var_of(lit)} out of range [0,{self.n})")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def ratio(self) -> float:
        return self.m / self.n if self.n else 0.0

    def occurrences(self) -> dict[int, list[int]]:
        """Map literal code -> ids of clauses containing it."""
        occ: dict[int, list[int]] = {}
        for cid, clause in enumerate(self.clauses):
            for lit in clause:
                occ.setdefault(lit, []).append(cid)
        return occ


def formula(n: int, clause_lists, width: int = 3) -> Formula:
    """Build a Formula from raw literal tuples, canonicalizing each clause."""
    return Formula(n=n, clauses=tuple(make_clause(c) for c in clause_lists), width=width)


def check_consistent(literals) -> Assignment:
    """Validate that no variable appears with both polarities."""
    a = frozenset(literals)
    for lit in a:
        if negate(lit) in a:
            raise ValueError(f"inconsistent assignment: both {literal_str(lit)} and "
                             f"{literal_str(negate(lit))}")
    return a


def is_complete(a: Assignment, n: int) -> bool:
    return len(a) == n and {var_of(lit) for lit in a} == set(range(n))


def satisfied(f: Formula, lit: Literal) -> set[int]:
    """Ids of clauses containing the literal (the clauses it satisfies)."""
    if not 0 <= var_of(lit) < f.n:
        raise ValueError(f"variable x{var_of(lit)} out of range [0,{f.n})")
    return {cid for cid, clause in enumerate(f.clauses) if lit in clause}


@dataclass(frozen=True)
class EvalReport:
    satisfied_count: int
    unsatisfied_ids: tuple[int, ...]
    fraction: float


def evaluate(f: Formula, a: Assignment) -> EvalReport:
    """Count clauses whose literal set intersects the assignment.

    The empty formula evaluates to fraction 1.0 (vacuous conjunction).
    """
    a = check_consistent(a)
    unsat = tuple(cid for cid, clause in enumerate(f.clauses) if not any(lit in a for lit in clause))
    sat = f.m - len(unsat)
    return EvalReport(sat, unsat, sat / f.m if f.m else 1.0)


def solve_exhaustive(f: Formula, cap: int = 10) -> list[Assignment]:
    """Enumerate all 2^n complete assignments; return up to `cap` satisfying ones.

    An empty result means UNSAT. Refuses n > ORACLE_MAX_VARS.
    """
    if f.n > ORACLE_MAX_VARS:
        raise GuardrailError(f"exhaustive oracle limited to n <= {ORACLE_MAX_VARS}, got n = {f.n}")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    # Bitmask per clause: clause falsified by word s iff (s & vmask) == fpattern,
    # where bit v of s is 1 when x_v is true and the falsifying value of a
    # positive literal is 0 (and of a negative literal is 1).
    vmasks = []
    fpatterns = []
    for clause in f.clauses:
        vm = 0
        fp = 0
        for lit in clause:
            bit = 1 << var_of(lit)
            vm |= bit
            if is_negative(lit):
                fp |= bit
        vmasks.append(vm)
        fpatterns.append(fp)
    pairs = list(zip(vmasks, fpatterns))
    found: list[Assignment] = []
    for s in range(1 << f.n):
        if all((s & vm) != fp for vm, fp in pairs):
            found.append(frozenset(
                make_literal(v, negative=((s >> v) & 1) == 0) for v in range(f.n)))
            if len(found) >= cap:
                break
    return found


def random_formula(n: int, r: float, seed: int, k: int = 3) -> Formula:
    """Generate a random width-k instance with m = round(r*n) distinct clauses.

    Each clause samples k distinct variables uniformly with independent fair
    polarities; duplicate clauses are rejected and resampled. Uses Python's
    random.Random (Mersenne Twister), so a seed fully determines the instance
    across platforms.
    """
    if n < k:
        raise ValueError(f"need n >= k, got n = {n}, k = {k}")
    m = round(r * n)
    distinct = math.comb(n, k) * (1 << k)
    if m > distinct:
        raise ValueError(f"cannot draw {m} distinct width-{k} clauses over {n} variables "
                         f"(only {distinct} exist)")
    rng = random.Random(seed)
    clauses: list[Clause] = []
    seen: set[Clause] = set()
    while len(clauses) < m:
        variables = sorted(rng.sample(range(n), k))
        clause = tuple(make_literal(v, negative=bool(rng.getrandbits(1))) for v in variables)
        if clause in seen:
            continue
        seen.add(clause)
        clauses.append(clause)
    return Formula(n=n, clauses=tuple(clauses), width=k)
