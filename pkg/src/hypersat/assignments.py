"""Sub-clause thresholds, assignment generators, unsolved-sub-clause curves
and excluded-literal extraction.
"""

from __future__ import annotations

import io
import csv
import random
from dataclasses import dataclass

from .formula import (Assignment, Formula, Literal, check_consistent, literal_str,
                      make_literal, var_of)
from .subclauses import SubClauseSpace

HEURISTICS = ("minCreate", "minCreateMaxSolve", "maxSolve", "maxCreate")
TIE_BREAKS = ("true", "false")

# The name minCreateMaxSolve is honored as argmax(|solved| - |created|);
# picking the lesser difference would maximize production over consumption.
MIN_CREATE_MAX_SOLVE_READING = "argmax(|subsat| - |created|)"


@dataclass(frozen=True)
class Thresholds:
    """Per-variable sums of the smaller/larger created-sub-clause counts.

    minimum <= maximum always, and for any complete assignment the total
    number of sub-clause activations (counted per literal, see
    subclause_total) lies between the two.
    """

    minimum: int
    maximum: int


def thresholds(space: SubClauseSpace) -> Thresholds:
    minimum = maximum = 0
    for v in range(space.n):
        pos = len(space.created_by[make_literal(v)])
        neg = len(space.created_by[make_literal(v, True)])
        minimum += min(pos, neg)
        maximum += max(pos, neg)
    return Thresholds(minimum=minimum, maximum=maximum)


def subclause_count(space: SubClauseSpace, a: Assignment) -> int:
    """Number of distinct sub-clauses activated by the assignment."""
    a = check_consistent(a)
    return len(space.activated(a))


def subclause_total(space: SubClauseSpace, a: Assignment) -> int:
    """Total activations counted per literal (shared sub-clauses counted once
    per creating literal). This is the count bounded by the thresholds; the
    distinct count can fall below the minimum when literals of different
    variables create the same sub-clause."""
    a = check_consistent(a)
    return sum(len(space.created_by.get(lit, ())) for lit in a)


def consumption_rate(space: SubClauseSpace, a: Assignment) -> float:
    """Distinct activated sub-clauses per assigned literal."""
    a = check_consistent(a)
    if not a:
        raise ValueError("consumption rate of an empty assignment")
    return subclause_count(space, a) / len(a)


def _prefer(tie_break: str) -> bool:
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"unknown tie-break {tie_break!r}, expected one of {TIE_BREAKS}")
    return tie_break == "true"


def generate_heuristic(space: SubClauseSpace, kind: str, tie_break: str = "true") -> Assignment:
    """One literal per variable by comparing created/solved sub-clause counts.

    minCreate picks the literal creating the fewest sub-clauses, maxCreate the
    most, maxSolve the literal contained in the most, and minCreateMaxSolve
    maximizes solved-minus-created. Ties go to the preferred polarity.
    """
    if kind not in HEURISTICS:
        raise ValueError(f"unknown heuristic {kind!r}, expected one of {HEURISTICS}")
    prefer_true = _prefer(tie_break)
    chosen = []
    for v in range(space.n):
        pos, neg = make_literal(v), make_literal(v, True)
        created_pos = len(space.created_by[pos])
        created_neg = len(space.created_by[neg])
        solve_pos = len(space.containing[pos])
        solve_neg = len(space.containing[neg])
        if kind == "minCreate":
            score_pos, score_neg = -created_pos, -created_neg
        elif kind == "maxCreate":
            score_pos, score_neg = created_pos, created_neg
        elif kind == "maxSolve":
            score_pos, score_neg = solve_pos, solve_neg
        else:  # minCreateMaxSolve
            score_pos, score_neg = solve_pos - created_pos, solve_neg - created_neg
        if score_pos > score_neg:
            chosen.append(pos)
        elif score_neg > score_pos:
            chosen.append(neg)
        else:
            chosen.append(pos if prefer_true else neg)
    return frozenset(chosen)


def generate_greedy(f: Formula, tie_break: str = "true", dynamic: bool = False) -> Assignment:
    """Greedy baseline over per-literal clause-satisfaction counts.

    The default scores each literal by the number of clauses containing it and
    picks the better polarity per variable. With dynamic=True the counts are
    recomputed over still-unsatisfied clauses and the globally best literal is
    fixed first (hill-climbing construction); that variant satisfies
    noticeably more clauses than the plain counts.
    """
    prefer_true = _prefer(tie_break)
    counts = [0] * (2 * f.n)
    for clause in f.clauses:
        for lit in clause:
            counts[lit] += 1
    if not dynamic:
        out = []
        for v in range(f.n):
            pos, neg = make_literal(v), make_literal(v, True)
            if counts[pos] != counts[neg]:
                out.append(pos if counts[pos] > counts[neg] else neg)
            else:
                out.append(pos if prefer_true else neg)
        return frozenset(out)

    occurrences = f.occurrences()
    clause_satisfied = [False] * f.m
    fixed = [False] * f.n
    out = []
    for _ in range(f.n):
        best_lit = None
        best = (-1, 0, 0)
        for v in range(f.n):
            if fixed[v]:
                continue
            for lit in (make_literal(v), make_literal(v, True)):
                preferred = (lit & 1) == (0 if prefer_true else 1)
                key = (counts[lit], 1 if preferred else 0, -v)
                if key > best:
                    best, best_lit = key, lit
        v = var_of(best_lit)
        fixed[v] = True
        out.append(best_lit)
        for cid in occurrences.get(best_lit, ()):
            if not clause_satisfied[cid]:
                clause_satisfied[cid] = True
                for lit in f.clauses[cid]:
                    counts[lit] -= 1
    return frozenset(out)


def random_assignment(n: int, seed: int) -> Assignment:
    """Independent fair coin per variable (Mersenne Twister, seeded)."""
    rng = random.Random(seed)
    return frozenset(make_literal(v, negative=bool(rng.getrandbits(1))) for v in range(n))


@dataclass(frozen=True)
class CurveStep:
    step: int            # 1-based position in the assignment order
    literal: Literal
    activated: int       # distinct sub-clauses activated so far
    satisfied: int       # activated sub-clauses already solved
    open: int            # activated - satisfied


@dataclass(frozen=True)
class CurveSeries:
    steps: tuple[CurveStep, ...]
    inflection: int      # first step at which `open` attains its series maximum

    def open_values(self) -> list[int]:
        return [s.open for s in self.steps]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "literal", "activated", "satisfied", "open"])
        for s in self.steps:
            writer.writerow([s.step, literal_str(s.literal), s.activated, s.satisfied, s.open])
        return buf.getvalue()


def unsolved_curve(space: SubClauseSpace, a: Assignment, order) -> CurveSeries:
    """Walk the assignment in the given order, tracking how many activated
    sub-clauses are still unsolved after each step."""
    a = check_consistent(a)
    order = list(order)
    if len(order) != len(a) or set(order) != set(a):
        raise ValueError("order must be a permutation of the assignment")
    activated: set[int] = set()
    solved: set[int] = set()
    open_ids: set[int] = set()
    assigned: set[int] = set()
    steps = []
    for step, lit in enumerate(order, start=1):
        assigned.add(lit)
        # The new literal solves any open sub-clause containing it, and
        # activates its created sub-clauses (solved immediately when one of
        # their literals is already assigned).
        for sid in space.containing.get(lit, set()) & open_ids:
            open_ids.discard(sid)
            solved.add(sid)
        for sid in space.created_by.get(lit, ()):
            if sid in activated:
                continue
            activated.add(sid)
            p, q = space.pairs[sid]
            if p in assigned or q in assigned:
                solved.add(sid)
            else:
                open_ids.add(sid)
        steps.append(CurveStep(step, lit, len(activated), len(solved),
                               len(activated) - len(solved)))
    if not steps:
        return CurveSeries(steps=(), inflection=0)
    peak = max(s.open for s in steps)
    inflection = next(s.step for s in steps if s.open == peak)
    return CurveSeries(steps=tuple(steps), inflection=inflection)


@dataclass(frozen=True)
class ExclusionReport:
    unsolved: frozenset[int]      # activated sub-clauses no assigned literal solves
    excluded: frozenset[Literal]  # assignment literals that created them
    allowed: frozenset[Literal]   # the rest of the assignment


def excluded_literals(space: SubClauseSpace, a: Assignment) -> ExclusionReport:
    """Split an assignment into literals that created unsolved sub-clauses
    and the rest. Satisfying assignments exclude nothing."""
    a = check_consistent(a)
    activated = space.activated(a)
    unsolved = frozenset(sid for sid in activated
                         if not (space.pairs[sid][0] in a or space.pairs[sid][1] in a))
    excluded = frozenset(space.creators_of(unsolved) & a)
    return ExclusionReport(unsolved=unsolved, excluded=excluded, allowed=frozenset(a - excluded))
