"""The 2-literal sub-clause space of a width-3 formula.

Assigning a literal `a` reduces every clause that contains -a to the
2-literal sub-clause left after removing -a. The space collects all such
pairs (deduplicated), remembering for each one which literals create it and
which clauses it derives from.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass, field
from fractions import Fraction

from .formula import Formula, Literal, literal_str, negate, var_of

Pair = tuple[int, int]


def literal_columns(n: int) -> list[Literal]:
    """All 2n literals in display order -x0, x0, -x1, x1, ..."""
    cols: list[Literal] = []
    for v in range(n):
        cols.append(2 * v + 1)
        cols.append(2 * v)
    return cols


@dataclass
class SubClauseSpace:
    """Deduplicated sub-clause set with creator/parent annotations.

    Ids follow first-encounter order in a clause-order scan of the formula;
    use id_of() to locate a sub-clause by its literal pair.
    """

    n: int
    pairs: list[Pair] = field(default_factory=list)
    index: dict[Pair, int] = field(default_factory=dict)
    creators: list[set[Literal]] = field(default_factory=list)
    parents: list[set[int]] = field(default_factory=list)
    # (creator, parent clause) insertion events, kept for provenance.
    records: list[list[tuple[Literal, int]]] = field(default_factory=list)
    created_by: dict[Literal, set[int]] = field(default_factory=dict)
    containing: dict[Literal, set[int]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.pairs)

    def id_of(self, pair) -> int:
        key = tuple(sorted(pair, key=var_of))
        if key not in self.index:
            raise KeyError(f"no sub-clause ({literal_str(key[0])} v {literal_str(key[1])})")
        return self.index[key]

    def pair_str(self, sid: int) -> str:
        a, b = self.pairs[sid]
        return f"({literal_str(a)} v {literal_str(b)})"

    def _check_id(self, sid: int) -> None:
        if not 0 <= sid < len(self.pairs):
            raise KeyError(f"unknown sub-clause id {sid}")

    def subclauses_of(self, a: Literal) -> set[int]:
        """Ids activated by assigning a: reductions of the clauses containing -a."""
        return set(self.created_by.get(a, ()))

    def subsat(self, a: Literal, active: set[int] | None = None) -> set[int]:
        """Ids of sub-clauses solved by a; restricted to `active` when given."""
        full = self.containing.get(a, set())
        return set(full) if active is None else full & active

    def unitclauses(self, a: Literal) -> set[Literal]:
        """Literals forced as units when a collapses the sub-clauses containing -a."""
        units = set()
        for sid in self.containing.get(negate(a), ()):
            p, q = self.pairs[sid]
            units.add(q if p == negate(a) else p)
        return units

    def creators_of(self, ids) -> set[Literal]:
        out: set[Literal] = set()
        for sid in ids:
            self._check_id(sid)
            out |= self.creators[sid]
        return out

    def parents_of(self, ids) -> set[int]:
        out: set[int] = set()
        for sid in ids:
            self._check_id(sid)
            out |= self.parents[sid]
        return out

    def activated(self, assignment) -> set[int]:
        """Union of subclauses_of(a) over the assignment."""
        out: set[int] = set()
        for a in assignment:
            out |= self.created_by.get(a, set())
        return out


def build_space(f: Formula) -> SubClauseSpace:
    """Scan clauses in order; for each literal l of each clause insert
    clause minus {l} as a sub-clause created by negate(l)."""
    if f.width != 3:
        raise ValueError(f"sub-clause space is defined for width-3 formulas, got width {f.width}")
    space = SubClauseSpace(n=f.n)
    for lit in literal_columns(f.n):
        space.created_by[lit] = set()
        space.containing[lit] = set()
    for cid, clause in enumerate(f.clauses):
        for removed in clause:
            pair = tuple(lit for lit in clause if lit != removed)
            creator = negate(removed)
            sid = space.index.get(pair)
            if sid is None:
                sid = len(space.pairs)
                space.index[pair] = sid
                space.pairs.append(pair)
                space.creators.append(set())
                space.parents.append(set())
                space.records.append([])
                for lit in pair:
                    space.containing[lit].add(sid)
            space.creators[sid].add(creator)
            space.parents[sid].add(cid)
            space.records[sid].append((creator, cid))
            space.created_by[creator].add(sid)
    return space


@dataclass(frozen=True)
class SpaceCensus:
    possible: int        # 2n(n-1) distinct-variable literal pairs
    actual: int          # |S| after deduplication
    per_clause_bound: int  # 3m
    ratio: Fraction      # 3r / (2(n-1))


def space_census(space: SubClauseSpace, f: Formula) -> SpaceCensus:
    if f.n < 2:
        raise ValueError("census needs n >= 2")
    return SpaceCensus(
        possible=2 * f.n * (f.n - 1),
        actual=len(space),
        per_clause_bound=3 * f.m,
        ratio=Fraction(3 * f.m, f.n) / (2 * (f.n - 1)),
    )


@dataclass
class InteractionMatrix:
    """Rows are sub-clauses, columns the 2n literals; each cell says how the
    column literal relates to the row sub-clause: creates it ('c'), solves
    it ('s'), turns it into a unit clause (the remaining literal), or nothing.
    """

    columns: list[Literal]
    rows: list[int]
    cells: list[list[str]]  # '' | 'c' | 's' | literal string

    def cell(self, sid: int, lit: Literal) -> str:
        return self.cells[self.rows.index(sid)][self.columns.index(lit)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["subclause"] + [literal_str(lit) for lit in self.columns])
        for sid, row in zip(self.rows, self.cells):
            writer.writerow([f"s{sid}"] + row)
        return buf.getvalue()


def interaction_matrix(space: SubClauseSpace) -> InteractionMatrix:
    columns = literal_columns(space.n)
    rows = list(range(len(space)))
    cells = []
    for sid in rows:
        p, q = space.pairs[sid]
        row = []
        for lit in columns:
            if lit in space.creators[sid]:
                row.append("c")
            elif lit == p or lit == q:
                row.append("s")
            elif negate(lit) == p:
                row.append(literal_str(q))
            elif negate(lit) == q:
                row.append(literal_str(p))
            else:
                row.append("")
        cells.append(row)
    return InteractionMatrix(columns=columns, rows=rows, cells=cells)
