import pytest

from hypersat import build_space, formula, parse_literal


def lits(*names):
    return frozenset(parse_literal(x) for x in names)


def clause(text):
    return tuple(parse_literal(tok) for tok in text.split())


# The worked 7-clause instance used throughout: three variables, every clause
# except (x0 v x1 v -x2), with unique satisfying assignment {-x0, -x1, x2}.
F3_CLAUSES = [
    "-x0 -x1 -x2",
    "-x0 -x1 x2",
    "-x0 x1 -x2",
    "-x0 x1 x2",
    "x0 x1 x2",
    "x0 -x1 -x2",
    "x0 -x1 x2",
]

# Published numbering of the 12 sub-clauses over three variables.
SUBCLAUSE_NUMBERING = {
    0: "-x0 -x1", 1: "-x0 x1", 2: "-x0 -x2", 3: "-x0 x2",
    4: "x0 -x1", 5: "x0 x1", 6: "x0 -x2", 7: "x0 x2",
    8: "-x1 -x2", 9: "-x1 x2", 10: "x1 -x2", 11: "x1 x2",
}


@pytest.fixture(scope="session")
def f3():
    return formula(3, [clause(c) for c in F3_CLAUSES])


@pytest.fixture(scope="session")
def f3_space(f3):
    return build_space(f3)


@pytest.fixture(scope="session")
def to_paper(f3_space):
    """Map internal sub-clause ids to the published S0..S11 numbering."""
    mapping = {f3_space.id_of(clause(pair)): sid
               for sid, pair in SUBCLAUSE_NUMBERING.items()}

    def convert(ids):
        return sorted(mapping[s] for s in ids)

    return convert


@pytest.fixture(scope="session")
def from_paper(f3_space):
    """Map published S0..S11 numbers to internal sub-clause ids."""
    mapping = {sid: f3_space.id_of(clause(pair))
               for sid, pair in SUBCLAUSE_NUMBERING.items()}

    def convert(ids):
        return {mapping[s] for s in ids}

    return convert
