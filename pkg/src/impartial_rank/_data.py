"""Transcriptions of the explicit constructions used by the mechanisms.

Everything here is literal data; validation lives in the test suite.
"""

# g(b) for n=4 with rho = (1, 0, 1, 0); keys are (b0, b1, b2, b3), values one-line rankings.
G4_RHO = (1, 0, 1, 0)
G4_TABLE = {
    (0, 0, 0, 0): (2, 3, 1, 0),
    (0, 0, 0, 1): (2, 3, 0, 1),
    (0, 0, 1, 0): (2, 1, 3, 0),
    (0, 0, 1, 1): (2, 0, 3, 1),
    (0, 1, 0, 0): (0, 3, 1, 2),
    (0, 1, 0, 1): (0, 3, 2, 1),
    (0, 1, 1, 0): (3, 1, 0, 2),
    (0, 1, 1, 1): (3, 0, 2, 1),
    (1, 0, 0, 0): (3, 2, 1, 0),
    (1, 0, 0, 1): (3, 1, 0, 2),
    (1, 0, 1, 0): (1, 2, 3, 0),
    (1, 0, 1, 1): (1, 0, 3, 2),
    (1, 1, 0, 0): (0, 2, 1, 3),
    (1, 1, 0, 1): (0, 1, 2, 3),
    (1, 1, 1, 0): (1, 2, 0, 3),
    (1, 1, 1, 1): (1, 0, 2, 3),
}

FIXTURE_RHO = {
    5: (3, 2, 3, 1, 1),
    6: (1, 2, 3, 4, 5, 0),
    7: (1, 2, 3, 4, 5, 6, 0),
    8: (1, 2, 3, 4, 5, 6, 7, 0),
    9: (1, 2, 3, 4, 5, 6, 7, 8, 0),
    10: (1, 2, 3, 4, 5, 6, 7, 8, 9, 0),
}

# Edges of color i, as sorted pairs, for the explicit multigraphs with 5 <= n <= 10.
FIXTURE_EDGES = {
    5: (
        ((1, 3), (1, 4), (2, 3)),
        ((0, 2), (0, 3), (3, 4)),
        ((0, 3), (0, 4), (1, 3)),
        ((0, 1), (0, 2), (2, 4)),
        ((0, 1), (0, 3), (2, 3)),
    ),
    6: (
        ((2, 3), (2, 5), (3, 4)),
        ((0, 2), (0, 4), (3, 5)),
        ((0, 3), (1, 3), (1, 5)),
        ((0, 4), (0, 5), (1, 4), (2, 4)),
        ((0, 1), (0, 3), (0, 5), (1, 5), (2, 5), (3, 5)),
        ((1, 2), (1, 4), (2, 3)),
    ),
    7: (
        ((2, 3), (2, 6), (3, 6), (4, 5)),
        ((0, 2), (0, 6), (3, 4), (3, 5), (3, 6), (4, 5)),
        ((0, 3), (0, 5), (1, 3), (1, 4), (1, 5), (4, 6)),
        ((0, 2), (0, 4), (1, 4), (1, 6), (2, 4), (2, 5), (2, 6)),
        ((0, 1), (0, 2), (0, 5), (1, 3), (1, 5), (1, 6), (2, 5), (3, 5), (3, 6)),
        ((0, 1), (0, 2), (0, 3), (0, 4), (0, 6), (1, 4), (1, 6), (2, 6), (3, 4), (3, 6), (4, 6)),
        ((1, 4), (1, 5), (2, 3), (2, 5), (3, 4)),
    ),
    8: (
        ((2, 3), (2, 4), (3, 5), (3, 7), (4, 7), (5, 6)),
        ((0, 2), (0, 4), (3, 5), (3, 6), (3, 7), (4, 6), (5, 7)),
        ((0, 3), (0, 6), (1, 3), (1, 5), (1, 6), (4, 5), (4, 6), (6, 7)),
        ((0, 4), (1, 2), (1, 4), (1, 5), (1, 6), (2, 4), (2, 6), (2, 7), (5, 7)),
        ((0, 2), (0, 5), (1, 3), (1, 5), (1, 7), (2, 5), (2, 7), (3, 5)),
        ((0, 2), (0, 6), (1, 6), (2, 3), (2, 6), (3, 6), (4, 6), (4, 7)),
        ((0, 2), (0, 4), (0, 7), (1, 4), (1, 5), (1, 7), (2, 3), (2, 5), (2, 7), (3, 7), (4, 7), (5, 7)),
        ((1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 4), (3, 4), (3, 5), (4, 5)),
    ),
    9: (
        ((2, 4), (2, 5), (2, 7), (3, 5), (3, 7), (4, 5), (4, 8), (6, 8), (7, 8)),
        ((0, 2), (0, 3), (0, 6), (0, 8), (3, 4), (3, 6), (3, 8)),
        ((0, 3), (0, 4), (1, 3), (1, 4), (4, 5), (4, 8), (5, 6), (5, 8), (6, 8)),
        ((0, 1), (0, 4), (0, 5), (0, 8), (1, 4), (1, 7), (2, 4), (2, 8), (5, 7), (6, 8), (7, 8)),
        ((0, 1), (0, 3), (0, 5), (0, 6), (1, 2), (1, 5), (2, 5), (2, 6), (2, 7), (3, 5), (3, 7), (3, 8), (6, 7), (6, 8)),
        ((0, 1), (0, 4), (0, 6), (1, 4), (1, 6), (1, 8), (2, 6), (2, 8), (3, 6), (3, 7), (4, 6), (4, 8)),
        ((0, 1), (0, 4), (0, 7), (0, 8), (1, 4), (1, 7), (2, 3), (2, 7), (3, 4), (3, 5), (3, 7), (4, 7), (5, 7)),
        ((0, 2), (0, 5), (0, 8), (1, 3), (1, 4), (1, 8), (2, 5), (2, 8), (3, 5), (3, 6), (3, 8), (4, 8), (5, 8), (6, 8)),
        ((1, 5), (1, 6), (2, 3), (2, 6), (3, 6), (3, 7), (4, 7), (5, 6), (5, 7)),
    ),
    10: (
        ((2, 3), (2, 7), (3, 4), (3, 9), (4, 8), (4, 9), (5, 8), (5, 9), (7, 8)),
        ((0, 2), (0, 4), (3, 9), (4, 7), (8, 9)),
        ((0, 3), (0, 5), (0, 7), (0, 9), (1, 3), (1, 7), (1, 8), (5, 7), (5, 8), (5, 9), (6, 9), (7, 8), (7, 9), (8, 9)),
        ((0, 2), (0, 4), (0, 7), (1, 4), (1, 6), (1, 9), (2, 4), (2, 5), (2, 6), (2, 8), (5, 7), (6, 8), (7, 8), (8, 9)),
        ((0, 2), (0, 5), (0, 6), (0, 9), (1, 3), (1, 5), (1, 8), (2, 3), (2, 5), (2, 9), (3, 5), (6, 7)),
        ((0, 6), (1, 6), (2, 6), (2, 8), (3, 4), (3, 6), (4, 6), (7, 9)),
        ((0, 5), (0, 7), (1, 5), (1, 7), (2, 7), (3, 5), (3, 7), (3, 8), (4, 5), (4, 7), (4, 8), (4, 9), (5, 7), (5, 9)),
        ((0, 2), (0, 8), (0, 9), (1, 6), (1, 8), (2, 8), (3, 6), (3, 8), (4, 6), (4, 8), (5, 8), (6, 8)),
        ((0, 1), (0, 9), (1, 3), (1, 5), (1, 9), (2, 4), (2, 6), (2, 9), (3, 4), (3, 6), (3, 9), (4, 5), (4, 9), (5, 9), (6, 9), (7, 9)),
        ((1, 4), (1, 5), (1, 7), (2, 7), (3, 5), (3, 8), (4, 6), (4, 8), (5, 7)),
    ),
}

# Example matrix triple for n = m = 5 with diagonals d^i_p = (p + i) mod 5; rows are p.
EXAMPLE_TRIPLE_N5 = (
    (
        (0, 3, 4, 3, 4),
        (4, 1, 4, 1, 4),
        (3, 3, 2, 3, 2),
        (3, 3, 2, 3, 2),
        (0, 3, 4, 3, 4),
    ),
    (
        (1, 2, 1, 1, 2),
        (0, 2, 0, 4, 0),
        (0, 0, 3, 1, 0),
        (0, 0, 0, 4, 0),
        (0, 0, 0, 1, 0),
    ),
    (
        (2, 2, 4, 4, 2),
        (1, 3, 1, 1, 1),
        (2, 2, 4, 4, 2),
        (2, 0, 0, 0, 2),
        (1, 3, 1, 1, 1),
    ),
)
# Blocking sets for n=6, rho = (1, 2, 3, 4, 5, 0), as printed: PRINTED_BLOCKING_N6[i][b][j] is the
# concatenated digit string of S^b_{ij} (None on the diagonal).
PRINTED_BLOCKING_N6 = (
    ((None, "", "35", "24", "3", "2"), (None, "2345", "14", "15", "125", "134")),
    (("24", None, "0", "5", "0", "3"), ("35", None, "345", "024", "235", "024")),
    (("3", "35", None, "01", "", "1"), ("145", "04", None, "45", "0135", "034")),
    (("45", "4", "4", None, "012", "0"), ("12", "025", "015", None, "5", "124")),
    (("135", "05", "5", "05", None, "0123"), ("2", "23", "013", "12", None, "")),
    (("", "24", "13", "2", "1", None), ("1234", "03", "04", "014", "023", None)),
)
