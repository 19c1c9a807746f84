"""Regenerate tests/fixtures/realizable_distances.json.

Closed-form values are evaluated with mpmath at 40 digits; four-decimal rows
are copied as printed. Matrices (1) and (6) are not symmetric as printed and
are read from their lower triangle.

usage: python3 tools/make_distance_fixtures.py > tests/fixtures/realizable_distances.json
"""
import json
import sys

from mpmath import mp, mpf, nstr, sqrt

mp.dps = 40

# Five-point label matrices as printed, keyed by their table number.
MATRICES = {
    1: [[0, 1, 2, 2, 3], [1, 0, 3, 4, 4], [2, 3, 0, 4, 4], [2, 4, 4, 0, 4], [3, 3, 4, 4, 0]],
    2: [[0, 1, 2, 2, 3], [1, 0, 3, 4, 4], [2, 3, 0, 3, 4], [2, 4, 3, 0, 4], [3, 4, 4, 4, 0]],
    3: [[0, 1, 2, 2, 3], [1, 0, 4, 4, 4], [2, 4, 0, 3, 3], [2, 4, 3, 0, 4], [3, 4, 3, 4, 0]],
    4: [[0, 1, 2, 2, 4], [1, 0, 3, 4, 4], [2, 3, 0, 3, 3], [2, 4, 3, 0, 4], [4, 4, 3, 4, 0]],
    5: [[0, 1, 2, 3, 3], [1, 0, 3, 4, 4], [2, 3, 0, 2, 4], [3, 4, 2, 0, 4], [3, 4, 4, 4, 0]],
    6: [[0, 1, 2, 3, 3], [1, 0, 4, 2, 4], [2, 4, 0, 2, 3], [3, 2, 4, 0, 4], [3, 4, 3, 4, 0]],
    7: [[0, 1, 3, 2, 3], [1, 0, 2, 4, 4], [3, 2, 0, 4, 3], [2, 4, 4, 0, 4], [3, 4, 3, 4, 0]],
    8: [[0, 1, 2, 3, 3], [1, 0, 4, 4, 4], [2, 4, 0, 2, 3], [3, 4, 2, 0, 4], [3, 4, 3, 4, 0]],
    9: [[0, 1, 2, 3, 4], [1, 0, 2, 4, 4], [2, 2, 0, 3, 3], [3, 4, 3, 0, 4], [4, 4, 3, 4, 0]],
    10: [[0, 1, 2, 3, 4], [1, 0, 2, 4, 4], [2, 2, 0, 3, 4], [3, 4, 3, 0, 3], [4, 4, 4, 3, 0]],
    11: [[0, 1, 2, 4, 3], [1, 0, 3, 2, 4], [2, 3, 0, 4, 3], [4, 2, 4, 0, 4], [3, 4, 3, 4, 0]],
    12: [[0, 1, 2, 3, 4], [1, 0, 3, 4, 4], [2, 3, 0, 2, 3], [3, 4, 2, 0, 4], [4, 4, 3, 4, 0]],
    13: [[0, 1, 2, 4, 3], [1, 0, 3, 4, 4], [2, 3, 0, 2, 3], [4, 4, 2, 0, 4], [3, 4, 3, 4, 0]],
    14: [[0, 1, 2, 3, 4], [1, 0, 3, 4, 4], [2, 3, 0, 3, 4], [3, 4, 3, 0, 2], [4, 4, 4, 2, 0]],
    15: [[0, 1, 3, 2, 4], [1, 0, 2, 4, 4], [3, 2, 0, 3, 3], [2, 4, 3, 0, 4], [4, 4, 3, 4, 0]],
    16: [[0, 1, 2, 3, 4], [1, 0, 4, 3, 4], [2, 4, 0, 2, 4], [3, 3, 2, 0, 3], [4, 4, 4, 3, 0]],
    17: [[0, 1, 2, 3, 4], [1, 0, 4, 2, 4], [2, 4, 0, 3, 3], [3, 2, 3, 0, 4], [4, 4, 3, 4, 0]],
    18: [[0, 1, 2, 4, 3], [1, 0, 4, 4, 3], [2, 4, 0, 2, 3], [4, 4, 2, 0, 4], [3, 3, 3, 4, 0]],
    19: [[0, 1, 2, 4, 3], [1, 0, 4, 4, 3], [2, 4, 0, 2, 4], [4, 4, 2, 0, 3], [3, 3, 4, 3, 0]],
    20: [[0, 1, 2, 3, 4], [1, 0, 4, 4, 4], [2, 4, 0, 2, 3], [3, 4, 2, 0, 3], [4, 4, 3, 3, 0]],
    21: [[0, 1, 2, 4, 4], [1, 0, 3, 3, 4], [2, 3, 0, 2, 3], [4, 3, 2, 0, 4], [4, 4, 3, 4, 0]],
    22: [[0, 1, 2, 4, 4], [1, 0, 3, 3, 4], [2, 3, 0, 2, 4], [4, 3, 2, 0, 3], [4, 4, 4, 3, 0]],
    23: [[0, 1, 2, 4, 4], [1, 0, 4, 3, 4], [2, 4, 0, 3, 3], [4, 3, 3, 0, 2], [4, 4, 3, 2, 0]],
    24: [[0, 1, 3, 3, 4], [1, 0, 3, 4, 4], [3, 3, 0, 2, 2], [3, 4, 2, 0, 4], [4, 4, 2, 4, 0]],
    25: [[0, 1, 3, 3, 4], [1, 0, 4, 3, 4], [3, 4, 0, 2, 2], [3, 3, 2, 0, 4], [4, 4, 2, 4, 0]],
    26: [[0, 1, 4, 3, 3], [1, 0, 4, 3, 4], [4, 4, 0, 2, 2], [3, 3, 2, 0, 4], [3, 4, 2, 4, 0]],
    27: [[0, 1, 2, 4, 4], [1, 0, 4, 3, 4], [2, 4, 0, 2, 3], [4, 3, 2, 0, 3], [4, 4, 3, 3, 0]],
}

# Row position -> (printed label, d2, d3, d4). Strings are mpmath expressions
# for closed-form rows and printed decimals for the others.
ROWS = {
    1: ("(1)", "sqrt((6-3*sqrt(2)-sqrt(6*(3-2*sqrt(2))))/(2*(2-sqrt(2))))", "sqrt((2-sqrt(2))/2)",
        "sqrt((4-2*sqrt(2)-sqrt(6*(3-2*sqrt(2))))/2)"),
    2: ("(2)", "sqrt((4-sqrt(3))/2)", "sqrt((2-sqrt(3))/2)", "1/sqrt(2)"),
    3: ("(3)", "sqrt((1+sqrt(3))/2)", "(-1+sqrt(3+2*sqrt(3)))/2", "sqrt(2-2*sqrt(-3+2*sqrt(3)))/2"),
    4: ("(4)", "1.2091", "0.5028", "0.8135"),
    5: ("(5)", "sqrt((13+sqrt(73))/2)/2", "sqrt((23+3*sqrt(73))/2)/2", "sqrt((9+sqrt(73))/2)/2"),
    6: ("(6)", "1/sqrt(2)", "sqrt((3+sqrt(6))/6)", "sqrt(mpf(3)/2+sqrt(mpf(3)/2))"),
    7: ("(7)", "1/sqrt(3)", "sqrt(mpf(2)/3)", "sqrt(1+sqrt(mpf(2)/3))"),
    8: ("(10)", "0.2757", "0.5107", "0.7621"),
    9: ("(9)", "sqrt(2-sqrt(3))", "sqrt((2-sqrt(3))/2)", "1/sqrt(2)"),
    10: ("(10)", "sqrt(2*(4-sqrt(13))/(-1+sqrt(13)))", "sqrt((4-sqrt(13))/3)", "sqrt((-1+sqrt(13))/6)"),
    11: ("(11)", "sqrt((-35+19*sqrt(13))/(17*(9-sqrt(13))))", "sqrt((9-sqrt(13))/34)", "sqrt((9-sqrt(13))/34)"),
    12: ("(12)", "sqrt((1+sqrt(3))/2)", "(-1+sqrt(3+2*sqrt(3)))/2", "1/sqrt(2+mpf(3)**(mpf(1)/4)*sqrt(2))"),
    13: ("(13)", "0.3383", "0.8135", "0.5028"),
    14: ("(14)", "sqrt(8-3*sqrt(7))", "sqrt(2*(45-17*sqrt(7))/(8-3*sqrt(7)))", "sqrt(3-sqrt(7))"),
    15: ("(15)", "1.9696", "1.5321", "2.8794"),
    16: ("(16)", "0.7597", "1.2293", "0.5112"),
    17: ("(17)", "sqrt(4+sqrt(13))", "(3+sqrt(13))/2", "sqrt((3+sqrt(13))/2)"),
    18: ("(18)", "0.3976", "0.5304", "0.7944"),
    19: ("(19)", "1.0879", "0.5154", "0.6344"),
    20: ("(20)", "1.3275", "2.0277", "1.0730"),
    21: ("(21)", "1.1578", "0.9345", "1.8686"),
    22: ("(22)", "1.1561", "0.6707", "0.5801"),
    23: ("(23)", "sqrt(8-3*sqrt(7))", "sqrt((45-17*sqrt(7))/(8-3*sqrt(7)))", "sqrt(2*(45-17*sqrt(7))/(8-3*sqrt(7)))"),
    24: ("(24)", "0.3107", "0.5028", "0.6180"),
    25: ("(25)", "sqrt(4-sqrt(7))/3", "sqrt((13-sqrt(7))/(4-sqrt(7)))/3", "(-1+sqrt(7))/3"),
    26: ("(26)", "0.6599", "1.3930", "0.8124"),
    27: ("(27)", "sqrt(2)", "sqrt(2*(3-sqrt(7)))", "sqrt(3-sqrt(7))"),
}

# Rows whose values realize a different matrix than their position.
REALIGNED = {4: 5, 5: 6, 6: 4}

NOTES = {
    4: "values realize the class of matrix (5), not matrix (4)",
    5: "values realize the class of matrix (6), not matrix (5)",
    6: "values realize the class of matrix (4), not matrix (6)",
    8: "printed with label (10); the matrix is table entry (8)",
    11: "d3 and d4 are printed equal; the solver finds d3 ~ 0.72389 for this class",
}


def symmetrize(rows):
    n = len(rows)
    return [[rows[max(i, j)][min(i, j)] for j in range(n)] for i in range(n)]


def main():
    out = []
    for position, (label, *exprs) in sorted(ROWS.items()):
        closed = not all(e.replace(".", "", 1).isdigit() for e in exprs)
        matrix_id = REALIGNED.get(position, position)
        printed = MATRICES[matrix_id]
        rows = symmetrize(printed)
        values = [eval(e, {"sqrt": sqrt, "mpf": mpf}) if closed else mpf(e) for e in exprs]
        entry = {
            "position": position,
            "printed_label": label,
            "matrix_id": matrix_id,
            "kind": "closed_form" if closed else "numeric",
            "matrix": {"rows": rows},
            "assignment": {"1": 1.0, **{str(k + 2): float(v) for k, v in enumerate(values)}},
            "decimal": {str(k + 2): nstr(v, 30) for k, v in enumerate(values)},
            "expressions": {str(k + 2): e for k, e in enumerate(exprs)},
        }
        if rows != printed:
            entry["symmetrized"] = True
        if position in NOTES:
            entry["note"] = NOTES[position]
        out.append(entry)
    json.dump({"n": 5, "rows": out}, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
