import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skeinforge.diagram import from_braid, parse_pd  # noqa: E402

PD_TEXT = {
    "unknot": "PD[] U1",
    "kink": "PD[X[1,2,2,1]]",
    "clasp": "PD[X[3,4,4,1],X[2,2,3,1]]",
    "hopf": "PD[X[1,3,2,4],X[3,1,4,2]]",
    "trefoil": "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]",
    "figure_eight": "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]",
    "knot_5_1": "PD[X[1,6,2,7],X[3,8,4,9],X[5,10,6,1],X[7,2,8,3],X[9,4,10,5]]",
    "knot_5_2": "PD[X[1,4,2,5],X[3,8,4,9],X[5,10,6,1],X[9,6,10,7],X[7,2,8,3]]",
    "knot_6_1": "PD[X[1,4,2,5],X[7,10,8,11],X[3,9,4,8],X[9,3,10,2],X[5,12,6,1],X[11,6,12,7]]",
    "knot_6_2": "PD[X[1,4,2,5],X[5,10,6,11],X[3,9,4,8],X[9,3,10,2],X[7,12,8,1],X[11,6,12,7]]",
    "knot_6_3": "PD[X[4,2,5,1],X[8,4,9,3],X[12,9,1,10],X[10,5,11,6],X[6,11,7,12],X[2,8,3,7]]",
    "knot_8_19": "PD[X[4,2,5,1],X[8,4,9,3],X[9,15,10,14],X[5,13,6,12],X[13,7,14,6],"
    "X[11,1,12,16],X[15,11,16,10],X[2,8,3,7]]",
    "unlink2": "PD[] U2",
}


@pytest.fixture(scope="session")
def pds():
    out = {k: parse_pd(v) for k, v in PD_TEXT.items()}
    out["knot_8_20"] = from_braid([1, 1, 1, -2, -1, -1, -1, -2])
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
