"""The four maximal tractable subalgebras, the hardness kernels and R_5^9."""
from __future__ import annotations

from .algebra import PP_PPI, Relation, Subclass

# Membership of every relation in R_5^28, R_5^20, R_5^17, R_5^14 (in that
# column order), transcribed row by row.
_TABLE = """
{}               28 20 17 14
{DR}             28 20
{PO}             28 20
{DR,PO}          28 20
{PP}             28 14
{DR,PP}          28 20
{PO,PP}          28
{DR,PO,PP}       28 20
{PPI}            28 14
{DR,PPI}         28 20
{PO,PPI}         28
{DR,PO,PPI}      28 20
{PP,PPI}         14
{DR,PP,PPI}      20 14
{PO,PP,PPI}      28 14
{DR,PO,PP,PPI}   28 20 14
{EQ}             28 20 17 14
{DR,EQ}          28 20 17
{PO,EQ}          28 20 17
{DR,PO,EQ}       28 20 17
{PP,EQ}          28 17 14
{DR,PP,EQ}       28 20 17
{PO,PP,EQ}       28 17
{DR,PO,PP,EQ}    28 20 17
{PPI,EQ}         28 17 14
{DR,PPI,EQ}      28 20 17
{PO,PPI,EQ}      28 17
{DR,PO,PPI,EQ}   28 20 17
{PP,PPI,EQ}      17 14
{DR,PP,PPI,EQ}   20 17 14
{PO,PP,PPI,EQ}   28 17 14
TOP              28 20 17 14
"""


def _columns() -> dict[int, Subclass]:
    cols: dict[int, list[Relation]] = {28: [], 20: [], 17: [], 14: []}
    for line in _TABLE.strip().splitlines():
        rel, *marks = line.split()
        for m in marks:
            cols[int(m)].append(Relation.parse(rel))
    return {k: Subclass(v) for k, v in cols.items()}


_COLS = _columns()
R5_28 = _COLS[28]
R5_20 = _COLS[20]
R5_17 = _COLS[17]
R5_14 = _COLS[14]

R5_9 = Subclass([Relation.parse("{PP,EQ}")] + [r | PP_PPI for r in Relation.all()])

C1 = Subclass.parse("{PO} {PP,PPI}")
C2 = Subclass.parse("{DR,PO} {PP,PPI}")

# Order matters: classify() and the verification report list members this way.
MAXIMAL_TRACTABLE: dict[str, Subclass] = {
    "R_5^28": R5_28,
    "R_5^20": R5_20,
    "R_5^17": R5_17,
    "R_5^14": R5_14,
}
KERNELS: dict[str, Subclass] = {"C1": C1, "C2": C2}
