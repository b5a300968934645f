"""Regenerate the checked-in Ashley and 4-cycle certificates.

Both scripts pass through the 1x1 relator [1] of the 2-leaf rose. The
move lists below were found offline: loopless vertices of the Ashley
relator are removed by pushing their in-edges and deleting the dead row,
and the remaining small matrices were driven to [1] by a best-first
search over the same moves. Every script is replayed before it is written.
"""

import sys
from pathlib import Path

from udaf.certificates import (ASHLEY_ADJACENCY, FOURCYCLE_RELATOR, MoveScript,
                               concat_scripts, parse_move, reverse_script,
                               serialize_script, verify_script)
from udaf.matrices import identity, sub

ROSE2 = ((1,),)

ASHLEY_TO_ROSE2 = """
addrow 3 4; addrow 7 4; deldead 4; addrow 3 6; addrow 5 6; deldead 6
addrow 2 3; addrow 4 3; deldead 3; addrow 3 4; addrow 5 4; deldead 4
subcol 3 4; subcol 4 3; addcol 2 3; subcol 1 3; subcol 1 3; subcol 1 3
subcol 2 3; subcol 3 4; addrow 3 4; deldead 4; addrow 1 2; subcol 1 3
subrow 1 3; subrow 1 2; addrow 3 1; deldead 1; subrow 1 2; addrow 2 1
deldead 1
"""

FOURCYCLE_TO_ROSE2 = """
addrow 1 2; addrow 1 3; subrow 1 4; subrow 1 3; subrow 1 2; addrow 4 1
deldead 1; addrow 1 2; subrow 1 3; subrow 1 2; addrow 3 1; deldead 1
subrow 1 2; addrow 2 1; deldead 1
"""


def moves_of(text):
    return tuple(parse_move(tok.strip()) for line in text.split("\n")
                 for tok in line.split(";") if tok.strip())


def checked(script):
    report = verify_script(script)
    if not report.verified:
        raise SystemExit(f"certificate does not replay: {report.status}")
    return script


def main(out_dir):
    ashley = sub(ASHLEY_ADJACENCY, identity(8))
    to_rose = checked(MoveScript(ashley, moves_of(ASHLEY_TO_ROSE2), ROSE2))
    cycle_to_rose = checked(MoveScript(FOURCYCLE_RELATOR, moves_of(FOURCYCLE_TO_ROSE2), ROSE2))
    rose_to_cycle = checked(reverse_script(cycle_to_rose))
    ashley_to_cycle = checked(concat_scripts(to_rose, rose_to_cycle))
    out = Path(out_dir)
    (out / "rose2-to-fourcycle.txt").write_text(serialize_script(
        rose_to_cycle, "2-leaf rose [1] to the 4-cycle relator."))
    (out / "ashley-to-fourcycle.txt").write_text(serialize_script(
        ashley_to_cycle, "Ashley's eight-vertex relator to the 4-cycle relator,\n"
                         "passing through [1]. Regenerate with tools/build_certificates.py."))
    print(f"ashley-to-fourcycle: {len(ashley_to_cycle.moves)} moves")
    print(f"rose2-to-fourcycle: {len(rose_to_cycle.moves)} moves")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "src" / "udaf" / "data")
