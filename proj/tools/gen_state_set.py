#!/usr/bin/env python3
"""Regenerate the ground state set shared by tras.ann and planning.ann.

state/1 succeeds exactly on the lists [(a,L1),(b,L2),(c,L3)] whose three
locations come from the six positions below, so the set has 6^3 = 216
elements.  Keep the output in sync with the state clause if positions ever
change; the annotation checker compares the two via the completion of
state, so a drift shows up as a refuted model obligation.

Usage: gen_state_set.py > block.txt, then paste into the .ann files.
"""

import itertools

POSITIONS = ["p", "q", "r", "top(a)", "top(b)", "top(c)"]


def main() -> None:
    states = [
        f"[(a,{l1}),(b,{l2}),(c,{l3})]"
        for l1, l2, l3 in itertools.product(POSITIONS, repeat=3)
    ]
    print("set s = {")
    for i in range(0, len(states), 4):
        row = " ; ".join(states[i : i + 4])
        tail = " ;" if i + 4 < len(states) else ""
        print(f"    {row}{tail}")
    print("}")


if __name__ == "__main__":
    main()
