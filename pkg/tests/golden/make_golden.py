"""Regenerate the bounds golden file straight from compute_bounds.

    python tests/golden/make_golden.py
"""

from pathlib import Path

from sdsets.bounds import compute_bounds, format_fraction

COLUMNS = ("n", "s", "gerzon", "dgs", "hegedus", "barg_musin", "dm")


def render(ns, ss) -> str:
    lines = ["\t".join(COLUMNS)]
    for n in ns:
        for s in ss:
            r = compute_bounds(n, s)
            cells = (r.n, r.s, r.gerzon, r.dgs, r.hegedus, format_fraction(r.barg_musin), r.dm)
            lines.append("\t".join(str(c) for c in cells))
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    out = Path(__file__).with_name("bounds_n3-10_s2-6.tsv")
    out.write_text(render(range(3, 11), range(2, 7)))
    print(f"wrote {out}")
