"""Regenerate the envelope-table golden files from hand-transcribed entries.

The entry strings below were copied by hand from the published
multiplication tables (with the family parameter instantiated at 0, 1, 2),
written in the compact linear-combination syntax the table renderer uses:
terms in basis order, coefficient 1 omitted, "." for zero.  Only the
column layout is produced by code (the same ``render_grid`` the live
renderer calls), so these files stay an independent record of the expected
values rather than a snapshot of program output.

Run from the repository root:  python tools/make_envelope_goldens.py
"""

from pathlib import Path

from algforge.systems import render_grid

BASIS = ["x", "y", "xx", "xy", "yx", "yy"]

TABLES = {
    "sys2d-1": [
        ["xx", "xy", ".", "-y", "y", "."],
        ["yx", "yy", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
        ["y", ".", ".", "yy", "-yy", "."],
        ["-y", ".", ".", "-yy", "yy", "."],
        [".", ".", ".", ".", ".", "."],
    ],
    "sys2d-2": [
        ["xx", "xy", ".", "-2*x", "2*x", "."],
        ["yx", "yy", ".", "2*y", "-2*y", "."],
        [".", ".", ".", ".", ".", "."],
        ["2*x", "-2*y", ".", "2*xy+2*yx", "-2*xy-2*yx", "."],
        ["-2*x", "2*y", ".", "-2*xy-2*yx", "2*xy+2*yx", "."],
        [".", ".", ".", ".", ".", "."],
    ],
    "sys2d-3": [
        ["xx", "xy", ".", ".", ".", "."],
        ["yx", "yy", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
        [".", "x", ".", "-xx", "xx", "."],
        [".", ".", ".", ".", ".", "."],
        [".", "x", ".", "-xx", "xx", "."],
    ],
    "sys2d-4": [
        ["xx", "xy", ".", ".", ".", "."],
        ["yx", "yy", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
        [".", "-x", ".", "xx", "-xx", "."],
        [".", ".", ".", ".", ".", "."],
        [".", "x", ".", "-xx", "xx", "."],
    ],
    # family <x,y,y> = z x, <y,y,y> = (1-z) x at z = 0, 1, 2:
    # row xy:  y-entry z x, xy-entry -z xx, yx-entry z xx
    # row yy:  y-entry (1-z) x, xy-entry (z-1) xx, yx-entry (1-z) xx
    "sys2d-5-zeta0": [
        ["xx", "xy", ".", ".", ".", "."],
        ["yx", "yy", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
        [".", "x", ".", "-xx", "xx", "."],
    ],
    "sys2d-5-zeta1": [
        ["xx", "xy", ".", ".", ".", "."],
        ["yx", "yy", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
        [".", "x", ".", "-xx", "xx", "."],
        [".", ".", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
    ],
    "sys2d-5-zeta2": [
        ["xx", "xy", ".", ".", ".", "."],
        ["yx", "yy", ".", ".", ".", "."],
        [".", ".", ".", ".", ".", "."],
        [".", "2*x", ".", "-2*xx", "2*xx", "."],
        [".", ".", ".", ".", ".", "."],
        [".", "-x", ".", "xx", "-xx", "."],
    ],
}


def main() -> None:
    out_dir = Path(__file__).resolve().parent.parent / "src" / "algforge" / "data" / "goldens"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, entries in TABLES.items():
        path = out_dir / f"envelope-{name}.txt"
        path.write_text(render_grid(BASIS, entries))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
