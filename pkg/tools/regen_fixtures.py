"""Rewrite the shipped fixture files from the instance definitions.

Run after an intentional change to a builder; the test suite checks that the
files on disk still match.
"""

from pathlib import Path

from caconn import figures
from caconn.cli import build_gadget

OUT = Path(__file__).resolve().parents[1] / "src" / "caconn" / "fixtures"


def main():
    OUT.mkdir(exist_ok=True)
    src = figures.source_fixtures()
    for name, text in sorted(src.items()):
        (OUT / name).write_text(text)
    from caconn.graph import serialize
    for name, (kind, source, expand) in sorted(figures.GOLDEN.items()):
        gd = build_gadget(kind, src[source], expand=expand)
        (OUT / name).write_text(serialize(gd.graph))
    print(f"wrote {len(src) + len(figures.GOLDEN)} files to {OUT}")


if __name__ == "__main__":
    main()
