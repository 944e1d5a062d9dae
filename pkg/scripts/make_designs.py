"""Regenerate the bundled Steiner-system files in src/hamquery/data/.

S(2,4,25): developed from the first (lexicographic) pair of base blocks in
Z5 x Z5 whose differences cover every nonzero element exactly once.
S(2,8,64): the lines of the affine plane over GF(8).

Run from the repository root:  python scripts/make_designs.py
"""

import itertools
from pathlib import Path

from hamquery.codes import BlockDesign, format_blocks

DATA = Path(__file__).resolve().parents[1] / "src" / "hamquery" / "data"


def _pairs_once(design: BlockDesign) -> bool:
    seen = set()
    for b in design.blocks:
        for pair in itertools.combinations(sorted(b), 2):
            if pair in seen:
                return False
            seen.add(pair)
    return len(seen) == design.v * (design.v - 1) // 2


def s2_4_25() -> BlockDesign:
    pts = [(a, b) for a in range(5) for b in range(5)]
    nonzero = set(pts[1:])

    def diffs(block):
        return [((p[0] - q[0]) % 5, (p[1] - q[1]) % 5) for p in block for q in block if p != q]

    candidates = [blk for blk in itertools.combinations(pts, 4) if blk[0] == (0, 0)]
    candidates = [blk for blk in candidates if len(set(diffs(blk))) == 12]
    for b1, b2 in itertools.combinations(candidates, 2):
        d = diffs(b1) + diffs(b2)
        if len(d) == 24 and set(d) == nonzero:
            break
    else:
        raise RuntimeError("no difference family found")
    blocks = []
    for base in (b1, b2):
        for sa, sb in pts:
            blk = sorted(((p[0] + sa) % 5) * 5 + (p[1] + sb) % 5 for p in base)
            blocks.append(tuple(blk))
    return BlockDesign(25, tuple(blocks)), (b1, b2)


def _gf8_mul(a: int, b: int) -> int:
    out = 0
    for _ in range(3):
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & 0b1000:
            a ^= 0b1011  # x^3 + x + 1
    return out


def s2_8_64() -> BlockDesign:
    blocks = []
    for slope in range(8):
        for c in range(8):
            blocks.append(tuple(sorted(8 * x + (_gf8_mul(slope, x) ^ c) for x in range(8))))
    for c in range(8):
        blocks.append(tuple(8 * c + y for y in range(8)))
    return BlockDesign(64, tuple(blocks))


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    d25, base = s2_4_25()
    assert _pairs_once(d25) and d25.b == 50
    (DATA / "s2_4_25.txt").write_text(
        format_blocks(
            d25,
            (
                "Steiner system S(2,4,25): 50 blocks, every point pair in exactly one block.",
                "Points (a,b) of Z5 x Z5 are numbered 5a+b.  Blocks are the 25 translates",
                "of each of the base blocks below, whose differences cover every nonzero",
                "element of Z5 x Z5 exactly once:",
                f"  {base[0]}",
                f"  {base[1]}",
                "Generated by scripts/make_designs.py.",
            ),
        )
    )
    d64 = s2_8_64()
    assert _pairs_once(d64) and d64.b == 72
    (DATA / "s2_8_64.txt").write_text(
        format_blocks(
            d64,
            (
                "Steiner system S(2,8,64): the 72 lines of the affine plane AG(2,8).",
                "Point (x,y) of GF(8)^2 is numbered 8x+y (field elements as 3-bit integers,",
                "reduction polynomial x^3+x+1).  Lines y = a*x + c come first (a, c = 0..7),",
                "then the 8 vertical lines.  Generated by scripts/make_designs.py.",
            ),
        )
    )


if __name__ == "__main__":
    main()
