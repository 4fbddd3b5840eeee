#!/usr/bin/env python3
"""Writes the bundled toy embedding table: words in the same cluster sit close together."""
import argparse

import numpy as np

CLUSTERS = [
    ["gun", "pistol", "knife", "sword"],
    ["rifle", "weapon", "axe", "dagger"],
    ["man", "figure", "person"],
    ["troll", "thief", "guard", "goblin", "dwarf", "monster"],
    ["closet", "cupboard", "wardrobe", "cabinet", "box", "chest", "room"],
    ["floor", "ground", "table", "shelf"],
    ["exit", "door", "passage", "gate", "way"],
    ["lamp", "lantern", "torch", "candle"],
    ["coin", "gold", "treasure", "diamond", "jewel", "gem"],
    ["key", "lock"],
    ["book", "note", "sign", "letter", "scroll", "map"],
    ["bread", "food", "water", "apple"],
    ["rope", "cord", "chain"],
    ["hills", "wall", "land", "cave", "lair", "hall", "corridor"],
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="embeddings.txt")
    ap.add_argument("--dim", type=int, default=24)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    # Orthonormal cluster centres, so unrelated words sit near zero similarity.
    q, _ = np.linalg.qr(rng.normal(size=(args.dim, len(CLUSTERS))))
    centres = q.T
    rows = []
    for c, words in enumerate(CLUSTERS):
        for w in words:
            rows.append((w, centres[c] + 0.1 * rng.normal(size=args.dim)))
    with open(args.out, "w") as f:
        f.write(f"{len(rows)} {args.dim}\n")
        for w, v in rows:
            f.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")


if __name__ == "__main__":
    main()
