#!/usr/bin/env python3
"""Turn a one-label-per-line node label file into a truth TSV.

Line i (1-based) of the input holds the label of vertex "i", which is how the
contact-school hypergraph releases number their nodes. Their hyperedge files
are already comma-separated edge lists and need no conversion.
"""
import argparse
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("labels", help="node label file, one label per line")
    parser.add_argument("out", help="output TSV (vertex<TAB>cluster)")
    parser.add_argument("--first-index", type=int, default=1, help="name of the vertex on line 1")
    args = parser.parse_args()

    with open(args.labels, encoding="utf-8") as source:
        labels = [line.strip() for line in source if line.strip()]
    with open(args.out, "w", encoding="utf-8") as sink:
        for offset, label in enumerate(labels):
            sink.write(f"{args.first_index + offset}\t{label}\n")
    print(f"wrote {len(labels)} vertices", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
