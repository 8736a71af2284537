"""Regenerate the checked-in data files: python -m kumbrauer.fixtures [outdir]."""
import sys
from pathlib import Path

from .cohomology import h1_all_classes, table_json
from .galois_s6 import catalogue_json, enumerate_subgroup_classes
from .lattice_kit import ns_kummer_rank1


def regenerate(outdir):
    outdir = Path(outdir)
    classes = enumerate_subgroup_classes()
    (outdir / "s6_subgroups.json").write_text(catalogue_json(classes) + "\n")
    table = h1_all_classes(ns_kummer_rank1(), classes)
    (outdir / "h1_table.json").write_text(table_json(table, classes) + "\n")


if __name__ == "__main__":
    regenerate(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "data")
