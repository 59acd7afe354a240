"""Regenerate the bundled fixtures in src/lensalex/data/.

Run from the repository root: python scripts/make_corpus.py
"""
import json
import os

from lensalex.build import braid_closure, braid_events, pierce, unlink_through
from lensalex.diagram import from_events
from lensalex.normalform import normalize
from lensalex.pd import mirror_pd

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "src", "lensalex", "data")


def fixtures():
    tref, tsig, _ = braid_events([1, 1, 1], 2, axis=False)
    fig8, fsig, _ = braid_events([1, -2, 1, -2], 3, axis=False)
    with open(os.path.join(OUT, "tables.json")) as fh:
        tables = json.load(fh)
    out = {}
    for p in (2, 3, 4):
        out[f"K0_p{p}"] = braid_closure([1, 1, 1], 2, p, 1, axis=False, name=f"K0_p{p}")
    for p in (2, 3, 5):
        out[f"K1_p{p}"] = pierce(tref, tsig, p, 1, (0, 0), name=f"K1_p{p}")
    for p in (3, 4):
        out[f"K2_p{p}"] = braid_closure([-1, -1, -1], 2, p, 1, name=f"K2_p{p}")
    out["L1_p3q1"] = unlink_through(1, 3, 1, name="L1_p3q1")
    out["L2_p5q2"] = unlink_through(2, 5, 2, name="L2_p5q2")
    out["L3_p5q2"] = unlink_through(3, 5, 2, name="L3_p5q2")
    out["fig8_p2"] = pierce(fig8, fsig, 2, 1, (0, 0), name="fig8_p2")
    out["fig8_p3"] = pierce(fig8, fsig, 3, 1, (0, 0), name="fig8_p3")
    out["clasp_p3"] = braid_closure([1, 1], 2, 3, 1, reverse=[1], name="clasp_p3")
    out["updown_p2"] = from_events(2, 1, [[("D", 0), ("B", 0), ("B", 1), ("D", 1)]], [], [1, -1],
                                   name="updown_p2")
    out["hopf2_p4"] = braid_closure([1, 1], 2, 4, 1, name="hopf2_p4")
    out["T25_p3"] = braid_closure([1, 1, 1, 1, 1], 2, 3, 2, name="T25_p3")
    out["K3_p4"] = braid_closure([1, -2, 1, -2], 3, 4, 1, name="K3_p4")
    pd = [tuple(x) for x in tables["L4a1"]["pd"]]
    out["ex3_L4a1_p3"] = normalize(mirror_pd(pd), 3, 1, keep_orientation=True, name="ex3_L4a1_p3")
    pd = [tuple(x) for x in tables["L10n42"]["pd"]]
    out["ex3_L10n42_p3"] = normalize(pd, 3, 1, name="ex3_L10n42_p3")
    return out


def main():
    names = []
    for name, d in fixtures().items():
        with open(os.path.join(OUT, name + ".json"), "w") as fh:
            fh.write(d.dumps() + "\n")
        names.append(name)
    with open(os.path.join(OUT, "corpus.manifest"), "w") as fh:
        fh.write("# one diagram per line: a JSON file, or\n")
        fh.write("# pd <name> <p> <q> <surgery component> <PD code>\n")
        for n in names:
            fh.write(n + ".json\n")
    print(f"wrote {len(names)} fixtures")


if __name__ == "__main__":
    main()
