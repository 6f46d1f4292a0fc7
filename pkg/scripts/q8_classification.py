"""Central extensions of Q8 by Z/8, with the two negative controls
(D4 in place of Q8, and Z/2 in place of Z/8).

    python scripts/q8_classification.py [--json out.json]
"""

from __future__ import annotations

import argparse
import json

from bmcert import catalog
from bmcert.certify import verify_q8_proposition
from bmcert.cohomo import h2
from bmcert.extensions import classify_extensions
from bmcert.finab import FinAb


def describe(name: str, modulus: int) -> dict:
    G = catalog.get(name)
    A = FinAb([modulus])
    H = h2(G, A)
    types = classify_extensions(G, A)
    return {
        "group": name,
        "coefficients": modulus,
        "h2": H.structure.to_json(),
        "h2_order": H.order,
        "types": [{"classes": [list(c) for c in t.classes], "split": t.split} for t in types],
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", help="write the results to this file")
    args = ap.parse_args()
    cert = verify_q8_proposition()
    print(cert.summary())
    rows = [describe("Q8", 8), describe("D4", 8), describe("Q8", 2)]
    for r in rows:
        print(f"\n{r['group']} by Z/{r['coefficients']}: H^2 = {r['h2'] or [0]} (order {r['h2_order']}), {len(r['types'])} types")
        for t in r["types"]:
            print(f"  {'split    ' if t['split'] else 'non-split'} classes {t['classes']}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"certificate": cert.to_json(), "classifications": rows}, fh, indent=1)


if __name__ == "__main__":
    main()
