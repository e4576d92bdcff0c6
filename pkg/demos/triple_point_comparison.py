"""Closed four-case formulas for triple-point arrangements against the
general equal-monodromy computation."""

import json

from arrsheaf import catalog
from arrsheaf.charic import assembled_cycle, cc_pushforward, ps_report
from arrsheaf.localsys import LocalSystem

for name, A in (("braid", catalog.braid()), ("seven planes", catalog.braid_plus_generic())):
    for s in ("1/2", "1/3", f"1/{A.r}"):
        rep = ps_report(A, s)
        print(f"{name}, s = {s}: disagreements {rep['disagreements'] or 'none'}")
        if rep["disagreements"]:
            print("  closed form:", json.dumps(rep["closed_form"]))
            print("  pipeline:   ", json.dumps(rep["pipeline"]))

# Characteristic cycles add up along the decomposition.
B = catalog.braid()
for s in ("1/3", "1/2", "1/6"):
    same = assembled_cycle(B, LocalSystem.equal(6, s)) == cc_pushforward(B)
    print(f"braid, s = {s}: factor cycles sum to the pushforward: {same}")
