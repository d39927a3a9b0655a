# Exhaustive search for the smallest p-base inside one Sylow subgroup.
from pbase import enumerate_group, minimal_p_base

for desc, p in [("S:4", 2), ("S:6", 3), ("A:8", 3), ("GL:4:2", 3), ("PSL:2:9", 3)]:
    rep = minimal_p_base(enumerate_group(desc), p)
    counts = {k: c.enumerated for k, c in rep.counters.items()}
    print(f"{desc:8} p={p}  |P|={rep.sylow_order:<3} minimal size {rep.size}  "
          f"witness {[str(x) for x in rep.witness]}  candidates tried {counts}")
