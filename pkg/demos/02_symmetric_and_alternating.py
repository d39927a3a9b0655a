# Explicit p-bases of S_n and A_n and how big their centralizers are.
from pbase import alternating_base, enumerate_group, symmetric_base, verify_p_base

n = 8
S = enumerate_group(f"S:{n}")
A = enumerate_group(f"A:{n}")

for p in (2, 3, 5, 7):
    for name, G, build in (("S", S, symmetric_base), ("A", A, alternating_base)):
        delta = build(n, p)
        cert = verify_p_base(G, p, delta)
        shown = ", ".join(map(str, delta)) or "(empty)"
        print(f"{name}{n} p={p}: {shown:40} |C|={cert.centralizer_order:<4} ok={cert.verdict}")
