# Companion-matrix bases in GL, SL and PSL.
# Matrices print row by row: "a,b;c,d" means [[a, b], [c, d]].
from pbase import enumerate_group, field_of_order, gl_base, psl_base, sl_base, verify_p_base

n, q = 2, 7
F = field_of_order(q)
for p in (2, 3, 7):
    for fam, build in (("GL", gl_base), ("SL", sl_base), ("PSL", psl_base)):
        G = enumerate_group(f"{fam}:{n}:{q}")
        delta = build(n, F, p)
        cert = verify_p_base(G, p, delta)
        print(f"{fam}({n},{q}) p={p}  delta={[str(x) for x in delta]}  |C(delta)|={cert.centralizer_order}"
              f"  commuting={cert.commutative}  ok={cert.verdict}")
