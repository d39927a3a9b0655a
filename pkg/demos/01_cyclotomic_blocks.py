# Blocks of X^(p^n) - 1 over a small field, printed level by level.
from pbase import cyclo_factor, field_of_order, verify_factor_system

for p, q, n in [(3, 2, 2), (2, 7, 3), (3, 8, 3), (5, 4, 2)]:
    fs = cyclo_factor(p, field_of_order(q), n)
    print(f"X^{p**n} - 1 over F_{q}   e={fs.e} s={fs.s}")
    for g in fs.gamma:
        print(f"   level {g.level}  #{g.index}  {g.poly}")
    print("   verified:", bool(verify_factor_system(fs)))
    print()
