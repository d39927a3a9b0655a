# The whole catalog: does every (group, p) have a commuting p-base of size <= 2?
import time

from pbase import catalog, run_harness

t = time.time()
res = run_harness(catalog())
sizes = {}
for r in res.reports:
    sizes[r.size] = sizes.get(r.size, 0) + 1
print("rows:", len(res.reports))
print("minimal sizes seen:", dict(sorted(sizes.items())))
print("violations:", res.violations or "none")
print(f"{time.time() - t:.1f}s")
