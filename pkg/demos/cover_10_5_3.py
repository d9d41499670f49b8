"""Build C_2(10,5,3) of size 45230, verify it sequentially and with 8
shards, and save it."""

import sys
import time

from qcover.constructions import cover_10_5_3
from qcover.qcd import qcd_write
from qcover.verify import verify_cover

t = time.perf_counter()
d = cover_10_5_3()
print(f"built {len(d)} blocks (provenance {d.provenance}) in {time.perf_counter() - t:.1f} s")
for shards, workers in ((1, 1), (8, 8)):
    t = time.perf_counter()
    rep = verify_cover(d, shards=shards, workers=workers)
    print(f"{shards} shard(s): {rep.covered}/{rep.total_r_subspaces} covered "
          f"in {time.perf_counter() - t:.1f} s")
path = sys.argv[1] if len(sys.argv) > 1 else "C2_10_5_3.qcd"
qcd_write(d, path)
print("written to", path)
