# How the two routes scale on grids.
#
# Both routes share APSP, so only the relation phase is compared. On a grid
# m is about 2n, so all-pairs theta is about 4n^2 tests and the tree route
# about 2n^2; the fitted log-log slopes against n come out near 2 for both,
# with the tree route ahead by a constant factor.

import sys

from wgfactor.bench import rows_to_csv, run_bench, slopes

sizes = [int(s) for s in sys.argv[1:]] or [10, 20, 30, 40]
rows = run_bench("grid", sizes, seed=0)
print(rows_to_csv(rows))
for algo, s in slopes(rows).items():
    print(f"{algo}: slope {s:.2f}")
