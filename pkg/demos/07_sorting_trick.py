"""Why the mesh builder hashes by angle instead of sorting.

Equidistribution of the irrational rotation means floor(2^J theta) is almost
a perfect hash: most points land in their own slot, collisions spill to the
nearest free slot, and one insertion-sort pass (linear plus inversions)
restores exact angle order.  The benchmark compares that against generating
the same orbit into flat arrays and heapsorting the (theta, x) pairs.
"""

from wavereg import SkewProductParams, benchmark_mesh_generation

params = SkewProductParams(sigma=1.699219, epsilon=0.039688, rng_seed=0)
for J in (16, 18, 20):
    r = benchmark_mesh_generation(params, 10**5, J, repeats=3)
    print(
        f"J={J}: hash+insertion {r['hash_seconds'] * 1e3:7.1f} ms   "
        f"heapsort {r['heapsort_seconds'] * 1e3:7.1f} ms   "
        f"speedup {r['speedup']:.2f}x   displaced {r['displaced_fraction']:.1%}   "
        f"identical {r['identical_output']}"
    )

print(
    "\nBoth paths produce element-for-element identical meshes; the gap"
    "\nwidens with J because heapsort's cache behaviour degrades while the"
    "\nhash path stays one nearly-sequential pass."
)
