"""A short tour: generators, a Hilbert basis, a group diameter and the S^G bound.

Run with ``python3 notebooks/walkthrough.py``.
"""

from latcone import Cone, generate_sg, hilbert_basis, pyramid_bound_report
from latcone.groups import AbelianGroup, diam_bfs, diam_formula
from latcone.hilbert import height

C = Cone([[0, 1], [2, -1]])
print("normalized generators:", C.normalized.rays)
for e in hilbert_basis(C):
    value, lam = height(C, e, C.normalized)
    print(f"  h = {e.vector}  trivial={e.trivial}  height={value}  lambda={tuple(map(str, lam))}")

G = AbelianGroup((2, 2))
print("Z/2 + Z/2: BFS diameter", diam_bfs(G), "closed formula", diam_formula(G))

for f in [(5,), (2, 4)]:
    rep = pyramid_bound_report(generate_sg(f))
    print(f"S^{f}: w^a = {rep.w_a}, bound = {rep.bound_eq4}, flags = {rep.flags}")
