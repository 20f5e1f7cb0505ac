# %% [markdown]
# The four benchmark families, at sizes small enough to search exhaustively.

# %%
import math

from smodels2pb.benchgen import (
    dominating_set,
    encoding,
    even_colouring,
    hex_strip,
    pigeonhole,
    vertex_cover,
    vertex_cover_budget,
)
from smodels2pb.oracle import enumerate_pb_models
from smodels2pb.translate import translate


def count(program):
    return len(enumerate_pb_models(translate(program).theory))


for m in range(1, 5):
    print(f"pigeons {m + 1} holes {m}: {count(pigeonhole(m + 1, m))} models;"
          f" pigeons {m} holes {m}: {count(pigeonhole(m, m))} (m! = {math.factorial(m)})")

# %%
print("even colouring 2x2, one edge split:", count(even_colouring(2, 2)))
print("even colouring 2x2, plain:", count(even_colouring(2, 2, subdivide=False)))

# %%
s = vertex_cover_budget(2, 2)
print(f"vertex cover 2x2 with S={s}:", count(vertex_cover(2, 2)), f"with S={s + 1}:", count(vertex_cover(2, 2, s + 1)))

# %%
v, e = hex_strip(3)
print(f"hex strip of 3: {len(v)} vertices, {len(e)} edges")
print("dominating set, 1 hexagon:", count(dominating_set(1)), "with budget 2:", count(dominating_set(1, budget=2)))

# %%
print(encoding("pigeonhole"))
