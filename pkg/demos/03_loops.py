# %% [markdown]
# Positive loops and level ranking.
#
# Completion alone accepts `{a, b}` for `a :- b. b :- a.`; the atoms
# support each other. Level ranking rejects it.

# %%
from smodels2pb.oracle import check_bijection, enumerate_pb_models
from smodels2pb.program import BasicRule, Program, neg, pos
from smodels2pb.translate import translate

a, b, c = 1, 2, 3
loop = Program((BasicRule(a, (pos(b),)), BasicRule(b, (pos(a),))))
tr = translate(loop)
print("PB models:", [sorted(m & {a, b}) for m in enumerate_pb_models(tr.theory)])

# %% [markdown]
# Give the loop an external way in. Now `{a, b}` is stable, and so is `{c}`.
# Each stable model has exactly one PB model, so the level bits are fixed:
# a is derived at level 0 and b at level 1.

# %%
prog = Program(loop.rules + (BasicRule(a, (neg(c),)), BasicRule(c, (neg(a),))))
tr = translate(prog)
bits = tr.encoding.level_bits
for m in enumerate_pb_models(tr.theory):
    levels = {x: sum(1 << i for i, v in enumerate(bits[x]) if v in m) for x in bits}
    print(sorted(m & {a, b, c}), "levels", levels)
print(check_bijection(prog, tr.theory, tr.record))

# %% [markdown]
# With only the weak half of the ranking, loops are still excluded, but the
# levels float: the same stable model shows up several times.

# %%
weak = translate(prog, strong_ranking=False)
print(check_bijection(prog, weak.theory, weak.record))
