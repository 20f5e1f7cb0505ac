# %% [markdown]
# Two minimize statements flattened into one objective.
#
# By default the last statement in the file is the most significant one.

# %%
from smodels2pb.mapping import decode_objective
from smodels2pb.oracle import enumerate_pb_models
from smodels2pb.program import ChoiceRule, MinimizeStatement, Program, neg, pos
from smodels2pb.translate import translate

a, b, c = 1, 2, 3
prog = Program((
    ChoiceRule((a, b, c)),
    MinimizeStatement(0, ((1, pos(a)), (2, pos(b)))),
    MinimizeStatement(1, ((3, neg(c)), (1, pos(b)))),
))
tr = translate(prog)
print(tr.objective.levels, "offset", tr.objective.offset)

# %%
for m in enumerate_pb_models(tr.theory, tr.objective, optimal_only=False):
    flat = tr.objective.value(m) - tr.record.offset
    print(sorted(m & {a, b, c}), "o-line value", flat, "->", decode_objective(flat, tr.record))

# %%
best = enumerate_pb_models(tr.theory, tr.objective)
print("optimum:", [sorted(m & {a, b, c}) for m in best])
