# %% [markdown]
# From a ground program to OPB and back.
#
# The program below is what a grounder would emit for
#
#     a :- not b.   b :- not a.   c :- a.
#
# in smodels format (atom 2 = a, 3 = b, 4 = c).

# %%
from smodels2pb.opb import SolverOutput, write_opb, write_solver_output, parse_solver_output
from smodels2pb.mapping import check_stable, to_answer_set
from smodels2pb.oracle import enumerate_pb_models, enumerate_stable
from smodels2pb.smodels import parse_program
from smodels2pb.translate import translate

text = """1 2 1 1 3
1 3 1 1 2
1 4 1 0 2
0
2 a
3 b
4 c
0
B+
0
B-
0
1
"""
program = parse_program(text)
print(program.rules)

# %%
tr = translate(program)
print(write_opb(tr.theory, tr.objective))
print(tr.record.dumps())

# %% [markdown]
# Any PB solver will do from here. We stand in for one with the exhaustive
# search used by the tests, and print its answers the way a competition
# solver would.

# %%
for model in enumerate_pb_models(tr.theory):
    out = SolverOutput("SATISFIABLE", {v: v in model for v in range(1, tr.theory.num_vars + 1)})
    solver_text = write_solver_output(out)
    names = to_answer_set(parse_solver_output(solver_text), tr.record)
    atoms = {a for a, n in program.symbol_table.items() if n in names}
    print(solver_text.strip().replace("\n", " | "), "->", sorted(names), "stable:", check_stable(program, atoms))

# %%
print("oracle:", [sorted(program.symbol_table[a] for a in m) for m in enumerate_stable(program)])
