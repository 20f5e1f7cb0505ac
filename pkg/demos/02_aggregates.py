# %% [markdown]
# Weight rules become a guard atom plus two linear constraints.
#
# `p :- 2 <= [a=1, b=1].` is split into a choice between p and a fresh
# complement, plus the obligation p <=> (a + b >= 2). The obligation is
# written with big-M coefficients on the guard.

# %%
import itertools

from smodels2pb.pb import big_m, encode_equiv
from smodels2pb.program import neg, pos
from smodels2pb.transform import EquivConstraint

a, b, p = 1, 2, 3
eq = EquivConstraint(p, 2, ((1, pos(a)), (1, pos(b))))
print(big_m(eq))
for c in encode_equiv(eq):
    print(c)

# %% [markdown]
# Check every assignment: both constraints hold exactly when the guard
# agrees with the weighted sum.

# %%
for bits in itertools.product((0, 1), repeat=3):
    m = {x for x, on in zip((a, b, p), bits) if on}
    ok = all(c.satisfied_by(m) for c in encode_equiv(eq))
    print(bits, ok, (p in m) == eq.holds(m))

# %% [markdown]
# Negative bounds need the second coefficient to cover the whole positive
# range, not just `bound + sum`. With bound -5 and one weight 1 the guard
# must be forced true whatever x does.

# %%
eq = EquivConstraint(p, -5, ((1, neg(a)),))
print(big_m(eq))
print([all(c.satisfied_by(m) for c in encode_equiv(eq)) for m in (set(), {a}, {p}, {a, p})])
