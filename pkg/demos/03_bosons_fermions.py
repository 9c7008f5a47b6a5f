# Indistinguishable walkers created at the origin with opposite coins.
import numpy as np

from coinwalk import bell_state
from coinwalk.pair import (
    boson_joint_distribution,
    fermion_joint_distribution,
    joint_distribution_distinguishable,
    p_same_side,
)

t = 60
b = boson_joint_distribution(t)
f = fermion_joint_distribution(t)

# Ordered pairs (m >= n); each physical outcome appears once.
print("boson total:", b.total(), " fermion total:", f.total())
print("fermion double occupancy:", np.trace(f.p))
print("boson double occupancy:  ", np.trace(b.p))

# Same-side probability tracks the psi+ / psi- distinguishable pairs step by step.
for s in (10, 20, 40, 60):
    pb = p_same_side(boson_joint_distribution(s))
    pf = p_same_side(fermion_joint_distribution(s))
    pp = p_same_side(joint_distribution_distinguishable(bell_state("psi+"), s))
    pm = p_same_side(joint_distribution_distinguishable(bell_state("psi-"), s))
    print(f"t={s:3d}  boson {pb:.6f} psi+ {pp:.6f}   fermion {pf:.6f} psi- {pm:.6f}")
