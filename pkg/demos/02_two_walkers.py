# Two independent walkers: how the coin state sets the same-side probability.
import numpy as np

from coinwalk import L, R, SYMMETRIC, bell_state, product_state, hadamard_eigenbasis
from coinwalk.pair import ps_timeseries, interference_term, joint_distribution_distinguishable
from coinwalk.asymptotics import ps_entangled

states = {
    "L x R": product_state(L, R),
    "L x L": product_state(L, L),
    "S x S": product_state(SYMMETRIC, SYMMETRIC),
    "psi+": bell_state("psi+"),
    "psi-": bell_state("psi-"),
    "phi+": bell_state("phi+"),
    "phi-": bell_state("phi-"),
}

# Tail average over even steps 400..500 against the closed-form limit.
print(f"{'state':>6} {'simulated':>10} {'limit':>7}")
for name, c in states.items():
    tail = ps_timeseries(c, 500).tail_average(400, 500)
    print(f"{name:>6} {tail:10.4f} {ps_entangled(c):7.4f}")

# Bell states differ from their product cousins by one interference term.
I = np.mean([interference_term(t) for t in range(400, 501, 2)])
print("mean interference term:", round(I, 5))

# The limit spans [1/4, 3/4]; the ends are reached by Hadamard eigenstates.
chi_p, chi_m = hadamard_eigenbasis()
print("chi+ chi+:", ps_entangled(np.kron(chi_p, chi_p)))
print("chi+ chi-:", ps_entangled(np.kron(chi_p, chi_m)))

rng = np.random.default_rng(0)
z = rng.normal(size=(2000, 4)) + 1j * rng.normal(size=(2000, 4))
z /= np.linalg.norm(z, axis=1, keepdims=True)
vals = np.array([ps_entangled(v) for v in z])
print(f"2000 random states: min {vals.min():.4f}, max {vals.max():.4f}")

# Joint distribution is a (2t+1)x(2t+1) array; phi+ piles weight on the diagonal.
p = joint_distribution_distinguishable(bell_state("phi+"), 50).p
print("weight on |m - n| <= 10:", p[np.abs(np.subtract.outer(np.arange(101), np.arange(101))) <= 10].sum())
