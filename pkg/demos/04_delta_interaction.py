# A contact interaction: a different 4x4 coin wherever the walkers coincide.
import time

import numpy as np

from coinwalk import bell_state
from coinwalk.delta import (
    delta_coin_default,
    evolve_delta,
    joint_distribution_of,
    product_coin,
    ps_timeseries_delta,
)
from coinwalk.pair import ps_timeseries

C = delta_coin_default()
print("interaction coin is unitary:", np.allclose(C @ C.conj().T, np.eye(4)))

phi_m = bell_state("phi-")
t0 = time.perf_counter()
inter = ps_timeseries_delta(phi_m, 200)
print(f"200 interacting steps in {time.perf_counter() - t0:.1f} s")
free = ps_timeseries(phi_m, 200)

for s in (20, 50, 100, 150, 200):
    print(f"t={s:3d}  free {free.values[s]:.4f}  interacting {inter.values[s]:.4f}")
print("tail 160..200, interacting:", round(inter.tail_average(160, 200), 4))
print("tail 160..200, free:       ", round(free.tail_average(160, 200), 4))

# Where does the weight go?  Mostly onto a band around m = n.
p = joint_distribution_of(evolve_delta(phi_m, 100)).p
q = joint_distribution_of(evolve_delta(phi_m, 100, delta_coin=product_coin())).p
gap = np.abs(np.subtract.outer(np.arange(201), np.arange(201)))
print("mass with |m - n| <= 20: interacting", p[gap <= 20].sum().round(3), " free", q[gap <= 20].sum().round(3))

# Swapping the labels of the walkers does not leave p(m, n) invariant here.
print("max |p - p.T| at t=100:", np.abs(p - p.T).max())
