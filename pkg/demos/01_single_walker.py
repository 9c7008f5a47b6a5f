# One Hadamard walker on the line: spreading, asymmetry and the half-line limit.
import numpy as np

from coinwalk import L, R, SYMMETRIC, evolve, position_distribution, half_line_split
from coinwalk.asymptotics import konno_density, asymptotic_half_line

t = 100

# Start at the origin with coin |L>.  Odd sites stay empty at even t.
dist = position_distribution(evolve(L, t))
print("total probability:", dist.p.sum())
print("occupied sites:", np.count_nonzero(dist.p), "of", dist.p.size)

# The mean position is linear in t (ballistic), unlike a classical walk.
x = dist.positions
mean = np.dot(x, dist.p)
sd = np.sqrt(np.dot(x**2, dist.p) - mean**2)
print(f"mean {mean:.3f}, spread {sd:.3f}, spread / t {sd / t:.3f}")

# Half-line weights for three coin states, next to their t -> infinity limit.
for name, c in [("L", L), ("R", R), ("sym", SYMMETRIC)]:
    pm, pp = half_line_split(position_distribution(evolve(c, 500)))
    lim = asymptotic_half_line(c)
    print(f"{name:>4}: P- at t=500 {pm:.4f}   limit {lim[0]:.4f}")

# Compare a coarse histogram of X/t with the limiting density.
edges = np.linspace(-0.75, 0.75, 16)
centres = 0.5 * (edges[1:] + edges[:-1])
hist, _ = np.histogram(x / t, bins=edges, weights=dist.p)
hist /= np.diff(edges)
for c_, h, f in zip(centres, hist, konno_density(centres, L)):
    print(f"x/t={c_:+.2f}  simulated {h:6.3f}  limit {f:6.3f}")
