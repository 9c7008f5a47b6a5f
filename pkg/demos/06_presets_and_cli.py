# Canned experiments, the same ones the command line runs.
import subprocess
import sys

from coinwalk.experiments import PRESETS, preset, run

for name in PRESETS:
    res = run(preset(name))
    print(f"{name:>15}  passed={res.passed}  tables={list(res.tables)}")

# The command-line front end prints a summary on stderr and the table on stdout.
out = subprocess.run(
    [sys.executable, "-m", "coinwalk", "asymptote", "--state", "bell:phi+"],
    capture_output=True, text=True, check=True,
)
print("asymptote of phi+:", out.stdout.strip())
