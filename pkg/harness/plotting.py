"""
Standalone plotting script generation
"""

from pathlib import Path
from typing import Union

from numerics.errors import RecordWriteError

_TEMPLATE = '''#!/usr/bin/env python3
"""Plot capacity (solid) and spectral efficiency (dashed) versus P_TX."""

import csv
from collections import defaultdict

import matplotlib.pyplot as plt

CSV_PATH = {csv_path!r}

curves = defaultdict(lambda: {{"ptx": [], "cap": [], "se": []}})
with open(CSV_PATH, newline="") as f:
    for row in csv.DictReader(f):
        curve = curves[row["method"]]
        curve["ptx"].append(float(row["ptx_dbm"]))
        curve["cap"].append(float(row["mean_capacity"]))
        curve["se"].append(float(row["mean_spectral_efficiency"]))

fig, ax = plt.subplots(figsize=(7, 5))
for method, curve in curves.items():
    line, = ax.plot(curve["ptx"], curve["cap"], marker="o", label=f"{{method}} capacity")
    ax.plot(curve["ptx"], curve["se"], linestyle="--", color=line.get_color(), label=f"{{method}} spectral efficiency")
ax.set_xlabel("P_TX [dBm]")
ax.set_ylabel("bits/s/Hz")
ax.grid(True)
ax.legend()
plt.show()
'''


def write_plot_script(csv_path: Union[str, Path], script_path: Union[str, Path]) -> None:
    """Emit a matplotlib script that plots the records stored at ``csv_path``"""
    script_path = Path(script_path)
    try:
        script_path.write_text(_TEMPLATE.format(csv_path=str(csv_path)), encoding="utf-8")
    except OSError as e:
        raise RecordWriteError(f"cannot write plot script to {script_path}: {e}") from e
