"""Numerics against the weak-drive closed forms.

The closed-form flux and g2(0) of the two-photon line hold for weak drives.
The table shows the relative error growing with the drive strength.
"""
import warnings

from tprf import mhz
from tprf.scenario import validation_table

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    rows = validation_table(mhz(-233.0), mhz(2.5), [0.02, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3])

print(f"{'eps':>5} {'flux num':>10} {'flux an':>10} {'err':>8} {'g2 num':>8} {'g2 an':>8} {'err':>8}")
for eps, fn, fa, fe, gn, ga, ge in rows:
    print(f"{eps:5.2f} {fn:10.5f} {fa:10.5f} {fe:8.2%} {gn:8.4f} {ga:8.4f} {ge:8.2%}")
