"""
The following snippet sweeps the squeezing parameter at a fixed separation of
six sites and reports where the cooperativity C = (G_lj / gamma)^2 crosses one.
"""

from qarray import CavityArrayClient, build_config
from qarray.interaction import cooperativity_crossing

client = CavityArrayClient(build_config(preset='fig3c'), progress=True)

rows = client.coupling_table()
print (rows[0].abs_G_lj, rows[0].C)
print (cooperativity_crossing(rows, 6))
