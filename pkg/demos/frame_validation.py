"""
The following snippet checks the squeezed-frame model against the full driven
model on a tiny array truncated in photon number. Keep n_sites and n_max small,
the Hilbert space grows as (n_max + 1)^n_sites.
"""

from qarray import CavityArrayClient, build_config

client = CavityArrayClient(build_config(preset='fockcheck'))

report = client.validate()
print (report.as_list())
