"""
The following snippet starts the two atoms in |eg> and follows the fidelity with
the maximally entangled state, with and without the parametric drive.
"""

from qarray import CavityArrayClient, build_config

for preset in ['fig4-weak', 'fig4-strong']:
    client = CavityArrayClient(build_config(preset=preset), out_dir='results')
    series = client.evolve()['effective']
    print (preset, series.max('fidelity_S'))
