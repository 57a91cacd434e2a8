"""
The following snippet shows how the photonic bound state around a single atom
spreads out as the parametric drive squeezes the cavity modes harder.
"""

from qarray import CavityArrayClient, build_config

client = CavityArrayClient(build_config(preset='fig2'), out_dir='results')

for r in [0.0, 1.0, 2.0]:
    params, state, oracle = client.bound_state(r)
    # xi is the localization length in sites, G_e the dressed coupling
    print (r, state.xi, state.G_e, oracle.delta - state.delta)

# writes results/boundstate.csv and results/boundstate_summary.csv
client.write_boundstate()
