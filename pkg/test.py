from qarray import CavityArrayClient, build_config

client = CavityArrayClient(build_config(preset='fig4-strong'), out_dir='results')

# effective two-qubit model at r = 1.5, atoms 6 sites apart
series = client.evolve()['effective']

print("-", series.max('fidelity_S'), "-")
