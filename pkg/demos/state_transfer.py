"""
The following snippet transfers the superposition 0.6|g> + 0.8|e> from atom A
to atom B and compares the final state with the expected one.
"""

import numpy as np

from qarray import evolve_effective
from qarray.dynamics import fidelity, product_state, pure_density_matrix, transfer_target
from qarray.interaction import atom_atom_coupling, protocol_times
from qarray.model import frame_from_squeezing

frame = frame_from_squeezing(1.5, J=10.0)
G_lj = atom_atom_coupling(10.0, frame.G_mod, frame.J_mod, 6)
_, t_transfer = protocol_times(G_lj)

rho0 = pure_density_matrix(product_state(0.6, 0.8))
_, rho = evolve_effective(G_lj, 1e-3, rho0, np.linspace(0.0, t_transfer, 401), d=6)
print (fidelity(rho, transfer_target(0.6, 0.8, 6)))
