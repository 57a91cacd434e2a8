from qarray.array_client import CavityArrayClient
from qarray.boundstate import (BoundState, LatticeBoundState, bound_state, effective_jc, fit_localization_length,
                               lattice_bound_state, localization_length, solve_delta, wavefunction)
from qarray.config import PRESETS, RunConfig, build_config, default_config, resolve_params
from qarray.dynamics import (PureState, TimeSeries, bell_state, evolve_effective, evolve_lattice,
                             exchange_frequency, fidelity, lattice_initial_state, transfer_target)
from qarray.errors import QArrayError
from qarray.fockcheck import (DeviationReport, FockConfig, SparseOperator, build_full_hamiltonian,
                              frame_comparison, full_model_evolve, squeezed_vacuum_product)
from qarray.interaction import (EffectiveCoupling, atom_atom_coupling, cooperativity, coupling_sweep,
                                effective_coupling, protocol_times)
from qarray.model import (RegimeReport, SqueezedFrame, SystemParams, band_edge_detuning, squeezed_frame,
                          squeezing_parameter, validate_regime)

__version__ = '0.1.0'
