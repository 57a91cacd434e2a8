import numpy as np

from qarray.errors import ParameterError


class SingleExcitationLattice(object):
    def __init__(self, params, frame, atoms=2, reference=0.0, losses=True):
        """
        Attributes
        ----------
        attr: params (SystemParams)
        - desc: Array size, atom positions, delta_q, gamma and kappa_edge are read from here

        attr: frame (SqueezedFrame)
        - desc: Supplies delta_s, J_mod and G_mod of the squeezed-frame model

        attr: atoms (int)
        - default: 2
        - desc: 1 couples only atom A (at j), 2 couples atom A at j and atom B at l

        attr: reference (float)
        - default: 0.0
        - desc: Energy subtracted from every single-excitation level; a rotating
                frame that leaves populations unchanged and keeps the matrix well scaled

        attr: losses (bool)
        - default: True
        - desc: Adds -i gamma/2 on the atoms and -i kappa_edge/2 on the two end sites

        Methods
        -------
        hamiltonian() -> dense complex matrix over (atom levels, photon sites)
        site_index(n : int) -> int
        atom_index(name : string) -> int
        """
        assert atoms in (1, 2), 'atoms must be 1 or 2'
        self.params = params
        self.frame = frame
        self.atoms = atoms
        self.reference = reference
        self.losses = losses
        self.sites = np.arange(-params.N, params.N + 1)
        self.n_sites = len(self.sites)
        self.dimension = atoms + self.n_sites

    @property
    def labels(self):
        names = ['A', 'B'][:self.atoms]
        return names + ['n={}'.format(n) for n in self.sites]

    @property
    def photon_slice(self):
        return slice(self.atoms, self.dimension)

    def atom_index(self, name):
        if name == 'A':
            return 0
        if name == 'B' and self.atoms == 2:
            return 1
        raise ParameterError('no coupled atom {!r} in this lattice'.format(name))

    def site_index(self, n):
        if not -self.params.N <= n <= self.params.N:
            raise ParameterError('site {} outside -N..N'.format(n))
        return self.atoms + n + self.params.N

    def hamiltonian(self):
        p, f = self.params, self.frame
        H = np.zeros((self.dimension, self.dimension), dtype=complex)

        atom_level = p.delta_q - self.reference
        if self.losses:
            atom_level = atom_level - 0.5j * p.gamma
        H[0, 0] = atom_level
        if self.atoms == 2:
            H[1, 1] = atom_level

        photons = np.arange(self.atoms, self.dimension)
        H[photons, photons] = f.delta_s - self.reference
        if self.losses and p.kappa_edge > 0:
            for n in (-p.N, p.N):
                H[self.site_index(n), self.site_index(n)] -= 0.5j * p.kappa_edge

        # hopping enters with a minus sign: -J_mod (b_n^dag b_{n+1} + h.c.)
        H[photons[:-1], photons[1:]] = -f.J_mod
        H[photons[1:], photons[:-1]] = -f.J_mod

        H[0, self.site_index(p.j)] += f.G_mod
        H[self.site_index(p.j), 0] += f.G_mod
        if self.atoms == 2:
            H[1, self.site_index(p.l)] += f.G_mod
            H[self.site_index(p.l), 1] += f.G_mod
        return H

    def photon_hamiltonian(self):
        """Hermitian photon block, used for band-energy expectation values."""
        return self.hamiltonian()[self.photon_slice, self.photon_slice].real + self.reference * np.eye(self.n_sites)
