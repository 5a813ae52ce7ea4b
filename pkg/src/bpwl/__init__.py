"""Weight modules of the Bershadsky-Polyakov algebra at admissible levels.

Subpackages and modules:

* :mod:`bpwl.scalars`    exact rationals and the symbolic level field
* :mod:`bpwl.bpcore`     weight-level formulas (spectral flow, top spaces, Casimir)
* :mod:`bpwl.minmod`     W3 minimal-model and singlet spectra
* :mod:`bpwl.classifier` classification tables
* :mod:`bpwl.qseries`    vacuum string functions
* :mod:`bpwl.modes`      exact mode action of the free-field realisation
"""

__version__ = "0.1.0"
