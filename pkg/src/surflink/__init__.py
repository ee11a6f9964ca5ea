"""surflink: surface-wave underwater RF link modeling.

Modules
-------
media      physical constants, media, complex permittivity, skin depth
surfwave   closed-form surface-wave parameters and the interface-pole check
halfspace  vertical dipole over a lossy half-space (spectral solver)
linkmodel  two-path link gain, probability grids, trial simulation, fitting
antenna    dielectric-loading scaling laws
cli        command-line interface
"""

__version__ = "0.1.0"
