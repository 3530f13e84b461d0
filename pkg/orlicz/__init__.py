"""
Orlicz norms of random subsystems of bounded orthonormal systems

Compute Luxemburg norms on finite probability spaces, estimate the
operator norm of randomly selected subsystems (for example Fourier
characters) in Orlicz spaces close to L2 and run reproducible Monte
Carlo experiments around the size of such subsystems.

The `space`_ module holds finite probability spaces and functions,
the `young`_ module the Young function families and the `luxemburg`_
module the norm solver with its gradient. Orthonormal systems reside
in the `systems`_ module, subset sampling in `sampling`_ and operator
norm estimation in `opnorm`_. The experiments are plugins of the
`experiments`_ package. Exceptions and config are placed in the
`base`_ module, generic utilities in `utils`_ and option parsing in
the `cli`_ module.
"""

__version__ = "0.1.0"
