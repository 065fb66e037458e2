"""Exact and sampled norm computations for systems of translates.

Submodules:

``stepfn``    exact piecewise-constant functions on the line
``dyadic``    Haar and Rademacher systems, sign-moment oracle
``systems``   translate systems, tail masses, Gram distances, constants
``embed``     partitions, conditional expectations, embeddings into l_p
``seqmodel``  sequences of coordinate functions indexed by the integers
``growth``    log-log growth fits
``cli``       command line experiment runner
"""

from .stepfn import Interval, StepFunction, lin_comb, lp_norm_p, restrict, translate

__version__ = "0.1.0"

__all__ = ["Interval", "StepFunction", "lin_comb", "lp_norm_p", "restrict", "translate"]
