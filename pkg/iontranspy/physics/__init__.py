from __future__ import absolute_import

from .transport import MsdCurve, NernstEinsteinParams, msd, final_msd, einstein_diffusivity, \
    nernst_einstein, diffusivity_from_conductivity, to_log10, from_log10
