"""Sector sums of prime reciprocals.

Thin Python layer over the native ``_core`` module. ``run`` and ``envelope``
return plain dicts with the same layout as the command-line JSON output.
"""

import json

from ._core import (  # noqa: F401
    BoundConstants,
    ConfigError,
    DomainError,
    OutOfRangeError,
    PhaseResult,
    PreconditionError,
    ResumeError,
    Sector,
    SectorParams,
    ShellId,
    ShellInterval,
    ShellKind,
    TripleCertificate,
    ValidationError,
    __version__,
    best_rational_approximation,
    check_triple,
    comparison_series_partial_sum,
    constants_of,
    find_N,
    is_prime,
    phase_of,
    positivity_threshold,
    prime_count,
    primes_up_to,
    rational_exponent_guess,
    scan_ray,
    series_crossing,
    shell_count_lower_bound,
    shell_index_of,
    shell_interval,
    shell_recip_lower_bound,
    shell_recip_two_fraction,
)
from . import _core


def run(y=10.0, alpha=0.0, K=0.5, limit=10**8, workers=1, with_timings=True):
    """Sieve, classify and aggregate; returns the report as a dict."""
    params = SectorParams(y, alpha, K)
    return json.loads(_core.run_json(params, limit, workers=workers, with_timings=with_timings))


def envelope(y=10.0, alpha=0.0, K=0.5, limit=10**8, workers=1):
    """Empirical envelope threshold; returns the envelope report as a dict."""
    return json.loads(_core.envelope_json(SectorParams(y, alpha, K), limit, workers))
