"""Shared-cache multi-antenna coded caching.

The compiled core provides schedule construction, symbolic verification,
closed-form and counted DoF, and max-min beamforming. ``main`` runs the
command line driver in process.
"""

import sys

from ._core import (
    Association,
    BeamSolution,
    ConstraintViolation,
    DivByZero,
    EmptyNetwork,
    Error,
    NetworkConfig,
    NonIntegerTBar,
    RankDeficiency,
    Schedule,
    Strategy,
    Stream,
    Transmission,
    TxKind,
    UsageError,
    association_from_lengths,
    count_dof,
    coverage_check,
    decode_check,
    dof_closed_form,
    dof_m_average,
    dof_max_search,
    draw_channels,
    full_schedule,
    lemma1,
    make_config,
    maxmin_solve,
    nocc_dof,
    nocc_schedule,
    run_cli,
    sigma,
    subpacketization,
    symmetric_rate,
    total_subpacketization,
    validate_config,
    zf_precoders,
)

__all__ = [name for name in dir() if not name.startswith("_") and name != "sys"]


def main(argv=None):
    """Entry point of the ``dyncache`` console script."""
    code, out, err = run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
