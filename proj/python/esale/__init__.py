"""Python front end to the esale solver core."""

from ._esale import (
    CaseSpec,
    ConfigError,
    Error,
    GasParams,
    InadmissibleState,
    RunResult,
    benchmark_gas,
    entropy_vars,
    flux_audit,
    gcl_audit,
    ismail_roe_flux,
    log_mean,
    operator,
    operator_audit,
    physical_flux,
    reference_l2,
    run_case,
    state_from_entropy_vars,
    state_from_primitive,
    viscous_audit,
)


def run(case="vortex", **options):
    """Run a benchmark case; keyword options map onto CaseSpec fields."""
    spec = CaseSpec()
    spec.case = case
    for key, value in options.items():
        if not hasattr(spec, key):
            raise AttributeError(f"unknown case option: {key}")
        setattr(spec, key, value)
    return run_case(spec)
