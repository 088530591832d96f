pub mod kernel;
pub mod motifs;
pub mod predict;
pub mod sweep;
pub mod verify;

use resmotif::{
    generate_input, generate_reservoir, InputCouplingSpec, InputKind, RealMatrix, RealVector, Regime,
    ReservoirSpec, Seed,
};

use crate::error::{CliError, CliResult};

/// Couplings of one trial; `W` and `w` draw from separate derived streams.
pub fn couplings(
    n: usize,
    regime: Regime,
    nu: f64,
    input: InputKind,
    normalize: bool,
    seed: Seed,
) -> CliResult<(RealMatrix, RealVector)> {
    let reservoir = ReservoirSpec::new(n, regime, nu).map_err(as_usage)?;
    let input_spec = InputCouplingSpec::new(n, input, normalize).map_err(as_usage)?;
    Ok((generate_reservoir(&reservoir, seed.derive(0))?, generate_input(&input_spec, seed.derive(1))?))
}

/// Specification errors are configuration mistakes.
pub fn as_usage(e: resmotif::Error) -> CliError {
    match e {
        resmotif::Error::Contract(msg) | resmotif::Error::Parse(msg) => CliError::Usage(msg),
        other => CliError::Core(other),
    }
}
