//! Parameter fixtures shared by the benchmarks.

use metaracah::{FParams, Params};

pub fn reference(nmax: usize) -> (Params, FParams) {
    (Params::reference(nmax), FParams::reference())
}
