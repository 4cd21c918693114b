use std::fmt;

use num_traits::{PrimInt, Unsigned};

/// Scalar type for job processing times.
///
/// Times are unsigned integers so that loads, sums and differences stay exact.
/// Every stored time widens losslessly to `u64`; all derived quantities
/// (loads, makespans, partition sums) are computed in `u64` regardless of the
/// stored width.
pub trait Time: PrimInt + Unsigned + Into<u64> + fmt::Debug + Send + Sync {}

impl<T> Time for T where T: PrimInt + Unsigned + Into<u64> + fmt::Debug + Send + Sync {}
