//! Distance oracles and routing schemes in the HYBRID network model, with a
//! round-accurate simulator and generators for the matching lower-bound
//! instances.

pub mod bits;
pub mod bounds;
pub mod graphcore;
pub mod hybridsim;
pub mod lowerbound;
pub mod schemes;
pub mod surd;
