//! Builtin fusion backends.

mod su2;
mod sun;
mod trivial;
mod u1;

pub use su2::{su2_decompose, Su2};
pub use sun::{
    dynkin_to_partition, lr_coefficients, partition_to_dynkin, partitions, sun_lr_decompose,
    weyl_dim, SuN,
};
pub use trivial::{Trivial, EPSILON};
pub use u1::U1;

use crate::error::{Error, Result};
use crate::fusion::Fusion;

/// Builds a builtin backend from a selector: `su2`, `su<N>`, `u1`, `trivial:<d>`.
pub fn backend_from_spec(spec: &str) -> Result<Fusion> {
    let spec = spec.trim();
    let bad = || Error::UnknownBackend(spec.to_string());
    match spec {
        "su2" => Ok(Fusion::new(Su2)),
        "u1" => Ok(Fusion::new(U1)),
        _ => {
            if let Some(d) = spec.strip_prefix("trivial:") {
                let d: u32 = d.parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Fusion::new(Trivial::new(d)))
            } else if let Some(n) = spec.strip_prefix("su") {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n < 2 {
                    return Err(bad());
                }
                Ok(Fusion::new(SuN::new(n)))
            } else {
                Err(bad())
            }
        }
    }
}
