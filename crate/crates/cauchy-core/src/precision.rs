//! Global working precision for the multiprecision float scalars.
//!
//! Every [`crate::scalar::Bf`] created after a call to [`set_bits`] uses the
//! new precision. The default is 256 bits and can be overridden by the
//! `CAUCHY_PRECISION_BITS` environment variable before first use.

use std::sync::atomic::{AtomicU32, Ordering};

use once_cell::sync::Lazy;

pub const DEFAULT_BITS: u32 = 256;
pub const MIN_BITS: u32 = 64;
pub const MAX_BITS: u32 = 16_384;

static BITS: Lazy<AtomicU32> = Lazy::new(|| {
    let bits = std::env::var("CAUCHY_PRECISION_BITS")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .unwrap_or(DEFAULT_BITS);
    AtomicU32::new(bits.clamp(MIN_BITS, MAX_BITS))
});

/// Current working precision in bits.
pub fn bits() -> u32 {
    BITS.load(Ordering::Relaxed)
}

/// Sets the working precision in bits, clamped to `[MIN_BITS, MAX_BITS]`.
/// Returns the value actually installed.
pub fn set_bits(bits: u32) -> u32 {
    let clamped = bits.clamp(MIN_BITS, MAX_BITS);
    BITS.store(clamped, Ordering::Relaxed);
    clamped
}

/// Decimal digits roughly carried by the current precision.
pub fn decimal_digits() -> u32 {
    (bits() as f64 * std::f64::consts::LOG10_2) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_and_get_round_trip() {
        let old = bits();
        assert_eq!(set_bits(128), 128);
        assert_eq!(bits(), 128);
        assert_eq!(set_bits(1), MIN_BITS);
        set_bits(old);
    }
}
