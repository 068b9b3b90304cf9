#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;
use num_integer::Integer;
use num_traits::{One, Zero};

use hypercong::Rational;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(value) = Rational::from_str(text) {
            // canonical form: positive denominator, reduced, zero as 0/1
            assert!(value.denom() > &num_bigint::BigInt::zero());
            if value.is_zero() {
                assert!(value.denom().is_one());
            } else {
                assert!(value.numer().gcd(value.denom()).is_one());
            }
            // display round trip
            let shown = value.to_string();
            let back = Rational::from_str(&shown).unwrap();
            assert_eq!(back, value);
        }
    }
});
