//! Inline spectrum literals (comma lists, fractions, decimals, scientific
//! notation) and bare rational literals must parse or error, never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = adiabat::scalar::parse_ratio_literal(text);
    let _ = adiabat::io::parse_inline_spectrum_f64(text);
    if let Ok(s) = adiabat::io::parse_inline_spectrum_exact(text) {
        // Parsed spectra are canonical and normalized by construction.
        let total = s.total_mass();
        assert_eq!(total, num_rational::BigRational::from_integer(1.into()));
    }
});
