//! Spectrum JSON parsing must never panic, in either numeric mode, and
//! anything that parses must re-serialize and parse back to an equal value.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };

    if let Ok(s) = adiabat::io::parse_spectrum_json_f64(text) {
        let emitted = adiabat::io::spectrum_to_json_f64(&s);
        let back = adiabat::io::parse_spectrum_json_f64(&emitted)
            .expect("emitted spectrum JSON re-parses");
        assert_eq!(s, back);
    }

    if let Ok(s) = adiabat::io::parse_spectrum_json_exact(text) {
        let emitted = adiabat::io::spectrum_to_json_exact(&s);
        let back = adiabat::io::parse_spectrum_json_exact(&emitted)
            .expect("emitted spectrum JSON re-parses");
        assert_eq!(s, back);
    }
});
