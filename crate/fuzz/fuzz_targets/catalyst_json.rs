//! Catalyst JSON parsing must never panic, in either numeric mode.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };

    if let Ok(c) = adiabat::io::parse_catalyst_json_f64(text) {
        let emitted = adiabat::io::catalyst_to_json_f64(&c);
        adiabat::io::parse_catalyst_json_f64(&emitted)
            .expect("emitted catalyst JSON re-parses");
    }

    if let Ok(c) = adiabat::io::parse_catalyst_json_exact(text) {
        let emitted = adiabat::io::catalyst_to_json_exact(&c);
        adiabat::io::parse_catalyst_json_exact(&emitted)
            .expect("emitted catalyst JSON re-parses");
    }
});
