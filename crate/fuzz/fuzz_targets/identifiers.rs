#![no_main]

use hodge_residue::cases::CaseId;
use hodge_residue::invariants::Basis;
use hodge_residue::report::Format;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(id) = s.parse::<CaseId>() {
        assert_eq!(id.to_string().parse::<CaseId>().ok(), Some(id));
    }
    let _ = s.parse::<Basis>();
    let _ = s.parse::<Format>();
});
