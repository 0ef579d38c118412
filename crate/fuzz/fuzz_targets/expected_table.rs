#![no_main]

use hodge_residue::expected::ExpectedTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(table) = ExpectedTable::from_json(s) {
        for c in &table.cases {
            table.case_combo(c.case_id).expect("validated entries convert");
        }
        for t in &table.totals {
            table.sum_of_parts(&t.parts).expect("validated parts resolve");
        }
    }
});
