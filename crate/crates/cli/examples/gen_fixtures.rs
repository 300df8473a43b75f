use qav_cli::input::{document_for, CoverSpec, RawQuotient};
use qav_cli::to_json;
use qav_core::fixtures;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let kummer = |r: usize| -> Vec<Vec<i64>> {
        (0..r - 1).map(|i| (0..r).map(|j| if j == i { 1 } else if j == r - 1 { -1 } else { 0 }).collect()).collect()
    };
    let mut ceva = document_for(fixtures::ceva());
    ceva.covers = vec![CoverSpec { orders: vec![5; 5], quotient: Some(kummer(6)) }];
    let mut four = document_for(fixtures::four_lines());
    four.covers = (2..=5).map(|n| CoverSpec { orders: vec![n; 4], quotient: None }).collect();
    let mut hesse = document_for(fixtures::hesse());
    hesse.covers = vec![CoverSpec { orders: vec![3; 11], quotient: Some(kummer(12)) }];
    hesse.quotient = Some(RawQuotient { matrix: kummer(12), moduli: None });
    let docs = [
        ("triangle", document_for(fixtures::triangle())),
        ("four_lines", four),
        ("ceva", ceva),
        ("dual_hesse", document_for(fixtures::dual_hesse())),
        ("hesse", hesse),
        ("six_cusps_on_conic", document_for(fixtures::six_cusps_on_conic())),
        ("six_generic_cusps", document_for(fixtures::six_generic_cusps())),
    ];
    for (name, d) in docs {
        std::fs::write(dir.join(format!("{name}.json")), to_json(&d) + "\n").unwrap();
    }
}
