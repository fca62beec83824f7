use scroll_core::degen::{matrix_m0, matrix_m1, Family};
use scroll_polyalg::PrimeField;

/// Matrices as printed, row by row.
const M1_PRINTED: [[&str; 8]; 4] = [
    ["z1011", "z1012", "z1013", "z1014", "z0111", "z0112", "z0113", "z0114"],
    ["z1012", "z1022", "z1023", "z1024", "z0112", "z0122", "z0123", "z0124"],
    ["z1013", "z1023", "z1033", "z1034", "z0112", "z0122", "z0123", "z0124"],
    ["z1014", "z1024", "z1034", "z1044", "z0114", "z0124", "z0134", "z0144"],
];

const M0_PRINTED: [[&str; 8]; 4] = [
    ["y0012", "y1022", "y1023", "y0122", "y0123", "y2024", "y1124", "y0224"],
    ["y0013", "y1023", "y1033", "y0123", "y0133", "y2034", "y1134", "y0234"],
    ["y1014", "y2024", "y2034", "y1124", "y1134", "y3044", "y2144", "y1244"],
    ["y0114", "y1124", "y1134", "y0224", "y0234", "y2144", "y1244", "y0234"],
];

const N_PRINTED: [[&str; 9]; 4] = [
    ["y0012", "y1022", "y1023", "y2024", "y1124 + y0012*t", "y0122", "y0123", "y1124 - y0012*t", "y0224"],
    ["y0013", "y1023", "y1033", "y2034", "y1134 + y0013*t", "y0123", "y0133", "y1134 - y0013*t", "z0234"],
    [
        "y1014",
        "y2024",
        "y2034",
        "y3044",
        "y2144 + y1014*t",
        "y1124 - y0012*t",
        "y1134 - y0013*t",
        "y2144 - y1014*t",
        "y1244 - y0114*t",
    ],
    [
        "y0114",
        "y1124 + y0012*t",
        "y1134 + y0013*t",
        "y2144 + y1014*t",
        "y1244 + y0114*t",
        "y0224",
        "z0234",
        "y1244 - y1014*t",
        "y0344",
    ],
];

/// Known misprints: `(row, col, printed, correct)`.
const M1_ERRATA: [(usize, usize, &str, &str); 4] = [
    (2, 4, "z0112", "z0113"),
    (2, 5, "z0122", "z0123"),
    (2, 6, "z0123", "z0133"),
    (2, 7, "z0124", "z0134"),
];
const M0_ERRATA: [(usize, usize, &str, &str); 1] = [(3, 7, "y0234", "y0344")];
const N_ERRATA: [(usize, usize, &str, &str); 3] = [
    (1, 8, "z0234", "y0234"),
    (3, 6, "z0234", "y0234"),
    (3, 7, "y1244 - y1014*t", "y1244 - y0114*t"),
];

fn check<const C: usize>(computed: &[Vec<String>], printed: &[[&str; C]; 4], errata: &[(usize, usize, &str, &str)]) {
    assert_eq!(computed.len(), 4);
    let mut used = 0;
    for (r, row) in printed.iter().enumerate() {
        assert_eq!(computed[r].len(), C);
        for (c, &p) in row.iter().enumerate() {
            let got = computed[r][c].as_str();
            match errata.iter().find(|e| e.0 == r && e.1 == c) {
                Some(&(_, _, wrong, right)) => {
                    assert_eq!(p, wrong, "transcription at ({r},{c})");
                    assert_eq!(got, right, "entry ({r},{c})");
                    used += 1;
                }
                None => assert_eq!(got, p, "entry ({r},{c})"),
            }
        }
    }
    assert_eq!(used, errata.len());
}

#[test]
fn m1_matches_printed_matrix_up_to_errata() {
    let (coords, m) = matrix_m1();
    check(&m.label_matrix(&coords), &M1_PRINTED, &M1_ERRATA);
}

#[test]
fn m0_matches_printed_matrix_up_to_errata() {
    let (coords, m) = matrix_m0();
    check(&m.label_matrix(&coords), &M0_PRINTED, &M0_ERRATA);
}

#[test]
fn family_matrix_matches_printed_matrix_up_to_errata() {
    let fam = Family::new(PrimeField::default());
    let formatted: Vec<Vec<String>> = fam.n.iter().map(|r| r.iter().map(|e| fam.ring.format(e)).collect()).collect();
    check(&formatted, &N_PRINTED, &N_ERRATA);
}

#[test]
fn central_fibre_repeats_a_column_of_m0() {
    let (coords, m0) = matrix_m0();
    let labels = m0.label_matrix(&coords);
    let fam = Family::new(PrimeField::default());
    let yr = fam.y_ring();
    let zero = 0u32;
    let fibre = fam.fiber_matrix(&zero, &yr);
    for r in 0..4 {
        let row: Vec<String> = fibre[r].iter().map(|e| yr.format(e)).collect();
        let mut cols: Vec<&String> = row.iter().collect();
        cols.sort();
        cols.dedup();
        let mut expected: Vec<&String> = labels[r].iter().collect();
        expected.sort();
        expected.dedup();
        assert_eq!(cols, expected, "row {r}");
    }
}
