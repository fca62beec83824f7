use scroll_polyalg::{Budget, Ideal, Order, PrimeField, Ring};

fn z_name(i: usize, k: usize, l: usize) -> String {
    format!("z{}{}{}{}", 1 - i, i, k + 1, l + 1)
}

fn minors_ring_and_ideal() -> (std::sync::Arc<Ring<PrimeField>>, Ideal<PrimeField>) {
    let mut names = Vec::new();
    for i in 0..2 {
        for k in 0..4 {
            for l in k..4 {
                names.push(z_name(i, k, l));
            }
        }
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let r = Ring::new(PrimeField::default(), &refs, Order::DegRevLex).unwrap();
    let entry = |row: usize, col: usize| {
        let (i, k) = (col / 4, col % 4);
        let (a, b) = if row <= k { (row, k) } else { (k, row) };
        r.var_named(&z_name(i, a, b))
    };
    let mut gens = Vec::new();
    for r1 in 0..4 {
        for r2 in r1 + 1..4 {
            for c1 in 0..8 {
                for c2 in c1 + 1..8 {
                    let m = r.sub(&r.mul(&entry(r1, c1), &entry(r2, c2)), &r.mul(&entry(r1, c2), &entry(r2, c1)));
                    gens.push(m);
                }
            }
        }
    }
    assert_eq!(gens.len(), 168);
    let i = Ideal::new(&r, gens);
    (r, i)
}

fn expected(k: i128) -> i128 {
    (k + 1) * (2 * k + 1) * (2 * k + 2) * (2 * k + 3) / 6
}

#[test]
fn minors_of_symmetric_pair_give_segre_veronese_hilbert_function() {
    let (_r, i) = minors_ring_and_ideal();
    let hs = i.hilbert_series(&Budget::default()).unwrap();
    let vals = hs.values(5);
    for k in 0..=5 {
        assert_eq!(vals[k], expected(k as i128));
    }
    assert_eq!(hs.projective_dim(), 4);
    assert_eq!(hs.degree(), 32);
}
