use scroll_lattice::text::{parse_polytope, write_polytope};
use scroll_lattice::{normal_fan, Fan, RationalPolytope};

fn simplex(d: usize) -> RationalPolytope {
    let mut pts = vec![vec![0i64; d]];
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        pts.push(e);
    }
    RationalPolytope::convex_hull_int(d, &pts)
}

#[test]
fn simplex_dilations_count_binomials() {
    let s = simplex(4);
    assert_eq!(s.ehrhart_counts(4).unwrap(), vec![1, 5, 15, 35, 70]);
    assert!(s.is_integral());
    assert!(s.is_normal_up_to(3).unwrap());
}

#[test]
fn normal_fan_of_simplex_is_projective_space() {
    let fan = normal_fan(&simplex(3)).unwrap();
    let p3 = Fan::new(
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    );
    assert!(fan.is_simplicial());
    assert!(fan.is_complete_sampled(200, 7));
    assert!(fan.find_isomorphism(&p3).is_some());
}

#[test]
fn text_round_trip() {
    let corners: Vec<Vec<i64>> = (0..8).map(|b| (0..3).map(|i| 2 * ((b >> i) & 1)).collect()).collect();
    let cube = RationalPolytope::convex_hull_int(3, &corners);
    let back = parse_polytope(&write_polytope(&cube)).unwrap();
    assert_eq!(back.lattice_points().unwrap().len(), 27);
    assert_eq!(back.vertices().len(), 8);
}
