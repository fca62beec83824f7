use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::dd::extreme_rays;
use crate::matrix::{primitive, rational_rank_q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polytope has dimension {dim} in ambient dimension {ambient}; a full-dimensional polytope is required")]
    LowerDimensional { dim: usize, ambient: usize },
    #[error("polytope is not a lattice polytope")]
    NotIntegral,
    #[error("polytope is empty")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice point enumeration would visit {0} candidates")]
    TooLarge(u128),
}

/// `<u, normal> >= -offset` (or `= -offset` when used as an equation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigRational,
}

impl Halfspace {
    pub fn new(normal: Vec<BigInt>, offset: BigRational) -> Self {
        Halfspace { normal, offset }
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Self {
        Halfspace {
            normal: normal.iter().map(|&x| BigInt::from(x)).collect(),
            offset: BigRational::from_integer(offset.into()),
        }
    }

    /// `<u, normal> + offset`
    pub fn slack(&self, u: &[BigRational]) -> BigRational {
        let mut s = self.offset.clone();
        for (a, x) in self.normal.iter().zip(u) {
            if !a.is_zero() {
                s += x * BigRational::from_integer(a.clone());
            }
        }
        s
    }

    fn slack_int(&self, u: &[i64]) -> BigRational {
        let dot: BigInt = self.normal.iter().zip(u).map(|(a, &x)| a * x).sum();
        &self.offset + BigRational::from_integer(dot)
    }

    /// Integer homogeneous form `(c, a)` with `c*lam + <a, u> >= 0`, primitive.
    fn homogenized(&self) -> Vec<BigInt> {
        let den = self.offset.denom().clone();
        let mut v = vec![self.offset.numer().clone()];
        v.extend(self.normal.iter().map(|a| a * &den));
        primitive(&v)
    }

    fn from_homogeneous(h: &[BigInt]) -> Self {
        let a = primitive(&h[1..]);
        let g = crate::matrix::gcd_vec(&h[1..]);
        let offset = if g.is_zero() {
            BigRational::from_integer(h[0].clone())
        } else {
            BigRational::new(h[0].clone(), g)
        };
        Halfspace { normal: a, offset }
    }
}

/// A bounded rational polyhedron in `Q^ambient_dim` with both descriptions.
///
/// `facets` is irredundant; `equations` spans the orthogonal complement of the
/// affine hull (empty when full-dimensional); `vertices` is irredundant and
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    ambient_dim: usize,
    dim: Option<usize>,
    facets: Vec<Halfspace>,
    equations: Vec<Halfspace>,
    vertices: Vec<Vec<BigRational>>,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn homogenize_point(p: &[BigRational]) -> Vec<BigInt> {
    let den = p.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut v = vec![den.clone()];
    v.extend(p.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()));
    v
}

impl RationalPolytope {
    pub fn empty(ambient_dim: usize) -> Self {
        RationalPolytope { ambient_dim, dim: None, facets: vec![], equations: vec![], vertices: vec![] }
    }

    /// Polytope cut out by the given halfspaces; unbounded input is an error.
    pub fn from_inequalities(ambient_dim: usize, halfspaces: &[Halfspace]) -> Result<Self, PolytopeError> {
        Self::from_constraints(ambient_dim, halfspaces, &[])
    }

    pub fn from_constraints(
        ambient_dim: usize,
        halfspaces: &[Halfspace],
        equations: &[Halfspace],
    ) -> Result<Self, PolytopeError> {
        let d = ambient_dim;
        let mut cons: Vec<Vec<BigInt>> = Vec::new();
        let mut lam = vec![BigInt::zero(); d + 1];
        lam[0] = BigInt::one();
        cons.push(lam);
        for h in halfspaces {
            if h.normal.len() != d {
                return Err(PolytopeError::DimensionMismatch { expected: d, got: h.normal.len() });
            }
            cons.push(h.homogenized());
        }
        for e in equations {
            if e.normal.len() != d {
                return Err(PolytopeError::DimensionMismatch { expected: d, got: e.normal.len() });
            }
            let h = e.homogenized();
            cons.push(h.iter().map(|x| -x).collect());
            cons.push(h);
        }
        let gens = extreme_rays(&cons, d + 1);
        let has_points = gens.rays.iter().any(|r| r[0].is_positive());
        if !has_points {
            return Ok(Self::empty(d));
        }
        if !gens.lineality.is_empty() || gens.rays.iter().any(|r| r[0].is_zero()) {
            return Err(PolytopeError::Unbounded);
        }
        let pts: Vec<Vec<BigRational>> = gens
            .rays
            .iter()
            .map(|r| r[1..].iter().map(|x| BigRational::new(x.clone(), r[0].clone())).collect())
            .collect();
        Ok(Self::convex_hull(d, &pts))
    }

    /// Convex hull of finitely many rational points.
    pub fn convex_hull(ambient_dim: usize, points: &[Vec<BigRational>]) -> Self {
        let d = ambient_dim;
        if points.is_empty() {
            return Self::empty(d);
        }
        let cons: Vec<Vec<BigInt>> = points.iter().map(|p| homogenize_point(p)).collect();
        let gens = extreme_rays(&cons, d + 1);
        let equations: Vec<Halfspace> = gens.lineality.iter().map(|h| Halfspace::from_homogeneous(h)).collect();
        let mut facets: Vec<Halfspace> = gens
            .rays
            .iter()
            .filter(|r| r[1..].iter().any(|x| !x.is_zero()))
            .map(|h| Halfspace::from_homogeneous(h))
            .collect();
        facets.sort();
        facets.dedup();

        let eq_rank = rational_rank_q(
            equations.iter().map(|e| e.normal.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect(),
        );
        let dim = d - eq_rank;

        let mut uniq: Vec<Vec<BigRational>> = points.to_vec();
        uniq.sort();
        uniq.dedup();
        if dim == 0 {
            facets.clear();
        }
        let vertices: Vec<Vec<BigRational>> = if dim == 0 {
            vec![uniq[0].clone()]
        } else {
            uniq.into_iter().filter(|v| tight_rank(&facets, &equations, v) == d).collect()
        };
        RationalPolytope { ambient_dim: d, dim: Some(dim), facets, equations, vertices }
    }

    pub fn convex_hull_int(ambient_dim: usize, points: &[Vec<i64>]) -> Self {
        let pts: Vec<Vec<BigRational>> = points.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect();
        Self::convex_hull(ambient_dim, &pts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == Some(self.ambient_dim)
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn contains(&self, u: &[BigRational]) -> bool {
        !self.is_empty()
            && self.facets.iter().all(|f| !f.slack(u).is_negative())
            && self.equations.iter().all(|e| e.slack(u).is_zero())
    }

    pub fn contains_int(&self, u: &[i64]) -> bool {
        !self.is_empty()
            && self.facets.iter().all(|f| !f.slack_int(u).is_negative())
            && self.equations.iter().all(|e| e.slack_int(u).is_zero())
    }

    /// `k * P`
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let kq = q(k);
        let scale = |h: &Halfspace| Halfspace { normal: h.normal.clone(), offset: &h.offset * &kq };
        RationalPolytope {
            ambient_dim: self.ambient_dim,
            dim: self.dim,
            facets: self.facets.iter().map(scale).collect(),
            equations: self.equations.iter().map(scale).collect(),
            vertices: self.vertices.iter().map(|v| v.iter().map(|x| x * &kq).collect()).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    /// Every facet is tight on `dim` independent facets at each vertex, and
    /// every vertex satisfies every constraint.
    pub fn is_consistent(&self) -> bool {
        let Some(dim) = self.dim else { return self.facets.is_empty() };
        self.vertices.iter().all(|v| {
            if !self.contains(v) {
                return false;
            }
            if dim == 0 {
                return true;
            }
            tight_rank(&self.facets, &self.equations, v) == self.ambient_dim
        }) && self.facets.iter().all(|f| self.vertices.iter().any(|v| f.slack(v).is_zero()))
    }

    fn bounding_box(&self) -> Vec<(i64, i64)> {
        (0..self.ambient_dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| v[i].ceil()).min().unwrap();
                let hi = self.vertices.iter().map(|v| v[i].floor()).max().unwrap();
                (lo.to_integer().to_i64().unwrap(), hi.to_integer().to_i64().unwrap())
            })
            .collect()
    }

    /// Integer points, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>, PolytopeError> {
        self.lattice_points_capped(1_000_000_000)
    }

    pub fn lattice_points_capped(&self, cap: u128) -> Result<Vec<Vec<i64>>, PolytopeError> {
        if self.is_empty() {
            return Ok(vec![]);
        }
        let bbox = self.bounding_box();
        if bbox.iter().any(|(lo, hi)| lo > hi) {
            return Ok(vec![]);
        }
        let volume: u128 = bbox.iter().map(|(lo, hi)| (hi - lo + 1) as u128).product();
        if volume > cap {
            return Err(PolytopeError::TooLarge(volume));
        }
        let mut out = Vec::new();
        let mut cur: Vec<i64> = bbox.iter().map(|b| b.0).collect();
        self.enumerate(&bbox, 0, &mut cur, &mut out);
        Ok(out)
    }

    fn enumerate(&self, bbox: &[(i64, i64)], i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == bbox.len() {
            if self.contains_int(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let (mut lo, mut hi) = bbox[i];
        // tighten the range using facets that only involve coordinates 0..=i
        for f in self.facets.iter().chain(self.equations.iter()) {
            if f.normal[i].is_zero() || f.normal[i + 1..].iter().any(|x| !x.is_zero()) {
                continue;
            }
            let partial: BigInt = f.normal[..i].iter().zip(cur.iter()).map(|(a, &x)| a * x).sum();
            // a_i x_i >= -(offset + partial)
            let rhs = -(&f.offset + BigRational::from_integer(partial));
            let a = BigRational::from_integer(f.normal[i].clone());
            let bound = &rhs / &a;
            let is_eq = self.equations.contains(f);
            let up = bound.floor().to_integer().to_i64().unwrap();
            let down = bound.ceil().to_integer().to_i64().unwrap();
            if is_eq {
                lo = lo.max(down);
                hi = hi.min(up);
            } else if f.normal[i].is_positive() {
                lo = lo.max(down);
            } else {
                hi = hi.min(up);
            }
        }
        for x in lo..=hi {
            cur[i] = x;
            self.enumerate(bbox, i + 1, cur, out);
        }
    }

    /// `#(kP ∩ Z^n)` for `k = 0..=kmax`.
    pub fn ehrhart_counts(&self, kmax: i64) -> Result<Vec<usize>, PolytopeError> {
        let mut out = vec![if self.is_empty() { 0 } else { 1 }];
        for k in 1..=kmax {
            out.push(self.dilate(k).lattice_points()?.len());
        }
        Ok(out)
    }

    /// Compare the interpolated Ehrhart polynomial (from `k = 0..=dim`) with the
    /// actual counts at `dim+1` and `dim+2`.
    pub fn ehrhart_prediction_holds(&self) -> Result<bool, PolytopeError> {
        if !self.is_integral() {
            return Err(PolytopeError::NotIntegral);
        }
        let dim = self.dim.ok_or(PolytopeError::Empty)? as i64;
        let counts = self.ehrhart_counts(dim + 2)?;
        let xs: Vec<i64> = (0..=dim).collect();
        let ys: Vec<BigRational> = counts[..=dim as usize].iter().map(|&c| q(c as i64)).collect();
        Ok((dim + 1..=dim + 2).all(|k| lagrange(&xs, &ys, k) == q(counts[k as usize] as i64)))
    }

    /// Every lattice point of `jP` is a sum of `j` lattice points of `P`, for `2 <= j <= k`.
    pub fn is_normal_up_to(&self, k: usize) -> Result<bool, PolytopeError> {
        if !self.is_integral() {
            return Err(PolytopeError::NotIntegral);
        }
        let base = self.lattice_points()?;
        let mut sums: HashSet<Vec<i64>> = base.iter().cloned().collect();
        for j in 2..=k {
            let mut next: HashSet<Vec<i64>> = HashSet::with_capacity(sums.len() * 4);
            for s in &sums {
                for p in &base {
                    next.insert(s.iter().zip(p).map(|(a, b)| a + b).collect());
                }
            }
            sums = next;
            let target = self.dilate(j as i64).lattice_points()?;
            if target.len() != sums.len() || target.iter().any(|t| !sums.contains(t)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn tight_rank(facets: &[Halfspace], equations: &[Halfspace], v: &[BigRational]) -> usize {
    let rows: Vec<Vec<BigRational>> = facets
        .iter()
        .filter(|f| f.slack(v).is_zero())
        .chain(equations.iter())
        .map(|f| f.normal.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    rational_rank_q(rows)
}

/// Value at `x` of the interpolating polynomial through `(xs[i], ys[i])`.
pub fn lagrange(xs: &[i64], ys: &[BigRational], x: i64) -> BigRational {
    let mut total = BigRational::zero();
    for (i, &xi) in xs.iter().enumerate() {
        let mut term = ys[i].clone();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                term *= BigRational::new((x - xj).into(), (xi - xj).into());
            }
        }
        total += term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> RationalPolytope {
        RationalPolytope::from_inequalities(
            2,
            &[
                Halfspace::from_i64(&[1, 0], 0),
                Halfspace::from_i64(&[-1, 0], 1),
                Halfspace::from_i64(&[0, 1], 0),
                Halfspace::from_i64(&[0, -1], 1),
            ],
        )
        .unwrap()
    }

    fn simplex(n: usize) -> RationalPolytope {
        let mut pts = vec![vec![0i64; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            pts.push(e);
        }
        RationalPolytope::convex_hull_int(n, &pts)
    }

    #[test]
    fn unit_segment_points() {
        let p = RationalPolytope::from_inequalities(1, &[Halfspace::from_i64(&[1], 0), Halfspace::from_i64(&[-1], 1)])
            .unwrap();
        assert_eq!(p.lattice_points().unwrap(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn triangle_hull() {
        let t = simplex(2);
        assert_eq!(t.facets().len(), 3);
        assert_eq!(t.vertices().len(), 3);
        assert_eq!(t.dim(), Some(2));
        assert!(t.is_consistent());
    }

    #[test]
    fn hull_drops_interior_points() {
        let p = RationalPolytope::convex_hull_int(2, &[vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1], vec![1, 0]]);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.lattice_points().unwrap().len(), 9);
    }

    #[test]
    fn lower_dimensional_hull() {
        let p = RationalPolytope::convex_hull_int(3, &[vec![0, 0, 1], vec![2, 0, 1], vec![0, 2, 1]]);
        assert_eq!(p.dim(), Some(2));
        assert_eq!(p.equations().len(), 1);
        assert_eq!(p.lattice_points().unwrap().len(), 6);
        assert!(p.is_consistent());
    }

    #[test]
    fn unbounded_rejected() {
        let r = RationalPolytope::from_inequalities(2, &[Halfspace::from_i64(&[1, 0], 0), Halfspace::from_i64(&[0, 1], 0)]);
        assert_eq!(r.unwrap_err(), PolytopeError::Unbounded);
    }

    #[test]
    fn empty_polytope() {
        let p = RationalPolytope::from_inequalities(1, &[Halfspace::from_i64(&[1], -2), Halfspace::from_i64(&[-1], 1)])
            .unwrap();
        assert!(p.is_empty());
        assert!(p.lattice_points().unwrap().is_empty());
    }

    #[test]
    fn rational_triangle() {
        // x, y >= 0, 2x + 2y <= 3
        let h = [
            Halfspace::from_i64(&[1, 0], 0),
            Halfspace::from_i64(&[0, 1], 0),
            Halfspace::new(vec![BigInt::from(-1), BigInt::from(-1)], BigRational::new(3.into(), 2.into())),
        ];
        let p = RationalPolytope::from_inequalities(2, &h).unwrap();
        assert!(!p.is_integral());
        assert_eq!(p.lattice_points().unwrap().len(), 3);
        assert!(p.dilate(2).is_integral());
        assert_eq!(p.dilate(2).lattice_points().unwrap().len(), 10);
    }

    #[test]
    fn square_dilations() {
        let s = unit_square();
        assert_eq!(s.ehrhart_counts(3).unwrap(), vec![1, 4, 9, 16]);
        assert!(s.ehrhart_prediction_holds().unwrap());
    }

    #[test]
    fn simplex_normal() {
        assert!(simplex(3).is_normal_up_to(3).unwrap());
        assert!(simplex(3).ehrhart_prediction_holds().unwrap());
    }

    #[test]
    fn reeve_tetrahedron_not_normal() {
        let p = RationalPolytope::convex_hull_int(3, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]]);
        assert!(!p.is_normal_up_to(2).unwrap());
    }

    #[test]
    fn non_integral_normality_rejected() {
        let p = RationalPolytope::convex_hull(1, &[vec![q(0)], vec![BigRational::new(1.into(), 2.into())]]);
        assert_eq!(p.is_normal_up_to(2).unwrap_err(), PolytopeError::NotIntegral);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]
            #[test]
            fn hull_is_consistent(pts in proptest::collection::vec(proptest::collection::vec(-3i64..4, 3), 1..9)) {
                let p = RationalPolytope::convex_hull_int(3, &pts);
                prop_assert!(p.is_consistent());
                for x in &pts {
                    prop_assert!(p.contains_int(x));
                }
                let again = RationalPolytope::from_constraints(3, p.facets(), p.equations()).unwrap();
                prop_assert_eq!(again.vertices(), p.vertices());
            }

            #[test]
            fn ehrhart_prediction(pts in proptest::collection::vec(proptest::collection::vec(-2i64..3, 2), 3..7)) {
                let p = RationalPolytope::convex_hull_int(2, &pts);
                prop_assert!(p.ehrhart_prediction_holds().unwrap());
            }
        }
    }
}
