use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::ToPrimitive;
use scroll_lattice::{smith_normal_form, Fan, Halfspace, IntMatrix, RationalPolytope};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sections::section_space;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScrollError {
    #[error("a scroll needs at least two fibre coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error("{twists} twists but {weights} weights")]
    LengthMismatch { twists: usize, weights: usize },
    #[error("weight {0} is not positive")]
    NonPositiveWeight(i64),
    #[error("no weight-1 coordinate")]
    NoUnitWeight,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Class `l·L + m·M` in `Cl(F) = ZL ⊕ ZM`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub l: i64,
    pub m: i64,
}

impl DivisorClass {
    pub const fn new(l: i64, m: i64) -> Self {
        DivisorClass { l, m }
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.l + o.l, self.m + o.m)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.l - o.l, self.m - o.m)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.l, -self.m)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, c: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * c.l, self * c.m)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.m)
    }
}

/// Torus-invariant prime divisors of the scroll, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ray {
    Sigma(usize),
    Rho(usize),
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ray::Sigma(i) => write!(f, "sigma{}", i + 1),
            Ray::Rho(j) => write!(f, "rho{}", j + 1),
        }
    }
}

/// Cox ring coordinate: `T(i)` is `t_{i+1}`, `X(j)` is `x_{j+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coord {
    T(usize),
    X(usize),
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::T(i) => write!(f, "t{}", i + 1),
            Coord::X(j) => write!(f, "x{}", j + 1),
        }
    }
}

/// Closed torus-invariant stratum of the scroll cut out by coordinate vanishing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusStratum {
    pub zero_coords: Vec<Coord>,
    pub dim_in_f: i64,
    pub stabilizer_order: i64,
    /// Weights of the stabilizer on the normal directions: `b_j mod g` for the
    /// vanishing fibre coordinates, then 0 for the base direction.
    pub transverse_weights: Vec<i64>,
}

impl TorusStratum {
    /// Zero fibre coordinates, as 0-based indices.
    pub fn zero_fibre(&self) -> Vec<usize> {
        self.zero_coords
            .iter()
            .filter_map(|c| match c {
                Coord::X(j) => Some(*j),
                Coord::T(_) => None,
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        let eqs: Vec<String> = self.zero_coords.iter().map(|c| c.to_string()).collect();
        format!("{{{} = 0}}", eqs.join(" = "))
    }
}

/// Weighted scroll `F(a_1..a_n | b_1..b_n)` over `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScrollSpec {
    twists: Vec<i64>,
    weights: Vec<i64>,
}

fn gcd_all(v: impl IntoIterator<Item = i64>) -> i64 {
    v.into_iter().fold(0, |g, x| g.gcd(&x))
}

impl ScrollSpec {
    pub fn new(twists: Vec<i64>, weights: Vec<i64>) -> Result<Self, ScrollError> {
        if twists.len() != weights.len() {
            return Err(ScrollError::LengthMismatch { twists: twists.len(), weights: weights.len() });
        }
        if twists.len() < 2 {
            return Err(ScrollError::TooFewCoordinates(twists.len()));
        }
        if let Some(&w) = weights.iter().find(|&&w| w <= 0) {
            return Err(ScrollError::NonPositiveWeight(w));
        }
        if !weights.contains(&1) {
            return Err(ScrollError::NoUnitWeight);
        }
        Ok(ScrollSpec { twists, weights })
    }

    /// All fibre weights 1.
    pub fn unweighted(twists: &[i64]) -> Result<Self, ScrollError> {
        Self::new(twists.to_vec(), vec![1; twists.len()])
    }

    pub fn n(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn twist(&self, j: usize) -> i64 {
        self.twists[j]
    }

    pub fn weight(&self, j: usize) -> i64 {
        self.weights[j]
    }

    /// Parse `F(a1,...,an)` or `F(a1,...,an | b1,...,bn)`; weights may use
    /// repetition exponents `1^3` or `1³`.
    pub fn parse(s: &str) -> Result<Self, ScrollError> {
        let err = |pos: usize, msg: &str| ScrollError::Parse { pos, msg: msg.to_string() };
        let trimmed = s.trim_start();
        let base = s.len() - trimmed.len();
        let body = trimmed.trim_end();
        let rest = body.strip_prefix('F').ok_or_else(|| err(base, "expected 'F'"))?;
        let rest = rest.trim_start();
        let open = base + body.len() - rest.len();
        let inner = rest.strip_prefix('(').ok_or_else(|| err(open, "expected '('"))?;
        let inner = inner.strip_suffix(')').ok_or_else(|| err(base + body.len(), "expected ')' at end"))?;
        let start = open + 1;
        let (tw, wt, wt_off) = match inner.find('|') {
            Some(p) => (&inner[..p], Some(&inner[p + 1..]), start + p + 1),
            None => (inner, None, 0),
        };
        let twists = parse_list(tw, start, false)?;
        let weights = match wt {
            Some(w) => parse_list(w, wt_off, true)?,
            None => vec![1; twists.len()],
        };
        if twists.len() != weights.len() {
            return Err(err(start, &format!("{} twists but {} weights", twists.len(), weights.len())));
        }
        Self::new(twists, weights)
    }

    /// Canonical representative of the isomorphism class: coordinates sorted by
    /// weight, twists shifted (`a_j -> a_j + k b_j`) so the smallest weight-1 twist
    /// is 0, twists sorted within each weight block.
    pub fn normalize(&self) -> ScrollSpec {
        let k = -self
            .twists
            .iter()
            .zip(&self.weights)
            .filter(|(_, &b)| b == 1)
            .map(|(&a, _)| a)
            .min()
            .expect("weight-1 coordinate");
        let mut pairs: Vec<(i64, i64)> =
            self.weights.iter().zip(&self.twists).map(|(&b, &a)| (b, a + k * b)).collect();
        pairs.sort();
        ScrollSpec { twists: pairs.iter().map(|p| p.1).collect(), weights: pairs.iter().map(|p| p.0).collect() }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Apply the isomorphism-preserving operations: shift by `k` and permute
    /// (`perm[j]` is the new position of coordinate `j`).
    pub fn shifted_permuted(&self, k: i64, perm: &[usize]) -> ScrollSpec {
        let n = self.n();
        let mut twists = vec![0; n];
        let mut weights = vec![0; n];
        for j in 0..n {
            twists[perm[j]] = self.twists[j] + k * self.weights[j];
            weights[perm[j]] = self.weights[j];
        }
        ScrollSpec { twists, weights }
    }

    /// `-K_F = dL + eM` with `d = 2 - Σa_j`, `e = Σb_j`.
    pub fn anticanonical(&self) -> DivisorClass {
        DivisorClass::new(2 - self.twists.iter().sum::<i64>(), self.weights.iter().sum())
    }

    pub fn ray_class(&self, ray: Ray) -> DivisorClass {
        match ray {
            Ray::Sigma(_) => DivisorClass::new(1, 0),
            Ray::Rho(j) => DivisorClass::new(-self.twists[j], self.weights[j]),
        }
    }

    /// Rays in the order `σ1, σ2, ρ1, ..., ρn`.
    pub fn ray_list(&self) -> Vec<Ray> {
        let mut v = vec![Ray::Sigma(0), Ray::Sigma(1)];
        v.extend((0..self.n()).map(Ray::Rho));
        v
    }

    /// Bidegree of each Cox coordinate `t1, t2, x1..xn`.
    pub fn coordinate_classes(&self) -> Vec<DivisorClass> {
        self.ray_list().into_iter().map(|r| self.ray_class(r)).collect()
    }

    /// The `2 × (n+2)` matrix of linear relations among the rays.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut r1 = vec![1i64, 1];
        r1.extend(self.twists.iter().map(|a| -a));
        let mut r2 = vec![0i64, 0];
        r2.extend(self.weights.iter().copied());
        IntMatrix::from_rows(&[r1, r2])
    }

    /// Invariant factors of the relation matrix; all ones exactly when `N` is free of rank `n`.
    pub fn relation_invariant_factors(&self) -> Vec<i64> {
        smith_normal_form(&self.relation_matrix())
            .invariant_factors()
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    /// Ray generators in `N = Z^n` with basis `(σ2, ρ2, ..., ρn)`; needs `a_1 = 0`, `b_1 = 1`.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        assert!(self.weights[0] == 1 && self.twists[0] == 0, "rays need a normalized spec");
        let n = self.n();
        let mut sigma1 = vec![-1i64];
        sigma1.extend(self.twists[1..].iter().copied());
        let mut sigma2 = vec![0i64; n];
        sigma2[0] = 1;
        let mut rho1 = vec![0i64];
        rho1.extend(self.weights[1..].iter().map(|b| -b));
        let mut out = vec![sigma1, sigma2, rho1];
        for j in 1..n {
            let mut e = vec![0i64; n];
            e[j] = 1;
            out.push(e);
        }
        out
    }

    /// Fan with cones `τ_{i,j}` spanned by `σ_i` and every `ρ_k` with `k ≠ j`,
    /// listed in the order `τ_{1,1}, ..., τ_{1,n}, τ_{2,1}, ...`.
    pub fn build_fan(&self) -> Fan {
        let n = self.n();
        let mut cones = Vec::new();
        for i in 0..2 {
            for j in 0..n {
                let mut c = vec![i];
                c.extend((0..n).filter(|&k| k != j).map(|k| 2 + k));
                cones.push(c);
            }
        }
        Fan { lattice_rank: n, rays: self.rays(), max_cones: cones }
    }

    /// Ray indices of `τ_{i,j}` (0-based `i`, `j`).
    pub fn tau(&self, i: usize, j: usize) -> Vec<usize> {
        let mut c = vec![i];
        c.extend((0..self.n()).filter(|&k| k != j).map(|k| 2 + k));
        c
    }

    /// Maximal strata with nontrivial generic stabilizer.
    pub fn singular_strata(&self) -> Vec<TorusStratum> {
        let n = self.n();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        let mut divisors: Vec<i64> = Vec::new();
        for &b in &self.weights {
            for g in 2..=b {
                if b % g == 0 && !divisors.contains(&g) {
                    divisors.push(g);
                }
            }
        }
        divisors.sort();
        for g in divisors {
            let surv: Vec<usize> = (0..n).filter(|&j| self.weights[j] % g == 0).collect();
            if seen.contains(&surv) {
                continue;
            }
            seen.push(surv.clone());
            let order = gcd_all(surv.iter().map(|&j| self.weights[j]));
            let zero: Vec<usize> = (0..n).filter(|j| !surv.contains(j)).collect();
            let mut transverse: Vec<i64> = zero.iter().map(|&j| self.weights[j] % order).collect();
            transverse.push(0);
            out.push(TorusStratum {
                zero_coords: zero.iter().map(|&j| Coord::X(j)).collect(),
                dim_in_f: surv.len() as i64,
                stabilizer_order: order,
                transverse_weights: transverse,
            });
        }
        out
    }

    /// Generic stabilizer order on the stratum where exactly the fibre coordinates in `surviving` are nonzero.
    pub fn stabilizer_order(&self, surviving: &[usize]) -> i64 {
        let g = gcd_all(surviving.iter().map(|&j| self.weights[j]));
        if g == 0 {
            1
        } else {
            g
        }
    }

    /// Dimension of the automorphism group: degree-preserving derivations of the Cox ring
    /// (`Σ_v dim S_{deg v}`) minus the two-dimensional torus acting trivially.
    pub fn aut_dimension(&self) -> i64 {
        self.coordinate_classes().iter().map(|&c| section_space(self, c).dim() as i64).sum::<i64>() - 2
    }

    /// Demazure roots: `m ∈ M` with `<m, v_i> = -1` for one ray and `<m, v_k> >= 0` for the others.
    pub fn demazure_roots(&self) -> Vec<(usize, Vec<i64>)> {
        let rays = self.rays();
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..rays.len() {
            let hs: Vec<Halfspace> = rays
                .iter()
                .enumerate()
                .map(|(k, v)| Halfspace::from_i64(v, if k == i { 1 } else { 0 }))
                .collect();
            let p = RationalPolytope::from_inequalities(n, &hs).expect("bounded root polytope");
            for m in p.lattice_points().expect("lattice points") {
                let pairing: i64 = m.iter().zip(&rays[i]).map(|(a, b)| a * b).sum();
                if pairing == -1 {
                    out.push((i, m));
                }
            }
        }
        out
    }

    /// Paper-style notation with repeated weights as exponents, e.g. `F(0,0,1,2|1³,3)`.
    pub fn paper_notation(&self) -> String {
        let tw: Vec<String> = self.twists.iter().map(|a| a.to_string()).collect();
        if self.weights.iter().all(|&b| b == 1) {
            return format!("F({})", tw.join(","));
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.weights.len() {
            let mut j = i;
            while j < self.weights.len() && self.weights[j] == self.weights[i] {
                j += 1;
            }
            let count = j - i;
            if count == 1 {
                parts.push(self.weights[i].to_string());
            } else {
                parts.push(format!("{}{}", self.weights[i], superscript(count)));
            }
            i = j;
        }
        format!("F({}|{})", tw.join(","), parts.join(","))
    }
}

impl fmt::Display for ScrollSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw: Vec<String> = self.twists.iter().map(|a| a.to_string()).collect();
        if self.weights.iter().all(|&b| b == 1) {
            write!(f, "F({})", tw.join(","))
        } else {
            let wt: Vec<String> = self.weights.iter().map(|b| b.to_string()).collect();
            write!(f, "F({}|{})", tw.join(","), wt.join(","))
        }
    }
}

impl std::str::FromStr for ScrollSpec {
    type Err = ScrollError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScrollSpec::parse(s)
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(k: usize) -> String {
    k.to_string().chars().map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize]).collect()
}

fn parse_list(s: &str, offset: usize, allow_powers: bool) -> Result<Vec<i64>, ScrollError> {
    let mut out = Vec::new();
    let mut pos = offset;
    for item in s.split(',') {
        let lead = item.len() - item.trim_start().len();
        let tok = item.trim();
        let at = pos + lead;
        pos += item.len() + 1;
        if tok.is_empty() {
            return Err(ScrollError::Parse { pos: at, msg: "empty entry".into() });
        }
        let (base, reps) = split_power(tok);
        let value: i64 =
            base.parse().map_err(|_| ScrollError::Parse { pos: at, msg: format!("not an integer: '{base}'") })?;
        let reps = match reps {
            Some(_) if !allow_powers => {
                return Err(ScrollError::Parse { pos: at, msg: "repetition exponents only allowed for weights".into() })
            }
            Some(r) => r.ok_or_else(|| ScrollError::Parse { pos: at, msg: "bad exponent".into() })?,
            None => 1,
        };
        out.extend(std::iter::repeat(value).take(reps));
    }
    Ok(out)
}

fn split_power(tok: &str) -> (&str, Option<Option<usize>>) {
    if let Some(p) = tok.find('^') {
        return (tok[..p].trim(), Some(tok[p + 1..].trim().parse().ok()));
    }
    if let Some((p, _)) = tok.char_indices().find(|(_, c)| SUPERSCRIPTS.contains(c)) {
        let digits: Option<String> = tok[p..]
            .chars()
            .map(|c| SUPERSCRIPTS.iter().position(|&s| s == c).map(|d| char::from(b'0' + d as u8)))
            .collect();
        return (&tok[..p], Some(digits.and_then(|d| d.parse().ok())));
    }
    (tok, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn spec(s: &str) -> ScrollSpec {
        ScrollSpec::parse(s).unwrap()
    }

    #[test]
    fn parsing_and_display() {
        let s = spec("F(0,0,1,2|1³,3)");
        assert_eq!(s.weights(), &[1, 1, 1, 3]);
        assert_eq!(s.to_string(), "F(0,0,1,2|1,1,1,3)");
        assert_eq!(s.paper_notation(), "F(0,0,1,2|1³,3)");
        assert_eq!(spec("F(0,2,0,1 | 1^2, 2^2)").weights(), &[1, 1, 2, 2]);
        assert_eq!(spec(" F(0,1,1,2) ").weights(), &[1; 4]);
        assert!(matches!(ScrollSpec::parse("F(0,1|1)"), Err(ScrollError::Parse { .. })));
        assert!(matches!(ScrollSpec::parse("G(0,1)"), Err(ScrollError::Parse { pos: 0, .. })));
        assert!(matches!(ScrollSpec::parse("F(0,x)"), Err(ScrollError::Parse { pos: 4, .. })));
        assert_eq!(ScrollSpec::parse("F(0,1|2,2)"), Err(ScrollError::NoUnitWeight));
        assert_eq!(ScrollSpec::parse("F(0)"), Err(ScrollError::TooFewCoordinates(1)));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(spec("F(0,1,1,2)").normalize(), spec("F(0,1,1,2)"));
        assert_eq!(spec("F(1,2,2,3)").normalize(), spec("F(0,1,1,2)"));
        assert_eq!(spec("F(2,0,1,0|1,1,1,2)").normalize(), spec("F(0,1,2,0|1,1,1,2)"));
        assert_eq!(spec("F(0,1,2,0|1³,2)").normalize(), spec("F(0,1,2,0|1³,2)"));
        assert_eq!(spec("F(0,2,0,1|1²,2²)").normalize(), spec("F(0,2,0,1|1²,2²)"));
        assert_ne!(spec("F(0,0,1,2|1²,2²)").normalize(), spec("F(0,2,0,1|1²,2²)").normalize());
        // x4 of weight 2 shifts by 2k
        assert_eq!(spec("F(3,3,4,7|1,1,1,2)").normalize(), spec("F(0,0,1,1|1,1,1,2)"));
    }

    #[test]
    fn anticanonical_classes() {
        assert_eq!(spec("F(0,0,0,0)").anticanonical(), DivisorClass::new(2, 4));
        assert_eq!(spec("F(0,1,1,2)").anticanonical(), DivisorClass::new(-2, 4));
        assert_eq!(spec("F(0,0,1,2|1³,3)").anticanonical(), DivisorClass::new(-1, 6));
    }

    #[test]
    fn ray_classes_sum_to_anticanonical() {
        let s = spec("F(0,1,1,2)");
        assert_eq!(s.ray_class(Ray::Rho(3)), DivisorClass::new(-2, 1));
        assert_eq!(s.ray_class(Ray::Rho(0)), DivisorClass::new(0, 1));
        assert_eq!(s.ray_class(Ray::Sigma(1)), DivisorClass::new(1, 0));
        let total = s.coordinate_classes().into_iter().fold(DivisorClass::new(0, 0), |a, b| a + b);
        assert_eq!(total, s.anticanonical());
    }

    #[test]
    fn fan_of_f0112_matches_explicit_rays() {
        let s = spec("F(0,1,1,2)");
        let rays = s.rays();
        assert_eq!(rays[0], vec![-1, 1, 1, 2]);
        assert_eq!(rays[2], vec![0, -1, -1, -1]);
        let fan = s.build_fan();
        assert_eq!(fan.max_cones.len(), 8);
        assert!(fan.is_simplicial());
        assert!(fan.rays_are_primitive());
        assert!(fan.is_complete_sampled(1000, 7));
        assert!(fan.interiors_disjoint_sampled(1000, 8));
        for c in &fan.max_cones {
            assert_eq!(fan.multiplicity(c), Some(BigInt::from(1)));
        }
    }

    #[test]
    fn cone_multiplicities_are_omitted_weights() {
        let s = spec("F(0,0,1,2|1³,3)");
        let fan = s.build_fan();
        for i in 0..2 {
            for j in 0..4 {
                assert_eq!(fan.multiplicity(&s.tau(i, j)), Some(BigInt::from(s.weight(j))));
            }
        }
        assert_eq!(fan.multiplicity(&s.tau(0, 3)), Some(BigInt::from(3)));
    }

    #[test]
    fn relation_matrix_has_unit_invariants() {
        let s = spec("F(0,1,1,2)");
        assert_eq!(s.relation_matrix().row(0), &[1, 1, 0, -1, -1, -2].map(BigInt::from));
        assert_eq!(s.relation_invariant_factors(), vec![1, 1]);
        let rays = s.rays();
        let m = s.relation_matrix();
        for r in 0..2 {
            for coord in 0..4 {
                let sum: BigInt = (0..6).map(|k| &m[(r, k)] * BigInt::from(rays[k][coord])).sum();
                assert_eq!(sum, BigInt::from(0));
            }
        }
    }

    #[test]
    fn product_scroll_is_p1_times_p3() {
        let s = spec("F(0,0,0,0)");
        let rays = s.rays();
        assert_eq!(rays[0], vec![-1, 0, 0, 0]);
        assert_eq!(rays[1], vec![1, 0, 0, 0]);
        assert_eq!(rays[2], vec![0, -1, -1, -1]);
    }

    #[test]
    fn stabilizers() {
        assert!(spec("F(0,1,1,2)").singular_strata().is_empty());
        let s = spec("F(0,0,1,2|1³,3)").singular_strata();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].zero_fibre(), vec![0, 1, 2]);
        assert_eq!(s[0].stabilizer_order, 3);
        assert_eq!(s[0].dim_in_f, 1);
        assert_eq!(s[0].transverse_weights, vec![1, 1, 1, 0]);
        let s = spec("F(0,0,1,2|1²,2²)").singular_strata();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].zero_fibre(), vec![0, 1]);
        assert_eq!(s[0].dim_in_f, 2);
        let s = spec("F(0,0,0,0|1,2,4,4)").singular_strata();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].stabilizer_order, 4);
    }

    #[test]
    fn automorphism_dimensions() {
        assert_eq!(spec("F(0,0,0,0)").aut_dimension(), 18);
        assert_eq!(spec("F(0,1,1,2)").aut_dimension(), 19);
        assert_eq!(spec("F(0,1,1,4)").aut_dimension(), 25);
        let s = spec("F(0,1,1,4)");
        assert_eq!(s.demazure_roots().len(), 21);
    }
}
