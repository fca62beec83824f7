use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dd::extreme_rays;
use crate::matrix::{rational_inverse, rational_rank, IntMatrix};
use crate::polytope::{PolytopeError, RationalPolytope};

/// A polyhedral fan given by primitive rays and maximal cones (sorted ray-index sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub lattice_rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A unimodular `matrix` sending ray `i` of the source fan to ray `ray_map[i]` of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanIsomorphism {
    pub matrix: IntMatrix,
    pub ray_map: Vec<usize>,
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn gcd_i64(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
}

impl Fan {
    pub fn new(lattice_rank: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Self {
        let mut max_cones: Vec<Vec<usize>> = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        max_cones.sort();
        Fan { lattice_rank, rays, max_cones }
    }

    pub fn rays_are_primitive(&self) -> bool {
        self.rays.iter().all(|r| gcd_i64(r) == 1)
    }

    fn cone_rays(&self, c: &[usize]) -> Vec<Vec<BigInt>> {
        c.iter().map(|&i| big(&self.rays[i])).collect()
    }

    pub fn cone_dim(&self, c: &[usize]) -> usize {
        rational_rank(&self.cone_rays(c))
    }

    pub fn is_cone_simplicial(&self, c: &[usize]) -> bool {
        self.cone_dim(c) == c.len()
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| self.is_cone_simplicial(c))
    }

    /// Index of the sublattice spanned by a full-dimensional simplicial cone.
    pub fn multiplicity(&self, c: &[usize]) -> Option<BigInt> {
        if c.len() != self.lattice_rank || !self.is_cone_simplicial(c) {
            return None;
        }
        Some(IntMatrix::from_rows(&self.cone_rays(c)).det().abs())
    }

    /// Inequality description of each maximal cone: `(facet normals, equations)`.
    fn cone_duals(&self) -> Vec<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
        self.max_cones
            .iter()
            .map(|c| {
                let g = extreme_rays(&self.cone_rays(c), self.lattice_rank);
                (g.rays, g.lineality)
            })
            .collect()
    }

    pub fn cones_containing(&self, x: &[i64]) -> Vec<usize> {
        let xb = big(x);
        let dot = |a: &[BigInt]| -> BigInt { a.iter().zip(&xb).map(|(p, q)| p * q).sum() };
        self.cone_duals()
            .iter()
            .enumerate()
            .filter(|(_, (ineq, eq))| ineq.iter().all(|a| !dot(a).is_negative()) && eq.iter().all(|a| dot(a).is_zero()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Sampled completeness check: every random direction lies in some maximal cone.
    pub fn is_complete_sampled(&self, samples: usize, seed: u64) -> bool {
        let duals = self.cone_duals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x: Vec<BigInt> = (0..self.lattice_rank).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
            let dot = |a: &[BigInt]| -> BigInt { a.iter().zip(&x).map(|(p, q)| p * q).sum() };
            let covered = duals
                .iter()
                .any(|(ineq, eq)| ineq.iter().all(|a| !dot(a).is_negative()) && eq.iter().all(|a| dot(a).is_zero()));
            if !covered {
                return false;
            }
        }
        true
    }

    /// Sampled check that distinct maximal cones only meet along boundaries:
    /// no random direction lies in the interior of two cones.
    pub fn interiors_disjoint_sampled(&self, samples: usize, seed: u64) -> bool {
        let duals = self.cone_duals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x: Vec<BigInt> = (0..self.lattice_rank).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
            let dot = |a: &[BigInt]| -> BigInt { a.iter().zip(&x).map(|(p, q)| p * q).sum() };
            let inside = duals
                .iter()
                .filter(|(ineq, eq)| eq.is_empty() && ineq.iter().all(|a| dot(a).is_positive()))
                .count();
            if inside > 1 {
                return false;
            }
        }
        true
    }

    /// Search for a lattice automorphism carrying this fan onto `other`.
    pub fn find_isomorphism(&self, other: &Fan) -> Option<FanIsomorphism> {
        let n = self.lattice_rank;
        if n != other.lattice_rank || self.rays.len() != other.rays.len() || self.max_cones.len() != other.max_cones.len() {
            return None;
        }
        let basis = independent_subset(&self.rays, n)?;
        let src = IntMatrix::from_rows(&basis.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>()).transpose();
        let src_inv = rational_inverse(&src)?;
        let target_cones: BTreeSet<Vec<usize>> = other.max_cones.iter().cloned().collect();
        let target_index: HashMap<Vec<i64>, usize> =
            other.rays.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

        let m = other.rays.len();
        let mut choice = vec![0usize; n];
        let mut used = vec![false; m];
        self.search(0, &basis, &src_inv, &mut choice, &mut used, other, &target_cones, &target_index)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        depth: usize,
        basis: &[usize],
        src_inv: &[Vec<BigRational>],
        choice: &mut Vec<usize>,
        used: &mut Vec<bool>,
        other: &Fan,
        target_cones: &BTreeSet<Vec<usize>>,
        target_index: &HashMap<Vec<i64>, usize>,
    ) -> Option<FanIsomorphism> {
        let n = self.lattice_rank;
        if depth == n {
            // T = target_basis * src^{-1}
            let mut t = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let mut s = BigRational::zero();
                    for (k, &c) in choice.iter().enumerate() {
                        s += BigRational::from_integer(other.rays[c][i].into()) * &src_inv[k][j];
                    }
                    if !s.is_integer() {
                        return None;
                    }
                    t[(i, j)] = s.to_integer();
                }
            }
            if !t.is_unimodular() {
                return None;
            }
            let mut ray_map = Vec::with_capacity(self.rays.len());
            for r in &self.rays {
                let img: Vec<i64> = t.mul_vec(&big(r)).iter().map(|x| x.to_i64().unwrap()).collect();
                ray_map.push(*target_index.get(&img)?);
            }
            let mapped: BTreeSet<Vec<usize>> = self
                .max_cones
                .iter()
                .map(|c| {
                    let mut v: Vec<usize> = c.iter().map(|&i| ray_map[i]).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            if &mapped != target_cones {
                return None;
            }
            return Some(FanIsomorphism { matrix: t, ray_map });
        }
        for c in 0..other.rays.len() {
            if used[c] {
                continue;
            }
            used[c] = true;
            choice[depth] = c;
            let found = self.search(depth + 1, basis, src_inv, choice, used, other, target_cones, target_index);
            used[c] = false;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn independent_subset(rays: &[Vec<i64>], n: usize) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rays.len() {
        let mut trial: Vec<Vec<BigInt>> = chosen.iter().map(|&j| big(&rays[j])).collect();
        trial.push(big(&rays[i]));
        if rational_rank(&trial) == trial.len() {
            chosen.push(i);
            if chosen.len() == n {
                return Some(chosen);
            }
        }
    }
    None
}

/// Inner normal fan: one maximal cone per vertex, spanned by the normals of the facets through it.
pub fn normal_fan(p: &RationalPolytope) -> Result<Fan, PolytopeError> {
    if !p.is_full_dimensional() {
        return Err(PolytopeError::LowerDimensional { dim: p.dim().unwrap_or(0), ambient: p.ambient_dim() });
    }
    let rays: Vec<Vec<i64>> = p
        .facets()
        .iter()
        .map(|f| f.normal.iter().map(|x| x.to_i64().expect("facet normal fits in i64")).collect())
        .collect();
    let cones: Vec<Vec<usize>> = p
        .vertices()
        .iter()
        .map(|v| (0..p.facets().len()).filter(|&i| p.facets()[i].slack(v).is_zero()).collect())
        .collect();
    Ok(Fan::new(p.ambient_dim(), rays, cones))
}
