//! Double description method for polyhedral cones `{x : A x >= 0}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::{primitive, rational_rank};

/// A cone given by generators: lineality basis plus extreme rays modulo lineality.
#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl ConeGenerators {
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(p: &[BigInt], ap: &BigInt, n: &[BigInt], an: &BigInt) -> Vec<BigInt> {
    // ap > 0 > an; result has zero pairing with the current constraint
    let v: Vec<BigInt> = p.iter().zip(n).map(|(x, y)| x * (-an) + y * ap).collect();
    primitive(&v)
}

/// Generators of `{x in Q^dim : <a, x> >= 0 for every a in constraints}`.
pub fn extreme_rays(constraints: &[Vec<BigInt>], dim: usize) -> ConeGenerators {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<&Vec<BigInt>> = Vec::new();

    for a in constraints {
        assert_eq!(a.len(), dim, "constraint has wrong length");
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            let fix = |v: &Vec<BigInt>| {
                let av = dot(a, v);
                if av.is_zero() {
                    return v.clone();
                }
                let w: Vec<BigInt> = v.iter().zip(&l).map(|(x, y)| x * &al - y * &av).collect();
                primitive(&w)
            };
            lineality = lineality.iter().map(fix).collect();
            rays = rays.iter().map(fix).collect();
            rays.push(primitive(&l));
            processed.push(a);
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        let Some(target_rank) = dim.checked_sub(lineality.len() + 2) else {
            rays.retain(|r| !dot(a, r).is_negative());
            processed.push(a);
            continue;
        };
        let mut next: Vec<Vec<BigInt>> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                next.push(r.clone());
            }
        }
        let tight: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| processed.iter().map(|c| dot(c, r).is_zero()).collect())
            .collect();
        for i in 0..rays.len() {
            if !vals[i].is_positive() {
                continue;
            }
            for j in 0..rays.len() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common: Vec<usize> =
                    (0..processed.len()).filter(|&k| tight[i][k] && tight[j][k]).collect();
                if common.len() < target_rank {
                    continue;
                }
                // combinatorial pre-filter, then the algebraic rank test
                let dominated = (0..rays.len())
                    .any(|k| k != i && k != j && common.iter().all(|&c| tight[k][c]));
                if dominated {
                    continue;
                }
                let sub: Vec<Vec<BigInt>> = common.iter().map(|&k| processed[k].clone()).collect();
                if rational_rank(&sub) != target_rank {
                    continue;
                }
                next.push(combine(&rays[i], &vals[i], &rays[j], &vals[j]));
            }
        }
        rays = next;
        processed.push(a);
    }
    ConeGenerators { lineality, rays }
}
