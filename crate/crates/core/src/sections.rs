use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scroll_lattice::{Halfspace, PolytopeError, RationalPolytope};
use scroll_polyalg::{Field, Order, Poly, Ring};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scroll::{Coord, DivisorClass, ScrollSpec, TorusStratum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SectionsError {
    #[error("the linear system {0} is empty")]
    EmptySystem(DivisorClass),
    #[error("the ring has {got} variables, expected at least {need}")]
    RingMismatch { got: usize, need: usize },
}

/// One weighted partition `q` of the M-degree together with the degree `c`
/// of its coefficient form in `t1, t2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialDatum {
    pub q: Vec<u32>,
    pub c: i64,
}

impl MonomialDatum {
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.q.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, _)| j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSpace {
    pub spec: ScrollSpec,
    pub class: DivisorClass,
    pub monomials: Vec<MonomialDatum>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.monomials.iter().map(|m| (m.c + 1) as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Cox exponent vectors `(t1, t2, x1..xn)` of the full monomial basis,
    /// `t1^i t2^(c-i) x^q` with `i` descending within each datum.
    pub fn basis_exponents(&self) -> Vec<Vec<u16>> {
        let mut out = Vec::with_capacity(self.dim());
        for m in &self.monomials {
            for i in (0..=m.c).rev() {
                let mut e = vec![i as u16, (m.c - i) as u16];
                e.extend(m.q.iter().map(|&x| x as u16));
                out.push(e);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "class": [self.class.l, self.class.m],
            "dim": self.dim(),
            "monomials": self.monomials.iter().map(|m| serde_json::json!({"q": m.q, "c": m.c})).collect::<Vec<_>>(),
        })
    }
}

/// Exponent vectors `q` with `Σ b_j q_j = m`, in ascending lexicographic order.
pub fn weighted_partitions(weights: &[i64], m: i64) -> Vec<Vec<u32>> {
    fn rec(weights: &[i64], j: usize, rem: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == weights.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut q = 0;
        while q * weights[j] <= rem {
            cur.push(q as u32);
            rec(weights, j + 1, rem - q * weights[j], cur, out);
            cur.pop();
            q += 1;
        }
    }
    let mut out = Vec::new();
    if m >= 0 {
        rec(weights, 0, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Monomial basis of `S_{(l,m)}`: partitions `q` of `m` with `c = l + Σ a_j q_j >= 0`.
pub fn section_space(spec: &ScrollSpec, class: DivisorClass) -> SectionSpace {
    let monomials = weighted_partitions(spec.weights(), class.m)
        .into_iter()
        .filter_map(|q| {
            let c = class.l + q.iter().zip(spec.twists()).map(|(&e, a)| e as i64 * a).sum::<i64>();
            (c >= 0).then_some(MonomialDatum { q, c })
        })
        .collect();
    SectionSpace { spec: spec.clone(), class, monomials }
}

pub fn anticanonical_sections(spec: &ScrollSpec) -> SectionSpace {
    section_space(spec, spec.anticanonical())
}

/// Polytope of the torus-invariant divisor `l·D_{σ1} + m·D_{ρ1}` in `M_R = R^n`
/// (dual to the basis `σ2, ρ2, ..., ρn`). Needs a normalized spec.
pub fn divisor_polytope(spec: &ScrollSpec, class: DivisorClass) -> Result<RationalPolytope, PolytopeError> {
    let rays = spec.rays();
    let n = spec.n();
    let hs: Vec<Halfspace> = rays
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let off = match k {
                0 => class.l,
                2 => class.m,
                _ => 0,
            };
            Halfspace::from_i64(v, off)
        })
        .collect();
    RationalPolytope::from_inequalities(n, &hs)
}

fn pairing(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Cox exponents `(t1, t2, x1..xn)` of the monomial attached to a lattice point `u`.
pub fn point_to_exponents(spec: &ScrollSpec, class: DivisorClass, u: &[i64]) -> Vec<i64> {
    let rays = spec.rays();
    let mut e = vec![pairing(u, &rays[0]) + class.l, pairing(u, &rays[1])];
    e.push(pairing(u, &rays[2]) + class.m);
    for r in &rays[3..] {
        e.push(pairing(u, r));
    }
    e
}

/// Inverse of [`point_to_exponents`]: read off `<u, σ2>` and `<u, ρ_j>`, j ≥ 2.
pub fn exponents_to_point(exps: &[i64]) -> Vec<i64> {
    let mut u = vec![exps[1]];
    u.extend(exps[3..].iter().copied());
    u
}

/// Minimal sets `T` of fibre coordinates meeting every support, smallest first.
pub fn minimal_transversals(supports: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let masks: Vec<u32> = supports.iter().map(|s| s.iter().fold(0u32, |m, &j| m | (1 << j))).collect();
    let mut found: Vec<u32> = Vec::new();
    let mut subsets: Vec<u32> = (1..(1u32 << n)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for t in subsets {
        if masks.iter().all(|m| m & t != 0) && !found.iter().any(|&f| f & t == f) {
            found.push(t);
        }
    }
    found.into_iter().map(|t| (0..n).filter(|j| t & (1 << j) != 0).collect()).collect()
}

/// Base locus of `|-K_F|` as coordinate strata `{x_r = 0, r ∈ T}`.
pub fn base_locus(spec: &ScrollSpec) -> Vec<TorusStratum> {
    let n = spec.n();
    let space = anticanonical_sections(spec);
    let supports: Vec<Vec<usize>> = space.monomials.iter().map(|m| m.support().collect()).collect();
    minimal_transversals(&supports, n)
        .into_iter()
        .filter(|t| t.len() < n)
        .map(|t| {
            let surv: Vec<usize> = (0..n).filter(|j| !t.contains(j)).collect();
            let g = spec.stabilizer_order(&surv);
            let mut transverse: Vec<i64> = t.iter().map(|&j| spec.weight(j) % g).collect();
            transverse.push(0);
            TorusStratum {
                zero_coords: t.iter().map(|&j| Coord::X(j)).collect(),
                dim_in_f: (n - t.len()) as i64,
                stabilizer_order: g,
                transverse_weights: transverse,
            }
        })
        .collect()
}

/// The coordinate `x_j` dividing every anticanonical monomial, if any.
pub fn fixed_divisor(spec: &ScrollSpec) -> Option<usize> {
    let space = anticanonical_sections(spec);
    if space.is_empty() {
        return None;
    }
    (0..spec.n()).find(|&j| space.monomials.iter().all(|m| m.q[j] > 0))
}

/// `dim |-K_F| - dim Aut(F)`.
pub fn embedded_moduli_dim(spec: &ScrollSpec) -> Result<i64, SectionsError> {
    let space = anticanonical_sections(spec);
    if space.is_empty() {
        return Err(SectionsError::EmptySystem(spec.anticanonical()));
    }
    Ok(space.dim() as i64 - 1 - spec.aut_dimension())
}

/// Cox coordinate names `t1, t2, x1, ..., xn`.
pub fn cox_names(spec: &ScrollSpec) -> Vec<String> {
    let mut names = vec!["t1".to_string(), "t2".to_string()];
    names.extend((1..=spec.n()).map(|j| format!("x{j}")));
    names
}

/// Positive grading `L-degree + β·M-degree` refining the bigrading.
pub fn cox_grading(spec: &ScrollSpec) -> Vec<u32> {
    let beta = spec
        .twists()
        .iter()
        .zip(spec.weights())
        .map(|(a, b)| (a + 1).div_euclid(*b) + 1)
        .max()
        .unwrap()
        .max(1);
    let mut w = vec![1u32, 1];
    w.extend(spec.twists().iter().zip(spec.weights()).map(|(a, b)| (beta * b - a) as u32));
    w
}

pub fn cox_ring<F: Field>(spec: &ScrollSpec, field: F, order: Order) -> Arc<Ring<F>> {
    Ring::from_owned(field, cox_names(spec), order, cox_grading(spec)).expect("cox ring")
}

/// Section of `class` with independent random nonzero coefficients on every basis monomial.
/// The first `n + 2` ring variables are taken to be `t1, t2, x1..xn`.
pub fn random_section<F: Field>(
    spec: &ScrollSpec,
    class: DivisorClass,
    ring: &Arc<Ring<F>>,
    seed: u64,
) -> Result<Poly<F>, SectionsError> {
    let need = spec.n() + 2;
    if ring.nvars() < need {
        return Err(SectionsError::RingMismatch { got: ring.nvars(), need });
    }
    let space = section_space(spec, class);
    if space.is_empty() {
        return Err(SectionsError::EmptySystem(class));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = space
        .basis_exponents()
        .into_iter()
        .map(|e| {
            let mut full = vec![0u16; ring.nvars()];
            full[..e.len()].copy_from_slice(&e);
            (ring.monomial(&full), ring.field().random_nonzero(&mut rng))
        })
        .collect();
    Ok(ring.from_terms(terms))
}
