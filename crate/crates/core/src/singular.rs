use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use scroll_lattice::{smith_normal_form, IntMatrix};
use scroll_polyalg::{Budget, Field, GbError, Ideal, Order, Poly, PrimeField, Ring};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

use crate::classify::RejectReason;
use crate::scroll::{DivisorClass, ScrollSpec, TorusStratum};
use crate::sections::{anticanonical_sections, base_locus, cox_names, random_section, MonomialDatum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error("stratum {0} is not part of the base locus")]
    NotInBaseLocus(String),
    #[error("expected a {expected}-dimensional stratum, got dimension {got}")]
    WrongDimension { expected: i64, got: i64 },
    #[error("the stratum lattice has torsion; the toric surface model does not apply")]
    Torsion,
    #[error("no weight-1 coordinate survives on the stratum")]
    NoUnitChart,
    #[error("{0}")]
    Groebner(#[from] GbError),
    #[error("the anticanonical system is empty")]
    EmptySystem,
}

/// Number of ODPs, or the marker for a positive-dimensional singular locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OdpCount {
    Finite(i64),
    NonIsolated(NonIsolatedMarker),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonIsolatedMarker {
    #[serde(rename = "non-isolated")]
    NonIsolated,
}

impl OdpCount {
    pub fn finite(&self) -> Option<i64> {
        match self {
            OdpCount::Finite(k) => Some(*k),
            OdpCount::NonIsolated(_) => None,
        }
    }
}

fn stratum_parts(spec: &ScrollSpec, stratum: &TorusStratum) -> Result<(Vec<usize>, Vec<usize>), SingularError> {
    let zero = stratum.zero_fibre();
    if !base_locus(spec).iter().any(|b| b.zero_fibre() == zero) {
        return Err(SingularError::NotInBaseLocus(stratum.describe()));
    }
    let surv = (0..spec.n()).filter(|j| !zero.contains(j)).collect();
    Ok((zero, surv))
}

/// Classes of `∂f/∂x_r` for the vanishing coordinates `x_r` of a base-locus stratum.
pub fn restricted_partial_classes(spec: &ScrollSpec, stratum: &TorusStratum) -> Result<Vec<DivisorClass>, SingularError> {
    let (zero, _) = stratum_parts(spec, stratum)?;
    let k = spec.anticanonical();
    Ok(zero.iter().map(|&r| DivisorClass::new(k.l + spec.twist(r), k.m - spec.weight(r))).collect())
}

/// Monomials of `∂f/∂x_r` restricted to `{x_T = 0}` (exponents after removing `x_r`).
pub fn restricted_partial_monomials(spec: &ScrollSpec, zero: &[usize], r: usize) -> Vec<MonomialDatum> {
    anticanonical_sections(spec)
        .monomials
        .into_iter()
        .filter(|m| m.q[r] == 1 && zero.iter().all(|&s| s == r || m.q[s] == 0))
        .map(|mut m| {
            m.q[r] = 0;
            m
        })
        .collect()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Intersection number of two classes restricted to a two-dimensional stratum,
/// which is the weighted surface scroll `F(a_u, a_v | b_u, b_v)`:
/// `L² = 0`, `L·M = 1/(b_u b_v)`, `M² = (a_u b_v + a_v b_u)/(b_u b_v)²`.
pub fn stratum_intersection_number(
    spec: &ScrollSpec,
    stratum: &TorusStratum,
    c1: DivisorClass,
    c2: DivisorClass,
) -> Result<BigRational, SingularError> {
    let (u, v) = surface_survivors(spec, stratum)?;
    Ok(surface_intersection(spec.twist(u), spec.twist(v), spec.weight(u), spec.weight(v), c1, c2))
}

fn surface_survivors(spec: &ScrollSpec, stratum: &TorusStratum) -> Result<(usize, usize), SingularError> {
    if stratum.dim_in_f != 2 {
        return Err(SingularError::WrongDimension { expected: 2, got: stratum.dim_in_f });
    }
    let zero = stratum.zero_fibre();
    let surv: Vec<usize> = (0..spec.n()).filter(|j| !zero.contains(j)).collect();
    Ok((surv[0], surv[1]))
}

pub fn surface_intersection(au: i64, av: i64, bu: i64, bv: i64, c1: DivisorClass, c2: DivisorClass) -> BigRational {
    let bb = bu * bv;
    rat(c1.l * c2.m + c2.l * c1.m, bb) + rat(c1.m * c2.m * (au * bv + av * bu), bb * bb)
}

/// The same number from the stratum's own fan: rays from a Smith normal form of
/// the surface relation matrix, adjacent products `1/|det|`, self-intersections
/// from linear equivalence.
pub fn stratum_intersection_toric(
    spec: &ScrollSpec,
    stratum: &TorusStratum,
    c1: DivisorClass,
    c2: DivisorClass,
) -> Result<BigRational, SingularError> {
    let (u, v) = surface_survivors(spec, stratum)?;
    toric_surface_intersection(spec.twist(u), spec.twist(v), spec.weight(u), spec.weight(v), c1, c2)
}

pub fn toric_surface_intersection(
    au: i64,
    av: i64,
    bu: i64,
    bv: i64,
    c1: DivisorClass,
    c2: DivisorClass,
) -> Result<BigRational, SingularError> {
    let a = IntMatrix::from_rows(&[vec![1, 1, -au, -av], vec![0, 0, bu, bv]]);
    let snf = smith_normal_form(&a);
    if snf.invariant_factors().iter().any(|d| !d.is_one()) {
        return Err(SingularError::Torsion);
    }
    let rays: Vec<[BigInt; 2]> = (0..4).map(|i| [snf.v[(i, 2)].clone(), snf.v[(i, 3)].clone()]).collect();
    // coordinates 0,1 = t1,t2; 2,3 = x_u,x_v; cones pair a t with an x
    let adjacent = |i: usize, j: usize| (i < 2) != (j < 2);
    let mut form = vec![vec![BigRational::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i != j && adjacent(i, j) {
                let det = &rays[i][0] * &rays[j][1] - &rays[i][1] * &rays[j][0];
                form[i][j] = BigRational::new(BigInt::one(), det.abs());
            }
        }
    }
    for i in 0..4 {
        let k = if rays[i][0].is_zero() { 1 } else { 0 };
        let mi = BigRational::from_integer(rays[i][k].clone());
        let mut s = BigRational::zero();
        for j in 0..4 {
            if j != i {
                s += BigRational::from_integer(rays[j][k].clone()) * &form[j][i];
            }
        }
        form[i][i] = -s / mi;
    }
    // class (q, p) = (q + a_u p / b_u)·D_{t1} + (p / b_u)·D_{x_u}
    let coeffs = |c: DivisorClass| {
        let mut v = vec![BigRational::zero(); 4];
        v[0] = rat(c.l * bu + au * c.m, bu);
        v[2] = rat(c.m, bu);
        v
    };
    let (x, y) = (coeffs(c1), coeffs(c2));
    let mut total = BigRational::zero();
    for i in 0..4 {
        for j in 0..4 {
            total += &x[i] * &y[j] * &form[i][j];
        }
    }
    Ok(total)
}

/// Outcome of the singularity analysis on one base-locus stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub stratum: TorusStratum,
    pub partial_classes: Vec<DivisorClass>,
    /// ODPs on a surface stratum; 0 on a curve stratum free of singular points.
    pub points: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseAnalysis {
    pub strata: Vec<StratumReport>,
    pub odp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub reason: RejectReason,
    pub detail: String,
}

fn reject(reason: RejectReason, detail: String) -> Rejection {
    Rejection { reason, detail }
}

/// Singularities of the general member along the base locus.
pub fn analyze_base_locus(spec: &ScrollSpec) -> Result<BaseAnalysis, Rejection> {
    let space = anticanonical_sections(spec);
    if space.is_empty() {
        return Err(reject(RejectReason::EmptyAnticanonical, format!("no sections of {}", spec.anticanonical())));
    }
    let n = spec.n();
    let strata = base_locus(spec);
    let mut reports = Vec::new();
    let mut odp = BigRational::zero();
    for st in &strata {
        let zero = st.zero_fibre();
        if zero.len() == 1 {
            return Err(reject(RejectReason::FixedDivisor, format!("x{} divides every section", zero[0] + 1)));
        }
        let classes = restricted_partial_classes(spec, st).expect("base stratum");
        let partials: Vec<Vec<MonomialDatum>> =
            zero.iter().map(|&r| restricted_partial_monomials(spec, &zero, r)).collect();
        match st.dim_in_f {
            2 => {
                if let Some(k) = partials.iter().position(|p| p.is_empty()) {
                    return Err(reject(
                        RejectReason::NonIsolatedSingularities,
                        format!("df/dx{} vanishes on {}", zero[k] + 1, st.describe()),
                    ));
                }
                let surv: Vec<usize> = (0..n).filter(|j| !zero.contains(j)).collect();
                let content = |p: &Vec<MonomialDatum>| -> Vec<usize> {
                    surv.iter().copied().filter(|&u| p.iter().all(|m| m.q[u] > 0)).collect()
                };
                let (c0, c1) = (content(&partials[0]), content(&partials[1]));
                if let Some(u) = c0.iter().find(|u| c1.contains(u)) {
                    return Err(reject(
                        RejectReason::NonIsolatedSingularities,
                        format!("both restricted partials vanish on x{} = 0 inside {}", u + 1, st.describe()),
                    ));
                }
                let count = stratum_intersection_number(spec, st, classes[0], classes[1]).expect("surface stratum");
                if !count.is_integer() {
                    return Err(reject(
                        RejectReason::FractionalOdpCount,
                        format!("intersection number {} on {}", count, st.describe()),
                    ));
                }
                odp += &count;
                reports.push(StratumReport {
                    stratum: st.clone(),
                    partial_classes: classes,
                    points: count.to_integer().to_i64().unwrap(),
                });
            }
            1 => {
                let live: Vec<&Vec<MonomialDatum>> = partials.iter().filter(|p| !p.is_empty()).collect();
                let constant = live.iter().any(|p| p.iter().any(|m| m.c == 0));
                if constant || live.len() >= 2 {
                    reports.push(StratumReport { stratum: st.clone(), partial_classes: classes, points: 0 });
                } else if live.len() == 1 {
                    return Err(reject(
                        RejectReason::SingularPointsOnBaseCurve,
                        format!("a single restricted partial of degree {} on {}", live[0][0].c, st.describe()),
                    ));
                } else {
                    return Err(reject(
                        RejectReason::NonIsolatedSingularities,
                        format!("every restricted partial vanishes on {}", st.describe()),
                    ));
                }
            }
            d => {
                return Err(reject(RejectReason::BaseLocusTooLarge, format!("{}-dimensional stratum {}", d, st.describe())))
            }
        }
    }
    Ok(BaseAnalysis { strata: reports, odp: odp.to_integer().to_i64().unwrap() })
}

/// One kind of quotient singularity met by the general member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub count: i64,
    /// The whole singular stratum of `F` lies in `X`.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub well_formed: bool,
    pub gorenstein: bool,
}

fn curve_kind(g: i64, weights: &[i64]) -> String {
    if g == 2 {
        "A1-curve".to_string()
    } else {
        format!("{}-curve", point_kind(g, weights))
    }
}

fn point_kind(g: i64, weights: &[i64]) -> String {
    let w: Vec<String> = weights.iter().map(|x| x.to_string()).collect();
    format!("1/{}({})", g, w.join(","))
}

fn affine_rank_and_length(points: &[Vec<i64>]) -> (usize, i64) {
    if points.len() < 2 {
        return (0, 0);
    }
    let diffs: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    let rank = scroll_lattice::matrix::rational_rank(&diffs);
    if rank != 1 {
        return (rank, 0);
    }
    // all points on a line: the lattice length is the gcd of the extreme difference
    let dir: Vec<i64> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect::<Vec<i64>>())
        .find(|d| d.iter().any(|&x| x != 0))
        .unwrap();
    let proj = |p: &Vec<i64>| -> i64 { p.iter().zip(&dir).map(|(a, b)| a * b).sum() };
    let lo = points.iter().min_by_key(|p| proj(p)).unwrap();
    let hi = points.iter().max_by_key(|p| proj(p)).unwrap();
    let len = hi.iter().zip(lo).fold(0i64, |g, (a, b)| g.gcd(&(a - b)));
    (1, len)
}

/// Number of irreducible components of the general member of a monomial linear system
/// on a surface stratum: one per fixed coordinate curve, plus the moving part, which is
/// irreducible when its monomials span an affine space of dimension at least 2 and splits
/// into `length` members of a pencil when they lie on a line.
pub fn restricted_curve_components(monomials: &[MonomialDatum], surv: &[usize]) -> i64 {
    let content: Vec<u32> = surv.iter().map(|&u| monomials.iter().map(|m| m.q[u]).min().unwrap_or(0)).collect();
    let mut comps = content.iter().filter(|&&c| c > 0).count() as i64;
    let mut pts: Vec<Vec<i64>> = Vec::new();
    for m in monomials {
        for i in 0..=m.c {
            let mut p: Vec<i64> = surv.iter().zip(&content).map(|(&u, &c)| (m.q[u] - c) as i64).collect();
            p.push(i);
            pts.push(p);
        }
    }
    pts.sort();
    pts.dedup();
    let (rank, len) = affine_rank_and_length(&pts);
    comps += match rank {
        0 => 0,
        1 => len,
        _ => 1,
    };
    comps
}

/// Quotient singularities of the general member coming from the singular strata of `F`.
pub fn quotient_singularity_census(spec: &ScrollSpec) -> Census {
    let n = spec.n();
    let space = anticanonical_sections(spec);
    let strata = spec.singular_strata();
    let maximal: Vec<&TorusStratum> = strata
        .iter()
        .filter(|s| {
            !strata.iter().any(|o| {
                let (zs, zo) = (s.zero_fibre(), o.zero_fibre());
                zo.len() < zs.len() && zo.iter().all(|j| zs.contains(j))
            })
        })
        .collect();
    let mut entries = Vec::new();
    let mut well_formed = true;
    let mut gorenstein = true;
    for st in maximal {
        let killed = st.zero_fibre();
        let surv: Vec<usize> = (0..n).filter(|j| !killed.contains(j)).collect();
        let g = st.stabilizer_order;
        let kw: Vec<i64> = killed.iter().map(|&j| spec.weight(j) % g).collect();
        let restricted: Vec<MonomialDatum> =
            space.monomials.iter().filter(|m| killed.iter().all(|&j| m.q[j] == 0)).cloned().collect();
        match surv.len() {
            1 => {
                if restricted.is_empty() {
                    // transverse slice in X is a surface quotient 1/g(w, w'); Gorenstein needs g = 2 here
                    if g != 2 {
                        gorenstein = false;
                    }
                    entries.push(CensusEntry { kind: curve_kind(g, &kw), count: 1, contained: true });
                } else {
                    let c = restricted[0].c;
                    if c > 0 {
                        if kw.iter().sum::<i64>() % g != 0 {
                            gorenstein = false;
                        }
                        entries.push(CensusEntry { kind: point_kind(g, &kw), count: c, contained: false });
                    }
                }
            }
            2 => {
                if restricted.is_empty() {
                    well_formed = false;
                    continue;
                }
                let comps = restricted_curve_components(&restricted, &surv);
                if comps > 0 {
                    if g != 2 {
                        gorenstein = false;
                    }
                    entries.push(CensusEntry { kind: curve_kind(g, &kw), count: comps, contained: false });
                }
            }
            _ => well_formed = false,
        }
    }
    Census { entries, well_formed, gorenstein }
}

const NUMBER_WORDS: [&str; 11] = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];

fn number_word(k: i64) -> String {
    NUMBER_WORDS.get(k as usize).map(|s| s.to_string()).unwrap_or_else(|| k.to_string())
}

/// Human description of a census entry, e.g. "three 1/3(1,1,1) singularities".
pub fn census_phrase(e: &CensusEntry) -> String {
    if let Some(kind) = e.kind.strip_suffix("-curve") {
        let kind = if kind == "A1" { "A1".to_string() } else { kind.to_string() };
        if e.count == 1 {
            format!("one smooth curve of {kind} singularities")
        } else {
            format!("{} disjoint smooth curves of {kind} singularities", number_word(e.count))
        }
    } else if e.count == 1 {
        format!("one {} singularity", e.kind)
    } else {
        format!("{} {} singularities", number_word(e.count), e.kind)
    }
}

/// Verdict of the quasismoothness test away from the base locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quasismooth {
    /// Bertini's theorem on the cone minus the base locus, no computation.
    ProvedGeneric,
    VerifiedRandom,
    Failed,
    Inconclusive,
}

/// Generators of the ideal of the base locus: squarefree products picking one
/// vanishing coordinate from each stratum.
pub fn base_locus_ideal_generators(spec: &ScrollSpec) -> Vec<Vec<usize>> {
    let strata: Vec<Vec<usize>> = base_locus(spec).iter().map(|s| s.zero_fibre()).collect();
    let mut gens: Vec<Vec<usize>> = vec![vec![]];
    for t in &strata {
        let mut next = Vec::new();
        for g in &gens {
            for &r in t {
                let mut h = g.clone();
                if !h.contains(&r) {
                    h.push(r);
                    h.sort();
                }
                next.push(h);
            }
        }
        next.sort();
        next.dedup();
        gens = next;
    }
    let all = gens.clone();
    gens.retain(|g| !all.iter().any(|h| h.len() < g.len() && h.iter().all(|x| g.contains(x))));
    gens
}

fn cox_ring_with(spec: &ScrollSpec, field: PrimeField, extra: &[&str]) -> Arc<Ring<PrimeField>> {
    let mut names = cox_names(spec);
    names.extend(extra.iter().map(|s| s.to_string()));
    let weights = vec![1; names.len()];
    Ring::from_owned(field, names, Order::DegRevLex, weights).expect("ring")
}

fn jacobian_gens<F: Field>(ring: &Ring<F>, f: &Poly<F>, nvars: usize) -> Vec<Poly<F>> {
    let mut gens = vec![f.clone()];
    gens.extend((0..nvars).map(|v| ring.diff(f, v)));
    gens
}

fn specialize_all<F: Field>(ring: &Ring<F>, p: &Poly<F>, vars: &[usize]) -> Poly<F> {
    let one = ring.field().one();
    vars.iter().fold(p.clone(), |acc, &v| ring.specialize(&acc, v, &one))
}

/// Checks one random member on every chart `t_i = x_j = 1`: the singular scheme of the
/// affine cone there is supported on the base locus.
pub fn quasismooth_outside_base_once(spec: &ScrollSpec, prime: u32, seed: u64, budget: &Budget) -> Result<bool, SingularError> {
    let ring = cox_ring_for_checks(spec, prime);
    let f = random_section(spec, spec.anticanonical(), &ring, seed).map_err(|_| SingularError::EmptySystem)?;
    Ok(quasismooth_outside_base_for(spec, &ring, &f, budget)?)
}

/// Same test for a caller-supplied anticanonical polynomial in the ring of [`cox_ring_for_checks`].
pub fn quasismooth_outside_base_for(
    spec: &ScrollSpec,
    ring: &Arc<Ring<PrimeField>>,
    f: &Poly<PrimeField>,
    budget: &Budget,
) -> Result<bool, GbError> {
    let n = spec.n();
    let s = n + 2;
    let jac = jacobian_gens(ring, f, n + 2);
    let ib = base_locus_ideal_generators(spec);
    let one = ring.one();
    for i in 0..2 {
        for j in 0..n {
            let chart = [i, 2 + j];
            let mut base: Vec<Poly<PrimeField>> = jac.iter().map(|p| specialize_all(ring, p, &chart)).collect();
            base.extend(chart.iter().map(|&v| ring.sub(&ring.var(v), &one)));
            base.push(ring.var(s));
            let ideal = Ideal::new(ring, base.clone());
            let gb = ideal.groebner(budget)?;
            if gb.is_unit() {
                continue;
            }
            let length = ideal.vector_space_dim(budget)?;
            for g in &ib {
                let mut e = vec![0u16; ring.nvars()];
                for &r in g {
                    e[2 + r] = 1;
                }
                let gm = ring.term(ring.monomial(&e), ring.field().one());
                let vanishes = match length {
                    // finitely many points: g vanishes on all of them iff g^length lies in J
                    Some(d) => gb.normal_form(&ring.pow(&gm, d as u32)).is_zero(),
                    None => {
                        let mut gens = base.clone();
                        gens.pop();
                        gens.push(ring.sub(&one, &ring.mul(&ring.var(s), &gm)));
                        Ideal::new(ring, gens).is_unit(budget)?
                    }
                };
                if !vanishes {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Cox coordinates `t1, t2, x1..xn` and an auxiliary `s`, standard grading.
pub fn cox_ring_for_checks(spec: &ScrollSpec, prime: u32) -> Arc<Ring<PrimeField>> {
    cox_ring_with(spec, PrimeField::new(prime), &["s"])
}

/// Random verification with retries: the first passing seed settles it.
pub fn quasismooth_outside_base(spec: &ScrollSpec, prime: u32, seeds: &[u64], budget: &Budget) -> Quasismooth {
    let mut inconclusive = false;
    for &seed in seeds {
        match quasismooth_outside_base_once(spec, prime, seed, budget) {
            Ok(true) => return Quasismooth::VerifiedRandom,
            Ok(false) => {}
            Err(_) => inconclusive = true,
        }
    }
    if inconclusive {
        Quasismooth::Inconclusive
    } else {
        Quasismooth::Failed
    }
}

/// Off the base locus the anticanonical system is base point free on the cone, so by
/// Bertini the general member is quasismooth there; `verify` adds the randomized check.
pub fn quasismooth_verdict(spec: &ScrollSpec, prime: u32, seeds: &[u64], budget: &Budget, verify: bool) -> Quasismooth {
    if !verify {
        return Quasismooth::ProvedGeneric;
    }
    quasismooth_outside_base(spec, prime, seeds, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdpVerification {
    pub expected: i64,
    /// Length of the singular scheme in the chart `t1 = x_u = 1`.
    pub degree: u64,
    pub hessians_nondegenerate: bool,
    pub seed: u64,
}

impl OdpVerification {
    pub fn passed(&self) -> bool {
        self.degree as i64 == self.expected && self.hessians_nondegenerate
    }
}

/// Singular scheme of a random member in the chart `t1 = 1, x_u = 1` (`x_u` a weight-1
/// coordinate surviving on the surface stratum of the base locus): its length and
/// whether every point has a nondegenerate Hessian.
pub fn verify_odp_types(spec: &ScrollSpec, prime: u32, seed: u64, budget: &Budget) -> Result<OdpVerification, SingularError> {
    let analysis = analyze_base_locus(spec).map_err(|_| SingularError::EmptySystem)?;
    let surface = analysis
        .strata
        .iter()
        .find(|r| r.stratum.dim_in_f == 2)
        .ok_or(SingularError::WrongDimension { expected: 2, got: 1 })?;
    let zero = surface.stratum.zero_fibre();
    let u = (0..spec.n()).find(|j| !zero.contains(j) && spec.weight(*j) == 1).ok_or(SingularError::NoUnitChart)?;
    let ring = cox_ring_with(spec, PrimeField::new(prime), &[]);
    let f = random_section(spec, spec.anticanonical(), &ring, seed).map_err(|_| SingularError::EmptySystem)?;
    let chart = [0, 2 + u];
    let mut jac: Vec<Poly<PrimeField>> =
        jacobian_gens(&ring, &f, spec.n() + 2).iter().map(|p| specialize_all(&ring, p, &chart)).collect();
    jac.extend(chart.iter().map(|&v| ring.sub(&ring.var(v), &ring.one())));
    let ideal = Ideal::new(&ring, jac);
    let degree = ideal.vector_space_dim(budget)?.unwrap_or(u64::MAX);
    let fc = specialize_all(&ring, &f, &chart);
    let vars: Vec<usize> = (0..ring.nvars()).filter(|v| !chart.contains(v)).collect();
    let gb = ideal.groebner(budget)?;
    let entries: Vec<Vec<Poly<PrimeField>>> = vars
        .iter()
        .map(|&a| vars.iter().map(|&b| gb.normal_form(&ring.diff(&ring.diff(&fc, a), b))).collect())
        .collect();
    let det = determinant_mod(&ring, &entries, &|p| gb.normal_form(p));
    let nondegenerate = if gb.is_unit() { true } else { ideal.add_generators(&[det]).is_unit(budget)? };
    Ok(OdpVerification { expected: analysis.odp, degree, hessians_nondegenerate: nondegenerate, seed })
}

/// Determinant by cofactor expansion, reducing every product with `nf`.
pub fn determinant_mod<F: Field>(ring: &Ring<F>, m: &[Vec<Poly<F>>], nf: &dyn Fn(&Poly<F>) -> Poly<F>) -> Poly<F> {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut total = ring.zero();
    for col in 0..k {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly<F>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect()).collect();
        let sub = determinant_mod(ring, &minor, nf);
        let term = nf(&ring.mul(&m[0][col], &sub));
        total = if col % 2 == 0 { ring.add(&total, &term) } else { ring.sub(&total, &term) };
    }
    nf(&total)
}

/// Full report on the general member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub odp: OdpCount,
    pub census: Vec<CensusEntry>,
    pub quasismooth: Quasismooth,
    pub well_formed: bool,
    pub gorenstein: bool,
    pub calabi_yau: bool,
}

impl SingularityReport {
    pub fn new(odp: OdpCount, census: Census, quasismooth: Quasismooth) -> Self {
        SingularityReport {
            odp,
            census: census.entries,
            quasismooth,
            well_formed: census.well_formed,
            gorenstein: census.gorenstein,
            calabi_yau: census.well_formed && census.gorenstein,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> ScrollSpec {
        ScrollSpec::parse(s).unwrap()
    }

    fn surface(s: &ScrollSpec) -> TorusStratum {
        base_locus(s).into_iter().find(|t| t.dim_in_f == 2).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn partial_classes() {
        let s = spec("F(0,0,1,2)");
        assert_eq!(restricted_partial_classes(&s, &surface(&s)).unwrap(), vec![DivisorClass::new(0, 3), DivisorClass::new(1, 3)]);
        let s = spec("F(0,0,1,2|1³,3)");
        assert_eq!(restricted_partial_classes(&s, &surface(&s)).unwrap(), vec![DivisorClass::new(0, 5), DivisorClass::new(1, 3)]);
        let s = spec("F(0,2,0,1|1²,2²)");
        assert_eq!(restricted_partial_classes(&s, &surface(&s)).unwrap(), vec![DivisorClass::new(1, 5), DivisorClass::new(0, 4)]);
    }

    #[test]
    fn non_base_stratum_is_rejected() {
        let s = spec("F(0,0,1,2)");
        let mut st = surface(&s);
        st.zero_coords.pop();
        assert!(matches!(restricted_partial_classes(&s, &st), Err(SingularError::NotInBaseLocus(_))));
    }

    #[test]
    fn intersection_numbers() {
        let s = spec("F(0,0,1,2)");
        let st = surface(&s);
        assert_eq!(stratum_intersection_number(&s, &st, DivisorClass::new(0, 3), DivisorClass::new(1, 3)).unwrap(), q(3));
        let s = spec("F(0,0,2,2)");
        let st = surface(&s);
        assert_eq!(stratum_intersection_number(&s, &st, DivisorClass::new(0, 3), DivisorClass::new(0, 3)).unwrap(), q(0));
        let s = spec("F(0,2,0,1|1²,2²)");
        let st = surface(&s);
        assert_eq!(stratum_intersection_number(&s, &st, DivisorClass::new(1, 5), DivisorClass::new(0, 4)).unwrap(), q(2));
        let s = spec("F(0,0,1,2|1³,3)");
        let st = surface(&s);
        assert_eq!(stratum_intersection_number(&s, &st, DivisorClass::new(0, 5), DivisorClass::new(1, 3)).unwrap(), q(5));
    }

    #[test]
    fn toric_path_agrees_with_closed_formula() {
        for (a, b) in [((0, 0), (1, 1)), ((0, 2), (1, 2)), ((1, 3), (2, 3)), ((-2, 1), (1, 4))] {
            for c1 in [DivisorClass::new(0, 3), DivisorClass::new(2, -1), DivisorClass::new(-1, 5)] {
                for c2 in [DivisorClass::new(1, 3), DivisorClass::new(0, 4)] {
                    assert_eq!(
                        toric_surface_intersection(a.0, a.1, b.0, b.1, c1, c2).unwrap(),
                        surface_intersection(a.0, a.1, b.0, b.1, c1, c2)
                    );
                }
            }
        }
        assert_eq!(
            toric_surface_intersection(0, 1, 2, 2, DivisorClass::new(0, 1), DivisorClass::new(0, 1)),
            Err(SingularError::Torsion)
        );
    }

    #[test]
    fn base_analysis() {
        assert_eq!(analyze_base_locus(&spec("F(0,0,1,2)")).unwrap().odp, 3);
        assert_eq!(analyze_base_locus(&spec("F(0,0,2,2)")).unwrap().odp, 0);
        assert_eq!(analyze_base_locus(&spec("F(0,1,1,2)")).unwrap().odp, 0);
        assert_eq!(analyze_base_locus(&spec("F(0,0,0,9)")).unwrap_err().reason, RejectReason::FixedDivisor);
        assert_eq!(analyze_base_locus(&spec("F(0,1,0,2|1²,2²)")).unwrap_err().reason, RejectReason::FractionalOdpCount);
    }

    #[test]
    fn censuses() {
        let c = quotient_singularity_census(&spec("F(0,0,1,2|1³,3)"));
        assert_eq!(c.entries, vec![CensusEntry { kind: "1/3(1,1,1)".into(), count: 3, contained: false }]);
        assert!(c.gorenstein && c.well_formed);
        assert_eq!(census_phrase(&c.entries[0]), "three 1/3(1,1,1) singularities");
        let c = quotient_singularity_census(&spec("F(0,0,2,1|1³,3)"));
        assert_eq!(census_phrase(&c.entries[0]), "one 1/3(1,1,1) singularity");
        let c = quotient_singularity_census(&spec("F(0,0,1,2|1³,2)"));
        assert_eq!(c.entries, vec![CensusEntry { kind: "A1-curve".into(), count: 1, contained: true }]);
        let c = quotient_singularity_census(&spec("F(0,2,0,1|1²,2²)"));
        assert_eq!(c.entries[0].count, 2);
        assert_eq!(census_phrase(&c.entries[0]), "two disjoint smooth curves of A1 singularities");
        let c = quotient_singularity_census(&spec("F(0,0,1,2|1²,2²)"));
        assert_eq!(c.entries[0].count, 1);
        assert!(quotient_singularity_census(&spec("F(0,1,1,2)")).entries.is_empty());
    }

    #[test]
    fn pencil_components_use_lattice_length() {
        let m = |qu: u32, qv: u32, c: i64| MonomialDatum { q: vec![qu, qv], c };
        assert_eq!(restricted_curve_components(&[m(3, 0, 0), m(1, 2, 0), m(0, 3, 0)], &[0, 1]), 3);
        assert_eq!(restricted_curve_components(&[m(0, 6, 0), m(2, 4, 0), m(6, 0, 0)], &[0, 1]), 6);
        // content x_u x_v, then a pencil of length 2
        assert_eq!(restricted_curve_components(&[m(1, 3, 0), m(3, 1, 0)], &[0, 1]), 4);
        assert_eq!(restricted_curve_components(&[m(1, 0, 1), m(0, 1, 0)], &[0, 1]), 1);
        assert_eq!(restricted_curve_components(&[m(2, 0, 0)], &[0, 1]), 1);
    }

    #[test]
    fn ideal_of_base_locus() {
        assert_eq!(base_locus_ideal_generators(&spec("F(0,0,1,2)")), vec![vec![2], vec![3]]);
        assert_eq!(base_locus_ideal_generators(&spec("F(0,0,0,0)")), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn random_quasismoothness() {
        let b = Budget::default();
        assert_eq!(quasismooth_outside_base(&spec("F(0,0,0,0)"), 32003, &[1, 2, 3], &b), Quasismooth::VerifiedRandom);
        assert_eq!(quasismooth_outside_base(&spec("F(0,0,1,2)"), 32003, &[1, 2, 3], &b), Quasismooth::VerifiedRandom);
    }

    #[test]
    fn reducible_member_is_not_quasismooth() {
        let s = spec("F(0,0,0,0)");
        let ring = cox_ring_for_checks(&s, 32003);
        let g = random_section(&s, DivisorClass::new(2, 3), &ring, 5).unwrap();
        let f = ring.mul(&ring.var(2), &g);
        assert!(!quasismooth_outside_base_for(&s, &ring, &f, &Budget::default()).unwrap());
    }

    #[test]
    fn odp_verification_f0012() {
        let v = verify_odp_types(&spec("F(0,0,1,2)"), 32003, 1, &Budget::default()).unwrap();
        assert_eq!(v.degree, 3);
        assert!(v.passed());
        let v = verify_odp_types(&spec("F(0,0,2,2)"), 32003, 1, &Budget::default()).unwrap();
        assert_eq!(v.degree, 0);
    }
}
