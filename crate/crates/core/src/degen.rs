//! Half-anticanonical models in P^19 of `P1 x P3`, `F(0,1,1,2)` and `F(0,0,2,2)`,
//! the rank-one matrix descriptions of their images, and the one-parameter
//! family degenerating the first to the second.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scroll_lattice::{normal_fan, Fan, PolytopeError, RationalPolytope};
use scroll_polyalg::{toric_ideal, Budget, Field, GbError, GroebnerBasis, HilbertSeries, Ideal, Order, Poly, PrimeField, Ring, RingError};
use serde::Serialize;
use thiserror::Error;

use crate::scroll::{DivisorClass, ScrollSpec};
use crate::sections::{cox_ring, divisor_polytope, section_space};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DegenError {
    #[error("{spec} has no half-anticanonical class")]
    NoHalfClass { spec: String },
    #[error("half-anticanonical system of {spec} has dimension {dim}, expected 20")]
    WrongDimension { spec: String, dim: usize },
    #[error("{spec} is not supported here")]
    Unsupported { spec: String },
    #[error("cannot parse factor {0:?}")]
    BadFactor(String),
    #[error("product of row factor {row} and column factor {col} is not a coordinate")]
    Inadmissible { row: String, col: String },
    #[error("{0}")]
    Groebner(#[from] GbError),
    #[error("{0}")]
    Polytope(#[from] PolytopeError),
    #[error("{0}")]
    Ring(#[from] RingError),
}

pub const M1_ROWS: [&str; 4] = ["x1", "x2", "x3", "x4"];
pub const M1_COLS: [&str; 8] = ["t1*x1", "t1*x2", "t1*x3", "t1*x4", "t2*x1", "t2*x2", "t2*x3", "t2*x4"];
pub const M0_ROWS: [&str; 4] = ["x2", "x3", "t1*x4", "t2*x4"];
pub const M0_COLS: [&str; 8] = ["x1", "t1*x2", "t1*x3", "t2*x2", "t2*x3", "t1^2*x4", "t1*t2*x4", "t2^2*x4"];

/// Coordinates of P^19 labelled by the monomials `t1^i t2^j x_k x_l` they pull back to.
#[derive(Clone, Debug, Serialize)]
pub struct CoordinateSystem {
    pub spec: ScrollSpec,
    pub prefix: char,
    pub labels: Vec<String>,
    /// Cox exponents `(t1, t2, x1..xn)` of each coordinate.
    pub monomials: Vec<Vec<u16>>,
    #[serde(skip)]
    index: HashMap<Vec<u16>, usize>,
}

impl CoordinateSystem {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, exps: &[u16]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Polynomial ring on the coordinates, standard grading.
    pub fn ring<F: Field>(&self, field: F) -> Arc<Ring<F>> {
        Ring::from_owned(field, self.labels.clone(), Order::DegRevLex, vec![1; self.len()]).expect("coordinate ring")
    }

    /// Exponent images for the toric parametrization.
    pub fn images(&self) -> Vec<Vec<i64>> {
        self.monomials.iter().map(|e| e.iter().map(|&x| x as i64).collect()).collect()
    }

    pub fn parse_factor(&self, s: &str) -> Result<Vec<u16>, DegenError> {
        let r = cox_ring(&self.spec, PrimeField::default(), Order::DegRevLex);
        let p = r.parse(s).map_err(|_| DegenError::BadFactor(s.to_string()))?;
        if p.len() != 1 {
            return Err(DegenError::BadFactor(s.to_string()));
        }
        Ok(p.lm().exponents(r.nvars()).to_vec())
    }

    /// Image of a coordinate polynomial under the parametrization, in the Cox ring.
    pub fn pull_back<F: Field>(&self, ring: &Ring<F>, cox: &Ring<F>, f: &Poly<F>) -> Poly<F> {
        let one = cox.field().one();
        let images: Vec<Poly<F>> = self.monomials.iter().map(|e| cox.from_exponents(&[(e.clone(), one.clone())])).collect();
        ring.substitute(f, cox, &images)
    }
}

fn label(prefix: char, e: &[u16]) -> String {
    let mut xs = Vec::new();
    for (k, &m) in e[2..].iter().enumerate() {
        for _ in 0..m {
            xs.push(k + 1);
        }
    }
    let xs: String = xs.iter().map(|k| k.to_string()).collect();
    format!("{prefix}{}{}{xs}", e[0], e[1])
}

/// Sections of `-K/2` ordered by coefficient degree, then by descending `x`-exponent, then by descending `t1`-exponent.
pub fn build_half_anticanonical(spec: &ScrollSpec, prefix: char) -> Result<CoordinateSystem, DegenError> {
    let k = spec.anticanonical();
    if k.l % 2 != 0 || k.m % 2 != 0 {
        return Err(DegenError::NoHalfClass { spec: spec.paper_notation() });
    }
    let space = section_space(spec, DivisorClass::new(k.l / 2, k.m / 2));
    if space.dim() != 20 {
        return Err(DegenError::WrongDimension { spec: spec.paper_notation(), dim: space.dim() });
    }
    let mut data = space.monomials.clone();
    data.sort_by(|a, b| a.c.cmp(&b.c).then(b.q.cmp(&a.q)));
    let mut monomials = Vec::new();
    for m in &data {
        for i in (0..=m.c).rev() {
            let mut e = vec![i as u16, (m.c - i) as u16];
            e.extend(m.q.iter().map(|&x| x as u16));
            monomials.push(e);
        }
    }
    let labels = monomials.iter().map(|e| label(prefix, e)).collect();
    let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    Ok(CoordinateSystem { spec: spec.clone(), prefix, labels, monomials, index })
}

pub fn p1_p3() -> ScrollSpec {
    ScrollSpec::unweighted(&[0, 0, 0, 0]).unwrap()
}

pub fn f0112() -> ScrollSpec {
    ScrollSpec::unweighted(&[0, 1, 1, 2]).unwrap()
}

pub fn f0022() -> ScrollSpec {
    ScrollSpec::unweighted(&[0, 0, 2, 2]).unwrap()
}

/// Matrix whose `(r, c)` entry is the coordinate `row_factor[r] * col_factor[c]`.
#[derive(Clone, Debug, Serialize)]
pub struct RankOneMatrix {
    pub row_factors: Vec<String>,
    pub col_factors: Vec<String>,
    pub entries: Vec<Vec<usize>>,
}

impl RankOneMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.col_factors.len()
    }

    pub fn label_matrix(&self, coords: &CoordinateSystem) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|&i| coords.labels[i].clone()).collect()).collect()
    }

    pub fn poly_matrix<F: Field>(&self, ring: &Ring<F>) -> Vec<Vec<Poly<F>>> {
        self.entries.iter().map(|r| r.iter().map(|&i| ring.var(i)).collect()).collect()
    }

    /// Number of 2x2 minors, counted formally.
    pub fn minor_count(&self) -> usize {
        let (r, c) = (self.rows(), self.cols());
        r * (r - 1) / 2 * (c * (c - 1) / 2)
    }

    pub fn first_column(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r[0]).collect()
    }
}

pub fn build_rank1_matrix(coords: &CoordinateSystem, rows: &[&str], cols: &[&str]) -> Result<RankOneMatrix, DegenError> {
    let rf = rows.iter().map(|s| coords.parse_factor(s)).collect::<Result<Vec<_>, _>>()?;
    let cf = cols.iter().map(|s| coords.parse_factor(s)).collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::with_capacity(rows.len());
    for (r, re) in rf.iter().enumerate() {
        let mut line = Vec::with_capacity(cols.len());
        for (c, ce) in cf.iter().enumerate() {
            let prod: Vec<u16> = re.iter().zip(ce).map(|(a, b)| a + b).collect();
            let idx = coords
                .index_of(&prod)
                .ok_or_else(|| DegenError::Inadmissible { row: rows[r].to_string(), col: cols[c].to_string() })?;
            line.push(idx);
        }
        entries.push(line);
    }
    Ok(RankOneMatrix {
        row_factors: rows.iter().map(|s| s.to_string()).collect(),
        col_factors: cols.iter().map(|s| s.to_string()).collect(),
        entries,
    })
}

pub fn matrix_m1() -> (CoordinateSystem, RankOneMatrix) {
    let z = build_half_anticanonical(&p1_p3(), 'z').expect("P1xP3 coordinates");
    let m = build_rank1_matrix(&z, &M1_ROWS, &M1_COLS).expect("M1 factors");
    (z, m)
}

pub fn matrix_m0() -> (CoordinateSystem, RankOneMatrix) {
    let y = build_half_anticanonical(&f0112(), 'y').expect("F(0,1,1,2) coordinates");
    let m = build_rank1_matrix(&y, &M0_ROWS, &M0_COLS).expect("M0 factors");
    (y, m)
}

/// All nonzero 2x2 minors, without duplicates up to sign.
pub fn minors<F: Field>(ring: &Ring<F>, m: &[Vec<Poly<F>>]) -> Vec<Poly<F>> {
    let mut out: Vec<Poly<F>> = Vec::new();
    let rows = m.len();
    let cols = m[0].len();
    for r1 in 0..rows {
        for r2 in r1 + 1..rows {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    let a = ring.mul(&m[r1][c1], &m[r2][c2]);
                    let b = ring.mul(&m[r1][c2], &m[r2][c1]);
                    let d = ring.sub(&a, &b);
                    if d.is_zero() {
                        continue;
                    }
                    let d = ring.make_monic(&d);
                    if !out.contains(&d) {
                        out.push(d);
                    }
                }
            }
        }
    }
    out
}

/// Hilbert data of a standard graded quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub values: Vec<i128>,
    pub dim: i64,
    pub degree: i64,
}

fn hilbert_data<F: Field>(ideal: &Ideal<F>, kmax: usize, budget: &Budget) -> Result<HilbertData, GbError> {
    let hs = ideal.hilbert_series(budget)?;
    Ok(HilbertData { values: hs.values(kmax), dim: hs.projective_dim(), degree: hs.degree() })
}

/// `h^0(P1 x P3, O(k, 2k))`, the Hilbert function of the half-anticanonical models.
pub fn expected_hilbert(k: usize) -> i128 {
    let n = 2 * k as i128 + 3;
    (k as i128 + 1) * n * (n - 1) * (n - 2) / 6
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageCertificate {
    pub spec: String,
    pub formal_minors: usize,
    pub distinct_minors: usize,
    pub toric_generators: usize,
    pub minors_vanish_on_image: bool,
    pub toric_in_minor_ideal: bool,
    pub hilbert: HilbertData,
    pub minor_gb_fingerprint: String,
    pub toric_gb_fingerprint: String,
    /// For `F(0,1,1,2)`: every minor vanishes on the linear space spanned by the first column.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor_is_linear: Option<bool>,
    pub verified: bool,
}

/// Shows that the 2x2 minors of `M1` (for `P1 x P3`) or `M0` (for `F(0,1,1,2)`)
/// generate the toric ideal of the half-anticanonical image.
pub fn verify_image_ideal(spec: &ScrollSpec, prime: u32, budget: &Budget) -> Result<ImageCertificate, DegenError> {
    image_certificate(spec, PrimeField::new(prime), budget)
}

pub fn image_certificate<F: Field>(spec: &ScrollSpec, field: F, budget: &Budget) -> Result<ImageCertificate, DegenError> {
    let spec = spec.normalize();
    let (coords, m) = if spec == p1_p3() {
        matrix_m1()
    } else if spec == f0112() {
        matrix_m0()
    } else {
        return Err(DegenError::Unsupported { spec: spec.paper_notation() });
    };
    let ring = coords.ring(field.clone());
    let cox = cox_ring(&spec, field, Order::DegRevLex);
    let qs = minors(&ring, &m.poly_matrix(&ring));
    let vanish = qs.iter().all(|q| coords.pull_back(&ring, &cox, q).is_zero());
    let minor_ideal = Ideal::new(&ring, qs.clone());
    let toric = toric_ideal(&ring, &coords.images(), budget)?;
    let gb = minor_ideal.groebner(budget)?;
    let toric_in = toric.gens().iter().all(|g| gb.contains(g));
    let hilbert = hilbert_data(&minor_ideal, 5, budget)?;
    let divisor_is_linear = (spec == f0112()).then(|| {
        let first = m.first_column();
        let keep: Vec<usize> = (0..coords.len()).filter(|i| !first.contains(i)).collect();
        qs.iter().all(|q| in_linear_ideal(q, &keep))
    });
    let hilbert_ok = hilbert.dim == 4 && hilbert.degree == 32 && (0..=5).all(|k| hilbert.values[k] == expected_hilbert(k));
    let verified = vanish && toric_in && hilbert_ok && divisor_is_linear.unwrap_or(true);
    Ok(ImageCertificate {
        spec: spec.paper_notation(),
        formal_minors: m.minor_count(),
        distinct_minors: qs.len(),
        toric_generators: toric.gens().len(),
        minors_vanish_on_image: vanish,
        toric_in_minor_ideal: toric_in,
        hilbert,
        minor_gb_fingerprint: gb.fingerprint(),
        toric_gb_fingerprint: toric.groebner(budget)?.fingerprint(),
        divisor_is_linear,
        verified,
    })
}

/// Whether every term of `f` involves one of the variables `vars`.
pub fn in_linear_ideal<F: Field>(f: &Poly<F>, vars: &[usize]) -> bool {
    f.terms().iter().all(|(m, _)| vars.iter().any(|&v| m.exponent(v) > 0))
}

/// Hilbert data of the toric image of the half-anticanonical map of `F(0,0,2,2)`.
pub fn f0022_image(prime: u32, budget: &Budget) -> Result<(CoordinateSystem, HilbertData), DegenError> {
    let coords = build_half_anticanonical(&f0022(), 'w')?;
    let ring = coords.ring(PrimeField::new(prime));
    let toric = toric_ideal(&ring, &coords.images(), budget)?;
    let h = hilbert_data(&toric, 4, budget)?;
    Ok((coords, h))
}

/// The degeneration family over the `t`-line: ring `y(20), u, t`, graded by
/// `deg y_ijmn = 1 + i + j`, `deg u = 1`, `deg t = 2`.
pub struct Family<F: Field> {
    pub y: CoordinateSystem,
    pub z: CoordinateSystem,
    pub ring: Arc<Ring<F>>,
    pub n: Vec<Vec<Poly<F>>>,
    /// Images of the `z` coordinates (`t1`-block entries for `z_10kl`, `t2`-block for `z_01kl`).
    pub dictionary: Vec<Poly<F>>,
}

pub const U: usize = 20;
pub const T: usize = 21;

impl<F: Field> Family<F> {
    pub fn new(field: F) -> Self {
        let (y, m0) = matrix_m0();
        let z = build_half_anticanonical(&p1_p3(), 'z').expect("P1xP3 coordinates");
        let mut names = y.labels.clone();
        names.push("u".into());
        names.push("t".into());
        let mut weights: Vec<u32> = y.monomials.iter().map(|e| 1 + e[0] as u32 + e[1] as u32).collect();
        weights.extend([1, 2]);
        let ring = Ring::from_owned(field, names, Order::WeightedRevLex, weights).expect("family ring");

        let fac = |s: &str| y.parse_factor(s).expect("factor");
        let rows: Vec<Vec<u16>> = M0_ROWS.iter().map(|s| fac(s)).collect();
        let x1 = fac("x1");
        let shift = fac("t1*t2*x4");
        let mul = |a: &[u16], b: &[u16]| -> Vec<u16> { a.iter().zip(b).map(|(p, q)| p + q).collect() };
        let var = |e: &[u16]| ring.var(y.index_of(e).expect("admissible product"));
        let t = ring.var(T);
        // y(m) ± t·y(m·x1 / t1t2x4)
        let entry = |m: Vec<u16>, sign: bool| -> Poly<F> {
            let base = var(&m);
            if m.iter().zip(&shift).all(|(a, b)| a >= b) {
                let rest: Vec<u16> = m.iter().zip(&shift).map(|(a, b)| a - b).collect();
                let extra = ring.mul(&t, &var(&mul(&rest, &x1)));
                if sign {
                    ring.add(&base, &extra)
                } else {
                    ring.sub(&base, &extra)
                }
            } else {
                base
            }
        };
        let t1 = fac("t1");
        let t2 = fac("t2");
        let block = |tk: &[u16], sign: bool| -> Vec<Vec<Poly<F>>> {
            (0..4).map(|k| (0..4).map(|l| entry(mul(tk, &mul(&rows[k], &rows[l])), sign)).collect()).collect()
        };
        let a = block(&t1, true);
        let b = block(&t2, false);
        let first = m0.first_column();
        let n: Vec<Vec<Poly<F>>> = (0..4)
            .map(|k| {
                let mut row = vec![ring.var(first[k])];
                row.extend(a[k].iter().cloned());
                row.extend(b[k].iter().cloned());
                row
            })
            .collect();
        let dictionary = z
            .monomials
            .iter()
            .map(|e| {
                let ks: Vec<usize> = (0..4).flat_map(|k| std::iter::repeat(k).take(e[2 + k] as usize)).collect();
                if e[0] == 1 {
                    a[ks[0]][ks[1]].clone()
                } else {
                    b[ks[0]][ks[1]].clone()
                }
            })
            .collect();
        Family { y, z, ring, n, dictionary }
    }

    pub fn minors(&self) -> Vec<Poly<F>> {
        minors(&self.ring, &self.n)
    }

    pub fn y_ring(&self) -> Arc<Ring<F>> {
        self.y.ring(self.ring.field().clone())
    }

    pub fn z_ring(&self) -> Arc<Ring<F>> {
        self.z.ring(self.ring.field().clone())
    }

    /// Set `t = c`, `u = 1` and move to the `y`-ring.
    pub fn to_fiber(&self, f: &Poly<F>, c: &F::Elem, yr: &Ring<F>) -> Poly<F> {
        let one = self.ring.field().one();
        let g = self.ring.specialize(&self.ring.specialize(f, T, c), U, &one);
        let terms = g.terms().iter().map(|(m, k)| (yr.monomial(&m.exponents(self.ring.nvars())[..20]), k.clone())).collect();
        yr.from_terms(terms)
    }

    pub fn fiber_matrix(&self, c: &F::Elem, yr: &Ring<F>) -> Vec<Vec<Poly<F>>> {
        self.n.iter().map(|r| r.iter().map(|e| self.to_fiber(e, c, yr)).collect()).collect()
    }

    pub fn fiber_ideal(&self, c: &F::Elem, yr: &Arc<Ring<F>>) -> Ideal<F> {
        Ideal::new(yr, minors(yr, &self.fiber_matrix(c, yr)))
    }

    /// `z`-polynomial transported through the dictionary, homogenized with `u`.
    pub fn transport(&self, zr: &Ring<F>, g: &Poly<F>) -> Poly<F> {
        let p = zr.substitute(g, &self.ring, &self.dictionary);
        homogenize(&self.ring, &p, U)
    }

    /// The distinguished `P3`: the variables outside the first column of `M0` vanish.
    pub fn divisor_vars(&self) -> Vec<usize> {
        let (_, m0) = matrix_m0();
        let first = m0.first_column();
        (0..20).filter(|i| !first.contains(i)).collect()
    }
}

/// Multiply each term by the power of variable `h` (weight 1) reaching the top degree.
pub fn homogenize<F: Field>(ring: &Ring<F>, f: &Poly<F>, h: usize) -> Poly<F> {
    let top = f.terms().iter().map(|(m, _)| m.weighted_degree()).max().unwrap_or(0);
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = m.exponents(ring.nvars()).to_vec();
            e[h] += (top - m.weighted_degree()) as u16;
            (ring.monomial(&e), c.clone())
        })
        .collect();
    ring.from_terms(terms)
}

fn random_elem<F: Field>(field: &F, seed: u64) -> F::Elem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    field.random_nonzero(&mut rng)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub t: String,
    pub hilbert: HilbertData,
    pub fingerprint: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCertificate {
    pub max_degree: usize,
    pub fibers: Vec<FiberReport>,
    pub hilbert_functions_agree: bool,
    /// Central fibre equals the ideal of `M0` minors.
    pub central_fiber_is_q: bool,
    /// Fibres at `t = 1` and the random `t` equal the `M1` minor ideal transported through the dictionary.
    pub general_fibers_are_p1p3: Vec<bool>,
    /// Hilbert function of the central fibre against lattice point counts of `k P2`.
    pub ehrhart_counts: Vec<i128>,
    pub ehrhart_agrees: bool,
    pub verified: bool,
}

/// Compares the fibres of `V(∧²N)` at `t = 0`, `t = 1` and a random `t`.
pub fn flat_family_check(max_degree: usize, prime: u32, seed: u64, budget: &Budget) -> Result<FamilyCertificate, DegenError> {
    let field = PrimeField::new(prime);
    let fam = Family::new(field);
    let yr = fam.y_ring();
    let zr = fam.z_ring();
    let ts = [0u32, 1, random_elem(&field, seed)];
    let (_, m1) = matrix_m1();
    let (_, m0) = matrix_m0();
    let m1_ideal = Ideal::new(&zr, minors(&zr, &m1.poly_matrix(&zr)));
    let q = Ideal::new(&yr, minors(&yr, &m0.poly_matrix(&yr)));

    let mut fibers = Vec::new();
    let mut general = Vec::new();
    let mut central = false;
    for &c in &ts {
        let ideal = fam.fiber_ideal(&c, &yr);
        let hilbert = hilbert_data(&ideal, max_degree, budget)?;
        fibers.push(FiberReport { t: field.format(&c), hilbert, fingerprint: ideal.groebner(budget)?.fingerprint() });
        if c == 0 {
            central = ideal.equals(&q, budget)?;
        } else {
            let images: Vec<Poly<PrimeField>> = fam.dictionary.iter().map(|d| fam.to_fiber(d, &c, &yr)).collect();
            let moved = Ideal::new(&yr, m1_ideal.gens().iter().map(|g| zr.substitute(g, &yr, &images)).collect());
            general.push(moved.equals(&ideal, budget)?);
        }
    }
    let agree = fibers.windows(2).all(|w| w[0].hilbert == w[1].hilbert)
        && fibers[0].hilbert.values.iter().enumerate().all(|(k, &v)| v == expected_hilbert(k));

    let p2 = half_polytope_hull()?;
    let ehrhart: Vec<i128> = p2.ehrhart_counts(4)?.iter().map(|&x| x as i128).collect();
    let ehrhart_agrees = (0..=4.min(max_degree)).all(|k| ehrhart[k] == fibers[0].hilbert.values[k]);
    let verified = agree && central && general.iter().all(|&b| b) && ehrhart_agrees;
    Ok(FamilyCertificate {
        max_degree,
        fibers,
        hilbert_functions_agree: agree,
        central_fiber_is_q: central,
        general_fibers_are_p1p3: general,
        ehrhart_counts: ehrhart,
        ehrhart_agrees,
        verified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub seed: u64,
    pub monomials_vanish_on_divisor: bool,
    pub hilbert: HilbertData,
    pub contains_divisor: bool,
    /// Strict inclusions in `J ⊆ J:ℓ ⊆ J:ℓ² ⊆ ...` for a generic linear form `ℓ` vanishing on the divisor.
    pub strict_steps: usize,
    pub residual_degree: i64,
    pub multiplicity: i64,
    pub degree_balance: bool,
    pub fingerprint: String,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.monomials_vanish_on_divisor
            && self.contains_divisor
            && self.hilbert.dim == 3
            && self.hilbert.degree == 64
            && self.strict_steps == 2
            && self.multiplicity == 2
            && self.degree_balance
    }
}

/// Quadric with random nonzero coefficients on all 210 monomials of the `z`-ring.
pub fn random_quadric<F: Field>(ring: &Ring<F>, seed: u64) -> Poly<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ring.nvars();
    let mut terms = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut e = vec![0u16; n];
            e[a] += 1;
            e[b] += 1;
            terms.push((ring.monomial(&e), ring.field().random_nonzero(&mut rng)));
        }
    }
    ring.from_terms(terms)
}

/// Flat limit at `t = 0` of the quadric section `g_t` of the family, and its structure along the divisor.
pub fn flat_limit_of_section(prime: u32, seed: u64, budget: &Budget) -> Result<LimitReport, DegenError> {
    let field = PrimeField::new(prime);
    let fam = Family::new(field);
    let yr = fam.y_ring();
    let zr = fam.z_ring();
    let dvars = fam.divisor_vars();
    let zero = field.zero();

    let mut monomials_vanish = true;
    for a in 0..20 {
        for b in a..20 {
            let q = zr.mul(&zr.var(a), &zr.var(b));
            let moved = fam.to_fiber(&zr.substitute(&q, &fam.ring, &fam.dictionary), &zero, &yr);
            monomials_vanish &= in_linear_ideal(&moved, &dvars);
        }
    }

    let g = random_quadric(&zr, seed);
    let mut gens = fam.minors();
    gens.push(fam.transport(&zr, &g));
    let sat = Ideal::new(&fam.ring, gens).saturate_var(T, budget)?;
    let limit: Vec<Poly<PrimeField>> = sat.gens().iter().map(|p| fam.to_fiber(p, &zero, &yr)).collect();
    let j = Ideal::new(&yr, limit);
    let hilbert = hilbert_data(&j, 4, budget)?;
    let contains_divisor = j.groebner(budget)?.polys().iter().all(|p| in_linear_ideal(p, &dvars));

    // coordinates with a generic ℓ ∈ I(D) as the last variable; in reverse
    // lexicographic order the leading terms of `J : ℓ^k` are those of `J` with
    // at most `k` factors of ℓ removed
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let coeffs: Vec<u32> = dvars.iter().map(|_| field.random_nonzero(&mut rng)).collect();
    let p = dvars[0];
    let mut names: Vec<String> = (0..20).filter(|&i| i != p).map(|i| yr.names()[i].clone()).collect();
    names.push("l".into());
    let lr = Ring::from_owned(field, names, Order::DegRevLex, vec![1; 20])?;
    let slot = |i: usize| if i < p { i } else { i - 1 };
    let mut images: Vec<Poly<PrimeField>> = (0..20).map(|i| if i == p { lr.zero() } else { lr.var(slot(i)) }).collect();
    let mut sub = lr.var(19);
    for (k, &v) in dvars.iter().enumerate().skip(1) {
        sub = lr.sub(&sub, &lr.scale(&lr.var(slot(v)), &coeffs[k]));
    }
    images[p] = lr.scale(&sub, &field.inv(&coeffs[0]));
    let moved: Vec<Poly<PrimeField>> = j.gens().iter().map(|f| yr.substitute(f, &lr, &images)).collect();
    let lms: Vec<Vec<u16>> =
        GroebnerBasis::compute(&lr, &moved, budget)?.leading_monomials().iter().map(|m| m.exponents(20).to_vec()).collect();
    let colon = |k: u16| -> HilbertSeries {
        let gens: Vec<Vec<u16>> = lms
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e[19] -= e[19].min(k);
                e
            })
            .collect();
        HilbertSeries::of_monomials(&[1; 20], &gens)
    };
    let mut steps = 0;
    let mut cur = colon(0);
    loop {
        let next = colon(steps as u16 + 1);
        if next.reduced() == cur.reduced() {
            break;
        }
        steps += 1;
        cur = next;
    }
    let residual_degree = cur.degree();
    let multiplicity = hilbert.degree - residual_degree;
    Ok(LimitReport {
        seed,
        monomials_vanish_on_divisor: monomials_vanish,
        contains_divisor,
        strict_steps: steps,
        residual_degree,
        multiplicity,
        degree_balance: residual_degree + multiplicity == 2 * 32,
        fingerprint: j.groebner(budget)?.fingerprint(),
        hilbert,
    })
}

/// `P1`: the rational polytope of `-K/2` on `F(0,1,1,2)`.
pub fn half_polytope() -> Result<RationalPolytope, PolytopeError> {
    let spec = f0112();
    let k = spec.anticanonical();
    divisor_polytope(&spec, DivisorClass::new(k.l / 2, k.m / 2))
}

/// `P2`: convex hull of the lattice points of `P1`.
pub fn half_polytope_hull() -> Result<RationalPolytope, PolytopeError> {
    let p1 = half_polytope()?;
    let pts = p1.lattice_points()?;
    Ok(RationalPolytope::convex_hull_int(p1.ambient_dim(), &pts))
}

/// The fan with rays `σ1, σ2, ρ1..ρ5` (basis `σ2, ρ2, ρ3, ρ4`) and ten maximal cones,
/// obtained from the fan of `F(0,1,1,2)` by adding `ρ5 = ρ2 + ρ3 + ρ4`.
pub fn sigma_prime() -> Fan {
    let rays = vec![
        vec![-1, 1, 1, 2],   // σ1
        vec![1, 0, 0, 0],    // σ2
        vec![0, -1, -1, -1], // ρ1
        vec![0, 1, 0, 0],    // ρ2
        vec![0, 0, 1, 0],    // ρ3
        vec![0, 0, 0, 1],    // ρ4
        vec![0, 1, 1, 1],    // ρ5
    ];
    let (s1, s2, r1, r2, r3, r4, r5) = (0, 1, 2, 3, 4, 5, 6);
    let cones = vec![
        vec![s1, r1, r2, r3],
        vec![s1, r1, r2, r4],
        vec![s1, r1, r3, r4],
        vec![s2, r1, r2, r3],
        vec![s2, r1, r2, r4],
        vec![s2, r1, r3, r4],
        vec![s2, r2, r3, r5],
        vec![s1, r2, r3, r5],
        vec![s1, s2, r2, r4, r5],
        vec![s1, s2, r3, r4, r5],
    ];
    Fan::new(4, rays, cones)
}

#[derive(Clone, Debug, Serialize)]
pub struct ToricModelReport {
    pub p1_points: usize,
    pub p1_integral: bool,
    pub p2_normal: bool,
    pub p2_cones: usize,
    pub p2_fan_is_sigma_prime: bool,
    pub twice_p1_integral: bool,
    pub twice_p1_normal: bool,
    pub twice_p1_cones: usize,
    pub twice_p1_points: usize,
    pub twice_p2_points: usize,
}

pub fn toric_model_report() -> Result<ToricModelReport, DegenError> {
    let p1 = half_polytope()?;
    let p2 = half_polytope_hull()?;
    let fan2 = normal_fan(&p2)?;
    let q1 = p1.dilate(2);
    let q2 = p2.dilate(2);
    Ok(ToricModelReport {
        p1_points: p1.lattice_points()?.len(),
        p1_integral: p1.is_integral(),
        p2_normal: p2.is_normal_up_to(3)?,
        p2_cones: fan2.max_cones.len(),
        p2_fan_is_sigma_prime: fan2.find_isomorphism(&sigma_prime()).is_some(),
        twice_p1_integral: q1.is_integral(),
        twice_p1_normal: q1.is_normal_up_to(3)?,
        twice_p1_cones: normal_fan(&q1)?.max_cones.len(),
        twice_p1_points: q1.lattice_points()?.len(),
        twice_p2_points: q2.lattice_points()?.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn coordinates_of_the_three_scrolls() {
        let z = build_half_anticanonical(&p1_p3(), 'z').unwrap();
        assert_eq!(z.len(), 20);
        assert!(z.monomials.iter().all(|e| e[0] + e[1] == 1));
        let y = build_half_anticanonical(&f0112(), 'y').unwrap();
        let head: Vec<&str> = y.labels[..6].iter().map(|s| s.as_str()).collect();
        assert_eq!(head, ["y0012", "y0013", "y1014", "y0114", "y1022", "y0122"]);
        assert_eq!(y.labels.last().unwrap(), "y0344");
        let w = build_half_anticanonical(&f0022(), 'w').unwrap();
        assert_eq!(w.len(), 20);
        let err = build_half_anticanonical(&ScrollSpec::unweighted(&[0, 1, 2, 3]).unwrap(), 'v').unwrap_err();
        assert!(matches!(err, DegenError::WrongDimension { dim: 21, .. }));
        let err = build_half_anticanonical(&ScrollSpec::unweighted(&[0, 0, 0, 1]).unwrap(), 'v').unwrap_err();
        assert!(matches!(err, DegenError::NoHalfClass { .. }));
    }

    #[test]
    fn m0_entries() {
        let (y, m) = matrix_m0();
        let lab = m.label_matrix(&y);
        assert_eq!(lab[0][0], "y0012");
        assert_eq!(lab[3][7], "y0344");
        assert_eq!(lab[2][6], "y2144");
        let (_, m1) = matrix_m1();
        assert_eq!((m1.rows(), m1.cols()), (4, 8));
        assert_eq!(m1.minor_count(), 168);
    }

    #[test]
    fn inadmissible_product_is_named() {
        let (y, _) = matrix_m0();
        let err = build_rank1_matrix(&y, &["x1"], &["x1"]).unwrap_err();
        assert_eq!(err, DegenError::Inadmissible { row: "x1".into(), col: "x1".into() });
    }

    #[test]
    fn hilbert_of_p1p3_model() {
        assert_eq!(expected_hilbert(1), 20);
        assert_eq!(expected_hilbert(2), 105);
    }

    #[test]
    fn family_matrix_shape() {
        let fam = Family::new(PrimeField::default());
        assert_eq!(fam.n.len(), 4);
        assert!(fam.n.iter().all(|r| r.len() == 9));
        let f = |p: &Poly<PrimeField>| fam.ring.format(p);
        assert_eq!(f(&fam.n[0][4]), "y1124 + y0012*t");
        assert_eq!(f(&fam.n[3][7]), "y1244 - y0114*t");
        assert_eq!(f(&fam.n[1][8]), "y0234");
        assert!(fam.minors().iter().all(|m| fam.ring.is_homogeneous(m)));
    }

    #[test]
    fn image_ideals_are_toric() {
        for spec in [p1_p3(), f0112()] {
            let c = verify_image_ideal(&spec, 32003, &b()).unwrap();
            assert!(c.verified, "{c:?}");
            assert_eq!(c.hilbert.values, vec![1, 20, 105, 336, 825, 1716]);
            assert_eq!(c.minor_gb_fingerprint, c.toric_gb_fingerprint);
        }
        let c = verify_image_ideal(&f0112(), 32003, &b()).unwrap();
        assert_eq!(c.divisor_is_linear, Some(true));
        assert!(matches!(verify_image_ideal(&f0022(), 32003, &b()), Err(DegenError::Unsupported { .. })));
    }

    #[test]
    fn image_ideal_over_rationals() {
        let c = image_certificate(&p1_p3(), scroll_polyalg::Rationals, &b()).unwrap();
        assert!(c.verified);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let r = verify_image_ideal(&p1_p3(), 32003, &Budget::new(50));
        assert!(matches!(r, Err(DegenError::Groebner(GbError::BudgetExceeded { .. }))));
    }

    #[test]
    fn family_fibres_agree() {
        let c = flat_family_check(5, 32003, 7, &b()).unwrap();
        assert!(c.verified, "{c:?}");
        assert_eq!(c.fibers.len(), 3);
        assert_eq!(c.ehrhart_counts, vec![1, 20, 105, 336, 825]);
    }

    #[test]
    fn flat_limit_is_double_along_divisor() {
        let r = flat_limit_of_section(32003, 11, &Budget::new(500_000_000)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!((r.residual_degree, r.multiplicity), (62, 2));
    }

    #[test]
    fn toric_model() {
        let r = toric_model_report().unwrap();
        assert_eq!(r.p1_points, 20);
        assert!(!r.p1_integral && r.p2_normal && r.p2_fan_is_sigma_prime);
        assert_eq!(r.p2_cones, 10);
        assert!(r.twice_p1_integral && r.twice_p1_normal);
        assert_eq!((r.twice_p1_cones, r.twice_p1_points, r.twice_p2_points), (9, 106, 105));
    }

    #[test]
    fn sigma_prime_is_not_the_scroll_fan() {
        let f = sigma_prime();
        assert_eq!(f.max_cones.len(), 10);
        assert!(f.find_isomorphism(&f0112().build_fan()).is_none());
    }

    #[test]
    fn f0022_image_data() {
        let (c, h) = f0022_image(32003, &b()).unwrap();
        assert_eq!(c.len(), 20);
        assert_eq!(h, HilbertData { values: vec![1, 20, 102, 320, 775], dim: 4, degree: 28 });
    }
}
