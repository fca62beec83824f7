use std::sync::{Arc, OnceLock};

use crate::field::Field;
use crate::groebner::{Budget, GbError, GroebnerBasis};
use crate::hilbert::HilbertSeries;
use crate::monomial::{Monomial, Order};
use crate::ring::{Poly, Ring};
use num_traits::ToPrimitive;
use scroll_lattice::{kernel_basis, IntMatrix};

/// Finitely generated ideal with a lazily computed Groebner basis for the ring's order.
#[derive(Debug)]
pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<Poly<F>>,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

/// Copy of `ring` with variables reordered: old variable `i` becomes `perm[i]`.
pub fn permuted_ring<F: Field>(ring: &Ring<F>, perm: &[usize], order: Order) -> Arc<Ring<F>> {
    let n = ring.nvars();
    let mut names = vec![String::new(); n];
    let mut weights = vec![0u32; n];
    for i in 0..n {
        names[perm[i]] = ring.names()[i].clone();
        weights[perm[i]] = ring.weights()[i];
    }
    Ring::from_owned(ring.field().clone(), names, order, weights).expect("valid permuted ring")
}

fn inverse_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Poly<F>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn from_basis(gb: GroebnerBasis<F>) -> Self {
        let ring = gb.ring().clone();
        let gens = gb.polys().to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(gb);
        Ideal { ring, gens, gb: cell }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn groebner(&self, budget: &Budget) -> Result<&GroebnerBasis<F>, GbError> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = GroebnerBasis::compute(&self.ring, &self.gens, budget)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| self.ring.is_homogeneous(g))
    }

    pub fn contains(&self, f: &Poly<F>, budget: &Budget) -> Result<bool, GbError> {
        Ok(self.groebner(budget)?.contains(f))
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool, GbError> {
        Ok(self.groebner(budget)?.is_unit())
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool, GbError> {
        let gb = self.groebner(budget)?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn equals(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool, GbError> {
        Ok(self.contains_ideal(other, budget)? && other.contains_ideal(self, budget)?)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn add_generators(&self, extra: &[Poly<F>]) -> Ideal<F> {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    /// Hilbert series of `R/I` for the ring grading; needs homogeneous generators.
    pub fn hilbert_series(&self, budget: &Budget) -> Result<HilbertSeries, GbError> {
        if !self.is_homogeneous() {
            return Err(GbError::NotHomogeneous);
        }
        let gb = self.groebner(budget)?;
        let n = self.ring.nvars();
        let lms: Vec<Vec<u16>> = gb.leading_monomials().iter().map(|m| m.exponents(n).to_vec()).collect();
        Ok(HilbertSeries::of_monomials(self.ring.weights(), &lms))
    }

    pub fn hilbert_function(&self, k: usize, budget: &Budget) -> Result<i128, GbError> {
        Ok(self.hilbert_series(budget)?.value(k))
    }

    /// Projective dimension (`-1` for the irrelevant or unit ideal).
    pub fn dimension(&self, budget: &Budget) -> Result<i64, GbError> {
        Ok(self.hilbert_series(budget)?.projective_dim())
    }

    pub fn degree(&self, budget: &Budget) -> Result<i64, GbError> {
        Ok(self.hilbert_series(budget)?.degree())
    }

    /// Number of standard monomials when `R/I` is finite dimensional (affine, any generators).
    pub fn vector_space_dim(&self, budget: &Budget) -> Result<Option<u64>, GbError> {
        let gb = self.groebner(budget)?;
        if gb.is_unit() {
            return Ok(Some(0));
        }
        let n = self.ring.nvars();
        let lms = gb.leading_monomials();
        // each variable needs a pure power among the leading monomials
        let mut bounds = vec![0u16; n];
        for i in 0..n {
            let pure = lms
                .iter()
                .filter(|m| m.support().all(|j| j == i) && m.exponent(i) > 0)
                .map(|m| m.exponent(i))
                .min();
            match pure {
                Some(e) => bounds[i] = e,
                None => return Ok(None),
            }
        }
        let mut count = 0u64;
        let mut cur = vec![0u16; n];
        fn rec<F: Field>(
            ring: &Ring<F>,
            i: usize,
            bounds: &[u16],
            cur: &mut Vec<u16>,
            lms: &[Monomial],
            count: &mut u64,
        ) {
            if i == bounds.len() {
                let m = ring.monomial(cur);
                if !lms.iter().any(|l| l.divides(&m)) {
                    *count += 1;
                }
                return;
            }
            for e in 0..bounds[i] {
                cur[i] = e;
                let m = ring.monomial(cur);
                if lms.iter().any(|l| l.divides(&m)) {
                    break;
                }
                rec(ring, i + 1, bounds, cur, lms, count);
            }
            cur[i] = 0;
        }
        rec(&self.ring, 0, &bounds, &mut cur, &lms, &mut count);
        Ok(Some(count))
    }

    fn var_last_ring(&self, v: usize) -> (Arc<Ring<F>>, Vec<usize>) {
        let n = self.ring.nvars();
        let mut perm = vec![0usize; n];
        let mut next = 0;
        for (i, p) in perm.iter_mut().enumerate() {
            if i == v {
                *p = n - 1;
            } else {
                *p = next;
                next += 1;
            }
        }
        (permuted_ring(&self.ring, &perm, Order::WeightedRevLex), perm)
    }

    /// `I : x_v^∞` (or `I : x_v` when `once`) by the reverse-lex trick; needs homogeneous generators.
    fn var_quotient(&self, v: usize, once: bool, budget: &Budget) -> Result<Ideal<F>, GbError> {
        if !self.is_homogeneous() {
            return Err(GbError::NotHomogeneous);
        }
        let (r2, perm) = self.var_last_ring(v);
        let gens2: Vec<Poly<F>> = self.gens.iter().map(|g| self.ring.map_vars(g, &r2, &perm)).collect();
        let gb = GroebnerBasis::compute(&r2, &gens2, budget)?;
        let last = r2.nvars() - 1;
        let back = inverse_perm(&perm);
        let out: Vec<Poly<F>> = gb
            .polys()
            .iter()
            .map(|g| {
                let k = g.terms().iter().map(|(m, _)| m.exponent(last)).min().unwrap_or(0);
                let k = if once { k.min(1) } else { k };
                let divided = if k == 0 {
                    g.clone()
                } else {
                    let mut e = vec![0u16; r2.nvars()];
                    e[last] = k;
                    let d = r2.monomial(&e);
                    Poly { terms: g.terms().iter().map(|(m, c)| (m.div(&d), c.clone())).collect() }
                };
                r2.map_vars(&divided, &self.ring, &back)
            })
            .collect();
        Ok(Ideal::new(&self.ring, out))
    }

    pub fn saturate_var(&self, v: usize, budget: &Budget) -> Result<Ideal<F>, GbError> {
        self.var_quotient(v, false, budget)
    }

    pub fn quotient_var(&self, v: usize, budget: &Budget) -> Result<Ideal<F>, GbError> {
        self.var_quotient(v, true, budget)
    }

    /// `I : f^∞` via `I + (1 - s f)` and elimination of `s`.
    pub fn saturate_rabinowitsch(&self, f: &Poly<F>, budget: &Budget) -> Result<Ideal<F>, GbError> {
        let n = self.ring.nvars();
        let mut names = vec!["_s".to_string()];
        names.extend(self.ring.names().iter().cloned());
        let mut weights = vec![1u32];
        weights.extend(self.ring.weights().iter().copied());
        let big = Ring::from_owned(self.ring.field().clone(), names, Order::Elimination(1), weights).expect("ring");
        let perm: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Poly<F>> = self.gens.iter().map(|g| self.ring.map_vars(g, &big, &perm)).collect();
        let fs = self.ring.map_vars(f, &big, &perm);
        gens.push(big.sub(&big.one(), &big.mul(&big.var(0), &fs)));
        let gb = GroebnerBasis::compute(&big, &gens, budget)?;
        let out: Vec<Poly<F>> = gb
            .polys()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponent(0) == 0))
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let e: Vec<u16> = (0..n).map(|i| m.exponent(i + 1)).collect();
                        (self.ring.monomial(&e), c.clone())
                    })
                    .collect();
                self.ring.from_terms(terms)
            })
            .collect();
        Ok(Ideal::new(&self.ring, out))
    }

    /// `I : f^∞`, using the reverse-lex trick when `f` is a variable and `I` is homogeneous.
    pub fn saturate(&self, f: &Poly<F>, budget: &Budget) -> Result<Ideal<F>, GbError> {
        if f.len() == 1 && f.lm().degree() == 1 && self.is_homogeneous() {
            let v = f.lm().support().next().unwrap();
            return self.saturate_var(v, budget);
        }
        if f.len() == 1 && self.is_homogeneous() {
            let mut cur = self.clone();
            for v in f.lm().support().collect::<Vec<_>>() {
                cur = cur.saturate_var(v, budget)?;
            }
            return Ok(cur);
        }
        self.saturate_rabinowitsch(f, budget)
    }

    /// Polynomials of the ideal free of the listed variables.
    pub fn eliminate(&self, vars: &[usize], budget: &Budget) -> Result<Ideal<F>, GbError> {
        let n = self.ring.nvars();
        let k = vars.len();
        let mut perm = vec![0usize; n];
        let mut next_front = 0;
        let mut next_back = k;
        for (i, p) in perm.iter_mut().enumerate() {
            if vars.contains(&i) {
                *p = next_front;
                next_front += 1;
            } else {
                *p = next_back;
                next_back += 1;
            }
        }
        let r2 = permuted_ring(&self.ring, &perm, Order::Elimination(k));
        let gens2: Vec<Poly<F>> = self.gens.iter().map(|g| self.ring.map_vars(g, &r2, &perm)).collect();
        let gb = GroebnerBasis::compute(&r2, &gens2, budget)?;
        let back = inverse_perm(&perm);
        let out = gb
            .polys()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| (0..k).all(|i| m.exponent(i) == 0)))
            .map(|g| r2.map_vars(g, &self.ring, &back))
            .collect();
        Ok(Ideal::new(&self.ring, out))
    }

    /// `I ∩ J` via `s I + (1 - s) J` and elimination of `s`.
    pub fn intersect(&self, other: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>, GbError> {
        let n = self.ring.nvars();
        let mut names = vec!["_s".to_string()];
        names.extend(self.ring.names().iter().cloned());
        let mut weights = vec![1u32];
        weights.extend(self.ring.weights().iter().copied());
        let big = Ring::from_owned(self.ring.field().clone(), names, Order::Elimination(1), weights).expect("ring");
        let perm: Vec<usize> = (1..=n).collect();
        let s = big.var(0);
        let one_minus_s = big.sub(&big.one(), &s);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(big.mul(&s, &self.ring.map_vars(g, &big, &perm)));
        }
        for g in &other.gens {
            gens.push(big.mul(&one_minus_s, &self.ring.map_vars(g, &big, &perm)));
        }
        let gb = GroebnerBasis::compute(&big, &gens, budget)?;
        let out = gb
            .polys()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponent(0) == 0))
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let e: Vec<u16> = (0..n).map(|i| m.exponent(i + 1)).collect();
                        (self.ring.monomial(&e), c.clone())
                    })
                    .collect();
                self.ring.from_terms(terms)
            })
            .collect();
        Ok(Ideal::new(&self.ring, out))
    }

    /// `I : f` via `(I ∩ (f)) / f`.
    pub fn quotient(&self, f: &Poly<F>, budget: &Budget) -> Result<Ideal<F>, GbError> {
        if f.len() == 1 && f.lm().degree() == 1 && self.is_homogeneous() {
            return self.quotient_var(f.lm().support().next().unwrap(), budget);
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![f.clone()]), budget)?;
        let out = inter.gens.iter().map(|g| exact_division(&self.ring, g, f)).collect();
        Ok(Ideal::new(&self.ring, out))
    }

    /// Substitute constants for some variables (the result lives in the same ring).
    pub fn specialize(&self, assignments: &[(usize, F::Elem)]) -> Ideal<F> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut p = g.clone();
                for (v, c) in assignments {
                    p = self.ring.specialize(&p, *v, c);
                }
                p
            })
            .collect();
        Ideal::new(&self.ring, gens)
    }
}

/// `a / b` for `b` dividing `a`; panics otherwise.
pub fn exact_division<F: Field>(ring: &Ring<F>, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut rem = a.clone();
    let mut quot = Vec::new();
    let inv = ring.field().inv(b.lc());
    while !rem.is_zero() {
        assert!(b.lm().divides(rem.lm()), "division is not exact");
        let m = rem.lm().div(b.lm());
        let c = ring.field().mul(rem.lc(), &inv);
        rem = ring.sub_mul_term(&rem, &c, &m, b);
        quot.push((m, c));
    }
    ring.from_terms(quot)
}

/// Toric ideal of the monomial map sending target variable `i` to `images[i]`
/// (exponent vectors in the source torus): lattice-kernel binomials saturated
/// by every variable. Needs a positive grading making all binomials homogeneous
/// in the ring's weights.
pub fn toric_ideal<F: Field>(
    ring: &Arc<Ring<F>>,
    images: &[Vec<i64>],
    budget: &Budget,
) -> Result<Ideal<F>, GbError> {
    let n = ring.nvars();
    assert_eq!(images.len(), n);
    let m = images[0].len();
    let cols: Vec<Vec<i64>> = (0..m).map(|j| images.iter().map(|v| v[j]).collect()).collect();
    let kernel: Vec<Vec<i64>> = kernel_basis(&IntMatrix::from_rows(&cols))
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("small kernel entry")).collect())
        .collect();
    let one = ring.field().one();
    let gens: Vec<Poly<F>> = kernel
        .iter()
        .map(|v| {
            let pos: Vec<u16> = v.iter().map(|&x| x.max(0) as u16).collect();
            let neg: Vec<u16> = v.iter().map(|&x| (-x).max(0) as u16).collect();
            ring.from_terms(vec![(ring.monomial(&pos), one.clone()), (ring.monomial(&neg), ring.field().neg(&one))])
        })
        .collect();
    let mut ideal = Ideal::new(ring, gens);
    for v in 0..n {
        ideal = ideal.saturate_var(v, budget)?;
        let gb = ideal.groebner(budget)?.clone();
        ideal = Ideal::from_basis(gb);
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn saturate_monomial_example() {
        let r = Ring::new(Rationals, &["x", "y"], Order::DegRevLex).unwrap();
        let i = Ideal::new(&r, vec![r.parse("x^2").unwrap(), r.parse("x*y").unwrap()]);
        let s = i.saturate(&r.var(0), &b()).unwrap();
        assert!(s.is_unit(&b()).unwrap());
        // (x^2, xy) : y^∞ = (x)
        let s = i.saturate(&r.var(1), &b()).unwrap();
        assert!(s.equals(&Ideal::new(&r, vec![r.var(0)]), &b()).unwrap());
    }

    #[test]
    fn saturate_product_by_t() {
        let r = Ring::new(PrimeField::default(), &["t", "u"], Order::DegRevLex).unwrap();
        let i = Ideal::new(&r, vec![r.parse("t*u").unwrap()]);
        let s = i.saturate(&r.var(0), &b()).unwrap();
        assert!(s.equals(&Ideal::new(&r, vec![r.var(1)]), &b()).unwrap());
        let s2 = i.saturate_rabinowitsch(&r.var(0), &b()).unwrap();
        assert!(s2.equals(&s, &b()).unwrap());
    }

    #[test]
    fn quotient_and_intersection() {
        let r = Ring::new(Rationals, &["x", "y"], Order::DegRevLex).unwrap();
        let i = Ideal::new(&r, vec![r.parse("x^2*y").unwrap(), r.parse("x*y^2").unwrap()]);
        let q = i.quotient(&r.parse("x + y").unwrap(), &b()).unwrap();
        // (x^2 y, x y^2) : (x + y) = (x y)
        assert!(q.equals(&Ideal::new(&r, vec![r.parse("x*y").unwrap()]), &b()).unwrap());
        let j = Ideal::new(&r, vec![r.var(0)]).intersect(&Ideal::new(&r, vec![r.var(1)]), &b()).unwrap();
        assert!(j.equals(&Ideal::new(&r, vec![r.parse("x*y").unwrap()]), &b()).unwrap());
    }

    #[test]
    fn elimination_twisted_cubic() {
        let r = Ring::new(Rationals, &["s", "z0", "z1", "z2", "z3"], Order::DegRevLex).unwrap();
        let gens = ["z0 - 1", "z1 - s", "z2 - s^2", "z3 - s^3"].iter().map(|x| r.parse(x).unwrap()).collect();
        let e = Ideal::new(&r, gens).eliminate(&[0], &b()).unwrap();
        assert!(e.contains(&r.parse("z1^2 - z0*z2").unwrap(), &b()).unwrap());
        assert!(e.contains(&r.parse("z1*z2 - z0*z3").unwrap(), &b()).unwrap());
    }

    #[test]
    fn conic_toric_ideal() {
        let r = Ring::new(PrimeField::default(), &["z0", "z1", "z2"], Order::DegRevLex).unwrap();
        let t = toric_ideal(&r, &[vec![2, 0], vec![1, 1], vec![0, 2]], &b()).unwrap();
        let conic = Ideal::new(&r, vec![r.parse("z0*z2 - z1^2").unwrap()]);
        assert!(t.equals(&conic, &b()).unwrap());
    }

    #[test]
    fn twisted_cubic_hilbert() {
        let r = Ring::new(Rationals, &["z0", "z1", "z2", "z3"], Order::DegRevLex).unwrap();
        let t = toric_ideal(&r, &[vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]], &b()).unwrap();
        let hs = t.hilbert_series(&b()).unwrap();
        assert_eq!(hs.values(3), vec![1, 4, 7, 10]);
        assert_eq!(t.dimension(&b()).unwrap(), 1);
        assert_eq!(t.degree(&b()).unwrap(), 3);
        assert_eq!(t.groebner(&b()).unwrap().len(), 3);
    }

    #[test]
    fn finite_length() {
        let r = Ring::new(PrimeField::default(), &["x", "y"], Order::DegRevLex).unwrap();
        let i = Ideal::new(&r, vec![r.parse("x^2 - 1").unwrap(), r.parse("y^3 - x").unwrap()]);
        assert_eq!(i.vector_space_dim(&b()).unwrap(), Some(6));
        let j = Ideal::new(&r, vec![r.parse("x*y").unwrap()]);
        assert_eq!(j.vector_space_dim(&b()).unwrap(), None);
    }
}
