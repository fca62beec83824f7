use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::{Poly, Ring};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("budget exceeded after {steps} reduction steps")]
    BudgetExceeded { steps: u64 },
    #[error("ideal is not homogeneous for the ring grading")]
    NotHomogeneous,
}

/// Cap on the number of elementary reduction steps of one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(max_steps: u64) -> Self {
        Budget { max_steps }
    }

    pub fn unlimited() -> Self {
        Budget { max_steps: u64::MAX }
    }

    /// `SCROLL_BUDGET` overrides the default cap.
    pub fn from_env() -> Self {
        std::env::var("SCROLL_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }
}

pub(crate) struct Counter {
    pub(crate) steps: u64,
    pub(crate) max: u64,
}

impl Counter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), GbError> {
        self.steps += 1;
        if self.steps > self.max {
            Err(GbError::BudgetExceeded { steps: self.steps })
        } else {
            Ok(())
        }
    }
}

/// Full reduction of `p` modulo monic `basis`. Returns the normal form.
fn reduce_full<F: Field>(
    ring: &Ring<F>,
    p: &Poly<F>,
    basis: &[&Poly<F>],
    counter: &mut Counter,
) -> Result<Poly<F>, GbError> {
    let mut done = Vec::new();
    let mut p = p.clone();
    while !p.is_zero() {
        let m = *p.lm();
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                counter.tick()?;
                let c = p.lc().clone();
                p = ring.sub_mul_term(&p, &c, &m.div(g.lm()), g);
            }
            None => {
                done.push(p.terms.remove(0));
            }
        }
    }
    Ok(Poly { terms: done })
}

/// Reduce only until the leading term is irreducible.
fn reduce_top<F: Field>(
    ring: &Ring<F>,
    p: &Poly<F>,
    basis: &[&Poly<F>],
    counter: &mut Counter,
) -> Result<Poly<F>, GbError> {
    let mut p = p.clone();
    while !p.is_zero() {
        let m = *p.lm();
        let Some(g) = basis.iter().find(|g| g.lm().divides(&m)) else { break };
        counter.tick()?;
        let c = p.lc().clone();
        p = ring.sub_mul_term(&p, &c, &m.div(g.lm()), g);
    }
    Ok(p)
}

pub(crate) struct Pair {
    pub(crate) i: usize,
    pub(crate) j: usize,
    pub(crate) lcm: Monomial,
    pub(crate) sugar: u32,
}

pub(crate) struct Element<F: Field> {
    pub(crate) poly: Poly<F>,
    pub(crate) sugar: u32,
    pub(crate) active: bool,
}

fn s_poly<F: Field>(ring: &Ring<F>, a: &Poly<F>, b: &Poly<F>, lcm: &Monomial) -> Poly<F> {
    // both monic
    let one = ring.field().one();
    let left = ring.mul_term(a, &lcm.div(a.lm()), &one);
    ring.sub_mul_term(&left, &one, &lcm.div(b.lm()), b)
}

/// Reduced Groebner basis of the ideal generated by `gens` for the ring's order.
pub fn groebner<F: Field>(ring: &Ring<F>, gens: &[Poly<F>], budget: &Budget) -> Result<Vec<Poly<F>>, GbError> {
    let mut counter = Counter { steps: 0, max: budget.max_steps };
    let basis = crate::f4::f4(ring, gens, &mut counter)?;
    reduce_basis(ring, basis, &mut counter)
}

/// The same basis by Buchberger's algorithm with sugar selection, one S-polynomial at a time.
pub fn groebner_buchberger<F: Field>(ring: &Ring<F>, gens: &[Poly<F>], budget: &Budget) -> Result<Vec<Poly<F>>, GbError> {
    let mut counter = Counter { steps: 0, max: budget.max_steps };
    let mut elems: Vec<Element<F>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.make_monic(g)).collect();
    input.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    input.dedup();

    let mut queue: Vec<(Poly<F>, u32)> = input.into_iter().map(|p| {
        let s = p.weighted_degree();
        (p, s)
    }).collect();
    queue.reverse();

    loop {
        // insert pending polynomials first, then process pairs
        if let Some((p, sugar)) = queue.pop() {
            let active: Vec<&Poly<F>> = elems.iter().filter(|e| e.active).map(|e| &e.poly).collect();
            let h = reduce_full(ring, &p, &active, &mut counter)?;
            if h.is_zero() {
                continue;
            }
            let h = ring.make_monic(&h);
            if h.is_constant() {
                return Ok(vec![ring.one()]);
            }
            insert(ring, &mut elems, &mut pairs, h, sugar);
            continue;
        }
        if pairs.is_empty() {
            break;
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| ring.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_poly(ring, &elems[pair.i].poly, &elems[pair.j].poly, &pair.lcm);
        counter.tick()?;
        let active: Vec<&Poly<F>> = elems.iter().filter(|e| e.active).map(|e| &e.poly).collect();
        let h = reduce_top(ring, &s, &active, &mut counter)?;
        if h.is_zero() {
            continue;
        }
        let h = reduce_full(ring, &h, &active, &mut counter)?;
        let h = ring.make_monic(&h);
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        insert(ring, &mut elems, &mut pairs, h, pair.sugar);
    }

    let basis: Vec<Poly<F>> = elems.into_iter().filter(|e| e.active).map(|e| e.poly).collect();
    reduce_basis(ring, basis, &mut counter)
}

fn reduce_basis<F: Field>(ring: &Ring<F>, mut basis: Vec<Poly<F>>, counter: &mut Counter) -> Result<Vec<Poly<F>>, GbError> {
    if basis.iter().any(|p| p.is_constant()) {
        return Ok(vec![ring.one()]);
    }
    basis.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|m| m.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Poly<F>> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
        let g = &minimal[i];
        let tail = Poly { terms: g.terms[1..].to_vec() };
        let tail = reduce_full(ring, &tail, &others, counter)?;
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(tail.terms);
        reduced.push(Poly { terms });
    }
    Ok(reduced)
}

pub(crate) fn insert<F: Field>(ring: &Ring<F>, elems: &mut Vec<Element<F>>, pairs: &mut Vec<Pair>, h: Poly<F>, sugar: u32) {
    let hi = elems.len();
    let hlm = *h.lm();
    // candidate new pairs
    let mut cands: Vec<(usize, Monomial, bool)> = elems
        .iter()
        .enumerate()
        .filter(|(_, e)| e.active)
        .map(|(i, e)| (i, ring.lcm(e.poly.lm(), &hlm), e.poly.lm().is_coprime(&hlm)))
        .collect();
    // keep a pair unless another candidate has a strictly dividing lcm, or an
    // equal lcm with an earlier index; coprime pairs act as witnesses and are dropped
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a == b || !keep[b] {
                continue;
            }
            let (la, lb) = (&cands[a].1, &cands[b].1);
            if lb.divides(la) && (lb != la || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    // equal-lcm class containing a coprime pair: drop the whole class
    let coprime_lcms: Vec<Monomial> = cands.iter().filter(|c| c.2).map(|c| c.1).collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (k, c) in cands.drain(..).enumerate() {
        if keep[k] && !c.2 && !coprime_lcms.contains(&c.1) {
            kept.push((c.0, c.1));
        }
    }
    // chain criterion on old pairs
    pairs.retain(|p| {
        let li = ring.lcm(elems[p.i].poly.lm(), &hlm);
        let lj = ring.lcm(elems[p.j].poly.lm(), &hlm);
        !(hlm.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
    });
    for (i, lcm) in kept {
        let e = &elems[i];
        let s = (e.sugar + lcm.wdeg - e.poly.lm().wdeg).max(sugar + lcm.wdeg - hlm.wdeg);
        pairs.push(Pair { i, j: hi, lcm, sugar: s });
    }
    for e in elems.iter_mut() {
        if e.active && hlm.divides(e.poly.lm()) {
            e.active = false;
        }
    }
    elems.push(Element { poly: h, sugar, active: true });
}

/// A reduced Groebner basis together with its ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    polys: Vec<Poly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn compute(ring: &Arc<Ring<F>>, gens: &[Poly<F>], budget: &Budget) -> Result<Self, GbError> {
        Ok(GroebnerBasis { ring: ring.clone(), polys: groebner(ring, gens, budget)? })
    }

    /// Wrap polynomials already known to form a Groebner basis.
    pub fn from_basis(ring: &Arc<Ring<F>>, polys: Vec<Poly<F>>) -> Self {
        GroebnerBasis { ring: ring.clone(), polys }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn polys(&self) -> &[Poly<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| *p.lm()).collect()
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        let refs: Vec<&Poly<F>> = self.polys.iter().collect();
        let mut counter = Counter { steps: 0, max: u64::MAX };
        reduce_full(&self.ring, f, &refs, &mut counter).expect("unbounded reduction")
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_all(&self, fs: &[Poly<F>]) -> bool {
        fs.iter().all(|f| self.contains(f))
    }

    /// SHA-256 over the sorted leading monomials.
    pub fn fingerprint(&self) -> String {
        let mut lms: Vec<String> = self.polys.iter().map(|p| format!("{:?}", p.lm())).collect();
        lms.sort();
        let digest = Sha256::digest(lms.join(";").as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Check the Buchberger criterion directly: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let r = &self.ring;
        let one = r.field().one();
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let (a, b) = (&self.polys[i], &self.polys[j]);
                let lcm = r.lcm(a.lm(), b.lm());
                let sa = r.mul_term(a, &lcm.div(a.lm()), &r.field().inv(a.lc()));
                let sb = r.mul_term(b, &lcm.div(b.lm()), &r.field().inv(b.lc()));
                let s = r.lin_comb(&sa, &one, &sb, &r.field().neg(&one));
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::Order;

    #[test]
    fn textbook_lex() {
        let r = Ring::new(Rationals, &["x", "y"], Order::Lex).unwrap();
        let gens = vec![r.parse("x^2 - y").unwrap(), r.parse("y").unwrap()];
        let gb = GroebnerBasis::compute(&r, &gens, &Budget::default()).unwrap();
        let mut got: Vec<String> = gb.polys().iter().map(|p| r.format(p)).collect();
        got.sort();
        assert_eq!(got, vec!["x^2", "y"]);
    }

    #[test]
    fn segre_binomial_is_a_basis() {
        let r = Ring::new(PrimeField::default(), &["z00", "z01", "z10", "z11"], Order::DegRevLex).unwrap();
        let f = r.parse("z00*z11 - z01*z10").unwrap();
        let gb = GroebnerBasis::compute(&r, &[f.clone()], &Budget::default()).unwrap();
        assert_eq!(gb.len(), 1);
        assert!(gb.contains(&f));
    }

    #[test]
    fn cyclic3() {
        let r = Ring::new(Rationals, &["a", "b", "c"], Order::DegRevLex).unwrap();
        let gens: Vec<_> = ["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"].iter().map(|s| r.parse(s).unwrap()).collect();
        let gb = GroebnerBasis::compute(&r, &gens, &Budget::default()).unwrap();
        assert!(gb.verify());
        assert!(gens.iter().all(|g| gb.contains(g)));
        assert!(!gb.is_unit());
    }

    #[test]
    fn unit_ideal() {
        let r = Ring::new(PrimeField::default(), &["x", "y"], Order::DegRevLex).unwrap();
        let gens = vec![r.parse("x*y - 1").unwrap(), r.parse("x").unwrap()];
        assert!(GroebnerBasis::compute(&r, &gens, &Budget::default()).unwrap().is_unit());
    }

    #[test]
    fn budget_is_reported() {
        let r = Ring::new(PrimeField::default(), &["a", "b", "c", "d"], Order::DegRevLex).unwrap();
        let gens: Vec<_> = ["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"]
            .iter()
            .map(|s| r.parse(s).unwrap())
            .collect();
        let err = GroebnerBasis::compute(&r, &gens, &Budget::new(5)).unwrap_err();
        assert!(matches!(err, GbError::BudgetExceeded { .. }));
        let gb = GroebnerBasis::compute(&r, &gens, &Budget::default()).unwrap();
        assert!(gb.verify());
    }
}
