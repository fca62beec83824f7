use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

pub const MAX_VARS: usize = 32;

/// Exponent vector with cached standard and weighted degrees.
///
/// The weighted degree is relative to the grading of the ring that created the
/// monomial; it is kept additive under multiplication and division.
#[derive(Clone, Copy)]
pub struct Monomial {
    pub(crate) exps: [u16; MAX_VARS],
    pub(crate) deg: u32,
    pub(crate) wdeg: u32,
    pub(crate) mask: u32,
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

fn mask_of(exps: &[u16; MAX_VARS]) -> u32 {
    let mut m = 0u32;
    for (i, &e) in exps.iter().enumerate() {
        if e != 0 {
            m |= 1 << i;
        }
    }
    m
}

impl Monomial {
    pub(crate) fn from_parts(exps: [u16; MAX_VARS], wdeg: u32) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg, wdeg, mask: mask_of(&exps) }
    }

    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0, wdeg: 0, mask: 0 }
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    /// Standard total degree.
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Degree in the grading of the owning ring.
    pub fn weighted_degree(&self) -> u32 {
        self.wdeg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(*o).expect("exponent overflow");
        }
        Monomial { exps, deg: self.deg + other.deg, wdeg: self.wdeg + other.wdeg, mask: self.mask | other.mask }
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e -= *o;
        }
        Monomial { exps, deg: self.deg - other.deg, wdeg: self.wdeg - other.wdeg, mask: mask_of(&exps) }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| i)
    }
}

/// Monomial orders. Variable 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Lex,
    DegRevLex,
    /// Weighted degree (ring grading) first, reverse lexicographic tie-break.
    WeightedRevLex,
    /// Block order eliminating the first `k` variables: degrevlex on the
    /// first block, then weighted revlex on the rest.
    Elimination(usize),
}

#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for i in 0..a.len() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

impl Order {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match self {
            Order::Lex => lex(&a.exps[..nvars], &b.exps[..nvars]),
            Order::DegRevLex => a.deg.cmp(&b.deg).then_with(|| revlex(&a.exps[..nvars], &b.exps[..nvars])),
            Order::WeightedRevLex => a
                .wdeg
                .cmp(&b.wdeg)
                .then_with(|| revlex(&a.exps[..nvars], &b.exps[..nvars])),
            Order::Elimination(k) => {
                let k = *k;
                let da: u32 = a.exps[..k].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..k].iter().map(|&e| e as u32).sum();
                da.cmp(&db)
                    .then_with(|| revlex(&a.exps[..k], &b.exps[..k]))
                    .then_with(|| (a.wdeg).cmp(&b.wdeg))
                    .then_with(|| revlex(&a.exps[k..nvars], &b.exps[k..nvars]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        exps[..e.len()].copy_from_slice(e);
        Monomial::from_parts(exps, e.iter().map(|&x| x as u32).sum())
    }

    #[test]
    fn orders() {
        // x^2 vs y z^... in three variables
        let a = m(&[1, 0, 1]);
        let b = m(&[0, 2, 0]);
        assert_eq!(Order::Lex.cmp(&a, &b, 3), Ordering::Greater);
        // degrevlex: same degree, last variable z: a has z, so a is smaller
        assert_eq!(Order::DegRevLex.cmp(&a, &b, 3), Ordering::Less);
        let c = m(&[0, 0, 3]);
        assert_eq!(Order::Elimination(1).cmp(&m(&[1, 0, 0]), &c, 3), Ordering::Greater);
    }

    #[test]
    fn divisibility() {
        let a = m(&[1, 0, 1]);
        let b = m(&[2, 1, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), m(&[1, 1, 0]));
        assert_eq!(a.mul(&m(&[1, 1, 0])), b);
    }
}
