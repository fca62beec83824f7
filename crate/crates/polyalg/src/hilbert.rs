//! Hilbert series of monomial ideals, and through leading-term ideals, of
//! arbitrary homogeneous ideals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// `HS(S/M)(t) = numerator(t) / prod_i (1 - t^{w_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub weights: Vec<u32>,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn shift(a: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; d];
    out.extend_from_slice(a);
    out
}

fn one_minus_t_pow(d: usize) -> Vec<i64> {
    let mut v = vec![0i64; d + 1];
    v[0] = 1;
    v[d] -= 1;
    v
}

fn wdeg(m: &[u16], w: &[u32]) -> usize {
    m.iter().zip(w).map(|(&e, &x)| e as usize * x as usize).sum()
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| divides(m, &g)) {
            out.push(g);
        }
    }
    out
}

fn numerator(gens: Vec<Vec<u16>>, w: &[u32]) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![0];
    }
    let n = w.len();
    // split off generators coprime to all others
    for i in 0..gens.len() {
        let coprime = (0..gens.len()).all(|j| j == i || (0..n).all(|k| gens[i][k] == 0 || gens[j][k] == 0));
        if coprime {
            let g = gens[i].clone();
            let rest: Vec<Vec<u16>> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| m.clone()).collect();
            return poly_mul(&one_minus_t_pow(wdeg(&g, w)), &numerator(rest, w));
        }
    }
    // pivot on the variable occurring most often, at its median exponent
    let var = (0..n).max_by_key(|&k| gens.iter().filter(|g| g[k] > 0).count()).unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|g| g[var]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pivot = vec![0u16; n];
    pivot[var] = e;

    let mut sum: Vec<Vec<u16>> = gens.iter().filter(|g| g[var] < e).cloned().collect();
    sum.push(pivot.clone());
    let quot: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[var] = h[var].saturating_sub(e);
            h
        })
        .collect();
    let a = numerator(sum, w);
    let b = shift(&numerator(quot, w), wdeg(&pivot, w));
    poly_add(&a, &b)
}

/// Binomial coefficient as a polynomial in `n`, valid for negative `n`.
fn binom(n: i128, k: i128) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl HilbertSeries {
    /// Hilbert series of `k[x_0..x_{n-1}] / (monomials)`.
    pub fn of_monomials(weights: &[u32], gens: &[Vec<u16>]) -> Self {
        let mut num = numerator(gens.to_vec(), weights);
        while num.len() > 1 && *num.last().unwrap() == 0 {
            num.pop();
        }
        HilbertSeries { numerator: num, weights: weights.to_vec() }
    }

    fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Values `H(0..=kmax)` by series expansion.
    pub fn values(&self, kmax: usize) -> Vec<i128> {
        let mut s: Vec<i128> = vec![0; kmax + 1];
        for (i, &c) in self.numerator.iter().enumerate() {
            if i <= kmax {
                s[i] += c as i128;
            }
        }
        for &w in &self.weights {
            let w = w as usize;
            for k in w..=kmax {
                s[k] += s[k - w];
            }
        }
        s
    }

    pub fn value(&self, k: usize) -> i128 {
        self.values(k)[k]
    }

    /// `(h, d)` with `HS = h(t) / (1-t)^d` and `h(1) != 0`, standard grading only.
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        assert!(self.is_standard(), "reduced form needs the standard grading");
        let mut h = self.numerator.clone();
        let mut d = self.weights.len();
        if h.iter().all(|&c| c == 0) {
            return (vec![0], 0);
        }
        while d > 0 && h.iter().sum::<i64>() == 0 {
            // divide by (1 - t)
            let mut q = vec![0i64; h.len() - 1];
            let mut acc = 0i64;
            for i in 0..h.len() - 1 {
                acc += h[i];
                q[i] = acc;
            }
            h = q;
            d -= 1;
        }
        (h, d)
    }

    /// Krull dimension of the quotient ring.
    pub fn krull_dim(&self) -> usize {
        self.reduced().1
    }

    /// Dimension of the projective scheme (`-1` when empty).
    pub fn projective_dim(&self) -> i64 {
        self.krull_dim() as i64 - 1
    }

    pub fn degree(&self) -> i64 {
        self.reduced().0.iter().sum()
    }

    /// Hilbert polynomial evaluated at `k`.
    pub fn polynomial_value(&self, k: i64) -> i128 {
        let (h, d) = self.reduced();
        if d == 0 {
            return 0;
        }
        h.iter()
            .enumerate()
            .map(|(i, &c)| c as i128 * binom(k as i128 - i as i128 + d as i128 - 1, d as i128 - 1))
            .sum()
    }

    /// Smallest `k0` such that `H(k) = P(k)` for all `k >= k0`.
    pub fn regularity_index(&self) -> i64 {
        let (h, d) = self.reduced();
        if d == 0 {
            return h.len() as i64;
        }
        // H - P is a polynomial in t of degree < len(h)
        let top = h.len() as i64 + 1;
        let vals = self.values(top as usize + 1);
        let mut k0 = top + 1;
        while k0 > 0 && vals[(k0 - 1) as usize] == self.polynomial_value(k0 - 1) {
            k0 -= 1;
        }
        k0
    }
}

/// Coefficients (constant first) of the polynomial through `(start + i, values[i])`.
pub fn interpolate(start: i64, values: &[i128]) -> Vec<BigRational> {
    let n = values.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        let xi = start + i as i64;
        // basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let xj = start + j as i64;
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xj.into());
            }
            basis = next;
            denom *= BigRational::from_integer((xi - xj).into());
        }
        let scale = BigRational::from_integer(values[i].into()) / denom;
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    coeffs
}

pub fn eval_rational_poly(coeffs: &[BigRational], x: i64) -> BigRational {
    let xr = BigRational::from_integer(x.into());
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &xr + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_ring() {
        let hs = HilbertSeries::of_monomials(&[1, 1], &[]);
        assert_eq!(hs.values(4), vec![1, 2, 3, 4, 5]);
        assert_eq!(hs.krull_dim(), 2);
        assert_eq!(hs.degree(), 1);
    }

    #[test]
    fn conic() {
        // in(z0 z2 - z1^2) = z1^2 under degrevlex with z1 > ... : any quadric gives the same series
        let hs = HilbertSeries::of_monomials(&[1, 1, 1], &[vec![0, 2, 0]]);
        assert_eq!(hs.values(3), vec![1, 3, 5, 7]);
        assert_eq!(hs.projective_dim(), 1);
        assert_eq!(hs.degree(), 2);
        assert_eq!(hs.regularity_index(), 0);
    }

    #[test]
    fn twisted_cubic() {
        let gens = vec![vec![0, 2, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 2, 0]];
        let hs = HilbertSeries::of_monomials(&[1; 4], &gens);
        assert_eq!(hs.values(4), vec![1, 4, 7, 10, 13]);
        assert_eq!(hs.degree(), 3);
        assert_eq!(hs.projective_dim(), 1);
    }

    #[test]
    fn weighted() {
        let hs = HilbertSeries::of_monomials(&[1, 2], &[]);
        assert_eq!(hs.values(5), vec![1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn points_have_degree_and_regularity() {
        // three points in P^1 : ideal (x^3)
        let hs = HilbertSeries::of_monomials(&[1, 1], &[vec![3, 0]]);
        assert_eq!(hs.values(4), vec![1, 2, 3, 3, 3]);
        assert_eq!(hs.degree(), 3);
        assert_eq!(hs.projective_dim(), 0);
        assert_eq!(hs.regularity_index(), 2);
    }

    #[test]
    fn interpolation() {
        let c = interpolate(0, &[1, 4, 9, 16]);
        assert_eq!(eval_rational_poly(&c, 10), BigRational::from_integer(121.into()));
        assert_eq!(c.len(), 3);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn brute(gens: &[Vec<u16>], n: usize, k: usize) -> i128 {
            fn rec(i: usize, left: usize, cur: &mut Vec<u16>, gens: &[Vec<u16>], n: usize) -> i128 {
                if i == n - 1 {
                    cur[i] = left as u16;
                    let ok = !gens.iter().any(|g| g.iter().zip(cur.iter()).all(|(a, b)| a <= b));
                    return ok as i128;
                }
                let mut s = 0;
                for e in 0..=left {
                    cur[i] = e as u16;
                    s += rec(i + 1, left - e, cur, gens, n);
                }
                s
            }
            rec(0, k, &mut vec![0; n], gens, n)
        }

        proptest! {
            #[test]
            fn matches_brute_force(gens in proptest::collection::vec(proptest::collection::vec(0u16..3, 4), 0..6)) {
                let hs = HilbertSeries::of_monomials(&[1; 4], &gens);
                let vals = hs.values(6);
                for k in 0..=6 {
                    prop_assert_eq!(vals[k], brute(&gens, 4, k));
                }
            }
        }
    }
}
