//! Faugère's F4: S-polynomials of one sugar degree are reduced together as the
//! rows of a sparse Macaulay matrix.

use std::collections::{HashMap, HashSet};

use crate::field::Field;
use crate::groebner::{insert, Counter, Element, GbError, Pair};
use crate::monomial::Monomial;
use crate::ring::{Poly, Ring};

/// A row before column indexing: `mult * elems[idx]`, or an input polynomial.
enum RowSource {
    Multiple { mult: Monomial, idx: usize },
    Input(usize),
}

type SparseRow<E> = Vec<(u32, E)>;

/// A (not yet reduced) Groebner basis: active elements after the last round.
pub(crate) fn f4<F: Field>(ring: &Ring<F>, gens: &[Poly<F>], counter: &mut Counter) -> Result<Vec<Poly<F>>, GbError> {
    let mut elems: Vec<Element<F>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.make_monic(g)).collect();
    inputs.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    inputs.dedup();
    if inputs.iter().any(|p| p.is_constant()) {
        return Ok(vec![ring.one()]);
    }
    let mut pending: Vec<(Poly<F>, u32)> = inputs.into_iter().map(|p| {
        let s = p.weighted_degree();
        (p, s)
    }).collect();

    loop {
        let next_pairs = pairs.iter().map(|p| p.sugar).min();
        let next_inputs = pending.iter().map(|p| p.1).min();
        let sugar = match (next_pairs, next_inputs) {
            (None, None) => break,
            (a, b) => a.into_iter().chain(b).min().unwrap(),
        };
        let mut sources = Vec::new();
        let mut selected = Vec::new();
        let mut k = 0;
        while k < pairs.len() {
            if pairs[k].sugar == sugar {
                selected.push(pairs.swap_remove(k));
            } else {
                k += 1;
            }
        }
        let mut seen = HashSet::new();
        for p in &selected {
            counter.tick()?;
            for idx in [p.i, p.j] {
                let mult = p.lcm.div(elems[idx].poly.lm());
                if seen.insert((idx, mult)) {
                    sources.push(RowSource::Multiple { mult, idx });
                }
            }
        }
        let mut raw: Vec<Poly<F>> = Vec::new();
        pending.retain(|(p, s)| {
            if *s == sugar {
                raw.push(p.clone());
                false
            } else {
                true
            }
        });
        for i in 0..raw.len() {
            sources.push(RowSource::Input(i));
        }

        let new_polys = reduction_round(ring, &elems, &sources, &raw, counter)?;
        let mut new_polys = new_polys;
        if new_polys.iter().any(|p| p.is_constant()) {
            return Ok(vec![ring.one()]);
        }
        new_polys.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
        for h in new_polys {
            insert(ring, &mut elems, &mut pairs, h, sugar);
        }
    }
    Ok(elems.into_iter().filter(|e| e.active).map(|e| e.poly).collect())
}

fn source_terms<'a, F: Field>(
    src: &'a RowSource,
    elems: &'a [Element<F>],
    raw: &'a [Poly<F>],
) -> (Option<Monomial>, &'a Poly<F>) {
    match src {
        RowSource::Multiple { mult, idx } => (Some(*mult), &elems[*idx].poly),
        RowSource::Input(i) => (None, &raw[*i]),
    }
}

/// Builds the matrix for one round, eliminates, and returns the rows whose leading
/// monomial is not a leading monomial of a basis multiple in the matrix.
fn reduction_round<F: Field>(
    ring: &Ring<F>,
    elems: &[Element<F>],
    sources: &[RowSource],
    raw: &[Poly<F>],
    counter: &mut Counter,
) -> Result<Vec<Poly<F>>, GbError> {
    let field = ring.field();
    let active: Vec<usize> = (0..elems.len()).filter(|&i| elems[i].active).collect();

    // symbolic preprocessing
    let mut done: HashSet<Monomial> = HashSet::new();
    let mut monos: HashSet<Monomial> = HashSet::new();
    let mut work: Vec<Monomial> = Vec::new();
    for src in sources {
        if let RowSource::Multiple { mult, idx } = src {
            done.insert(elems[*idx].poly.lm().mul(mult));
        }
    }
    let push_monos = |src: &RowSource, monos: &mut HashSet<Monomial>, work: &mut Vec<Monomial>| {
        let (mult, poly) = source_terms(src, elems, raw);
        for (m, _) in &poly.terms {
            let m = match mult {
                Some(t) => m.mul(&t),
                None => *m,
            };
            if monos.insert(m) {
                work.push(m);
            }
        }
    };
    for src in sources {
        push_monos(src, &mut monos, &mut work);
    }
    let mut reducers: Vec<RowSource> = Vec::new();
    while let Some(m) = work.pop() {
        if done.contains(&m) {
            continue;
        }
        done.insert(m);
        if let Some(&g) = active.iter().find(|&&g| elems[g].poly.lm().divides(&m)) {
            let src = RowSource::Multiple { mult: m.div(elems[g].poly.lm()), idx: g };
            push_monos(&src, &mut monos, &mut work);
            reducers.push(src);
        }
    }

    // columns, largest monomial first
    let mut cols: Vec<Monomial> = monos.into_iter().collect();
    cols.sort_by(|a, b| ring.cmp(b, a));
    let col_of: HashMap<Monomial, u32> = cols.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
    let to_row = |src: &RowSource| -> SparseRow<F::Elem> {
        let (mult, poly) = source_terms(src, elems, raw);
        poly.terms
            .iter()
            .map(|(m, c)| {
                let m = match mult {
                    Some(t) => m.mul(&t),
                    None => *m,
                };
                (col_of[&m], c.clone())
            })
            .collect()
    };

    let ncols = cols.len();
    let mut pivot_of: Vec<Option<u32>> = vec![None; ncols];
    let mut pivot_rows: Vec<SparseRow<F::Elem>> = Vec::new();
    let mut basis_lms: HashSet<u32> = HashSet::new();
    for src in &reducers {
        let row = to_row(src);
        let lead = row[0].0;
        basis_lms.insert(lead);
        pivot_of[lead as usize] = Some(pivot_rows.len() as u32);
        pivot_rows.push(row);
    }
    let mut todo: Vec<SparseRow<F::Elem>> = Vec::new();
    for src in sources {
        let row = to_row(src);
        if matches!(src, RowSource::Multiple { .. }) {
            basis_lms.insert(row[0].0);
        }
        todo.push(row);
    }
    // basis multiples before raw inputs, larger leading monomials first
    let n_mult = sources.iter().filter(|s| matches!(s, RowSource::Multiple { .. })).count();
    todo[..n_mult].sort_by_key(|r| r[0].0);

    let zero = field.zero();
    let mut acc: Vec<F::Elem> = vec![zero.clone(); ncols];
    let mut out = Vec::new();
    for row in todo {
        let start = row[0].0 as usize;
        for (c, v) in &row {
            acc[*c as usize] = v.clone();
        }
        let mut result: SparseRow<F::Elem> = Vec::new();
        for c in start..ncols {
            if field.is_zero(&acc[c]) {
                continue;
            }
            let a = std::mem::replace(&mut acc[c], zero.clone());
            match pivot_of[c] {
                Some(p) => {
                    counter.tick()?;
                    let prow = &pivot_rows[p as usize];
                    for (pc, pv) in &prow[1..] {
                        let e = &mut acc[*pc as usize];
                        *e = field.sub(e, &field.mul(&a, pv));
                    }
                }
                None => result.push((c as u32, a)),
            }
        }
        if result.is_empty() {
            continue;
        }
        let inv = field.inv(&result[0].1);
        for t in result.iter_mut() {
            t.1 = field.mul(&t.1, &inv);
        }
        let lead = result[0].0;
        if !basis_lms.contains(&lead) {
            out.push(Poly { terms: result.iter().map(|(c, v)| (cols[*c as usize], v.clone())).collect() });
        }
        pivot_of[lead as usize] = Some(pivot_rows.len() as u32);
        pivot_rows.push(result);
    }
    Ok(out)
}
