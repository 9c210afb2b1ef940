//! Multivariate division and a plain Buchberger Gröbner engine.
//!
//! Desk-scale by design: the examples this engine targets have a handful of
//! generators and one or two relations, so there is no need for F4-style
//! machinery. Budgets make blowups fail loudly instead of spinning.

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Mono, MonomialOrder, Poly, Rat};

/// Resource guards for ideal computations.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum number of S-polynomial pairs processed by `buchberger`.
    pub groebner_pairs: usize,
    /// Maximum number of terms any intermediate polynomial may grow to.
    pub max_terms: usize,
    /// Largest matrix dimension cofactor expansion will touch.
    pub adjugate_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            groebner_pairs: 10_000,
            max_terms: 100_000,
            adjugate_dim: 8,
        }
    }
}

/// Divide `p` by the ordered list of divisors.
///
/// Returns quotients and remainder with `p = sum(q[i]*d[i]) + r` and no
/// monomial of `r` divisible by any divisor's leading monomial.
pub fn divmod_multi(
    p: &Poly,
    divisors: &[Poly],
    order: &MonomialOrder,
) -> Result<(Vec<Poly>, Poly)> {
    for d in divisors {
        if d.is_zero() {
            return Err(Error::semantic("zero polynomial among divisors"));
        }
    }
    let nvars = p.nvars();
    let leads: Vec<(Mono, Rat)> = divisors
        .iter()
        .map(|d| {
            let (m, c) = d.leading_term(order).unwrap();
            (m.clone(), c.clone())
        })
        .collect();
    let mut quotients = vec![Poly::zero(nvars); divisors.len()];
    let mut remainder = Poly::zero(nvars);
    let mut work = p.clone();
    'outer: while let Some((m, c)) = work.leading_term(order) {
        let m = m.clone();
        let c = c.clone();
        for (i, (lm, lc)) in leads.iter().enumerate() {
            if let Some(qm) = m.try_div(lm) {
                let qc = &c / lc;
                quotients[i] =
                    quotients[i].add(&Poly::from_terms(nvars, [(qm.clone(), qc.clone())]));
                work = work.sub(&divisors[i].mul_term(&qm, &qc));
                continue 'outer;
            }
        }
        // Leading term is irreducible: move it to the remainder.
        remainder = remainder.add(&Poly::from_terms(nvars, [(m.clone(), c.clone())]));
        work = work.sub(&Poly::from_terms(nvars, [(m, c)]));
    }
    Ok((quotients, remainder))
}

/// Remainder of `p` under division by `divisors`.
pub fn reduce(p: &Poly, divisors: &[Poly], order: &MonomialOrder) -> Poly {
    if divisors.is_empty() {
        return p.clone();
    }
    divmod_multi(p, divisors, order)
        .expect("divisors are nonzero")
        .1
}

fn s_poly(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let l = fm.lcm(gm);
    let mf = l.try_div(fm).unwrap();
    let mg = l.try_div(gm).unwrap();
    let a = f.mul_term(&mf, &(Rat::one() / fc));
    let b = g.mul_term(&mg, &(Rat::one() / gc));
    a.sub(&b)
}

/// Compute the reduced Gröbner basis of the ideal generated by `gens`.
///
/// Output is monic, mutually reduced, and sorted by ascending leading
/// monomial, so it is unique for the given order.
pub fn buchberger(gens: &[Poly], order: &MonomialOrder, budget: &Budget) -> Result<Vec<Poly>> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            return Err(Error::semantic("zero polynomial among ideal generators"));
        }
        basis.push(g.clone());
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    let mut processed = 0usize;
    while let Some((i, j)) = pairs.pop() {
        processed += 1;
        if processed > budget.groebner_pairs {
            return Err(Error::Resource(format!(
                "Groebner pair budget of {} exceeded",
                budget.groebner_pairs
            )));
        }
        let (fm, _) = basis[i].leading_term(order).unwrap();
        let (gm, _) = basis[j].leading_term(order).unwrap();
        // Buchberger's first criterion: coprime leading monomials reduce to zero.
        if fm.is_coprime(gm) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if r.num_terms() > budget.max_terms {
            return Err(Error::Resource(format!(
                "term budget of {} exceeded during Groebner computation",
                budget.max_terms
            )));
        }
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r);
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }

    // Inter-reduce and normalize.
    loop {
        let mut changed = false;
        let mut next: Vec<Poly> = Vec::new();
        for i in 0..basis.len() {
            let others: Vec<Poly> = basis
                .iter()
                .enumerate()
                .filter(|(j, q)| *j != i && !q.is_zero())
                .map(|(_, q)| q.clone())
                .collect();
            let r = if others.is_empty() {
                basis[i].clone()
            } else {
                reduce(&basis[i], &others, order)
            };
            if r != basis[i] {
                changed = true;
            }
            if !r.is_zero() {
                next.push(r);
            }
        }
        basis = next;
        if !changed {
            break;
        }
    }
    let mut basis: Vec<Poly> = basis.iter().map(|p| p.monic(order)).collect();
    basis.sort_by(|a, b| {
        let am = a.leading_mono(order).unwrap();
        let bm = b.leading_mono(order).unwrap();
        order.cmp(am, bm)
    });
    basis.dedup();
    Ok(basis)
}
