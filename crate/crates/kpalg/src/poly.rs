//! Sparse multivariate polynomials over the rationals.
//!
//! Coefficients are arbitrary-precision rationals so every equality the
//! engine decides is exact. Terms are stored in a `BTreeMap` keyed by
//! exponent vector, which makes the representation canonical: no zero
//! coefficients, unique keys, deterministic iteration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector, one entry per generator in scope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise quotient, `None` when not divisible.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.0.len(), other.0.len());
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Total order on monomials, compatible with multiplication.
///
/// The precedence vector lists generator indices from highest to lowest;
/// it defaults to declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrevLex,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Self {
        MonomialOrder { kind, precedence }
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.precedence {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Equal degree: the monomial whose last (lowest-precedence)
                // differing exponent is smaller wins.
                for &i in self.precedence.iter().rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Sparse polynomial: a map from monomial to nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "generator index {idx} out of range");
        let mut p = Poly::zero(nvars);
        p.terms.insert(Mono::var(nvars, idx), Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: &Mono, c: &Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.nvars);
        match self.terms.get_mut(m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    fn assert_scope(&self, other: &Poly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomial scope mismatch: {} vs {} generators",
            self.nvars, other.nvars
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_scope(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_scope(other);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(&ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative with respect to generator `idx`.
    pub fn partial(&self, idx: usize) -> Poly {
        assert!(idx < self.nvars, "generator index {idx} out of range");
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[idx] = e - 1;
            out.add_term(&dm, &(c * rat(e as i64)));
        }
        out
    }

    /// Leading monomial with respect to `order`.
    pub fn leading_mono(&self, order: &MonomialOrder) -> Option<&Mono> {
        self.terms.keys().max_by(|a, b| order.cmp(a, b))
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Mono, &Rat)> {
        self.leading_mono(order).map(|m| (m, &self.terms[m]))
    }

    /// Rescale so the leading coefficient is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Exact single-divisor division: `Some(q)` with `self = q*d` when `d`
    /// divides `self` as a polynomial.
    pub fn try_exact_div(&self, d: &Poly, order: &MonomialOrder) -> Option<Poly> {
        self.assert_scope(d);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = d.leading_term(order).unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term(order) {
            let qm = m.try_div(&dm)?;
            let qc = c / &dc;
            q.add_term(&qm, &qc);
            rem = rem.sub(&d.mul_term(&qm, &qc));
        }
        Some(q)
    }

    /// Canonical text form: terms in descending `order`, explicit `*` and `^`.
    pub fn format(&self, names: &[String], order: &MonomialOrder) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut monos: Vec<&Mono> = self.terms.keys().collect();
        monos.sort_by(|a, b| order.cmp(b, a));
        let mut out = String::new();
        for (pos, m) in monos.iter().enumerate() {
            let c = &self.terms[*m];
            if pos == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(names[i].clone());
                } else if e > 1 {
                    let mut f = names[i].clone();
                    let _ = write!(f, "^{e}");
                    factors.push(f);
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn p(text: &str, gens: &[&str]) -> Poly {
        parse_poly(text, &names(gens)).unwrap()
    }

    #[test]
    fn construction_and_arithmetic() {
        let gens = ["x", "y"];
        assert_eq!(p("x^2 + 2*y", &gens), {
            let x2 = Poly::var(2, 0).pow(2);
            let y2 = Poly::var(2, 1).scale(&rat(2));
            x2.add(&y2)
        });
        assert_eq!(p("(x+y)*(x-y)", &gens), p("x^2 - y^2", &gens));
        assert!(p("x", &gens).add(&p("-x", &gens)).is_zero());
        assert_eq!(p("(x+y)*(x+y)", &gens), p("x^2+2*x*y+y^2", &gens));
        assert_eq!(
            p("x^2+y^2", &gens).scale(&ratio(1, 2)),
            p("1/2*x^2+1/2*y^2", &gens)
        );
    }

    #[test]
    fn level_set_constraint_parses() {
        // a = b = c = 1 instance of the quadric constraint.
        let gens = ["x", "y", "z"];
        let c = p("1/2*(x^2+y^2+z^2-1)", &gens);
        assert_eq!(c, p("1/2*x^2+1/2*y^2+1/2*z^2-1/2", &gens));
        assert_eq!(c.partial(2), p("z", &gens));
    }

    #[test]
    fn partials() {
        let gens = ["x", "y"];
        assert!(p("y^3", &gens).partial(0).is_zero());
        assert_eq!(p("x^3*y", &gens).partial(0), p("3*x^2*y", &gens));
        let c = p("1/2*(2*x^2+3*y^2)", &gens);
        assert_eq!(c.partial(1), p("3*y", &gens));
    }

    #[test]
    fn grevlex_ordering() {
        let ord = MonomialOrder::grevlex(3);
        let x2 = Mono(vec![2, 0, 0]);
        let xy = Mono(vec![1, 1, 0]);
        let yz = Mono(vec![0, 1, 1]);
        let z = Mono(vec![0, 0, 1]);
        assert_eq!(ord.cmp(&x2, &xy), std::cmp::Ordering::Greater);
        assert_eq!(ord.cmp(&xy, &yz), std::cmp::Ordering::Greater);
        assert_eq!(ord.cmp(&x2, &z), std::cmp::Ordering::Greater);
        let lex = MonomialOrder::lex(3);
        assert_eq!(lex.cmp(&x2, &xy), std::cmp::Ordering::Greater);
        assert_eq!(lex.cmp(&z, &xy), std::cmp::Ordering::Less);
    }

    #[test]
    fn exact_division() {
        let gens = ["x", "y"];
        let ord = MonomialOrder::grevlex(2);
        let a = p("x^2 - y^2", &gens);
        let d = p("x + y", &gens);
        assert_eq!(a.try_exact_div(&d, &ord).unwrap(), p("x - y", &gens));
        assert!(p("x^2 + 1", &gens).try_exact_div(&d, &ord).is_none());
    }

    #[test]
    fn format_is_canonical() {
        let gens = ["x", "y", "z"];
        let ns = names(&gens);
        let ord = MonomialOrder::grevlex(3);
        let q = p("z - x^2 + 1/2 - 3*x*y", &gens);
        assert_eq!(q.format(&ns, &ord), "-x^2 - 3*x*y + z + 1/2");
        assert_eq!(p("0", &gens).format(&ns, &ord), "0");
        assert_eq!(p("-x", &gens).format(&ns, &ord), "-x");
    }
}
