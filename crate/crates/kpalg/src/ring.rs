//! Localized quotient rings `K[x1..xm]/(relations)` with a declared set of
//! invertible denominators.
//!
//! An [`Elem`] is a numerator polynomial together with one exponent per
//! declared denominator. Zero testing reduces the numerator modulo the
//! Gröbner basis of the relation ideal; this is sound exactly when the
//! declared denominators are non-zero-divisors modulo the ideal, which is
//! an assumption the caller takes on when declaring them (the engine
//! cannot decide it in general).

use crate::error::{Error, Result};
use crate::groebner::{buchberger, reduce, Budget};
use crate::parse::{parse_elem_parts, parse_poly};
use crate::poly::{MonomialOrder, Poly, Rat};
use num_traits::One;

/// Ring context: generators, relations (with their Gröbner basis), declared
/// denominators, and the monomial order everything is reduced with.
#[derive(Debug, Clone)]
pub struct RingCtx {
    gens: Vec<String>,
    relations: Vec<Poly>,
    groebner: Vec<Poly>,
    denoms: Vec<Poly>,
    /// Normal forms of the declared denominators (cached).
    denom_nf: Vec<Poly>,
    order: MonomialOrder,
    budget: Budget,
}

/// Element of the localized quotient ring: `num / prod(denoms[i]^exps[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    pub num: Poly,
    pub denom_exps: Vec<u32>,
}

impl RingCtx {
    pub fn new(
        gens: Vec<String>,
        relations: Vec<Poly>,
        denoms: Vec<Poly>,
        order: MonomialOrder,
    ) -> Result<Self> {
        Self::with_budget(gens, relations, denoms, order, Budget::default())
    }

    pub fn with_budget(
        gens: Vec<String>,
        relations: Vec<Poly>,
        denoms: Vec<Poly>,
        order: MonomialOrder,
        budget: Budget,
    ) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].contains(g) {
                return Err(Error::semantic(format!("duplicate generator `{g}`")));
            }
        }
        let nvars = gens.len();
        for p in relations.iter().chain(denoms.iter()) {
            if p.nvars() != nvars {
                return Err(Error::semantic(
                    "polynomial scope does not match generator count",
                ));
            }
        }
        let groebner = buchberger(&relations, &order, &budget)?;
        let denom_nf: Vec<Poly> = denoms
            .iter()
            .map(|d| reduce(d, &groebner, &order))
            .collect();
        for (i, d) in denom_nf.iter().enumerate() {
            if d.is_zero() {
                return Err(Error::semantic(format!(
                    "denominator #{} reduces to zero modulo the relations; cannot localize at zero",
                    i + 1
                )));
            }
        }
        Ok(RingCtx {
            gens,
            relations,
            groebner,
            denoms,
            denom_nf,
            order,
            budget,
        })
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.gens.len()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn groebner(&self) -> &[Poly] {
        &self.groebner
    }

    pub fn denoms(&self) -> &[Poly] {
        &self.denoms
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// A new context with extra denominators appended (deduplicated).
    pub fn extend_denominators(&self, extra: Vec<Poly>) -> Result<RingCtx> {
        let mut denoms = self.denoms.clone();
        for d in extra {
            if !denoms.contains(&d) {
                denoms.push(d);
            }
        }
        RingCtx::with_budget(
            self.gens.clone(),
            self.relations.clone(),
            denoms,
            self.order.clone(),
            self.budget.clone(),
        )
    }

    /// Re-scope an element from a context whose denominator list is a prefix
    /// of this one's.
    pub fn widen_elem(&self, e: &Elem) -> Elem {
        assert!(e.denom_exps.len() <= self.denoms.len());
        let mut exps = e.denom_exps.clone();
        exps.resize(self.denoms.len(), 0);
        Elem {
            num: e.num.clone(),
            denom_exps: exps,
        }
    }

    fn reduce_poly(&self, p: &Poly) -> Poly {
        reduce(p, &self.groebner, &self.order)
    }

    pub fn zero(&self) -> Elem {
        Elem {
            num: Poly::zero(self.nvars()),
            denom_exps: vec![0; self.denoms.len()],
        }
    }

    pub fn one(&self) -> Elem {
        Elem {
            num: Poly::one(self.nvars()),
            denom_exps: vec![0; self.denoms.len()],
        }
    }

    pub fn constant(&self, c: Rat) -> Elem {
        self.from_poly(&Poly::constant(self.nvars(), c))
    }

    pub fn gen_elem(&self, idx: usize) -> Elem {
        self.from_poly(&Poly::var(self.nvars(), idx))
    }

    pub fn from_poly(&self, p: &Poly) -> Elem {
        self.normal_form(&Elem {
            num: p.clone(),
            denom_exps: vec![0; self.denoms.len()],
        })
    }

    /// Element with the given numerator and denominator exponents.
    pub fn fraction(&self, num: &Poly, denom_exps: &[u32]) -> Elem {
        assert_eq!(
            denom_exps.len(),
            self.denoms.len(),
            "denominator exponent count mismatch"
        );
        self.normal_form(&Elem {
            num: num.clone(),
            denom_exps: denom_exps.to_vec(),
        })
    }

    fn check_scope(&self, e: &Elem) {
        assert_eq!(e.num.nvars(), self.nvars(), "element scope mismatch");
        assert_eq!(
            e.denom_exps.len(),
            self.denoms.len(),
            "element denominator scope mismatch"
        );
    }

    /// Canonical form: numerator reduced modulo the relation ideal, then
    /// denominator exponents lowered while the numerator is an exact
    /// polynomial multiple of a denominator. Best effort by design:
    /// unreduced-but-equal fractions still compare equal through
    /// cross-multiplied zero tests.
    pub fn normal_form(&self, e: &Elem) -> Elem {
        self.check_scope(e);
        let mut num = self.reduce_poly(&e.num);
        let mut exps = e.denom_exps.clone();
        if num.is_zero() {
            return Elem {
                num,
                denom_exps: vec![0; exps.len()],
            };
        }
        // A denominator congruent to a nonzero constant is that constant in
        // the quotient; fold it into the numerator.
        for (i, dnf) in self.denom_nf.iter().enumerate() {
            if exps[i] == 0 {
                continue;
            }
            if let Some(c) = dnf.as_constant() {
                let inv = Rat::one() / c;
                let mut factor = Rat::one();
                for _ in 0..exps[i] {
                    factor *= &inv;
                }
                num = num.scale(&factor);
                exps[i] = 0;
            }
        }
        let mut progressed = true;
        while progressed {
            progressed = false;
            for (i, d) in self.denoms.iter().enumerate() {
                while exps[i] > 0 {
                    // The declared polynomial and its normal form are the
                    // same class, so either may cancel.
                    let quotient = num
                        .try_exact_div(d, &self.order)
                        .or_else(|| num.try_exact_div(&self.denom_nf[i], &self.order));
                    match quotient {
                        Some(q) => {
                            num = self.reduce_poly(&q);
                            exps[i] -= 1;
                            progressed = true;
                            if num.is_zero() {
                                return Elem {
                                    num,
                                    denom_exps: vec![0; exps.len()],
                                };
                            }
                        }
                        None => break,
                    }
                }
            }
        }
        Elem {
            num,
            denom_exps: exps,
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        self.check_scope(e);
        self.reduce_poly(&e.num).is_zero()
    }

    /// Semantic equality by cross-multiplication.
    pub fn elems_equal(&self, a: &Elem, b: &Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn denom_power(&self, exps: &[u32]) -> Poly {
        let mut out = Poly::one(self.nvars());
        for (d, &e) in self.denoms.iter().zip(exps) {
            if e > 0 {
                out = out.mul(&d.pow(e));
            }
        }
        out
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.check_scope(a);
        self.check_scope(b);
        let common: Vec<u32> = a
            .denom_exps
            .iter()
            .zip(&b.denom_exps)
            .map(|(x, y)| *x.max(y))
            .collect();
        let lift_a: Vec<u32> = common
            .iter()
            .zip(&a.denom_exps)
            .map(|(c, e)| c - e)
            .collect();
        let lift_b: Vec<u32> = common
            .iter()
            .zip(&b.denom_exps)
            .map(|(c, e)| c - e)
            .collect();
        let num = a
            .num
            .mul(&self.denom_power(&lift_a))
            .add(&b.num.mul(&self.denom_power(&lift_b)));
        self.normal_form(&Elem {
            num,
            denom_exps: common,
        })
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        Elem {
            num: a.num.neg(),
            denom_exps: a.denom_exps.clone(),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.check_scope(a);
        self.check_scope(b);
        let num = a.num.mul(&b.num);
        let exps: Vec<u32> = a
            .denom_exps
            .iter()
            .zip(&b.denom_exps)
            .map(|(x, y)| x + y)
            .collect();
        self.normal_form(&Elem {
            num,
            denom_exps: exps,
        })
    }

    pub fn scale(&self, a: &Elem, c: &Rat) -> Elem {
        self.normal_form(&Elem {
            num: a.num.scale(c),
            denom_exps: a.denom_exps.clone(),
        })
    }

    pub fn mul_poly(&self, a: &Elem, p: &Poly) -> Elem {
        self.normal_form(&Elem {
            num: a.num.mul(p),
            denom_exps: a.denom_exps.clone(),
        })
    }

    /// Divide by one declared denominator.
    pub fn div_by_denom_index(&self, a: &Elem, idx: usize, power: u32) -> Elem {
        self.check_scope(a);
        assert!(idx < self.denoms.len());
        let mut exps = a.denom_exps.clone();
        exps[idx] += power;
        self.normal_form(&Elem {
            num: a.num.clone(),
            denom_exps: exps,
        })
    }

    /// Recognize `b` as a unit: a nonzero rational times a product of
    /// declared denominator powers (modulo the relations), and return its
    /// inverse. Recognition is by greedy exact division on the reduced
    /// numerator, so hidden units are not discovered.
    pub fn invert(&self, b: &Elem) -> Result<Elem> {
        self.check_scope(b);
        let mut u = self.reduce_poly(&b.num);
        if u.is_zero() {
            return Err(Error::semantic("division by zero element"));
        }
        let mut factored = vec![0u32; self.denoms.len()];
        let mut progressed = true;
        while progressed && u.as_constant().is_none() {
            progressed = false;
            for (i, d) in self.denoms.iter().enumerate() {
                if self.denom_nf[i].as_constant().is_some() {
                    continue;
                }
                loop {
                    let q = u
                        .try_exact_div(d, &self.order)
                        .or_else(|| u.try_exact_div(&self.denom_nf[i], &self.order));
                    match q {
                        Some(q) => {
                            u = self.reduce_poly(&q);
                            factored[i] += 1;
                            progressed = true;
                            if u.as_constant().is_some() {
                                break;
                            }
                        }
                        None => break,
                    }
                }
            }
        }
        match u.as_constant() {
            Some(c) if !num_traits::Zero::is_zero(&c) => {
                // b = c * prod(d^factored) / prod(d^b.exps), so
                // 1/b = (1/c) * prod(d^b.exps) / prod(d^factored).
                let num = self.denom_power(&b.denom_exps).scale(&(Rat::one() / c));
                Ok(self.normal_form(&Elem { num, denom_exps: factored }))
            }
            _ => Err(Error::semantic(
                "element is not a recognized unit (not a rational multiple of declared denominator powers)",
            )),
        }
    }

    /// Divide `a` by `b` where `b` must be a recognized unit.
    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let inv = self.invert(b)?;
        Ok(self.mul(a, &inv))
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.gens)
    }

    /// Parse an element string; denominator factors must match declared
    /// denominators (as polynomials, or a bare generator that is declared).
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let (num, factors) = parse_elem_parts(text, &self.gens)?;
        let mut exps = vec![0u32; self.denoms.len()];
        for (fac, e) in factors {
            match self.denoms.iter().position(|d| *d == fac) {
                Some(i) => exps[i] += e,
                None => {
                    return Err(Error::semantic(format!(
                        "denominator factor `{}` is not a declared denominator",
                        fac.format(&self.gens, &self.order)
                    )))
                }
            }
        }
        Ok(self.normal_form(&Elem {
            num,
            denom_exps: exps,
        }))
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        p.format(&self.gens, &self.order)
    }

    /// Canonical element text: `num` or `num / f1^e1*f2^e2...` where each
    /// factor is a bare generator name or a parenthesized polynomial.
    pub fn format_elem(&self, e: &Elem) -> String {
        let num = self.format_poly(&e.num);
        if e.denom_exps.iter().all(|&x| x == 0) {
            return num;
        }
        let mut dens: Vec<String> = Vec::new();
        for (d, &e) in self.denoms.iter().zip(&e.denom_exps) {
            if e == 0 {
                continue;
            }
            let text = self.format_poly(d);
            let atomic = self.gens.contains(&text);
            let base = if atomic { text } else { format!("({text})") };
            if e == 1 {
                dens.push(base);
            } else {
                dens.push(format!("{base}^{e}"));
            }
        }
        let wrapped_num = if num.contains(' ') {
            format!("({num})")
        } else {
            num
        };
        format!("{wrapped_num} / {}", dens.join("*"))
    }

    /// Reduce an element's numerator and report it; used in diagnostics.
    pub fn residual_string(&self, e: &Elem) -> String {
        self.format_elem(&self.normal_form(e))
    }
}
