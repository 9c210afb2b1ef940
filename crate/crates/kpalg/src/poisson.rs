//! Poisson bracket machinery over a generator bracket table.
//!
//! A [`BracketTable`] stores the brackets of ring generators; brackets of
//! arbitrary localized elements follow by bilinearity, Leibniz, and the
//! quotient rule for declared denominators. Jacobi on generator triples
//! certifies Jacobi on the whole algebra, and centrality of the relations
//! certifies that the bracket descends to the quotient.

use crate::error::{Error, Result};
use crate::poly::{rat, Poly};
use crate::ring::{Elem, RingCtx};

/// Antisymmetric table of generator brackets.
#[derive(Debug, Clone)]
pub struct BracketTable {
    entries: Vec<Vec<Elem>>,
}

/// Counterexample to the Jacobi identity: the generator triple and the
/// nonzero cyclic sum.
#[derive(Debug, Clone)]
pub struct JacobiWitness {
    pub triple: (usize, usize, usize),
    pub residual: Elem,
}

/// Counterexample to centrality: generator index, relation index, and the
/// bracket that fails to reduce to zero.
#[derive(Debug, Clone)]
pub struct CentralityWitness {
    pub gen: usize,
    pub relation: usize,
    pub residual: Elem,
}

impl BracketTable {
    /// Build from upper-triangular entries `(i, j, {x^i,x^j})` with `i < j`
    /// (0-based); the rest of the table is filled by antisymmetry.
    pub fn from_upper(ctx: &RingCtx, upper: &[(usize, usize, Elem)]) -> Result<Self> {
        let m = ctx.nvars();
        let mut entries = vec![vec![ctx.zero(); m]; m];
        let mut seen = vec![vec![false; m]; m];
        for (i, j, e) in upper {
            if *i >= *j || *j >= m {
                return Err(Error::semantic(format!(
                    "bracket entry ({}, {}) is not upper-triangular for {} generators",
                    i + 1,
                    j + 1,
                    m
                )));
            }
            if seen[*i][*j] {
                return Err(Error::semantic(format!(
                    "duplicate bracket entry ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            seen[*i][*j] = true;
            let e = ctx.normal_form(e);
            entries[*i][*j] = e.clone();
            entries[*j][*i] = ctx.neg(&e);
        }
        Ok(BracketTable { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &Vec<Vec<Elem>> {
        &self.entries
    }

    /// Bracket of two polynomials through the coordinate bivector formula.
    pub fn bracket_poly(&self, ctx: &RingCtx, p: &Poly, q: &Poly) -> Elem {
        let m = self.dim();
        let mut acc = ctx.zero();
        for i in 0..m {
            for j in (i + 1)..m {
                let pij = &self.entries[i][j];
                if ctx.is_zero(pij) {
                    continue;
                }
                let coeff = p
                    .partial(i)
                    .mul(&q.partial(j))
                    .sub(&p.partial(j).mul(&q.partial(i)));
                if coeff.is_zero() {
                    continue;
                }
                acc = ctx.add(&acc, &ctx.mul_poly(pij, &coeff));
            }
        }
        acc
    }

    /// Bracket of two localized elements.
    ///
    /// For `a = pa/s`, `b = pb/t` with `s`, `t` products of declared
    /// denominators, the derivation property of the bracket gives
    /// `{a,b} = {pa,pb}/(st) - pa{s,pb}/(s^2 t) - pb{pa,t}/(s t^2)
    ///          + pa pb {s,t}/(s^2 t^2)`,
    /// and each bracket of denominator powers expands by the power rule, so
    /// no denominator product is ever expanded as a polynomial.
    pub fn bracket(&self, ctx: &RingCtx, a: &Elem, b: &Elem) -> Elem {
        assert_eq!(
            self.dim(),
            ctx.nvars(),
            "bracket table does not match context"
        );
        let ea = &a.denom_exps;
        let eb = &b.denom_exps;
        let base: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();

        let shift = |e: &Elem, extra: &[usize]| -> Elem {
            let mut exps = base.clone();
            for (k, &x) in e.denom_exps.iter().enumerate() {
                exps[k] += x;
            }
            for &i in extra {
                exps[i] += 1;
            }
            ctx.fraction(&e.num, &exps)
        };

        // {pa, pb} / (s t)
        let mut acc = shift(&self.bracket_poly(ctx, &a.num, &b.num), &[]);

        // - pa * sum_i ea_i {d_i, pb} / (s t d_i)
        for (i, &e_i) in ea.iter().enumerate() {
            if e_i == 0 {
                continue;
            }
            let br = self.bracket_poly(ctx, &ctx.denoms()[i], &b.num);
            let term = ctx.mul_poly(&br, &a.num.scale(&rat(e_i as i64)));
            acc = ctx.sub(&acc, &shift(&term, &[i]));
        }

        // - pb * sum_j eb_j {pa, d_j} / (s t d_j)
        for (j, &e_j) in eb.iter().enumerate() {
            if e_j == 0 {
                continue;
            }
            let br = self.bracket_poly(ctx, &a.num, &ctx.denoms()[j]);
            let term = ctx.mul_poly(&br, &b.num.scale(&rat(e_j as i64)));
            acc = ctx.sub(&acc, &shift(&term, &[j]));
        }

        // + pa pb * sum_{i,j} ea_i eb_j {d_i, d_j} / (s t d_i d_j)
        for (i, &e_i) in ea.iter().enumerate() {
            if e_i == 0 {
                continue;
            }
            for (j, &e_j) in eb.iter().enumerate() {
                if e_j == 0 {
                    continue;
                }
                let br = self.bracket_poly(ctx, &ctx.denoms()[i], &ctx.denoms()[j]);
                let scaled = a.num.mul(&b.num).scale(&rat((e_i * e_j) as i64));
                let term = ctx.mul_poly(&br, &scaled);
                acc = ctx.add(&acc, &shift(&term, &[i, j]));
            }
        }

        acc
    }

    /// Bracket with a generator on the left.
    pub fn bracket_gen(&self, ctx: &RingCtx, i: usize, b: &Elem) -> Elem {
        self.bracket(ctx, &ctx.gen_elem(i), b)
    }

    /// Re-scope all entries into a context with more denominators.
    pub fn widened(&self, ext: &RingCtx) -> BracketTable {
        BracketTable {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| ext.widen_elem(e)).collect())
                .collect(),
        }
    }

    /// Check the Jacobi identity on all generator triples. By bilinearity
    /// and Leibniz this certifies Jacobi for arbitrary elements.
    pub fn jacobi_check(&self, ctx: &RingCtx) -> Option<JacobiWitness> {
        let m = self.dim();
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let xk = ctx.gen_elem(k);
                    let xi = ctx.gen_elem(i);
                    let xj = ctx.gen_elem(j);
                    let t1 = self.bracket(ctx, &self.entries[i][j], &xk);
                    let t2 = self.bracket(ctx, &self.entries[j][k], &xi);
                    let t3 = self.bracket(ctx, &self.entries[k][i], &xj);
                    let sum = ctx.add(&ctx.add(&t1, &t2), &t3);
                    if !ctx.is_zero(&sum) {
                        return Some(JacobiWitness {
                            triple: (i, j, k),
                            residual: sum,
                        });
                    }
                }
            }
        }
        None
    }

    /// Check that every relation brackets to zero with every generator,
    /// i.e. that the bracket is well defined on the quotient. The relation
    /// is bracketed as a representative polynomial, not as its (zero)
    /// class.
    pub fn relations_central(&self, ctx: &RingCtx) -> Option<CentralityWitness> {
        for (ri, r) in ctx.relations().iter().enumerate() {
            for i in 0..self.dim() {
                let xi = Poly::var(ctx.nvars(), i);
                let br = self.bracket_poly(ctx, &xi, r);
                if !ctx.is_zero(&br) {
                    return Some(CentralityWitness {
                        gen: i,
                        relation: ri,
                        residual: br,
                    });
                }
            }
        }
        None
    }
}

/// Bracket table of the level-set algebra of a three-variable polynomial:
/// `{x^i, x^j} = eps^{ijk} d_k C`.
pub fn level_set_table(ctx: &RingCtx, c: &Poly) -> Result<BracketTable> {
    if ctx.nvars() != 3 {
        return Err(Error::semantic(format!(
            "level-set tables require exactly 3 generators, found {}",
            ctx.nvars()
        )));
    }
    let upper = [
        (0, 1, ctx.from_poly(&c.partial(2))),
        (1, 2, ctx.from_poly(&c.partial(0))),
        (0, 2, ctx.neg(&ctx.from_poly(&c.partial(1)))),
    ];
    BracketTable::from_upper(ctx, &upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn free3() -> RingCtx {
        RingCtx::new(
            names(&["x", "y", "z"]),
            vec![],
            vec![],
            MonomialOrder::grevlex(3),
        )
        .unwrap()
    }

    fn symplectic_plane() -> (RingCtx, BracketTable) {
        let ctx = RingCtx::new(
            names(&["x", "y"]),
            vec![],
            vec![],
            MonomialOrder::grevlex(2),
        )
        .unwrap();
        let table = BracketTable::from_upper(&ctx, &[(0, 1, ctx.one())]).unwrap();
        (ctx, table)
    }

    fn ellipsoid_ctx(a: i64, b: i64, c: i64) -> (RingCtx, BracketTable) {
        let gens = names(&["x", "y", "z"]);
        let free = RingCtx::new(gens.clone(), vec![], vec![], MonomialOrder::grevlex(3)).unwrap();
        let cpoly = free
            .parse_poly(&format!("1/2*({a}*x^2+{b}*y^2+{c}*z^2-1)"))
            .unwrap();
        let tau = free
            .parse_poly(&format!("{}*x^2+{}*y^2+{}*z^2", a * a, b * b, c * c))
            .unwrap();
        let ctx = RingCtx::new(
            gens,
            vec![cpoly.clone()],
            vec![tau],
            MonomialOrder::grevlex(3),
        )
        .unwrap();
        let table = level_set_table(&ctx, &cpoly).unwrap();
        (ctx, table)
    }

    #[test]
    fn table_lookup_and_leibniz() {
        let (ctx, table) = symplectic_plane();
        let x = ctx.gen_elem(0);
        let y = ctx.gen_elem(1);
        assert!(ctx.elems_equal(&table.bracket(&ctx, &x, &y), &ctx.one()));
        // {x^2, y} = 2x by Leibniz.
        let x2 = ctx.from_poly(&ctx.parse_poly("x^2").unwrap());
        let expect = ctx.from_poly(&ctx.parse_poly("2*x").unwrap());
        assert!(ctx.elems_equal(&table.bracket(&ctx, &x2, &y), &expect));
        // Cross-check by expanding {x*x, y} = x{x,y} + {x,y}x.
        let manual = ctx.add(
            &ctx.mul(&x, &table.bracket(&ctx, &x, &y)),
            &ctx.mul(&table.bracket(&ctx, &x, &y), &x),
        );
        assert!(ctx.elems_equal(&table.bracket(&ctx, &x2, &y), &manual));
    }

    #[test]
    fn level_set_brackets() {
        let (ctx, table) = ellipsoid_ctx(1, 2, 3);
        let y = ctx.gen_elem(1);
        let z = ctx.gen_elem(2);
        // {y,z} = a*x = x and {x,y} = c*z = 3z for (a,b,c) = (1,2,3).
        let ax = ctx.from_poly(&ctx.parse_poly("x").unwrap());
        assert!(ctx.elems_equal(&table.bracket(&ctx, &y, &z), &ax));
        let cz = ctx.from_poly(&ctx.parse_poly("3*z").unwrap());
        assert!(ctx.elems_equal(table.entry(0, 1), &cz));
    }

    #[test]
    fn level_set_linear_and_monomial() {
        let free = free3();
        let z = free.parse_poly("z").unwrap();
        let t = level_set_table(&free, &z).unwrap();
        assert!(free.elems_equal(t.entry(0, 1), &free.one()));
        assert!(free.is_zero(t.entry(1, 2)));
        assert!(free.is_zero(t.entry(2, 0)));

        let xyz = free.parse_poly("x*y*z").unwrap();
        let t = level_set_table(&free, &xyz).unwrap();
        assert!(free.elems_equal(t.entry(0, 1), &free.parse_elem("x*y").unwrap()));
        assert!(free.elems_equal(t.entry(1, 2), &free.parse_elem("y*z").unwrap()));
        assert!(free.elems_equal(t.entry(2, 0), &free.parse_elem("x*z").unwrap()));

        let two = RingCtx::new(
            names(&["x", "y"]),
            vec![],
            vec![],
            MonomialOrder::grevlex(2),
        )
        .unwrap();
        assert!(level_set_table(&two, &two.parse_poly("x").unwrap()).is_err());
    }

    #[test]
    fn jacobi_certification() {
        let (ctx, table) = symplectic_plane();
        assert!(table.jacobi_check(&ctx).is_none());

        let (ctx, table) = ellipsoid_ctx(2, 1, 1);
        assert!(table.jacobi_check(&ctx).is_none());

        // Any table {x,y}=c1*z, {y,z}=c2*x, {z,x}=c3*y is a Lie-Poisson
        // structure: the cyclic sum pairs each bracket with its own output
        // generator, so every term is {v,v} = 0. A sign flip therefore
        // does NOT break Jacobi.
        let free = free3();
        let sl2 = BracketTable::from_upper(
            &free,
            &[
                (0, 1, free.gen_elem(2)),
                (1, 2, free.gen_elem(0)),
                (0, 2, free.gen_elem(1)), // {z,x} = -y
            ],
        )
        .unwrap();
        assert!(sl2.jacobi_check(&free).is_none());

        // Breaking the pairing does break Jacobi: {x,y}=z, {y,z}=x, {z,x}=x
        // has Jacobiator {z,z} + {x,x} + {x,y} = z on the triple.
        let sab = BracketTable::from_upper(
            &free,
            &[
                (0, 1, free.gen_elem(2)),
                (1, 2, free.gen_elem(0)),
                (0, 2, free.neg(&free.gen_elem(0))), // {z,x} = x
            ],
        )
        .unwrap();
        let w = sab.jacobi_check(&free).expect("broken table must fail");
        assert_eq!(w.triple, (0, 1, 2));
        assert!(free.elems_equal(&w.residual, &free.gen_elem(2)));

        // The honest su(2)-type table passes.
        let su2 = BracketTable::from_upper(
            &free,
            &[
                (0, 1, free.gen_elem(2)),
                (1, 2, free.gen_elem(0)),
                (0, 2, free.neg(&free.gen_elem(1))),
            ],
        )
        .unwrap();
        assert!(su2.jacobi_check(&free).is_none());
    }

    #[test]
    fn centrality() {
        let (ctx, table) = ellipsoid_ctx(1, 1, 1);
        assert!(table.relations_central(&ctx).is_none());

        let (free_ctx, free_table) = symplectic_plane();
        assert!(
            free_table.relations_central(&free_ctx).is_none(),
            "vacuous without relations"
        );

        // Relations {x} with {x,y} = 1: {y, x} = -1 is not in (x).
        let gens = names(&["x", "y"]);
        let x = crate::parse::parse_poly("x", &gens).unwrap();
        let ctx = RingCtx::new(gens, vec![x], vec![], MonomialOrder::grevlex(2)).unwrap();
        let table = BracketTable::from_upper(&ctx, &[(0, 1, ctx.one())]).unwrap();
        let w = table.relations_central(&ctx).expect("must fail");
        assert_eq!(w.relation, 0);
    }

    #[test]
    fn fraction_brackets() {
        // {a, q/d^k} = ({a,q}d - k q {a,d}) / d^{k+1} checked against the
        // closed formula on a concrete case.
        let gens = names(&["x", "y"]);
        let d = crate::parse::parse_poly("x", &gens).unwrap();
        let ctx = RingCtx::new(gens, vec![], vec![d], MonomialOrder::grevlex(2)).unwrap();
        let table = BracketTable::from_upper(&ctx, &[(0, 1, ctx.one())]).unwrap();
        let a = ctx.parse_elem("y^2").unwrap();
        let b = ctx.parse_elem("y / x^2").unwrap();
        // {y^2, y/x^2} = {y^2, y}/x^2 + y*(-2/x^3){y^2, x} = 4 y^2 / x^3.
        let got = table.bracket(&ctx, &a, &b);
        let expect = ctx.parse_elem("4*y^2 / x^3").unwrap();
        assert!(
            ctx.elems_equal(&got, &expect),
            "got {}",
            ctx.format_elem(&got)
        );
        // Antisymmetry.
        let rev = table.bracket(&ctx, &b, &a);
        assert!(ctx.is_zero(&ctx.add(&got, &rev)));
        // Bracket with a constant vanishes.
        assert!(ctx.is_zero(&table.bracket(&ctx, &a, &ctx.one())));
    }
}
