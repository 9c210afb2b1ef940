//! The Riemannian layer over a verified Kähler–Poisson context:
//! Christoffel symbols, covariant derivative, Lie bracket of derivations,
//! Riemann/Ricci/scalar curvature, gradient, divergence, Laplacian, and an
//! exact verification suite for the structural identities (Koszul,
//! torsion-freeness, metric compatibility, both Bianchi identities, and
//! the curvature symmetries).
//!
//! Curvature of arbitrary derivations is expanded A-multilinearly over the
//! cached generator arrays instead of re-deriving nested covariant
//! derivatives on coefficients, which keeps normal-form growth down.

use crate::kp::{Deriv, KPCtx};
use crate::matrix::RingMatrix;
use crate::poly::{rat, ratio};
use crate::ring::Elem;

/// Connection coefficients `Gamma^{ij}_k` on the generating derivations.
#[derive(Debug, Clone)]
pub struct Christoffel {
    /// Indexed as `gamma[i][j][k]`.
    pub gamma: Vec<Vec<Vec<Elem>>>,
}

/// Fully lowered curvature components
/// `rlow[i][j][k][l] = g(D^i, R(D^k, D^l) D^j)`.
#[derive(Debug, Clone)]
pub struct Riemann {
    pub rlow: Vec<Vec<Vec<Vec<Elem>>>>,
}

/// One verified identity family.
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub violations: usize,
    /// Formatted residual with the largest numerator among all failures.
    pub worst_residual: Option<String>,
}

impl PropertyCheck {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(PropertyCheck::passed)
    }
}

/// Levi-Civita data over a KP context, with the generator arrays cached.
pub struct Geometry<'a> {
    kp: &'a KPCtx,
    gamma: Christoffel,
    /// `lie[i][j] = [D^i, D^j]` as derivations.
    lie: Vec<Vec<Deriv>>,
    /// `rop[k][l][j] = R(D^k, D^l) D^j` as derivations.
    rop: Vec<Vec<Vec<Deriv>>>,
}

/// Christoffel symbols of the Levi-Civita connection:
/// `Gamma^{ij}_k = 1/2 D^i(D^{jl}) D_{lk} - 1/2 D^j(D^{il}) D_{lk}
///                + 1/2 D_k(D^{ij})`.
pub fn christoffel(kp: &KPCtx) -> Christoffel {
    let ring = kp.ring();
    let m = kp.dim();
    let half = ratio(1, 2);
    let d = kp.d_matrix();
    let d_low = kp.d_matrix_lowered();

    // dd[i][j][l] = D^i(D^{jl})
    let dd: Vec<Vec<Vec<Elem>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|l| kp.d_apply(i, d.entry(j, l))).collect())
                .collect()
        })
        .collect();

    let mut gamma = vec![vec![vec![ring.zero(); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let mut acc = ring.zero();
                for l in 0..m {
                    let diff = ring.sub(&dd[i][j][l], &dd[j][i][l]);
                    acc = ring.add(&acc, &ring.mul(&diff, d_low.entry(l, k)));
                }
                acc = ring.add(&acc, &kp.d_apply_lowered(k, d.entry(i, j)));
                gamma[i][j][k] = ring.scale(&acc, &half);
            }
        }
    }
    Christoffel { gamma }
}

impl<'a> Geometry<'a> {
    pub fn new(kp: &'a KPCtx) -> Self {
        Self::with_christoffel(kp, christoffel(kp))
    }

    /// Build the cached arrays from externally supplied connection
    /// coefficients. Useful for probing: a corrupted connection makes the
    /// verification suite fail.
    pub fn with_christoffel(kp: &'a KPCtx, gamma: Christoffel) -> Self {
        let m = kp.dim();
        let mut geo = Geometry {
            kp,
            gamma,
            lie: Vec::new(),
            rop: Vec::new(),
        };
        let lie: Vec<Vec<Deriv>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| geo.lie_bracket(&kp.gen_deriv(i), &kp.gen_deriv(j)))
                    .collect()
            })
            .collect();
        geo.lie = lie;
        let rop: Vec<Vec<Vec<Deriv>>> = (0..m)
            .map(|k| {
                (0..m)
                    .map(|l| (0..m).map(|j| geo.riemann_on_gens(k, l, j)).collect())
                    .collect()
            })
            .collect();
        geo.rop = rop;
        geo
    }

    pub fn kp(&self) -> &KPCtx {
        self.kp
    }

    pub fn christoffel(&self) -> &Christoffel {
        &self.gamma
    }

    /// `nabla_alpha beta = alpha(beta_i) D^i + Gamma^{ij}_k alpha_i beta_j D^k`.
    pub fn nabla(&self, alpha: &Deriv, beta: &Deriv) -> Deriv {
        let kp = self.kp;
        let ring = kp.ring();
        let m = kp.dim();
        let mut coeffs: Vec<Elem> = (0..m)
            .map(|n| kp.deriv_apply(alpha, &beta.coeffs[n]))
            .collect();
        for (i, ai) in alpha.coeffs.iter().enumerate() {
            if ring.is_zero(ai) {
                continue;
            }
            for (j, bj) in beta.coeffs.iter().enumerate() {
                if ring.is_zero(bj) {
                    continue;
                }
                let w = ring.mul(ai, bj);
                for (n, coeff) in coeffs.iter_mut().enumerate() {
                    *coeff = ring.add(coeff, &ring.mul(&self.gamma.gamma[i][j][n], &w));
                }
            }
        }
        Deriv { coeffs }
    }

    /// `[alpha, beta]` computed through generator values and recovered as a
    /// coefficient vector.
    pub fn lie_bracket(&self, alpha: &Deriv, beta: &Deriv) -> Deriv {
        let kp = self.kp;
        let ring = kp.ring();
        let va = kp.values(alpha);
        let vb = kp.values(beta);
        let w: Vec<Elem> = (0..kp.dim())
            .map(|k| {
                ring.sub(
                    &kp.deriv_apply(alpha, &vb[k]),
                    &kp.deriv_apply(beta, &va[k]),
                )
            })
            .collect();
        kp.coeffs_from_values(&w)
    }

    fn riemann_on_gens(&self, k: usize, l: usize, j: usize) -> Deriv {
        let kp = self.kp;
        let ek = kp.gen_deriv(k);
        let el = kp.gen_deriv(l);
        let ej = kp.gen_deriv(j);
        let a = self.nabla(&ek, &self.nabla(&el, &ej));
        let b = self.nabla(&el, &self.nabla(&ek, &ej));
        let c = self.nabla(&self.lie[k][l], &ej);
        kp.deriv_sub(&kp.deriv_sub(&a, &b), &c)
    }

    /// `R(D^k, D^l) D^j` from the cache.
    pub fn riemann_gen(&self, k: usize, l: usize, j: usize) -> &Deriv {
        &self.rop[k][l][j]
    }

    /// Curvature on arbitrary derivations by A-multilinear expansion over
    /// the generator arrays.
    pub fn riemann_apply(&self, alpha: &Deriv, beta: &Deriv, gamma: &Deriv) -> Deriv {
        let kp = self.kp;
        let ring = kp.ring();
        let mut acc = kp.zero_deriv();
        for (k, ak) in alpha.coeffs.iter().enumerate() {
            if ring.is_zero(ak) {
                continue;
            }
            for (l, bl) in beta.coeffs.iter().enumerate() {
                if ring.is_zero(bl) {
                    continue;
                }
                for (j, cj) in gamma.coeffs.iter().enumerate() {
                    if ring.is_zero(cj) {
                        continue;
                    }
                    let w = ring.mul(&ring.mul(ak, bl), cj);
                    acc = kp.deriv_add(&acc, &kp.deriv_scale(&self.rop[k][l][j], &w));
                }
            }
        }
        acc
    }

    /// All lowered components `g(D^i, R(D^k,D^l) D^j)`.
    pub fn riemann(&self) -> Riemann {
        let kp = self.kp;
        let m = kp.dim();
        let rlow = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        (0..m)
                            .map(|k| {
                                (0..m)
                                    .map(|l| kp.g_form(&kp.gen_deriv(i), &self.rop[k][l][j]))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Riemann { rlow }
    }

    /// `Ric(alpha, beta) = g(R(D^i, alpha) beta, D^j) D_{ij}`.
    pub fn ricci(&self, alpha: &Deriv, beta: &Deriv) -> Elem {
        let kp = self.kp;
        let ring = kp.ring();
        let m = kp.dim();
        let d_low = kp.d_matrix_lowered();
        let mut acc = ring.zero();
        for i in 0..m {
            let r = self.riemann_apply(&kp.gen_deriv(i), alpha, beta);
            for j in 0..m {
                let s = kp.g_form(&r, &kp.gen_deriv(j));
                acc = ring.add(&acc, &ring.mul(&s, d_low.entry(i, j)));
            }
        }
        acc
    }

    /// Scalar curvature `S = g(R(D^i,D^k) D^l, D^j) D_{ij} D_{kl}`.
    pub fn scalar(&self) -> Elem {
        let kp = self.kp;
        let ring = kp.ring();
        let m = kp.dim();
        let d_low = kp.d_matrix_lowered();
        let mut acc = ring.zero();
        for i in 0..m {
            for k in 0..m {
                if i == k {
                    continue; // R(D^i, D^i) = 0
                }
                for l in 0..m {
                    let r = &self.rop[i][k][l];
                    for j in 0..m {
                        let s = kp.g_form(r, &kp.gen_deriv(j));
                        let t = ring.mul(&ring.mul(&s, d_low.entry(i, j)), d_low.entry(k, l));
                        acc = ring.add(&acc, &t);
                    }
                }
            }
        }
        ring.normal_form(&acc)
    }

    /// `grad f = D_i(f) D^i`; satisfies `g(grad f, alpha) = alpha(f)`.
    pub fn gradient(&self, f: &Elem) -> Deriv {
        let kp = self.kp;
        let coeffs = (0..kp.dim()).map(|i| kp.d_apply_lowered(i, f)).collect();
        Deriv { coeffs }
    }

    /// `div(alpha) = tr(beta -> nabla_beta alpha)`.
    pub fn divergence(&self, alpha: &Deriv) -> Elem {
        let kp = self.kp;
        let m = kp.dim();
        let rows: Vec<Vec<Elem>> = (0..m)
            .map(|i| self.nabla(&kp.gen_deriv(i), alpha).coeffs)
            .collect();
        kp.trace(&RingMatrix::from_rows(rows))
    }

    pub fn laplacian(&self, f: &Elem) -> Elem {
        self.divergence(&self.gradient(f))
    }

    // ----- exact verification of the structural identities -----

    /// Evaluate the six identity families exactly on all generator index
    /// tuples.
    pub fn verify_properties(&self) -> PropertyReport {
        let kp = self.kp;
        let ring = kp.ring();
        let m = kp.dim();
        let d = kp.d_matrix();

        struct Tracker {
            violations: usize,
            worst: Option<(usize, String)>,
        }
        impl Tracker {
            fn new() -> Self {
                Tracker {
                    violations: 0,
                    worst: None,
                }
            }
            fn hit(&mut self, kp: &KPCtx, residual: &Elem) {
                let ring = kp.ring();
                if ring.is_zero(residual) {
                    return;
                }
                self.violations += 1;
                let nf = ring.normal_form(residual);
                let size = nf.num.num_terms();
                if self.worst.as_ref().map(|(s, _)| size > *s).unwrap_or(true) {
                    self.worst = Some((size, ring.format_elem(&nf)));
                }
            }
            fn hit_deriv(&mut self, kp: &KPCtx, residual: &Deriv) {
                for v in kp.values(residual) {
                    self.hit(kp, &v);
                }
            }
            fn into_check(self, name: &'static str) -> PropertyCheck {
                PropertyCheck {
                    name,
                    violations: self.violations,
                    worst_residual: self.worst.map(|(_, s)| s),
                }
            }
        }

        let mut checks = Vec::new();

        // (1) Koszul: 2 g(nabla_{D^i} D^j, D^k) equals the six-term
        // right-hand side built from metric derivatives and Lie brackets.
        let mut t = Tracker::new();
        for i in 0..m {
            for j in 0..m {
                let nij = self.nabla(&kp.gen_deriv(i), &kp.gen_deriv(j));
                for k in 0..m {
                    let lhs = kp.g_form(&nij, &kp.gen_deriv(k));
                    let lhs2 = ring.scale(&lhs, &rat(2));
                    let mut rhs = kp.d_apply(i, d.entry(j, k));
                    rhs = ring.add(&rhs, &kp.d_apply(j, d.entry(k, i)));
                    rhs = ring.sub(&rhs, &kp.d_apply(k, d.entry(i, j)));
                    rhs = ring.sub(&rhs, &kp.g_form(&self.lie[j][k], &kp.gen_deriv(i)));
                    rhs = ring.add(&rhs, &kp.g_form(&self.lie[k][i], &kp.gen_deriv(j)));
                    rhs = ring.add(&rhs, &kp.g_form(&self.lie[i][j], &kp.gen_deriv(k)));
                    t.hit(kp, &ring.sub(&lhs2, &rhs));
                }
            }
        }
        checks.push(t.into_check("koszul"));

        // (2) Torsion-freeness.
        let mut t = Tracker::new();
        for i in 0..m {
            for j in 0..m {
                let a = self.nabla(&kp.gen_deriv(i), &kp.gen_deriv(j));
                let b = self.nabla(&kp.gen_deriv(j), &kp.gen_deriv(i));
                let res = kp.deriv_sub(&kp.deriv_sub(&a, &b), &self.lie[i][j]);
                t.hit_deriv(kp, &res);
            }
        }
        checks.push(t.into_check("torsion-free"));

        // (3) Metric compatibility.
        let mut t = Tracker::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let lhs = kp.d_apply(i, d.entry(j, k));
                    let rhs = ring.add(
                        &kp.g_form(
                            &self.nabla(&kp.gen_deriv(i), &kp.gen_deriv(j)),
                            &kp.gen_deriv(k),
                        ),
                        &kp.g_form(
                            &kp.gen_deriv(j),
                            &self.nabla(&kp.gen_deriv(i), &kp.gen_deriv(k)),
                        ),
                    );
                    t.hit(kp, &ring.sub(&lhs, &rhs));
                }
            }
        }
        checks.push(t.into_check("metric-compatibility"));

        // (4) First Bianchi: R(a,b)c + R(c,a)b + R(b,c)a = 0.
        let mut t = Tracker::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let sum = kp.deriv_add(
                        &kp.deriv_add(&self.rop[a][b][c], &self.rop[c][a][b]),
                        &self.rop[b][c][a],
                    );
                    t.hit_deriv(kp, &sum);
                }
            }
        }
        checks.push(t.into_check("bianchi-first"));

        // (5) Second Bianchi with the covariant extension of nabla to
        // module-valued multilinear maps.
        let mut t = Tracker::new();
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                for c in 0..m {
                    for dd in 0..m {
                        let term = |x: usize, y: usize, z: usize| self.nabla_r(z, x, y, dd);
                        let sum = kp.deriv_add(
                            &kp.deriv_add(&term(b, c, a), &term(c, a, b)),
                            &term(a, b, c),
                        );
                        t.hit_deriv(kp, &sum);
                    }
                }
            }
        }
        checks.push(t.into_check("bianchi-second"));

        // (6) Curvature symmetries of the lowered tensor.
        let rm = self.riemann();
        let r = &rm.rlow;
        let mut t = Tracker::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        // Antisymmetry in the paired slots.
                        t.hit(kp, &ring.add(&r[i][j][k][l], &r[j][i][k][l]));
                        t.hit(kp, &ring.add(&r[i][j][k][l], &r[i][j][l][k]));
                        // Pair-exchange symmetry (i,j) <-> (k,l).
                        t.hit(kp, &ring.sub(&r[i][j][k][l], &r[k][l][i][j]));
                    }
                }
            }
        }
        checks.push(t.into_check("curvature-symmetries"));

        PropertyReport { checks }
    }

    /// `(nabla_{D^c} R)(D^a, D^b, D^d)` via the extension of the connection
    /// to module-valued multilinear maps.
    fn nabla_r(&self, c: usize, a: usize, b: usize, d: usize) -> Deriv {
        let kp = self.kp;
        let ec = kp.gen_deriv(c);
        let head = self.nabla(&ec, &self.rop[a][b][d]);
        let ga = Deriv {
            coeffs: self.gamma.gamma[c][a].clone(),
        };
        let gb = Deriv {
            coeffs: self.gamma.gamma[c][b].clone(),
        };
        let gd = Deriv {
            coeffs: self.gamma.gamma[c][d].clone(),
        };
        let t1 = self.riemann_apply(&ga, &kp.gen_deriv(b), &kp.gen_deriv(d));
        let t2 = self.riemann_apply(&kp.gen_deriv(a), &gb, &kp.gen_deriv(d));
        let t3 = self.riemann_apply(&kp.gen_deriv(a), &kp.gen_deriv(b), &gd);
        kp.deriv_sub(&kp.deriv_sub(&kp.deriv_sub(&head, &t1), &t2), &t3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn flat_plane_geometry() {
        let kp = fixtures::symplectic_plane().unwrap();
        let geo = Geometry::new(&kp);
        let ring = kp.ring();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert!(ring.is_zero(&geo.christoffel().gamma[i][j][k]));
                }
            }
        }
        let rm = geo.riemann();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        assert!(ring.is_zero(&rm.rlow[i][j][k][l]));
                    }
                }
            }
        }
        assert!(ring.is_zero(&geo.scalar()));
        let dx = kp.gen_deriv(0);
        let dy = kp.gen_deriv(1);
        assert!(ring.is_zero(&geo.ricci(&dx, &dy)));
        assert!(ring.is_zero(&geo.ricci(&dx, &dx)));
        // grad x = D^x since D = g = Id.
        let gx = geo.gradient(&ring.gen_elem(0));
        assert!(kp.derivs_equal(&gx, &dx));
        // Laplacian of a constant vanishes; nabla of zero is zero.
        assert!(ring.is_zero(&geo.laplacian(&ring.one())));
        assert!(kp.deriv_is_zero(&geo.nabla(&kp.zero_deriv(), &dy)));
    }

    #[test]
    fn two_generator_connection() {
        let kp = fixtures::two_generator_family().unwrap();
        let geo = Geometry::new(&kp);
        let ring = kp.ring();
        let lambda = ring.parse_elem("x").unwrap();
        let dx = kp.gen_deriv(0);
        let dy = kp.gen_deriv(1);

        // nabla_{D^x} D^x = nabla_{D^y} D^y = 1/2 D^i(lambda) D_i.
        let mut half_grad = kp.zero_deriv();
        for i in 0..2 {
            let di_lam = kp.d_apply(i, &lambda);
            // D_i = g_ik D^k
            for k in 0..2 {
                let w = ring.mul(&di_lam, kp.metric().entry(i, k));
                half_grad.coeffs[k] = ring.add(&half_grad.coeffs[k], &w);
            }
        }
        let half_grad = kp.deriv_scale(&half_grad, &ring.constant(ratio(1, 2)));
        let nxx = geo.nabla(&dx, &dx);
        let nyy = geo.nabla(&dy, &dy);
        assert!(kp.derivs_equal(&nxx, &half_grad));
        assert!(kp.derivs_equal(&nyy, &half_grad));

        // The commutator [D^x, D^y] is the derivation gamma^{-1}{lambda, .}
        // with values (0, lambda) here, and the connection cross terms are
        // (+/-) half of it (torsion-freeness forces
        // nabla_x y - nabla_y x = [x, y]).
        let d_lambda = kp.coeffs_from_values(&[ring.zero(), lambda.clone()]);
        let lie = geo.lie_bracket(&dx, &dy);
        assert!(kp.derivs_equal(&lie, &d_lambda));
        let nxy = geo.nabla(&dx, &dy);
        let nyx = geo.nabla(&dy, &dx);
        assert!(kp.derivs_equal(&kp.deriv_sub(&nxy, &nyx), &d_lambda));
        let half_comm = kp.deriv_scale(&d_lambda, &ring.constant(ratio(1, 2)));
        assert!(kp.derivs_equal(&nxy, &half_comm));
        assert!(kp.derivs_equal(&nyx, &kp.deriv_scale(&half_comm, &ring.constant(rat(-1)))));

        // div(ax D^x + ay D^y) = D^x(ax) + D^y(ay).
        let ax = ring.parse_elem("x*y").unwrap();
        let ay = ring.parse_elem("y^2").unwrap();
        let alpha = Deriv {
            coeffs: vec![ax.clone(), ay.clone()],
        };
        let div = geo.divergence(&alpha);
        let expect = ring.add(&kp.d_apply(0, &ax), &kp.d_apply(1, &ay));
        assert!(ring.elems_equal(&div, &expect));

        // Laplacian: D^x(D_x(f)) + D^y(D_y(f)).
        let f = ring.parse_elem("x^2*y").unwrap();
        let lap = geo.laplacian(&f);
        let expect = ring.add(
            &kp.d_apply(0, &kp.d_apply_lowered(0, &f)),
            &kp.d_apply(1, &kp.d_apply_lowered(1, &f)),
        );
        assert!(ring.elems_equal(&lap, &expect));
    }

    #[test]
    fn two_generator_curvature_and_scalar() {
        let kp = fixtures::two_generator_family().unwrap();
        let geo = Geometry::new(&kp);
        let ring = kp.ring();
        let lambda = ring.parse_elem("x").unwrap();
        let dx = kp.gen_deriv(0);
        let dy = kp.gen_deriv(1);

        // R(D^x,D^y)D^x = [D_x(l)^2 + D_y(l)^2 - 1/2 D_x(D^x(l))
        //                  - 1/2 D_y(D^y(l))] D^y and the mirrored formula.
        let dxl = kp.d_apply_lowered(0, &lambda);
        let dyl = kp.d_apply_lowered(1, &lambda);
        let mut bracket = ring.add(&ring.mul(&dxl, &dxl), &ring.mul(&dyl, &dyl));
        let half = ring.constant(ratio(1, 2));
        bracket = ring.sub(
            &bracket,
            &ring.mul(&half, &kp.d_apply_lowered(0, &kp.d_apply(0, &lambda))),
        );
        bracket = ring.sub(
            &bracket,
            &ring.mul(&half, &kp.d_apply_lowered(1, &kp.d_apply(1, &lambda))),
        );
        let rxyx = geo.riemann_gen(0, 1, 0);
        assert!(kp.derivs_equal(rxyx, &kp.deriv_scale(&dy, &bracket)));
        let rxyy = geo.riemann_gen(0, 1, 1);
        let neg = ring.constant(rat(-1));
        assert!(kp.derivs_equal(rxyy, &kp.deriv_scale(&kp.deriv_scale(&dx, &bracket), &neg)));

        // S = (1/lambda)(D_x(D^x l) + D_y(D^y l) - 2 D_x(l)^2 - 2 D_y(l)^2),
        // which for lambda = x evaluates to -1/x.
        let s = geo.scalar();
        let mut closed = ring.add(
            &kp.d_apply_lowered(0, &kp.d_apply(0, &lambda)),
            &kp.d_apply_lowered(1, &kp.d_apply(1, &lambda)),
        );
        let two = ring.constant(rat(2));
        closed = ring.sub(&closed, &ring.mul(&two, &ring.mul(&dxl, &dxl)));
        closed = ring.sub(&closed, &ring.mul(&two, &ring.mul(&dyl, &dyl)));
        let inv_lambda = ring.invert(&lambda).unwrap();
        let closed = ring.mul(&inv_lambda, &closed);
        assert!(ring.elems_equal(&s, &closed));
        let minus_inv = ring.neg(&inv_lambda);
        assert!(ring.elems_equal(&s, &minus_inv), "S = -1/x for lambda = x");
    }

    #[test]
    fn commutator_lemma_on_ellipsoid() {
        // g([D^i,D^j], D^k) = D^i(D^{jk}) - D^j(D^{ik}) on all triples.
        let kp = fixtures::ellipsoid(1, 2, 3).unwrap();
        let geo = Geometry::new(&kp);
        let ring = kp.ring();
        let d = kp.d_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let lie = geo.lie_bracket(&kp.gen_deriv(i), &kp.gen_deriv(j));
                for k in 0..3 {
                    let lhs = kp.g_form(&lie, &kp.gen_deriv(k));
                    let rhs =
                        ring.sub(&kp.d_apply(i, d.entry(j, k)), &kp.d_apply(j, d.entry(i, k)));
                    assert!(ring.elems_equal(&lhs, &rhs), "lemma fails at ({i},{j},{k})");
                }
            }
        }
        // [D^i, D^i] = 0.
        assert!(kp.deriv_is_zero(&geo.lie_bracket(&kp.gen_deriv(1), &kp.gen_deriv(1))));
    }

    #[test]
    fn gradient_duality() {
        let kp = fixtures::sphere().unwrap();
        let geo = Geometry::new(&kp);
        let ring = kp.ring();
        let f = ring.parse_elem("x*y+z").unwrap();
        let grad = geo.gradient(&f);
        for i in 0..3 {
            let lhs = kp.g_form(&grad, &kp.gen_deriv(i));
            let rhs = kp.d_apply(i, &f);
            assert!(ring.elems_equal(&lhs, &rhs), "g(grad f, D^{i}) = D^{i}(f)");
        }
        assert!(kp.deriv_is_zero(&geo.gradient(&ring.one())));
        assert!(ring.is_zero(&geo.divergence(&kp.zero_deriv())));
    }

    #[test]
    fn sphere_ricci_matches_d_matrix() {
        // Two-dimensional leaf with S = 2: Ric(D^i, D^j) = (S/2) D^{ij}.
        let kp = fixtures::sphere().unwrap();
        let geo = Geometry::new(&kp);
        let ring = kp.ring();
        for i in 0..3 {
            for j in 0..3 {
                let ric = geo.ricci(&kp.gen_deriv(i), &kp.gen_deriv(j));
                assert!(
                    ring.elems_equal(&ric, kp.d_matrix().entry(i, j)),
                    "Ric[{i}][{j}] = {}",
                    ring.format_elem(&ric)
                );
            }
        }
    }

    #[test]
    fn property_suite_passes_and_detects_sabotage() {
        let kp = fixtures::sphere().unwrap();
        let geo = Geometry::new(&kp);
        let report = geo.verify_properties();
        assert!(report.all_passed(), "{:?}", report.checks);

        // Perturb one Christoffel entry by +1: torsion or metric
        // compatibility must fail.
        let mut gamma = geo.christoffel().clone();
        let ring = kp.ring();
        gamma.gamma[0][1][2] = ring.add(&gamma.gamma[0][1][2], &ring.one());
        let bad = Geometry::with_christoffel(&kp, gamma);
        let report = bad.verify_properties();
        let torsion = report
            .checks
            .iter()
            .find(|c| c.name == "torsion-free")
            .unwrap();
        let metric = report
            .checks
            .iter()
            .find(|c| c.name == "metric-compatibility")
            .unwrap();
        assert!(
            !torsion.passed() || !metric.passed(),
            "sabotaged connection must be detected"
        );
        assert!(torsion.worst_residual.is_some() || metric.worst_residual.is_some());
    }
}
