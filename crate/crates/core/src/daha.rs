//! The graded double affine Hecke algebra: the group ring of the
//! extended affine Weyl group tensored with polynomials on the affine
//! weight lattice and a central degree-2 variable `u`.
//!
//! Elements are kept in normal form: a finite sum of terms
//! `(group element) * (polynomial)` with polynomials on the right.
//! Multiplication straightens polynomials rightward through reduced
//! words one simple reflection at a time, using
//! `p * s_i = s_i * (s_i p) + u * D_i(p)` with the divided difference
//! `D_i(p) = (p - s_i p)/alpha_i`, which is the only cross relation in
//! the defining presentation; length-zero elements commute past
//! polynomials without correction terms.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::afflattice::{affine_simple_root, AffWeight};
use crate::error::Result;
use crate::extweyl::{self, ExtWeylElt};
use crate::parahoric::ParahoricType;
use crate::poly::{delta_index, nvars_for, u_index, AffPoly};
use crate::rat::{rat, Rat};
use crate::rootsys::RootDatum;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DahaElt {
    pub terms: BTreeMap<ExtWeylElt, AffPoly>,
}

/// Grading of a normal-form element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DahaDegree {
    /// The zero element; degree of the empty sum.
    NegInfinity,
    Homogeneous(i64),
    /// Mixed degrees; carries the maximum term degree.
    Inhomogeneous(i64),
}

impl DahaElt {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(datum: &RootDatum) -> Self {
        Self::from_group(datum, ExtWeylElt::identity(datum))
    }

    pub fn scalar(datum: &RootDatum, c: Rat) -> Self {
        Self::from_poly(datum, AffPoly::constant(nvars_for(datum), c))
    }

    pub fn from_group(datum: &RootDatum, a: ExtWeylElt) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(a, AffPoly::one(nvars_for(datum)));
        Self { terms }
    }

    pub fn from_poly(datum: &RootDatum, p: AffPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(ExtWeylElt::identity(datum), p);
        out
    }

    pub fn from_aff_weight(datum: &RootDatum, xi: &AffWeight) -> Self {
        Self::from_poly(datum, AffPoly::from_aff_weight(datum, xi))
    }

    pub fn u(datum: &RootDatum) -> Self {
        Self::from_poly(datum, AffPoly::var(nvars_for(datum), u_index(datum)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, g: ExtWeylElt, p: AffPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&p);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, p) in &other.terms {
            out.add_term(g.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(g, p)| (g.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn degree(&self) -> DahaDegree {
        if self.is_zero() {
            return DahaDegree::NegInfinity;
        }
        let mut degs = Vec::new();
        for p in self.terms.values() {
            match p.homogeneous_degree() {
                Some(d) => degs.push(d),
                None => {
                    let max = self
                        .terms
                        .values()
                        .map(|p| 2 * p.max_total_exponent() as i64)
                        .max()
                        .unwrap();
                    return DahaDegree::Inhomogeneous(max);
                }
            }
        }
        let first = degs[0];
        if degs.iter().all(|&d| d == first) {
            DahaDegree::Homogeneous(first)
        } else {
            DahaDegree::Inhomogeneous(*degs.iter().max().unwrap())
        }
    }
}

/// Images of the lattice variables under the group element's action on
/// the affine weight lattice; index layout matches [`crate::poly`].
pub fn group_weight_images(datum: &RootDatum, a: &ExtWeylElt) -> Vec<AffPoly> {
    let n = datum.rank();
    let mut basis = Vec::with_capacity(n + 2);
    basis.push(AffWeight::lambda_can(n));
    for i in 0..n {
        basis.push(AffWeight::from_fin(datum.simple_root(i).unwrap()));
    }
    basis.push(AffWeight::delta(n));
    basis
        .into_iter()
        .map(|xi| AffPoly::from_aff_weight(datum, &extweyl::act_on_weight(datum, a, &xi)))
        .collect()
}

/// The polynomial `^a p`: the group action extended multiplicatively,
/// fixing `u`.
pub fn poly_act(datum: &RootDatum, a: &ExtWeylElt, p: &AffPoly) -> AffPoly {
    p.substitute_linear(&group_weight_images(datum, a))
}

/// Divided difference `D_i(p) = (p - s_i p) / alpha_i`. Divisibility is
/// a theorem; a nonzero remainder aborts, flagging an internal bug.
pub fn divided_difference(datum: &RootDatum, i: usize, p: &AffPoly) -> AffPoly {
    let s_i = extweyl::simple_reflection(datum, i)
        .unwrap_or_else(|e| panic!("divided difference index: {e}"));
    let reflected = poly_act(datum, &s_i, p);
    let numerator = p.sub(&reflected);
    let alpha = AffPoly::from_aff_weight(datum, &affine_simple_root(datum, i).unwrap());
    let pivot = if i == 0 { delta_index(datum) } else { i };
    let (q, r) = numerator.divide_by_linear(&alpha, pivot);
    assert!(
        r.is_zero(),
        "divided difference remainder nonzero for i={i} on {}: invariant violated",
        datum.descriptor()
    );
    q
}

/// Normal form of the product `p * s_i`:
/// `s_i * (s_i p) + u * D_i(p)`.
pub fn straighten_simple(datum: &RootDatum, i: usize, p: &AffPoly) -> Result<DahaElt> {
    let s_i = extweyl::simple_reflection(datum, i)?;
    let mut out = DahaElt::zero();
    out.add_term(s_i.clone(), poly_act(datum, &s_i, p));
    out.add_term(
        ExtWeylElt::identity(datum),
        divided_difference(datum, i, p).mul_var(u_index(datum)),
    );
    Ok(out)
}

/// Normal form of `p * b` for a group element `b`, peeling the reduced
/// word of `b` letter by letter and passing the length-zero part through
/// by twisting.
fn move_poly_past(datum: &RootDatum, p: &AffPoly, b: &ExtWeylElt) -> Vec<(ExtWeylElt, AffPoly)> {
    let cox = extweyl::reduced_word(datum, b);
    let mut items: Vec<(ExtWeylElt, AffPoly)> = vec![(ExtWeylElt::identity(datum), p.clone())];
    for &i in &cox.word {
        let s_i = extweyl::simple_reflection(datum, i).unwrap();
        let mut next: BTreeMap<ExtWeylElt, AffPoly> = BTreeMap::new();
        let mut push = |g: ExtWeylElt, q: AffPoly| {
            if q.is_zero() {
                return;
            }
            match next.entry(g) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(q);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&q);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        };
        for (g, q) in items {
            push(extweyl::mul(datum, &g, &s_i), poly_act(datum, &s_i, &q));
            push(g, divided_difference(datum, i, &q).mul_var(u_index(datum)));
        }
        items = next.into_iter().collect();
    }
    if !cox.omega.is_identity() {
        let omega_inv = extweyl::inv(datum, &cox.omega);
        items = items
            .into_iter()
            .map(|(g, q)| {
                (
                    extweyl::mul(datum, &g, &cox.omega),
                    poly_act(datum, &omega_inv, &q),
                )
            })
            .collect();
    }
    items
}

/// Normal-form product.
pub fn mul(datum: &RootDatum, a: &DahaElt, b: &DahaElt) -> DahaElt {
    let mut out = DahaElt::zero();
    for (g1, p1) in &a.terms {
        for (g2, p2) in &b.terms {
            for (h, q) in move_poly_past(datum, p1, g2) {
                out.add_term(extweyl::mul(datum, g1, &h), q.mul(p2));
            }
        }
    }
    out
}

/// The idempotent `(1/#W_P) 1_{W_P}`.
pub fn idempotent(datum: &RootDatum, p: &ParahoricType) -> Result<DahaElt> {
    let elems = p.levi_weyl_group(datum)?;
    let inv_order = Rat::new(1.into(), (elems.len() as i64).into());
    let mut out = DahaElt::zero();
    let nvars = nvars_for(datum);
    for w in elems {
        out.add_term(w, AffPoly::constant(nvars, inv_order.clone()));
    }
    Ok(out)
}

/// `e_P a e_P`; the image is the parahoric subalgebra attached to `P`.
pub fn sandwich(datum: &RootDatum, p: &ParahoricType, a: &DahaElt) -> Result<DahaElt> {
    let e = idempotent(datum, p)?;
    Ok(mul(datum, &mul(datum, &e, a), &e))
}

/// Specialization at `u = 0`, `delta = 0`: the quotient in which group
/// elements commute with lattice polynomials by twisting alone.
pub fn specialize_degenerate(datum: &RootDatum, a: &DahaElt) -> DahaElt {
    let ui = u_index(datum);
    let di = delta_index(datum);
    let mut out = DahaElt::zero();
    for (g, p) in &a.terms {
        let mut kept = AffPoly::zero(p.nvars);
        for (m, c) in &p.terms {
            if m.0[ui] == 0 && m.0[di] == 0 {
                kept.add_term(m.clone(), c.clone());
            }
        }
        out.add_term(g.clone(), kept);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parahoric::ParahoricType;
    use crate::poly::u_index;
    use crate::rat::ratio;
    use crate::rootsys::{CartanType, FinCoweight, IsogenyFlavor};

    fn a1() -> RootDatum {
        RootDatum::new(CartanType::A, 1, IsogenyFlavor::SimplyConnected).unwrap()
    }

    fn alpha_poly(d: &RootDatum) -> AffPoly {
        AffPoly::from_aff_weight(d, &AffWeight::from_fin(d.simple_root(0).unwrap()))
    }

    #[test]
    fn straighten_constant_and_linear() {
        let d = a1();
        let n = nvars_for(&d);
        let s1 = extweyl::simple_reflection(&d, 1).unwrap();

        // p = 1: just the group element
        let got = straighten_simple(&d, 1, &AffPoly::one(n)).unwrap();
        assert_eq!(got, DahaElt::from_group(&d, s1.clone()));

        // p = alpha: s_1 * (-alpha) + 2u
        let got = straighten_simple(&d, 1, &alpha_poly(&d)).unwrap();
        let mut expected = DahaElt::zero();
        expected.add_term(s1.clone(), alpha_poly(&d).neg());
        expected.add_term(
            ExtWeylElt::identity(&d),
            AffPoly::var(n, u_index(&d)).scale(&rat(2)),
        );
        assert_eq!(got, expected);

        // p = alpha^2 commutes: s_1 * alpha^2 and no u term
        let sq = alpha_poly(&d).pow(2);
        let got = straighten_simple(&d, 1, &sq).unwrap();
        let mut expected = DahaElt::zero();
        expected.add_term(s1, sq);
        assert_eq!(got, expected);
    }

    #[test]
    fn divided_difference_values() {
        let d = a1();
        let a = alpha_poly(&d);
        let n = nvars_for(&d);
        assert!(divided_difference(&d, 1, &AffPoly::one(n)).is_zero());
        assert_eq!(divided_difference(&d, 1, &a), AffPoly::constant(n, rat(2)));
        assert!(divided_difference(&d, 1, &a.pow(2)).is_zero());
        // D_1(alpha^3) = 2 alpha^2
        assert_eq!(
            divided_difference(&d, 1, &a.pow(3)),
            a.pow(2).scale(&rat(2))
        );
    }

    #[test]
    fn relation_three_as_elements() {
        // s_1 alpha - (-alpha) s_1 = 2u
        let d = a1();
        let s1 = DahaElt::from_group(&d, extweyl::simple_reflection(&d, 1).unwrap());
        let alpha = DahaElt::from_poly(&d, alpha_poly(&d));
        let lhs = mul(&d, &s1, &alpha).sub(&mul(&d, &alpha.scale(&rat(-1)), &s1));
        assert_eq!(lhs, DahaElt::u(&d).scale(&rat(2)));
    }

    #[test]
    fn unit_and_involutions() {
        let d = a1();
        let one = DahaElt::one(&d);
        for i in 0..=1 {
            let s = DahaElt::from_group(&d, extweyl::simple_reflection(&d, i).unwrap());
            assert_eq!(mul(&d, &one, &s), s);
            assert_eq!(mul(&d, &s, &one), s);
            assert_eq!(mul(&d, &s, &s), one);
        }
    }

    #[test]
    fn u_and_delta_are_central() {
        let d = a1();
        let u = DahaElt::u(&d);
        let delta = DahaElt::from_aff_weight(&d, &AffWeight::delta(1));
        let t = ExtWeylElt::translation(&d, FinCoweight::from_ints(&[1])).unwrap();
        let mut x = DahaElt::from_group(
            &d,
            extweyl::mul(&d, &t, &extweyl::simple_reflection(&d, 1).unwrap()),
        );
        x = x.add(&DahaElt::from_poly(&d, alpha_poly(&d)));
        assert_eq!(mul(&d, &u, &x), mul(&d, &x, &u));
        assert_eq!(mul(&d, &delta, &x), mul(&d, &x, &delta));
    }

    #[test]
    fn omega_relation_adjoint() {
        let d = RootDatum::new(CartanType::A, 1, IsogenyFlavor::Adjoint).unwrap();
        let omegas = extweyl::omega_elements(&d);
        let omega = omegas.iter().find(|o| !o.is_identity()).unwrap();
        let xi = AffWeight {
            c_lambda: rat(1),
            fin: crate::rootsys::FinWeight(vec![ratio(3, 1)]),
            c_delta: rat(-2),
        };
        // omega * xi = (omega xi) * omega, with no u correction
        let lhs = mul(
            &d,
            &DahaElt::from_group(&d, omega.clone()),
            &DahaElt::from_aff_weight(&d, &xi),
        );
        let twisted = extweyl::act_on_weight(&d, omega, &xi);
        let rhs = mul(
            &d,
            &DahaElt::from_aff_weight(&d, &twisted),
            &DahaElt::from_group(&d, omega.clone()),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degrees() {
        let d = a1();
        let t = ExtWeylElt::translation(&d, FinCoweight::from_ints(&[2])).unwrap();
        assert_eq!(
            DahaElt::from_group(&d, t).degree(),
            DahaDegree::Homogeneous(0)
        );
        let n = nvars_for(&d);
        let xiu = AffPoly::var(n, 1).mul_var(u_index(&d));
        assert_eq!(
            DahaElt::from_poly(&d, xiu).degree(),
            DahaDegree::Homogeneous(4)
        );
        assert_eq!(DahaElt::zero().degree(), DahaDegree::NegInfinity);
        let mixed = DahaElt::one(&d).add(&DahaElt::u(&d));
        assert_eq!(mixed.degree(), DahaDegree::Inhomogeneous(2));
    }

    #[test]
    fn degree_additive_under_mul() {
        let d = a1();
        let x = DahaElt::from_poly(&d, alpha_poly(&d)); // degree 2
        let s0 = DahaElt::from_group(&d, extweyl::simple_reflection(&d, 0).unwrap());
        let y = mul(&d, &x, &mul(&d, &s0, &DahaElt::u(&d))); // 2 + 0 + 2
        assert_eq!(y.degree(), DahaDegree::Homogeneous(4));
    }

    #[test]
    fn parahoric_idempotent() {
        let d = a1();
        let p = ParahoricType::new(&d, [1].into_iter().collect()).unwrap();
        let e = idempotent(&d, &p).unwrap();
        // (1/2)(e + s_1)
        assert_eq!(e.terms.len(), 2);
        assert!(e
            .terms
            .values()
            .all(|p| { p.terms.values().all(|c| *c == ratio(1, 2)) }));
        assert_eq!(mul(&d, &e, &e), e);
        // e_P w e_P = e_P for w in W_P
        let s1 = DahaElt::from_group(&d, extweyl::simple_reflection(&d, 1).unwrap());
        assert_eq!(mul(&d, &mul(&d, &e, &s1), &e), e);
        // trivial parahoric gives the identity
        let iwahori = ParahoricType::new(&d, Default::default()).unwrap();
        assert_eq!(idempotent(&d, &iwahori).unwrap(), DahaElt::one(&d));
    }

    #[test]
    fn sandwich_properties() {
        let d = a1();
        let p = ParahoricType::new(&d, [1].into_iter().collect()).unwrap();
        let e = idempotent(&d, &p).unwrap();
        assert_eq!(sandwich(&d, &p, &DahaElt::one(&d)).unwrap(), e);
        // W_P-invariant polynomial commutes into the sandwich
        let inv_poly = DahaElt::from_poly(&d, alpha_poly(&d).pow(2));
        let sand = sandwich(&d, &p, &inv_poly).unwrap();
        assert_eq!(sand, mul(&d, &e, &inv_poly));
        // idempotency of sandwiching
        let x = DahaElt::from_group(&d, extweyl::simple_reflection(&d, 0).unwrap());
        let once = sandwich(&d, &p, &x).unwrap();
        assert_eq!(sandwich(&d, &p, &once).unwrap(), once);
    }

    #[test]
    fn specialization() {
        let d = a1();
        assert_eq!(specialize_degenerate(&d, &DahaElt::u(&d)), DahaElt::zero());
        let xi = DahaElt::from_poly(&d, alpha_poly(&d));
        let x = xi
            .add(&DahaElt::u(&d).scale(&rat(3)))
            .add(&DahaElt::from_aff_weight(&d, &AffWeight::delta(1)));
        assert_eq!(specialize_degenerate(&d, &x), xi);
        // in the quotient, s_1 alpha = (-alpha) s_1
        let s1 = DahaElt::from_group(&d, extweyl::simple_reflection(&d, 1).unwrap());
        let lhs = specialize_degenerate(&d, &mul(&d, &s1, &xi));
        let rhs = specialize_degenerate(&d, &mul(&d, &xi.scale(&rat(-1)), &s1));
        assert_eq!(lhs, rhs);
    }
}
