//! An operator model of the Hecke algebra on the polynomial ring: each
//! simple reflection acts by `p -> (s_i p) + u D_i(p)`, length-zero
//! elements act by twisting, lattice characters and `u` act by
//! multiplication.
//!
//! This realizes the defining relations by construction independent of
//! the normal-form engine, so it serves as the cross-checking oracle for
//! [`crate::daha`]: acting by a product must equal acting twice.

use crate::daha::{divided_difference, poly_act, DahaElt};
use crate::extweyl::{self, ExtWeylElt};
use crate::poly::{u_index, AffPoly};
use crate::rootsys::RootDatum;

/// `T_i(p) = (s_i p) + u D_i(p)`; an involution.
pub fn act_simple(datum: &RootDatum, i: usize, p: &AffPoly) -> AffPoly {
    let s_i =
        extweyl::simple_reflection(datum, i).unwrap_or_else(|e| panic!("operator index: {e}"));
    poly_act(datum, &s_i, p).add(&divided_difference(datum, i, p).mul_var(u_index(datum)))
}

/// Operator of a group element: fold its reduced word over [`act_simple`],
/// with the length-zero part acting by twisting.
pub fn act_group(datum: &RootDatum, a: &ExtWeylElt, p: &AffPoly) -> AffPoly {
    let cox = extweyl::reduced_word(datum, a);
    let mut q = if cox.omega.is_identity() {
        p.clone()
    } else {
        poly_act(datum, &cox.omega, p)
    };
    for &i in cox.word.iter().rev() {
        q = act_simple(datum, i, &q);
    }
    q
}

/// Action of a normal-form element: polynomial parts multiply first,
/// then the group part operates.
pub fn act(datum: &RootDatum, a: &DahaElt, p: &AffPoly) -> AffPoly {
    let nvars = crate::poly::nvars_for(datum);
    let mut out = AffPoly::zero(nvars);
    for (g, q) in &a.terms {
        out = out.add(&act_group(datum, g, &q.mul(p)));
    }
    out
}
