//! Bi-invariant function spaces on the extended affine Weyl group and
//! their convolution product
//! `(f1 * f2)(w) = sum over cosets vW_Q of f1(v) f2(v^{-1} w)`,
//! together with the averaged-orbit embedding of the invariant group
//! algebra.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::extweyl::{self, ExtWeylElt};
use crate::parahoric::ParahoricType;
use crate::rat::{rat, Rat};
use crate::rootsys::{FinCoweight, RootDatum};

/// A finitely supported function on the group, left invariant under
/// `W_P` and right invariant under `W_Q`, stored on canonical
/// minimal-length double-coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DCosetFn {
    pub p: ParahoricType,
    pub q: ParahoricType,
    pub support: BTreeMap<ExtWeylElt, Rat>,
}

impl DCosetFn {
    pub fn zero(p: ParahoricType, q: ParahoricType) -> Self {
        Self {
            p,
            q,
            support: BTreeMap::new(),
        }
    }

    /// The characteristic function of the double coset of `w`.
    pub fn indicator(
        datum: &RootDatum,
        p: ParahoricType,
        q: ParahoricType,
        w: &ExtWeylElt,
    ) -> Self {
        let rep = extweyl::min_double_coset_rep(datum, &p.indices(), &q.indices(), w);
        let mut support = BTreeMap::new();
        support.insert(rep, rat(1));
        Self { p, q, support }
    }

    /// The identity of the `(P, P)` convolution algebra.
    pub fn unit(datum: &RootDatum, p: ParahoricType) -> Self {
        let e = ExtWeylElt::identity(datum);
        Self::indicator(datum, p.clone(), p, &e)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add_at(&mut self, datum: &RootDatum, w: &ExtWeylElt, c: Rat) {
        let rep = extweyl::min_double_coset_rep(datum, &self.p.indices(), &self.q.indices(), w);
        let entry = self.support.entry(rep).or_insert_with(|| rat(0));
        *entry += c;
        if entry.is_zero() {
            let rep = extweyl::min_double_coset_rep(datum, &self.p.indices(), &self.q.indices(), w);
            self.support.remove(&rep);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.p.clone(), self.q.clone());
        }
        Self {
            p: self.p.clone(),
            q: self.q.clone(),
            support: self
                .support
                .iter()
                .map(|(w, x)| (w.clone(), x * c))
                .collect(),
        }
    }

    pub fn add(&self, datum: &RootDatum, other: &Self) -> Result<Self> {
        if self.p != other.p || self.q != other.q {
            return Err(Error::DatumMismatch(
                "incompatible invariance types in sum".into(),
            ));
        }
        let mut out = self.clone();
        for (w, c) in &other.support {
            out.add_at(datum, w, c.clone());
        }
        Ok(out)
    }

    /// Expands to the honest function on group elements.
    pub fn expand(&self, datum: &RootDatum) -> Result<BTreeMap<ExtWeylElt, Rat>> {
        let wp = self.p.levi_weyl_group(datum)?;
        let wq = self.q.levi_weyl_group(datum)?;
        let mut full = BTreeMap::new();
        for (rep, c) in &self.support {
            for a in &wp {
                let left = extweyl::mul(datum, a, rep);
                for b in &wq {
                    let elt = extweyl::mul(datum, &left, b);
                    if let Some(prev) = full.insert(elt, c.clone()) {
                        if prev != *c {
                            return Err(Error::StructuralDefect(
                                "double cosets of distinct representatives intersect".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(full)
    }

    /// Value at an arbitrary group element.
    pub fn value_at(&self, datum: &RootDatum, w: &ExtWeylElt) -> Rat {
        let rep = extweyl::min_double_coset_rep(datum, &self.p.indices(), &self.q.indices(), w);
        self.support.get(&rep).cloned().unwrap_or_else(|| rat(0))
    }

    /// Maximal length over the full support.
    pub fn max_support_length(&self, datum: &RootDatum) -> Result<u64> {
        Ok(self
            .expand(datum)?
            .keys()
            .map(|w| extweyl::length(datum, w))
            .max()
            .unwrap_or(0))
    }
}

/// Convolution `f1 *_Q f2`, summing over the left `W_Q`-cosets that meet
/// the support of `f1`; the result is compressed back onto canonical
/// representatives and checked to be genuinely bi-invariant.
pub fn convolve(datum: &RootDatum, f1: &DCosetFn, f2: &DCosetFn) -> Result<DCosetFn> {
    if f1.q != f2.p {
        return Err(Error::DatumMismatch(
            "middle parahoric types do not match in convolution".into(),
        ));
    }
    let full1 = f1.expand(datum)?;
    let q_indices = f1.q.indices();
    // one representative per left coset v W_Q meeting supp(f1)
    let mut coset_values: BTreeMap<ExtWeylElt, Rat> = BTreeMap::new();
    for (elt, c) in &full1 {
        let rep = extweyl::min_left_coset_rep(datum, &q_indices, elt);
        if let Some(prev) = coset_values.insert(rep, c.clone()) {
            if prev != *c {
                return Err(Error::StructuralDefect(
                    "function not constant on left cosets".into(),
                ));
            }
        }
    }
    let full2 = f2.expand(datum)?;
    let mut result_full: BTreeMap<ExtWeylElt, Rat> = BTreeMap::new();
    for (v, c1) in &coset_values {
        for (b, c2) in &full2 {
            let w = extweyl::mul(datum, v, b);
            let entry = result_full.entry(w).or_insert_with(|| rat(0));
            *entry += c1 * c2;
        }
    }
    result_full.retain(|_, c| !c.is_zero());

    // compress; bi-invariance of the accumulated function is an identity
    // of the convolution algebra, so verify it rather than assume it
    let mut out = DCosetFn::zero(f1.p.clone(), f2.q.clone());
    let p_indices = f1.p.indices();
    let r_indices = f2.q.indices();
    for (w, c) in &result_full {
        let rep = extweyl::min_double_coset_rep(datum, &p_indices, &r_indices, w);
        if *w == rep {
            out.support.insert(rep, c.clone());
        }
    }
    for (w, c) in &result_full {
        let rep = extweyl::min_double_coset_rep(datum, &p_indices, &r_indices, w);
        if out.support.get(&rep) != Some(c) {
            return Err(Error::StructuralDefect(
                "convolution result is not bi-invariant".into(),
            ));
        }
    }
    Ok(out)
}

/// `Av(lambda)`: the formal orbit sum of `lambda` under the Levi Weyl
/// group acting through its finite linear parts; returned as the orbit.
pub fn levi_orbit(datum: &RootDatum, p: &ParahoricType, lam: &FinCoweight) -> Vec<FinCoweight> {
    let mut gens = Vec::new();
    let mut has_zero = false;
    for &i in p.subset() {
        if i == 0 {
            has_zero = true;
        } else {
            gens.push(i - 1);
        }
    }
    if !has_zero {
        return datum.orbit_under(lam, &gens);
    }
    // include the reflection in the highest root as a linear generator
    let s_theta = datum.theta_reflection();
    let mut seen: std::collections::BTreeSet<FinCoweight> = [lam.clone()].into();
    let mut queue: Vec<FinCoweight> = vec![lam.clone()];
    while let Some(v) = queue.pop() {
        let mut images: Vec<FinCoweight> = gens
            .iter()
            .map(|&j| {
                let w = datum.simple_reflection_fin(j).unwrap();
                datum.weyl_act_coweight(&w, &v)
            })
            .collect();
        images.push(datum.weyl_act_coweight(&s_theta, &v));
        for img in images {
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    seen.into_iter().collect()
}

/// Product of two orbit sums in the invariant group algebra, decomposed
/// back into orbit sums: returns `orbit-representative -> multiplicity`.
pub fn orbit_sum_product(
    datum: &RootDatum,
    p: &ParahoricType,
    lam: &FinCoweight,
    mu: &FinCoweight,
) -> BTreeMap<FinCoweight, Rat> {
    let o1 = levi_orbit(datum, p, lam);
    let o2 = levi_orbit(datum, p, mu);
    let mut raw: BTreeMap<FinCoweight, Rat> = BTreeMap::new();
    for a in &o1 {
        for b in &o2 {
            *raw.entry(a.add(b)).or_insert_with(|| rat(0)) += rat(1);
        }
    }
    // group the translations by orbit; multiplicities are constant on
    // each orbit because the product is invariant
    let mut out: BTreeMap<FinCoweight, Rat> = BTreeMap::new();
    while let Some((nu, c)) = raw.pop_first() {
        let orbit = levi_orbit(datum, p, &nu);
        for other in orbit.iter().skip_while(|v| **v == nu) {
            if let Some(c2) = raw.remove(other) {
                assert_eq!(c2, c, "orbit sum product must be invariant");
            }
        }
        out.insert(orbit[0].clone(), c);
    }
    out
}

/// The image of an orbit-sum product under `Av(nu) -> 1_{W_P nu W_P}`.
pub fn orbit_product_as_dcoset(
    datum: &RootDatum,
    p: &ParahoricType,
    product: &BTreeMap<FinCoweight, Rat>,
) -> Result<DCosetFn> {
    let mut out = DCosetFn::zero(p.clone(), p.clone());
    for (nu, c) in product {
        let t = ExtWeylElt::translation(datum, nu.clone())?;
        out.add_at(datum, &t, c.clone());
    }
    Ok(out)
}

/// The averaged-orbit embedding: sends `lambda` to the indicator of its
/// translation double coset, together with the normalization constant
/// fitted so that the scaled map is multiplicative on the squared
/// instance. A non-proportional defect is reported as structural.
pub fn av_embed(
    datum: &RootDatum,
    p: &ParahoricType,
    lam: &FinCoweight,
) -> Result<(DCosetFn, Rat)> {
    let t = ExtWeylElt::translation(datum, lam.clone())?;
    let ind = DCosetFn::indicator(datum, p.clone(), p.clone(), &t);
    let conv_sq = convolve(datum, &ind, &ind)?;
    let image_sq = orbit_product_as_dcoset(datum, p, &orbit_sum_product(datum, p, lam, lam))?;
    let c = fit_normalization(&conv_sq, &image_sq)?;
    Ok((ind, c))
}

/// Finds `c` with `c * lhs == rhs` exactly, erroring when the two are
/// not proportional.
pub fn fit_normalization(lhs: &DCosetFn, rhs: &DCosetFn) -> Result<Rat> {
    if lhs.support.is_empty() && rhs.support.is_empty() {
        return Ok(rat(1));
    }
    let keys: std::collections::BTreeSet<_> =
        lhs.support.keys().chain(rhs.support.keys()).collect();
    let mut c: Option<Rat> = None;
    for k in keys {
        let l = lhs.support.get(k).cloned().unwrap_or_else(|| rat(0));
        let r = rhs.support.get(k).cloned().unwrap_or_else(|| rat(0));
        if l.is_zero() != r.is_zero() {
            return Err(Error::StructuralDefect(
                "supports differ; no scalar normalization exists".into(),
            ));
        }
        if l.is_zero() {
            continue;
        }
        let ratio = r / l;
        match &c {
            None => c = Some(ratio),
            Some(prev) if *prev != ratio => {
                return Err(Error::StructuralDefect(
                    "coefficient ratios disagree; no scalar normalization exists".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(c.unwrap_or_else(|| rat(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanType, IsogenyFlavor};

    fn a1() -> RootDatum {
        RootDatum::new(CartanType::A, 1, IsogenyFlavor::SimplyConnected).unwrap()
    }

    fn pt(d: &RootDatum, s: &[usize]) -> ParahoricType {
        ParahoricType::new(d, s.iter().copied().collect()).unwrap()
    }

    #[test]
    fn iwahori_convolution_is_group_algebra() {
        let d = a1();
        let iw = pt(&d, &[]);
        // 1_lambda * 1_mu = 1_{lambda+mu}
        let t1 = ExtWeylElt::translation(&d, FinCoweight::from_ints(&[1])).unwrap();
        let t2 = ExtWeylElt::translation(&d, FinCoweight::from_ints(&[-2])).unwrap();
        let f1 = DCosetFn::indicator(&d, iw.clone(), iw.clone(), &t1);
        let f2 = DCosetFn::indicator(&d, iw.clone(), iw.clone(), &t2);
        let conv = convolve(&d, &f1, &f2).unwrap();
        let expected = DCosetFn::indicator(
            &d,
            iw.clone(),
            iw.clone(),
            &ExtWeylElt::translation(&d, FinCoweight::from_ints(&[-1])).unwrap(),
        );
        assert_eq!(conv, expected);
        // f * 0 = 0
        let z = DCosetFn::zero(iw.clone(), iw.clone());
        assert!(convolve(&d, &f1, &z).unwrap().is_zero());
    }

    #[test]
    fn unit_laws() {
        let d = a1();
        let p = pt(&d, &[1]);
        let unit = DCosetFn::unit(&d, p.clone());
        assert_eq!(convolve(&d, &unit, &unit).unwrap(), unit);
        let s0 = extweyl::simple_reflection(&d, 0).unwrap();
        let f = DCosetFn::indicator(&d, p.clone(), p.clone(), &s0);
        assert_eq!(convolve(&d, &unit, &f).unwrap(), f);
        assert_eq!(convolve(&d, &f, &unit).unwrap(), f);
    }

    #[test]
    fn indicator_is_constant_on_cosets() {
        let d = a1();
        let p = pt(&d, &[1]);
        let s0 = extweyl::simple_reflection(&d, 0).unwrap();
        let f = DCosetFn::indicator(&d, p.clone(), p.clone(), &s0);
        assert_eq!(f.support.len(), 1);
        // indicator(w) = indicator(p w q)
        let s1 = extweyl::simple_reflection(&d, 1).unwrap();
        let moved = extweyl::mul(&d, &s1, &extweyl::mul(&d, &s0, &s1));
        let g = DCosetFn::indicator(&d, p.clone(), p.clone(), &moved);
        assert_eq!(f, g);
        assert_eq!(f.value_at(&d, &moved), rat(1));
        assert_eq!(f.value_at(&d, &ExtWeylElt::identity(&d)), rat(0));
    }

    #[test]
    fn expansion_sizes() {
        let d = a1();
        let p = pt(&d, &[1]);
        let s0 = extweyl::simple_reflection(&d, 0).unwrap();
        let f = DCosetFn::indicator(&d, p.clone(), p.clone(), &s0);
        // W_P s_0 W_P has four elements when W_P = {e, s_1}
        assert_eq!(f.expand(&d).unwrap().len(), 4);
    }

    #[test]
    fn mismatched_middle_types_rejected() {
        let d = a1();
        let p = pt(&d, &[1]);
        let q = pt(&d, &[0]);
        let f1 = DCosetFn::unit(&d, p.clone());
        let f2 = DCosetFn::unit(&d, q);
        assert!(convolve(&d, &f1, &f2).is_err());
    }

    #[test]
    fn convolution_associativity_spot_check() {
        let d = a1();
        let p = pt(&d, &[1]);
        let q = pt(&d, &[0]);
        let iw = pt(&d, &[]);
        let s0 = extweyl::simple_reflection(&d, 0).unwrap();
        let s1 = extweyl::simple_reflection(&d, 1).unwrap();
        let f1 = DCosetFn::indicator(&d, p.clone(), q.clone(), &s1);
        let f2 = DCosetFn::indicator(&d, q.clone(), iw.clone(), &s0);
        let f3 = DCosetFn::indicator(&d, iw.clone(), p.clone(), &extweyl::mul(&d, &s1, &s0));
        let left = convolve(&d, &convolve(&d, &f1, &f2).unwrap(), &f3).unwrap();
        let right = convolve(&d, &f1, &convolve(&d, &f2, &f3).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn orbit_sums_under_levi_groups() {
        let d = a1();
        let p = pt(&d, &[1]);
        let lam = FinCoweight::from_ints(&[1]);
        let orbit = levi_orbit(&d, &p, &lam);
        assert_eq!(orbit.len(), 2);
        // node 0 acts through the reflection in the highest root
        let p0 = pt(&d, &[0]);
        let orbit = levi_orbit(&d, &p0, &lam);
        assert_eq!(orbit.len(), 2);
        let iw = pt(&d, &[]);
        assert_eq!(levi_orbit(&d, &iw, &lam).len(), 1);
    }

    #[test]
    fn av_embedding_normalization_is_one_in_a1() {
        let d = a1();
        let p = pt(&d, &[1]);
        // lambda = 0: the unit, constant 1
        let (f, c) = av_embed(&d, &p, &FinCoweight::zero(1)).unwrap();
        assert_eq!(f, DCosetFn::unit(&d, p.clone()));
        assert_eq!(c, rat(1));
        // lambda = coroot
        let (f, c) = av_embed(&d, &p, &FinCoweight::from_ints(&[1])).unwrap();
        assert_eq!(c, rat(1));
        assert_eq!(f.support.len(), 1);
        // Iwahori case: reduces to the lattice group algebra
        let iw = pt(&d, &[]);
        let (_, c) = av_embed(&d, &iw, &FinCoweight::from_ints(&[1])).unwrap();
        assert_eq!(c, rat(1));
    }

    #[test]
    fn support_length_bound() {
        let d = a1();
        let p = pt(&d, &[1]);
        let s0 = extweyl::simple_reflection(&d, 0).unwrap();
        let f = DCosetFn::indicator(&d, p.clone(), p.clone(), &s0);
        let conv = convolve(&d, &f, &f).unwrap();
        let bound = f.max_support_length(&d).unwrap() * 2;
        assert!(conv.max_support_length(&d).unwrap() <= bound);
    }
}
