//! The extended affine Weyl group `X_*(T) x| W`, its action on the
//! affine (co)weight lattices, the Coxeter structure of the affine Weyl
//! group inside it, lengths, reduced words, the length-zero subgroup,
//! and parahoric double cosets.
//!
//! An element is a pair `t^lambda w` with `lambda` in the cocharacter
//! lattice and `w` a finite Weyl element; the group law is
//! `(l1, w1)(l2, w2) = (l1 + w1 l2, w1 w2)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use crate::afflattice::{AffCoweight, AffWeight};
use crate::error::{Error, Result};
use crate::rat::{frac, is_integer, rat, rat_to_i64, Rat};
use crate::rootsys::{solve_rational, FinCoweight, IsogenyFlavor, RootDatum, WeylElt};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtWeylElt {
    /// Translation part, in simple-coroot coordinates.
    pub lambda: FinCoweight,
    /// Finite Weyl part, as a permutation of the root list.
    pub w: WeylElt,
}

impl ExtWeylElt {
    /// Validating constructor: `lambda` must lie in the datum's
    /// cocharacter lattice and the permutation must fit the root list.
    pub fn new(datum: &RootDatum, lambda: FinCoweight, w: WeylElt) -> Result<Self> {
        if lambda.rank() != datum.rank() || w.0.len() != datum.n_roots() {
            return Err(Error::DatumMismatch(format!(
                "element of rank {} / {} roots against datum {}",
                lambda.rank(),
                w.0.len(),
                datum.descriptor()
            )));
        }
        if !datum.coweight_is_integral(&lambda) {
            return Err(Error::NotIntegral(format!(
                "translation part is not in X_*(T) for {}",
                datum.descriptor()
            )));
        }
        Ok(Self { lambda, w })
    }

    pub fn identity(datum: &RootDatum) -> Self {
        Self {
            lambda: FinCoweight::zero(datum.rank()),
            w: datum.identity_weyl(),
        }
    }

    pub fn translation(datum: &RootDatum, lambda: FinCoweight) -> Result<Self> {
        Self::new(datum, lambda, datum.identity_weyl())
    }

    pub fn from_weyl(datum: &RootDatum, w: WeylElt) -> Self {
        Self {
            lambda: FinCoweight::zero(datum.rank()),
            w,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.lambda.is_zero() && self.w.is_identity()
    }
}

pub fn mul(datum: &RootDatum, a: &ExtWeylElt, b: &ExtWeylElt) -> ExtWeylElt {
    ExtWeylElt {
        lambda: a.lambda.add(&datum.weyl_act_coweight(&a.w, &b.lambda)),
        w: a.w.compose(&b.w),
    }
}

pub fn inv(datum: &RootDatum, a: &ExtWeylElt) -> ExtWeylElt {
    let winv = a.w.inverse();
    ExtWeylElt {
        lambda: datum.weyl_act_coweight(&winv, &a.lambda).neg(),
        w: winv,
    }
}

/// Action on the affine weight lattice: the finite Weyl part acts on the
/// finite block fixing `L_can` and `delta`, and the translation part acts
/// by the Kac-Moody formula
/// `t^l xi = xi - <xi,K_can> l* + (<xi,l> - (l|l)/2 <xi,K_can>) delta`.
pub fn act_on_weight(datum: &RootDatum, a: &ExtWeylElt, xi: &AffWeight) -> AffWeight {
    let fin_w = datum.weyl_act_weight(&a.w, &xi.fin);
    let lam = &a.lambda;
    let half_norm = datum.killing_form(lam, lam) / rat(2);
    let c_delta = &xi.c_delta + datum.pairing(&fin_w, lam) - half_norm * &xi.c_lambda;
    let fin = fin_w.sub(&datum.star(lam).scale(&xi.c_lambda));
    AffWeight {
        c_lambda: xi.c_lambda.clone(),
        fin,
        c_delta,
    }
}

/// Action on the affine coweight lattice:
/// `t^l eta = eta - <delta,eta> l + ((eta|l) - (l|l)/2 <delta,eta>) K_can`.
pub fn act_on_coweight(datum: &RootDatum, a: &ExtWeylElt, eta: &AffCoweight) -> AffCoweight {
    let fin_w = datum.weyl_act_coweight(&a.w, &eta.fin);
    let lam = &a.lambda;
    let half_norm = datum.killing_form(lam, lam) / rat(2);
    let c_k = &eta.c_k + datum.killing_form(&fin_w, lam) - half_norm * &eta.c_d;
    let fin = fin_w.sub(&lam.scale(&eta.c_d));
    AffCoweight {
        c_k,
        fin,
        c_d: eta.c_d.clone(),
    }
}

/// A spanning set of the affine weight lattice used for calibration and
/// linear-action bookkeeping: `L_can`, the simple roots, `delta`.
fn weight_basis(datum: &RootDatum) -> Vec<AffWeight> {
    let n = datum.rank();
    let mut basis = vec![AffWeight::lambda_can(n)];
    for i in 0..n {
        basis.push(AffWeight::from_fin(datum.simple_root(i).unwrap()));
    }
    basis.push(AffWeight::delta(n));
    basis
}

/// Calibrates the sign in `s_0 = t^{eps theta^vee} s_theta` by testing
/// the reflection formula `s_0 xi = xi - <xi, alpha_0^vee> alpha_0` on a
/// spanning set. Exactly one sign passes; anything else aborts.
fn calibrate_s0_sign(datum: &RootDatum) -> i64 {
    let alpha0 = crate::afflattice::affine_simple_root(datum, 0).unwrap();
    let alpha0v = crate::afflattice::affine_simple_coroot(datum, 0).unwrap();
    let (_, theta_v) = datum.highest_root();
    let s_theta = datum.theta_reflection();
    let mut passing = Vec::new();
    for eps in [1i64, -1] {
        let cand = ExtWeylElt {
            lambda: theta_v.scale(&rat(eps)),
            w: s_theta.clone(),
        };
        let ok = weight_basis(datum).iter().all(|xi| {
            let lhs = act_on_weight(datum, &cand, xi);
            let c = crate::afflattice::pair(datum, xi, &alpha0v).unwrap();
            let rhs = xi.sub(&alpha0.scale(&c));
            lhs == rhs
        });
        if ok {
            passing.push(eps);
        }
    }
    match passing.as_slice() {
        [eps] => *eps,
        _ => panic!(
            "s_0 calibration failed for {}: {} signs satisfy the reflection formula",
            datum.descriptor(),
            passing.len()
        ),
    }
}

/// The calibrated sign `eps` with `s_0 = t^{eps theta^vee} s_theta`.
pub fn s0_sign(datum: &RootDatum) -> i64 {
    *datum
        .s0_sign_cell()
        .get_or_init(|| calibrate_s0_sign(datum))
}

/// Affine simple reflections `s_0, ..., s_n` as group elements.
pub fn simple_reflection(datum: &RootDatum, i: usize) -> Result<ExtWeylElt> {
    let n = datum.rank();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if i == 0 {
        let (_, theta_v) = datum.highest_root();
        Ok(ExtWeylElt {
            lambda: theta_v.scale(&rat(s0_sign(datum))),
            w: datum.theta_reflection(),
        })
    } else {
        Ok(ExtWeylElt::from_weyl(
            datum,
            datum.simple_reflection_fin(i - 1)?,
        ))
    }
}

/// Iwahori-Matsumoto length: summing `|<wa, lambda>|` over positive
/// roots `a` with `wa` positive and `|<wa, lambda> - 1|` over those with
/// `wa` negative.
pub fn length(datum: &RootDatum, a: &ExtWeylElt) -> u64 {
    let mut total: u64 = 0;
    for k in 0..datum.n_positive() {
        let img = a.w.apply(k);
        let m = datum.pair_root_coweight(img, &a.lambda);
        debug_assert!(
            is_integer(&m),
            "pairing of a root with a lattice element is integral"
        );
        let m = rat_to_i64(&m).expect("length pairing fits i64");
        let positive = img < datum.n_positive();
        total += if positive {
            m.unsigned_abs()
        } else {
            (m - 1).unsigned_abs()
        };
    }
    total
}

/// An affine real root `beta + k delta`, tracked as a finite root index
/// plus the delta coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffRoot {
    pub root_idx: usize,
    pub level: i64,
}

impl AffRoot {
    pub fn simple(datum: &RootDatum, i: usize) -> Self {
        if i == 0 {
            AffRoot {
                root_idx: datum.negation_index(datum.theta_index()),
                level: 1,
            }
        } else {
            AffRoot {
                root_idx: datum.simple_root_index(i - 1),
                level: 0,
            }
        }
    }

    pub fn is_positive(&self, datum: &RootDatum) -> bool {
        self.level > 0 || (self.level == 0 && self.root_idx < datum.n_positive())
    }
}

/// `t^lambda w (beta + k delta) = w(beta) + (k + <w(beta), lambda>) delta`.
pub fn act_on_aff_root(datum: &RootDatum, a: &ExtWeylElt, r: AffRoot) -> AffRoot {
    let img = a.w.apply(r.root_idx);
    let m = datum.pair_root_coweight(img, &a.lambda);
    let m = rat_to_i64(&m).expect("integral pairing");
    AffRoot {
        root_idx: img,
        level: r.level + m,
    }
}

/// True when left multiplication by `s_i` shortens `a`, i.e. when
/// `a^{-1}(alpha_i)` is a negative affine root.
pub fn has_left_descent(datum: &RootDatum, a_inv: &ExtWeylElt, i: usize) -> bool {
    !act_on_aff_root(datum, a_inv, AffRoot::simple(datum, i)).is_positive(datum)
}

/// True when `a s_i` is shorter, i.e. `a(alpha_i)` is negative.
pub fn has_right_descent(datum: &RootDatum, a: &ExtWeylElt, i: usize) -> bool {
    !act_on_aff_root(datum, a, AffRoot::simple(datum, i)).is_positive(datum)
}

/// Reduced expression `a = s_{i_1} ... s_{i_k} omega` with the
/// lexicographically smallest word under the index order `0 < 1 < ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxOmegaWord {
    pub word: Vec<usize>,
    pub omega: ExtWeylElt,
}

pub fn reduced_word(datum: &RootDatum, a: &ExtWeylElt) -> CoxOmegaWord {
    let n = datum.rank();
    let mut word = Vec::new();
    let mut rest = a.clone();
    let mut rest_inv = inv(datum, a);
    loop {
        let descent = (0..=n).find(|&i| has_left_descent(datum, &rest_inv, i));
        match descent {
            Some(i) => {
                word.push(i);
                let s = simple_reflection(datum, i).unwrap();
                rest = mul(datum, &s, &rest);
                rest_inv = mul(datum, &rest_inv, &s);
            }
            None => break,
        }
    }
    debug_assert_eq!(length(datum, &rest), 0);
    CoxOmegaWord { word, omega: rest }
}

pub fn evaluate_word(datum: &RootDatum, word: &CoxOmegaWord) -> ExtWeylElt {
    let mut acc = ExtWeylElt::identity(datum);
    for &i in &word.word {
        acc = mul(datum, &acc, &simple_reflection(datum, i).unwrap());
    }
    mul(datum, &acc, &word.omega)
}

/// Splits `a = x omega` with `x` in the affine Weyl group and `omega`
/// the unique length-zero element of the coset.
pub fn omega_decompose(datum: &RootDatum, a: &ExtWeylElt) -> (ExtWeylElt, ExtWeylElt) {
    let w = reduced_word(datum, a);
    let x = mul(datum, a, &inv(datum, &w.omega));
    (x, w.omega)
}

/// All length-zero elements. For a simply-connected datum this is just
/// the identity; otherwise one element per coset of the coroot lattice
/// inside `X_*(T)`, found by stripping descents from the translation.
pub fn omega_elements(datum: &RootDatum) -> Vec<ExtWeylElt> {
    let n = datum.rank();
    let mut out = vec![ExtWeylElt::identity(datum)];
    if datum.flavor() == IsogenyFlavor::SimplyConnected {
        return out;
    }
    // Coset representatives of X_*(T) / Z Phi^vee: close the fractional
    // parts of the fundamental coweights under addition mod 1.
    let cartan = datum.cartan_matrix_entries();
    let mut gens: Vec<Vec<Rat>> = Vec::new();
    for j in 0..n {
        let rhs: Vec<Rat> = (0..n).map(|i| rat(i64::from(i == j))).collect();
        let col = solve_rational(cartan, &rhs).expect("Cartan matrix invertible");
        gens.push(col.iter().map(frac).collect());
    }
    let zero: Vec<Rat> = vec![rat(0); n];
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let nxt: Vec<Rat> = v.iter().zip(g).map(|(a, b)| frac(&(a + b))).collect();
            if seen.insert(nxt.clone()) {
                queue.push_back(nxt);
            }
        }
    }
    for rep in seen {
        if rep.iter().all(Rat::is_zero) {
            continue;
        }
        let t = ExtWeylElt::new(datum, FinCoweight(rep), datum.identity_weyl())
            .expect("coset representative is integral");
        let (_, omega) = omega_decompose(datum, &t);
        debug_assert_eq!(length(datum, &omega), 0);
        out.push(omega);
    }
    out.sort();
    // keep the identity first for stable omega ids
    out.sort_by_key(|o| (!o.is_identity(), o.clone()));
    out.dedup();
    out
}

/// Conjugating a simple reflection by a length-zero element permutes the
/// affine simple reflections; returns the image index.
pub fn conj_simple_by_omega(datum: &RootDatum, omega: &ExtWeylElt, i: usize) -> Result<usize> {
    let n = datum.rank();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if length(datum, omega) != 0 {
        return Err(Error::DatumMismatch(
            "conjugator must have length zero".into(),
        ));
    }
    let x = mul(
        datum,
        &mul(datum, omega, &simple_reflection(datum, i)?),
        &inv(datum, omega),
    );
    (0..=n)
        .find(|&j| x == simple_reflection(datum, j).unwrap())
        .ok_or_else(|| {
            Error::DatumMismatch("conjugate of a simple reflection is not simple".into())
        })
}

/// All elements of length at most `max_len`: the affine Weyl ball of
/// that radius times the length-zero subgroup.
pub fn ball(datum: &RootDatum, max_len: u64) -> Vec<ExtWeylElt> {
    let n = datum.rank();
    let mut waff: Vec<ExtWeylElt> = vec![ExtWeylElt::identity(datum)];
    let mut seen: BTreeSet<ExtWeylElt> = waff.iter().cloned().collect();
    let mut frontier = waff.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for i in 0..=n {
                let y = mul(datum, x, &simple_reflection(datum, i).unwrap());
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        waff.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for omega in omega_elements(datum) {
        for x in &waff {
            out.push(mul(datum, x, &omega));
        }
    }
    out.sort();
    out
}

/// Canonical minimal-length representative of `W_P a W_Q`, obtained by
/// stripping descents on both sides (smallest index first).
pub fn min_double_coset_rep(
    datum: &RootDatum,
    p: &[usize],
    q: &[usize],
    a: &ExtWeylElt,
) -> ExtWeylElt {
    let mut x = a.clone();
    let mut x_inv = inv(datum, a);
    'outer: loop {
        for &i in p {
            if has_left_descent(datum, &x_inv, i) {
                let s = simple_reflection(datum, i).unwrap();
                x = mul(datum, &s, &x);
                x_inv = mul(datum, &x_inv, &s);
                continue 'outer;
            }
        }
        for &j in q {
            if has_right_descent(datum, &x, j) {
                let s = simple_reflection(datum, j).unwrap();
                x = mul(datum, &x, &s);
                x_inv = mul(datum, &s, &x_inv);
                continue 'outer;
            }
        }
        return x;
    }
}

/// Canonical minimal-length representative of the left coset `a W_Q`.
pub fn min_left_coset_rep(datum: &RootDatum, q: &[usize], a: &ExtWeylElt) -> ExtWeylElt {
    min_double_coset_rep(datum, &[], q, a)
}

/// Minimal-length representatives of every `(W_P, W_Q)` double coset
/// meeting the ball of radius `max_len`, each exactly once, sorted.
pub fn double_cosets(datum: &RootDatum, p: &[usize], q: &[usize], max_len: u64) -> Vec<ExtWeylElt> {
    let mut reps: BTreeSet<ExtWeylElt> = BTreeSet::new();
    for a in ball(datum, max_len) {
        reps.insert(min_double_coset_rep(datum, p, q, &a));
    }
    reps.into_iter().collect()
}

/// Bruhat order via the lifting property, within a common coset of the
/// affine Weyl group; elements with different length-zero parts are
/// incomparable by convention.
pub fn bruhat_leq(datum: &RootDatum, a: &ExtWeylElt, b: &ExtWeylElt) -> bool {
    let (x, oa) = omega_decompose(datum, a);
    let (y, ob) = omega_decompose(datum, b);
    if oa != ob {
        return false;
    }
    bruhat_leq_waff(datum, &x, &y)
}

fn bruhat_leq_waff(datum: &RootDatum, a: &ExtWeylElt, b: &ExtWeylElt) -> bool {
    let mut a = a.clone();
    let mut b = b.clone();
    loop {
        if b.is_identity() {
            return a.is_identity();
        }
        let lb = length(datum, &b);
        let la = length(datum, &a);
        if la > lb {
            return false;
        }
        let n = datum.rank();
        let b_inv = inv(datum, &b);
        let i = (0..=n)
            .find(|&i| has_left_descent(datum, &b_inv, i))
            .expect("nonidentity affine Weyl element has a descent");
        let s = simple_reflection(datum, i).unwrap();
        let a_inv = inv(datum, &a);
        if has_left_descent(datum, &a_inv, i) {
            a = mul(datum, &s, &a);
        }
        b = mul(datum, &s, &b);
    }
}

/// Enumerates the subgroup generated by the given affine simple
/// reflections; errors out if it exceeds `cap` elements.
pub fn generated_subgroup(
    datum: &RootDatum,
    gens: &[usize],
    cap: usize,
) -> Result<Vec<ExtWeylElt>> {
    let mut elems: BTreeSet<ExtWeylElt> = BTreeSet::new();
    elems.insert(ExtWeylElt::identity(datum));
    let mut queue: VecDeque<ExtWeylElt> = elems.iter().cloned().collect();
    let gen_elts: Vec<ExtWeylElt> = gens
        .iter()
        .map(|&i| simple_reflection(datum, i))
        .collect::<Result<_>>()?;
    while let Some(x) = queue.pop_front() {
        for g in &gen_elts {
            let y = mul(datum, &x, g);
            if elems.insert(y.clone()) {
                if elems.len() > cap {
                    return Err(Error::InfiniteGroup(format!(
                        "subgroup generated by {gens:?} exceeded {cap} elements"
                    )));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(elems.into_iter().collect())
}

/// Group elements sorted by `(length, element)`, used for deterministic
/// report output.
pub fn sort_key(datum: &RootDatum, a: &ExtWeylElt) -> (u64, ExtWeylElt) {
    (length(datum, a), a.clone())
}

/// BFS distance in the Cayley graph of the affine Weyl group together
/// with the length-zero subgroup; the independent oracle for `length`.
pub fn bfs_length_table(datum: &RootDatum, max_len: u64) -> HashMap<ExtWeylElt, u64> {
    let n = datum.rank();
    let mut dist: HashMap<ExtWeylElt, u64> = HashMap::new();
    let mut frontier: Vec<ExtWeylElt> = Vec::new();
    for omega in omega_elements(datum) {
        dist.insert(omega.clone(), 0);
        frontier.push(omega);
    }
    for level in 1..=max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for i in 0..=n {
                let y = mul(datum, x, &simple_reflection(datum, i).unwrap());
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), level);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    dist
}
