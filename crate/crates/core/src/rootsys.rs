//! Finite root data for the simple Cartan types A–G in both isogeny
//! flavors, with the canonical Killing form, highest (co)root, half-sum
//! of positive roots, and dual Coxeter number.
//!
//! Coordinate conventions: weights are stored in simple-root coordinates,
//! coweights in simple-coroot coordinates, so the Cartan matrix
//! `c[i][j] = <alpha_i, alpha_j^vee>` is the matrix of the natural
//! pairing. The isogeny flavor changes which vectors count as integral,
//! never the ambient rational space.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{is_integer, rat, rat_to_string, ratio, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn from_letter(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'A' => Ok(Self::A),
            'B' => Ok(Self::B),
            'C' => Ok(Self::C),
            'D' => Ok(Self::D),
            'E' => Ok(Self::E),
            'F' => Ok(Self::F),
            'G' => Ok(Self::G),
            other => Err(Error::InvalidCartan(format!(
                "unknown type letter `{other}`"
            ))),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Self::A => 'A',
            Self::B => 'B',
            Self::C => 'C',
            Self::D => 'D',
            Self::E => 'E',
            Self::F => 'F',
            Self::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsogenyFlavor {
    SimplyConnected,
    Adjoint,
}

impl IsogenyFlavor {
    pub fn tag(self) -> &'static str {
        match self {
            Self::SimplyConnected => "sc",
            Self::Adjoint => "adj",
        }
    }
}

/// Element of `X^*(T)_Q` in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinWeight(pub Vec<Rat>);

/// Element of `X_*(T)_Q` in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinCoweight(pub Vec<Rat>);

macro_rules! vector_ops {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(rank: usize) -> Self {
                Self(vec![rat(0); rank])
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn add(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn neg(&self) -> Self {
                Self(self.0.iter().map(|a| -a).collect())
            }

            pub fn scale(&self, c: &Rat) -> Self {
                Self(self.0.iter().map(|a| a * c).collect())
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|a| a.is_zero())
            }

            pub fn from_ints(v: &[i64]) -> Self {
                Self(v.iter().map(|&n| rat(n)).collect())
            }
        }
    };
}

vector_ops!(FinWeight);
vector_ops!(FinCoweight);

/// A root together with the coroot coordinates of its coroot. The pair is
/// W-equivariant: `(w a)^vee = w (a^vee)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    /// Simple-root coordinates (integral).
    pub weight: Vec<i64>,
    /// Simple-coroot coordinates of the coroot (integral).
    pub coweight: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.weight.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn as_fin_weight(&self) -> FinWeight {
        FinWeight(self.weight.iter().map(|&n| rat(n)).collect())
    }

    pub fn coroot_as_fin_coweight(&self) -> FinCoweight {
        FinCoweight(self.coweight.iter().map(|&n| rat(n)).collect())
    }
}

/// Finite Weyl group element, stored as a permutation of the root list:
/// `w(roots[k]) = roots[perm[k]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt(pub Vec<u32>);

impl WeylElt {
    pub fn identity(n_roots: usize) -> Self {
        Self((0..n_roots as u32).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// `(self * other)(r) = self(other(r))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&r| self.0[r as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Self(inv)
    }

    pub fn apply(&self, root_index: usize) -> usize {
        self.0[root_index] as usize
    }
}

/// A finite root datum: root system plus isogeny flavor.
#[derive(Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    rank: usize,
    flavor: IsogenyFlavor,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    cartan: Vec<Vec<i64>>,
    /// All roots; indices `0..n_positive` are the positive roots sorted by
    /// (height, coordinates), and `roots[k + n_positive] = -roots[k]`.
    roots: Vec<Root>,
    n_positive: usize,
    /// Index of the negation of each root.
    neg: Vec<usize>,
    /// Root index of each simple root.
    simple_idx: Vec<usize>,
    /// Simple reflections as permutations of the root list.
    simple_refl: Vec<WeylElt>,
    root_lookup: HashMap<Vec<i64>, usize>,
    /// Index of the highest root among the positives.
    theta_idx: usize,
    h_dual: i64,
    rho: FinWeight,
    /// Gram matrix of the Killing form on simple coroots.
    killing_gram: Vec<Vec<i64>>,
    /// Matrix of the star map: coroot coordinates -> root coordinates.
    star_mat: Vec<Vec<i64>>,
    /// Calibrated sign of the zeroth affine reflection, set on first use.
    s0_sign: OnceLock<i64>,
}

fn validate_type(t: CartanType, rank: usize) -> Result<()> {
    let ok = match t {
        CartanType::A => rank >= 1,
        CartanType::B | CartanType::C => rank >= 2,
        CartanType::D => rank >= 4,
        CartanType::E => (6..=8).contains(&rank),
        CartanType::F => rank == 4,
        CartanType::G => rank == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidCartan(format!(
            "{}{} is not an irreducible simple type (A: n>=1, B/C: n>=2, D: n>=4, E: 6..8, F: 4, G: 2)",
            t.letter(),
            rank
        )))
    }
}

/// Builds `c[i][j] = <alpha_i, alpha_j^vee>` in Bourbaki numbering.
fn cartan_matrix(t: CartanType, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let bond = |i: usize, j: usize, cij: i64, cji: i64, c: &mut Vec<Vec<i64>>| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match t {
        CartanType::A => {
            for i in 0..n.saturating_sub(1) {
                bond(i, i + 1, -1, -1, &mut c);
            }
        }
        CartanType::B => {
            for i in 0..n - 2 {
                bond(i, i + 1, -1, -1, &mut c);
            }
            // alpha_n is the short root
            bond(n - 2, n - 1, -2, -1, &mut c);
        }
        CartanType::C => {
            for i in 0..n - 2 {
                bond(i, i + 1, -1, -1, &mut c);
            }
            // alpha_n is the long root
            bond(n - 2, n - 1, -1, -2, &mut c);
        }
        CartanType::D => {
            for i in 0..n - 2 {
                bond(i, i + 1, -1, -1, &mut c);
            }
            bond(n - 3, n - 1, -1, -1, &mut c);
        }
        CartanType::E => {
            // Bourbaki: node 2 is the branch node hanging off node 4.
            bond(0, 2, -1, -1, &mut c);
            bond(1, 3, -1, -1, &mut c);
            for i in 2..n - 1 {
                bond(i, i + 1, -1, -1, &mut c);
            }
        }
        CartanType::F => {
            bond(0, 1, -1, -1, &mut c);
            bond(1, 2, -2, -1, &mut c);
            bond(2, 3, -1, -1, &mut c);
        }
        CartanType::G => {
            // alpha_1 short, alpha_2 long
            bond(0, 1, -1, -3, &mut c);
        }
    }
    c
}

impl RootDatum {
    pub fn new(cartan_type: CartanType, rank: usize, flavor: IsogenyFlavor) -> Result<Self> {
        validate_type(cartan_type, rank)?;
        let cartan = cartan_matrix(cartan_type, rank);

        // Close the simple roots under simple reflections, carrying the
        // coroot coordinates along.
        let mut seen: HashMap<Vec<i64>, Root> = HashMap::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..rank {
            let mut w = vec![0i64; rank];
            let mut cw = vec![0i64; rank];
            w[i] = 1;
            cw[i] = 1;
            let r = Root {
                weight: w.clone(),
                coweight: cw,
            };
            seen.insert(w, r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for j in 0..rank {
                let mut w = r.weight.clone();
                let pair_w: i64 = (0..rank).map(|i| r.weight[i] * cartan[i][j]).sum();
                w[j] -= pair_w;
                if seen.contains_key(&w) {
                    continue;
                }
                let mut cw = r.coweight.clone();
                let pair_c: i64 = (0..rank).map(|k| cartan[j][k] * r.coweight[k]).sum();
                cw[j] -= pair_c;
                let nr = Root {
                    weight: w.clone(),
                    coweight: cw,
                };
                seen.insert(w, nr.clone());
                queue.push_back(nr);
                if seen.len() > 512 {
                    return Err(Error::InvalidCartan(
                        "root closure did not terminate; Cartan data invalid".into(),
                    ));
                }
            }
        }

        let mut positives: Vec<Root> = seen.values().filter(|r| r.is_positive()).cloned().collect();
        positives.sort_by(|a, b| (a.height(), &a.weight).cmp(&(b.height(), &b.weight)));
        let n_positive = positives.len();
        if 2 * n_positive != seen.len() {
            return Err(Error::InvalidCartan(
                "root system not closed under negation".into(),
            ));
        }
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(|r| Root {
            weight: r.weight.iter().map(|x| -x).collect(),
            coweight: r.coweight.iter().map(|x| -x).collect(),
        }));
        let root_lookup: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.weight.clone(), k))
            .collect();
        let neg: Vec<usize> = (0..roots.len())
            .map(|k| {
                if k < n_positive {
                    k + n_positive
                } else {
                    k - n_positive
                }
            })
            .collect();

        let simple_idx: Vec<usize> = (0..rank)
            .map(|i| {
                let mut w = vec![0i64; rank];
                w[i] = 1;
                root_lookup[&w]
            })
            .collect();

        let simple_refl: Vec<WeylElt> = (0..rank)
            .map(|j| {
                WeylElt(
                    roots
                        .iter()
                        .map(|r| {
                            let mut w = r.weight.clone();
                            let p: i64 = (0..rank).map(|i| r.weight[i] * cartan[i][j]).sum();
                            w[j] -= p;
                            root_lookup[&w] as u32
                        })
                        .collect(),
                )
            })
            .collect();

        // Highest root: unique positive root of maximal height.
        let max_h = roots[..n_positive].iter().map(Root::height).max().unwrap();
        let top: Vec<usize> = (0..n_positive)
            .filter(|&k| roots[k].height() == max_h)
            .collect();
        if top.len() != 1 {
            return Err(Error::InvalidCartan("highest root is not unique".into()));
        }
        let theta_idx = top[0];
        let h_dual = 1 + roots[theta_idx].coweight.iter().sum::<i64>();

        let mut rho = vec![rat(0); rank];
        for r in &roots[..n_positive] {
            for (i, x) in r.weight.iter().enumerate() {
                rho[i] += ratio(*x, 2);
            }
        }

        // killing_gram = C^T S C with S = sum over roots of a a^T;
        // star_mat = S C sends coroot coordinates to root coordinates.
        let mut s = vec![vec![0i64; rank]; rank];
        for r in &roots {
            for i in 0..rank {
                for j in 0..rank {
                    s[i][j] += r.weight[i] * r.weight[j];
                }
            }
        }
        let mut star_mat = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                star_mat[i][j] = (0..rank).map(|k| s[i][k] * cartan[k][j]).sum();
            }
        }
        let mut killing_gram = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                killing_gram[i][j] = (0..rank).map(|k| cartan[k][i] * star_mat[k][j]).sum();
            }
        }

        Ok(Self {
            cartan_type,
            rank,
            flavor,
            cartan,
            roots,
            n_positive,
            neg,
            simple_idx,
            simple_refl,
            root_lookup,
            theta_idx,
            h_dual,
            rho: FinWeight(rho),
            killing_gram,
            star_mat,
            s0_sign: OnceLock::new(),
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flavor(&self) -> IsogenyFlavor {
        self.flavor
    }

    pub fn descriptor(&self) -> String {
        format!(
            "{}{}-{}",
            self.cartan_type.letter(),
            self.rank,
            self.flavor.tag()
        )
    }

    pub fn cartan_matrix_entries(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn n_positive(&self) -> usize {
        self.n_positive
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn negation_index(&self, k: usize) -> usize {
        self.neg[k]
    }

    pub fn root_index(&self, weight: &[i64]) -> Option<usize> {
        self.root_lookup.get(weight).copied()
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        self.simple_idx[i]
    }

    pub fn simple_root(&self, i: usize) -> Result<FinWeight> {
        self.check_index(i)?;
        Ok(self.roots[self.simple_idx[i]].as_fin_weight())
    }

    pub fn simple_coroot(&self, i: usize) -> Result<FinCoweight> {
        self.check_index(i)?;
        Ok(self.roots[self.simple_idx[i]].coroot_as_fin_coweight())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank - 1,
            })
        }
    }

    /// `<xi, lambda> = xi^T C lambda`, extended bilinearly over Q.
    pub fn pairing(&self, xi: &FinWeight, lam: &FinCoweight) -> Rat {
        assert_eq!(xi.0.len(), self.rank, "weight has wrong rank");
        assert_eq!(lam.0.len(), self.rank, "coweight has wrong rank");
        let mut acc = rat(0);
        for i in 0..self.rank {
            if xi.0[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if self.cartan[i][j] != 0 {
                    acc += &xi.0[i] * &lam.0[j] * rat(self.cartan[i][j]);
                }
            }
        }
        acc
    }

    /// Pairing of a stored (integral) root against a rational coweight.
    pub fn pair_root_coweight(&self, root_idx: usize, lam: &FinCoweight) -> Rat {
        let mut acc = rat(0);
        let w = &self.roots[root_idx].weight;
        for i in 0..self.rank {
            if w[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if self.cartan[i][j] != 0 {
                    acc += &lam.0[j] * rat(w[i] * self.cartan[i][j]);
                }
            }
        }
        acc
    }

    /// The Killing form `(x|y) = sum over roots a of <a,x><a,y>`,
    /// evaluated through its precomputed Gram matrix.
    pub fn killing_form(&self, x: &FinCoweight, y: &FinCoweight) -> Rat {
        assert_eq!(x.0.len(), self.rank);
        assert_eq!(y.0.len(), self.rank);
        let mut acc = rat(0);
        for i in 0..self.rank {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if self.killing_gram[i][j] != 0 {
                    acc += &x.0[i] * &y.0[j] * rat(self.killing_gram[i][j]);
                }
            }
        }
        acc
    }

    pub fn killing_gram(&self) -> &Vec<Vec<i64>> {
        &self.killing_gram
    }

    /// The isomorphism `X_*(T)_Q -> X^*(T)_Q` induced by the Killing form:
    /// `<star(l), m> = (l|m)` for every coweight `m`.
    pub fn star(&self, lam: &FinCoweight) -> FinWeight {
        assert_eq!(lam.0.len(), self.rank);
        FinWeight(
            (0..self.rank)
                .map(|i| {
                    let mut acc = rat(0);
                    for j in 0..self.rank {
                        if self.star_mat[i][j] != 0 {
                            acc += &lam.0[j] * rat(self.star_mat[i][j]);
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn highest_root(&self) -> (FinWeight, FinCoweight) {
        let t = &self.roots[self.theta_idx];
        (t.as_fin_weight(), t.coroot_as_fin_coweight())
    }

    pub fn theta_index(&self) -> usize {
        self.theta_idx
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.h_dual
    }

    pub fn rho(&self) -> FinWeight {
        self.rho.clone()
    }

    pub fn identity_weyl(&self) -> WeylElt {
        WeylElt::identity(self.roots.len())
    }

    pub fn simple_reflection_fin(&self, i: usize) -> Result<WeylElt> {
        self.check_index(i)?;
        Ok(self.simple_refl[i].clone())
    }

    /// Reflection in the highest root, as a product of simple reflections
    /// obtained by descending theta to a simple root.
    pub fn theta_reflection(&self) -> WeylElt {
        // s_theta = v s_i v^{-1} where v theta = alpha_i.
        let mut k = self.theta_idx;
        let mut v = self.identity_weyl();
        loop {
            if let Some(i) = (0..self.rank).position(|i| self.simple_idx[i] == k) {
                let si = &self.simple_refl[i];
                return v.inverse().compose(si).compose(&v);
            }
            // descend: some simple reflection lowers the height
            let h = self.roots[k].height();
            let j = (0..self.rank)
                .find(|&j| {
                    let img = self.simple_refl[j].apply(k);
                    self.roots[img].height() < h
                })
                .expect("positive non-simple root must have a descent");
            k = self.simple_refl[j].apply(k);
            v = self.simple_refl[j].compose(&v);
        }
    }

    pub fn weyl_act_weight(&self, w: &WeylElt, xi: &FinWeight) -> FinWeight {
        let mut out = vec![rat(0); self.rank];
        for (i, c) in xi.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &self.roots[w.apply(self.simple_idx[i])];
            for (t, x) in img.weight.iter().enumerate() {
                if *x != 0 {
                    out[t] += c * rat(*x);
                }
            }
        }
        FinWeight(out)
    }

    pub fn weyl_act_coweight(&self, w: &WeylElt, lam: &FinCoweight) -> FinCoweight {
        let mut out = vec![rat(0); self.rank];
        for (i, c) in lam.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &self.roots[w.apply(self.simple_idx[i])];
            for (t, x) in img.coweight.iter().enumerate() {
                if *x != 0 {
                    out[t] += c * rat(*x);
                }
            }
        }
        FinCoweight(out)
    }

    /// Orbit of a rational coweight under the full Weyl group.
    pub fn weyl_orbit(&self, lam: &FinCoweight) -> Vec<FinCoweight> {
        self.orbit_under(lam, &(0..self.rank).collect::<Vec<_>>())
    }

    /// Orbit under the subgroup generated by the listed simple reflections.
    pub fn orbit_under(&self, lam: &FinCoweight, gens: &[usize]) -> Vec<FinCoweight> {
        let mut out: Vec<FinCoweight> = vec![lam.clone()];
        let mut seen: std::collections::BTreeSet<FinCoweight> = out.iter().cloned().collect();
        let mut queue: VecDeque<FinCoweight> = out.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            for &j in gens {
                // s_j(v) = v - <alpha_j, v> alpha_j^vee, and alpha_j^vee = e_j
                let p = self.pair_root_coweight(self.simple_idx[j], &v);
                let mut img = v.clone();
                img.0[j] -= p;
                if seen.insert(img.clone()) {
                    out.push(img.clone());
                    queue.push_back(img);
                }
            }
        }
        out.sort();
        out
    }

    /// Membership of a weight in the declared character lattice.
    pub fn weight_is_integral(&self, xi: &FinWeight) -> bool {
        match self.flavor {
            // X^*(T) is the full weight lattice: <xi, alpha_j^vee> integral
            IsogenyFlavor::SimplyConnected => (0..self.rank).all(|j| {
                let mut acc = rat(0);
                for i in 0..self.rank {
                    acc += &xi.0[i] * rat(self.cartan[i][j]);
                }
                is_integer(&acc)
            }),
            // X^*(T) is the root lattice
            IsogenyFlavor::Adjoint => xi.0.iter().all(is_integer),
        }
    }

    /// Membership of a coweight in the declared cocharacter lattice.
    pub fn coweight_is_integral(&self, lam: &FinCoweight) -> bool {
        match self.flavor {
            // X_*(T) is the coroot lattice
            IsogenyFlavor::SimplyConnected => lam.0.iter().all(is_integer),
            // X_*(T) is the full coweight lattice: <alpha_i, lam> integral
            IsogenyFlavor::Adjoint => (0..self.rank).all(|i| {
                let mut acc = rat(0);
                for j in 0..self.rank {
                    acc += &lam.0[j] * rat(self.cartan[i][j]);
                }
                is_integer(&acc)
            }),
        }
    }

    /// Coordinates of an integral coweight in the basis of `X_*(T)`;
    /// this is the integer matrix of the lattice inclusion applied to the
    /// coroot coordinates (identity for simply-connected, Cartan matrix
    /// for adjoint).
    pub fn cochar_lattice_coords(&self, lam: &FinCoweight) -> Result<Vec<BigInt>> {
        if !self.coweight_is_integral(lam) {
            return Err(Error::NotIntegral(format!(
                "[{}] is not in X_*(T) for {}",
                lam.0
                    .iter()
                    .map(rat_to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
                self.descriptor()
            )));
        }
        let coords: Vec<Rat> = match self.flavor {
            IsogenyFlavor::SimplyConnected => lam.0.clone(),
            IsogenyFlavor::Adjoint => (0..self.rank)
                .map(|i| {
                    let mut acc = rat(0);
                    for j in 0..self.rank {
                        acc += &lam.0[j] * rat(self.cartan[i][j]);
                    }
                    acc
                })
                .collect(),
        };
        Ok(coords.into_iter().map(|r| r.numer().clone()).collect())
    }

    /// Inverse of [`Self::cochar_lattice_coords`].
    pub fn coweight_from_cochar_coords(&self, coords: &[BigInt]) -> Result<FinCoweight> {
        if coords.len() != self.rank {
            return Err(Error::DatumMismatch(format!(
                "expected {} lattice coordinates, got {}",
                self.rank,
                coords.len()
            )));
        }
        match self.flavor {
            IsogenyFlavor::SimplyConnected => Ok(FinCoweight(
                coords
                    .iter()
                    .map(|n| Rat::from_integer(n.clone()))
                    .collect(),
            )),
            IsogenyFlavor::Adjoint => {
                // solve C d = coords exactly
                let rhs: Vec<Rat> = coords
                    .iter()
                    .map(|n| Rat::from_integer(n.clone()))
                    .collect();
                let d = solve_rational(&self.cartan, &rhs)
                    .ok_or_else(|| Error::InvalidCartan("Cartan matrix is singular".into()))?;
                Ok(FinCoweight(d))
            }
        }
    }

    /// Basis matrix data for the character lattice: applied to root
    /// coordinates it yields integral coordinates exactly on `X^*(T)`.
    pub fn char_lattice_matrix(&self) -> Vec<Vec<i64>> {
        match self.flavor {
            IsogenyFlavor::SimplyConnected => {
                let mut m = vec![vec![0i64; self.rank]; self.rank];
                for i in 0..self.rank {
                    for j in 0..self.rank {
                        m[i][j] = self.cartan[j][i];
                    }
                }
                m
            }
            IsogenyFlavor::Adjoint => identity_matrix(self.rank),
        }
    }

    /// Basis matrix data for the cocharacter lattice, on coroot coordinates.
    pub fn cochar_lattice_matrix(&self) -> Vec<Vec<i64>> {
        match self.flavor {
            IsogenyFlavor::SimplyConnected => identity_matrix(self.rank),
            IsogenyFlavor::Adjoint => self.cartan.clone(),
        }
    }

    pub(crate) fn s0_sign_cell(&self) -> &OnceLock<i64> {
        &self.s0_sign
    }

    /// Coxeter exponent `m_ij` of the product of two finite simple
    /// reflections, read off the Cartan matrix.
    pub fn coxeter_m(&self, i: usize, j: usize) -> u64 {
        coxeter_m_from_product(self.cartan[i][j] * self.cartan[j][i])
    }
}

pub fn coxeter_m_from_product(p: i64) -> u64 {
    match p {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => u64::MAX, // infinite order
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Exact Gaussian elimination for small integer systems.
pub(crate) fn solve_rational(mat: &[Vec<i64>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = rhs.len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = mat[i].iter().map(|&x| rat(x)).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let sub = &a[col][c] * &f;
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(
        a.into_iter()
            .map(|row| row[row.len() - 1].clone())
            .collect(),
    )
}

/// Number of roots of each irreducible type; used as the closure oracle.
pub fn expected_root_count(t: CartanType, n: usize) -> usize {
    match t {
        CartanType::A => n * (n + 1),
        CartanType::B | CartanType::C => 2 * n * n,
        CartanType::D => 2 * n * (n - 1),
        CartanType::E => match n {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        CartanType::F => 48,
        CartanType::G => 12,
    }
}

/// Order of the finite Weyl group.
pub fn expected_weyl_order(t: CartanType, n: usize) -> u128 {
    let fact = |k: usize| -> u128 { (1..=k as u128).product() };
    match t {
        CartanType::A => fact(n + 1),
        CartanType::B | CartanType::C => (1u128 << n) * fact(n),
        CartanType::D => (1u128 << (n - 1)) * fact(n),
        CartanType::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        CartanType::F => 1_152,
        CartanType::G => 12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(t: CartanType, n: usize) -> RootDatum {
        RootDatum::new(t, n, IsogenyFlavor::SimplyConnected).unwrap()
    }

    #[test]
    fn rejects_invalid_types() {
        assert!(RootDatum::new(CartanType::D, 2, IsogenyFlavor::SimplyConnected).is_err());
        assert!(RootDatum::new(CartanType::D, 3, IsogenyFlavor::SimplyConnected).is_err());
        assert!(RootDatum::new(CartanType::E, 9, IsogenyFlavor::SimplyConnected).is_err());
        assert!(RootDatum::new(CartanType::F, 3, IsogenyFlavor::SimplyConnected).is_err());
        assert!(RootDatum::new(CartanType::G, 3, IsogenyFlavor::SimplyConnected).is_err());
        assert!(RootDatum::new(CartanType::B, 1, IsogenyFlavor::SimplyConnected).is_err());
    }

    #[test]
    fn root_counts_match_closure_oracle() {
        let cases = [
            (CartanType::A, 1),
            (CartanType::A, 2),
            (CartanType::A, 4),
            (CartanType::B, 2),
            (CartanType::B, 4),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::D, 5),
            (CartanType::E, 6),
            (CartanType::F, 4),
            (CartanType::G, 2),
        ];
        for (t, n) in cases {
            let d = datum(t, n);
            assert_eq!(
                d.n_roots(),
                expected_root_count(t, n),
                "{}{}",
                t.letter(),
                n
            );
        }
    }

    #[test]
    fn cartan_is_the_pairing_matrix() {
        for (t, n) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::G, 2)] {
            let d = datum(t, n);
            for i in 0..n {
                for j in 0..n {
                    let p = d.pairing(&d.simple_root(i).unwrap(), &d.simple_coroot(j).unwrap());
                    assert_eq!(p, rat(d.cartan_matrix_entries()[i][j]));
                }
            }
        }
    }

    #[test]
    fn highest_roots() {
        let d = datum(CartanType::A, 1);
        assert_eq!(d.highest_root().0, FinWeight::from_ints(&[1]));

        let d = datum(CartanType::A, 2);
        assert_eq!(d.highest_root().0, FinWeight::from_ints(&[1, 1]));

        // C2: theta = 2 alpha_1 + alpha_2 with alpha_1 short
        let d = datum(CartanType::C, 2);
        assert_eq!(d.highest_root().0, FinWeight::from_ints(&[2, 1]));
    }

    #[test]
    fn dual_coxeter_numbers() {
        assert_eq!(datum(CartanType::A, 1).dual_coxeter_number(), 2);
        for n in 1..=5 {
            assert_eq!(datum(CartanType::A, n).dual_coxeter_number(), n as i64 + 1);
        }
        assert_eq!(datum(CartanType::G, 2).dual_coxeter_number(), 4);
        assert_eq!(datum(CartanType::B, 3).dual_coxeter_number(), 5);
        assert_eq!(datum(CartanType::C, 3).dual_coxeter_number(), 4);
        assert_eq!(datum(CartanType::D, 4).dual_coxeter_number(), 6);
        assert_eq!(datum(CartanType::F, 4).dual_coxeter_number(), 9);
    }

    #[test]
    fn rho_pairs_to_one_with_simple_coroots() {
        let d = datum(CartanType::A, 1);
        assert_eq!(d.rho(), FinWeight(vec![ratio(1, 2)]));
        let d = datum(CartanType::A, 2);
        assert_eq!(d.rho(), FinWeight::from_ints(&[1, 1]));
        for (t, n) in [(CartanType::B, 2), (CartanType::G, 2), (CartanType::D, 4)] {
            let d = datum(t, n);
            for i in 0..n {
                assert_eq!(d.pairing(&d.rho(), &d.simple_coroot(i).unwrap()), rat(1));
            }
        }
    }

    #[test]
    fn killing_form_values() {
        // A1: (a^vee | a^vee) = <a,a^vee>^2 + <-a,a^vee>^2 = 8
        let d = datum(CartanType::A, 1);
        let av = d.simple_coroot(0).unwrap();
        assert_eq!(d.killing_form(&av, &av), rat(8));
        assert_eq!(d.killing_form(&av, &FinCoweight::zero(1)), rat(0));

        // A2: (theta^vee | theta^vee) = 12 by direct summation
        let d = datum(CartanType::A, 2);
        let (_, tv) = d.highest_root();
        assert_eq!(d.killing_form(&tv, &tv), rat(12));
    }

    #[test]
    fn killing_form_matches_direct_summation() {
        for (t, n) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2)] {
            let d = datum(t, n);
            let x = FinCoweight(vec![rat(1), ratio(-2, 3)]);
            let y = FinCoweight(vec![ratio(1, 2), rat(3)]);
            let mut direct = rat(0);
            for k in 0..d.n_roots() {
                direct += d.pair_root_coweight(k, &x) * d.pair_root_coweight(k, &y);
            }
            assert_eq!(d.killing_form(&x, &y), direct);
            assert_eq!(d.killing_form(&y, &x), direct);
        }
    }

    #[test]
    fn star_map() {
        let d = datum(CartanType::A, 1);
        let av = d.simple_coroot(0).unwrap();
        // (a^vee)* = 4a in A1
        assert_eq!(d.star(&av), FinWeight::from_ints(&[4]));
        assert_eq!(d.star(&FinCoweight::zero(1)), FinWeight::zero(1));

        // (theta^vee)* = 2 h^vee theta, any type
        for (t, n) in [(CartanType::A, 3), (CartanType::C, 2), (CartanType::G, 2)] {
            let d = datum(t, n);
            let (th, tv) = d.highest_root();
            assert_eq!(d.star(&tv), th.scale(&rat(2 * d.dual_coxeter_number())));
        }
    }

    #[test]
    fn star_gram_matrix_is_killing_gram() {
        for (t, n) in [(CartanType::A, 2), (CartanType::B, 3), (CartanType::F, 4)] {
            let d = datum(t, n);
            for i in 0..n {
                for j in 0..n {
                    let g = d.pairing(
                        &d.star(&d.simple_coroot(i).unwrap()),
                        &d.simple_coroot(j).unwrap(),
                    );
                    assert_eq!(g, rat(d.killing_gram()[i][j]));
                }
            }
        }
    }

    #[test]
    fn weyl_orbits() {
        let d = datum(CartanType::A, 1);
        assert_eq!(d.weyl_orbit(&FinCoweight::zero(1)).len(), 1);
        let orbit = d.weyl_orbit(&d.simple_coroot(0).unwrap());
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&FinCoweight::from_ints(&[-1])));

        let d = datum(CartanType::A, 2);
        assert_eq!(d.weyl_orbit(&d.simple_coroot(0).unwrap()).len(), 6);
    }

    #[test]
    fn orbit_size_divides_weyl_order() {
        for (t, n) in [(CartanType::A, 3), (CartanType::B, 2), (CartanType::G, 2)] {
            let d = datum(t, n);
            let lam = FinCoweight::from_ints(&vec![1; n]);
            let orbit = d.weyl_orbit(&lam);
            let order = expected_weyl_order(t, n);
            assert_eq!(order % orbit.len() as u128, 0, "{}{}", t.letter(), n);
        }
    }

    #[test]
    fn coxeter_relations_hold_as_lattice_operators() {
        for (t, n) in [
            (CartanType::A, 2),
            (CartanType::B, 2),
            (CartanType::G, 2),
            (CartanType::D, 4),
        ] {
            let d = datum(t, n);
            for i in 0..n {
                for j in 0..n {
                    let m = if i == j { 1 } else { d.coxeter_m(i, j) };
                    assert_ne!(m, u64::MAX, "finite types have finite Coxeter exponents");
                    let si = d.simple_reflection_fin(i).unwrap();
                    let sj = d.simple_reflection_fin(j).unwrap();
                    let mut prod = d.identity_weyl();
                    for _ in 0..m {
                        prod = prod.compose(&si).compose(&sj);
                    }
                    assert!(
                        prod.is_identity(),
                        "(s{i} s{j})^{m} != e in {}{}",
                        t.letter(),
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn killing_form_is_weyl_invariant() {
        let d = datum(CartanType::B, 2);
        let x = FinCoweight(vec![rat(2), ratio(-1, 2)]);
        let y = FinCoweight(vec![rat(1), rat(3)]);
        let w = d
            .simple_reflection_fin(0)
            .unwrap()
            .compose(&d.simple_reflection_fin(1).unwrap());
        let wx = d.weyl_act_coweight(&w, &x);
        let wy = d.weyl_act_coweight(&w, &y);
        assert_eq!(d.killing_form(&wx, &wy), d.killing_form(&x, &y));
    }

    #[test]
    fn theta_pairing_bound() {
        // <a, theta^vee> is 0 or 1 for every positive root a != theta
        for (t, n) in [
            (CartanType::A, 3),
            (CartanType::C, 3),
            (CartanType::F, 4),
            (CartanType::G, 2),
        ] {
            let d = datum(t, n);
            let (_, tv) = d.highest_root();
            for k in 0..d.n_positive() {
                if k == d.theta_index() {
                    continue;
                }
                let p = d.pair_root_coweight(k, &tv);
                assert!(p == rat(0) || p == rat(1), "{}{} root {k}", t.letter(), n);
            }
        }
    }

    #[test]
    fn theta_reflection_fixes_theta_up_to_sign() {
        for (t, n) in [(CartanType::A, 2), (CartanType::C, 2), (CartanType::G, 2)] {
            let d = datum(t, n);
            let st = d.theta_reflection();
            assert_eq!(st.apply(d.theta_index()), d.negation_index(d.theta_index()));
            assert!(st.compose(&st).is_identity());
        }
    }

    #[test]
    fn lattice_membership_by_flavor() {
        let sc = RootDatum::new(CartanType::A, 1, IsogenyFlavor::SimplyConnected).unwrap();
        let adj = RootDatum::new(CartanType::A, 1, IsogenyFlavor::Adjoint).unwrap();
        let half = FinCoweight(vec![ratio(1, 2)]);
        assert!(!sc.coweight_is_integral(&half));
        assert!(adj.coweight_is_integral(&half));
        let halfw = FinWeight(vec![ratio(1, 2)]);
        assert!(sc.weight_is_integral(&halfw));
        assert!(!adj.weight_is_integral(&halfw));
    }

    #[test]
    fn cochar_coords_round_trip() {
        let adj = RootDatum::new(CartanType::A, 2, IsogenyFlavor::Adjoint).unwrap();
        let lam = FinCoweight(vec![ratio(1, 3), ratio(2, 3)]);
        assert!(adj.coweight_is_integral(&lam));
        let coords = adj.cochar_lattice_coords(&lam).unwrap();
        let back = adj.coweight_from_cochar_coords(&coords).unwrap();
        assert_eq!(back, lam);
    }
}
