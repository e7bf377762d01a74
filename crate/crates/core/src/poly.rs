//! Sparse exact-rational polynomials on the affine weight lattice plus a
//! central variable `u`.
//!
//! Variables are indexed `0 = L_can`, `1..=rank` the simple-root
//! coordinates, `rank + 1 = delta`, `rank + 2 = u`. The algebra grading
//! assigns degree 2 to every variable.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::afflattice::AffWeight;
use crate::rat::{rat, Rat};
use crate::rootsys::RootDatum;

/// Exponent vector; length is `rank + 3`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[v] = 1;
        m
    }

    pub fn total_exponent(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, Rat>,
}

pub fn nvars_for(datum: &RootDatum) -> usize {
    datum.rank() + 3
}

pub fn u_index(datum: &RootDatum) -> usize {
    datum.rank() + 2
}

pub fn delta_index(datum: &RootDatum) -> usize {
    datum.rank() + 1
}

impl AffPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, rat(1))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, v), rat(1));
        p
    }

    /// The degree-one polynomial of an affine weight.
    pub fn from_aff_weight(datum: &RootDatum, xi: &AffWeight) -> Self {
        let nvars = nvars_for(datum);
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, 0), xi.c_lambda.clone());
        for (i, c) in xi.fin.0.iter().enumerate() {
            p.add_term(Monomial::var(nvars, i + 1), c.clone());
        }
        p.add_term(Monomial::var(nvars, delta_index(datum)), xi.c_delta.clone());
        p
    }

    /// Reads a linear, `u`-free, constant-free polynomial back as an
    /// affine weight.
    pub fn to_aff_weight(&self, datum: &RootDatum) -> Option<AffWeight> {
        let mut xi = AffWeight::zero(datum.rank());
        for (m, c) in &self.terms {
            if m.total_exponent() != 1 {
                return None;
            }
            let v = m.0.iter().position(|&e| e == 1).unwrap();
            if v == 0 {
                xi.c_lambda = c.clone();
            } else if v == delta_index(datum) {
                xi.c_delta = c.clone();
            } else if v == u_index(datum) {
                return None;
            } else {
                xi.fin.0[v - 1] = c.clone();
            }
        }
        Some(xi)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_var(&self, v: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = m.clone();
                    m2.0[v] = m2.0[v].checked_add(1).expect("monomial exponent overflow");
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn max_total_exponent(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_exponent)
            .max()
            .unwrap_or(0)
    }

    /// Algebra degree (2 per exponent) when homogeneous; `None` when the
    /// polynomial mixes degrees; zero polynomials report as homogeneous
    /// of any degree, signalled separately by `is_zero`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = 2 * m.total_exponent() as i64;
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg.or(Some(0))
    }

    /// Substitutes a linear image for each lattice variable, leaving `u`
    /// untouched; `images[v]` is the image of variable `v` in `0..nvars-1`.
    pub fn substitute_linear(&self, images: &[AffPoly]) -> Self {
        let u = self.nvars - 1;
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.nvars, c.clone());
            for v in 0..u {
                if m.0[v] > 0 {
                    term = term.mul(&images[v].pow(m.0[v] as u32));
                }
            }
            if m.0[u] > 0 {
                let mut mu = Monomial::one(self.nvars);
                mu.0[u] = m.0[u];
                let mut up = Self::zero(self.nvars);
                up.terms.insert(mu, rat(1));
                term = term.mul(&up);
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact division by a linear form with no constant term. Returns
    /// `(quotient, remainder)`; the remainder is free of the pivot
    /// variable, and divisibility holds exactly when it is zero.
    pub fn divide_by_linear(&self, linear: &AffPoly, pivot: usize) -> (Self, Self) {
        let pivot_coeff = linear
            .terms
            .get(&Monomial::var(self.nvars, pivot))
            .cloned()
            .expect("pivot variable must appear in the divisor");
        let mut q = Self::zero(self.nvars);
        let mut r = self.clone();
        loop {
            // highest pivot-exponent term remaining
            let lead = r
                .terms
                .iter()
                .filter(|(m, _)| m.0[pivot] > 0)
                .max_by_key(|(m, _)| m.0[pivot])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = lead else { break };
            let mut mq = m.clone();
            mq.0[pivot] -= 1;
            let factor = &c / &pivot_coeff;
            let mut t = Self::zero(self.nvars);
            t.terms.insert(mq, factor);
            q = q.add(&t);
            r = r.sub(&t.mul(linear));
        }
        (q, r)
    }
}
