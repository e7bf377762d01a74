//! The affine weight lattice `Z L_can + X^*(T) + Z delta` and coweight
//! lattice `Z K_can + X_*(T) + Z d` of the universal Cartan torus, their
//! pairing, and the affine simple (co)roots.
//!
//! The pairing is block-diagonal: `<L_can, K_can> = <delta, d> = 1`, the
//! finite blocks pair through the Cartan matrix, and all cross pairings
//! vanish. The Killing form extends to the affine coweight lattice by
//! declaring `K_can` and `d` orthogonal to everything; only the finite
//! block is ever consumed by the translation action formulas.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{rat, Rat};
use crate::rootsys::{FinCoweight, FinWeight, RootDatum};

/// `c_lambda * L_can + fin + c_delta * delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffWeight {
    pub c_lambda: Rat,
    pub fin: FinWeight,
    pub c_delta: Rat,
}

/// `c_k * K_can + fin + c_d * d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffCoweight {
    pub c_k: Rat,
    pub fin: FinCoweight,
    pub c_d: Rat,
}

impl AffWeight {
    pub fn zero(rank: usize) -> Self {
        Self {
            c_lambda: rat(0),
            fin: FinWeight::zero(rank),
            c_delta: rat(0),
        }
    }

    pub fn lambda_can(rank: usize) -> Self {
        Self {
            c_lambda: rat(1),
            fin: FinWeight::zero(rank),
            c_delta: rat(0),
        }
    }

    pub fn delta(rank: usize) -> Self {
        Self {
            c_lambda: rat(0),
            fin: FinWeight::zero(rank),
            c_delta: rat(1),
        }
    }

    pub fn from_fin(fin: FinWeight) -> Self {
        Self {
            c_lambda: rat(0),
            c_delta: rat(0),
            fin,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            c_lambda: &self.c_lambda + &other.c_lambda,
            fin: self.fin.add(&other.fin),
            c_delta: &self.c_delta + &other.c_delta,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            c_lambda: &self.c_lambda * c,
            fin: self.fin.scale(c),
            c_delta: &self.c_delta * c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c_lambda.is_zero() && self.fin.is_zero() && self.c_delta.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.fin.rank()
    }
}

impl AffCoweight {
    pub fn zero(rank: usize) -> Self {
        Self {
            c_k: rat(0),
            fin: FinCoweight::zero(rank),
            c_d: rat(0),
        }
    }

    pub fn k_can(rank: usize) -> Self {
        Self {
            c_k: rat(1),
            fin: FinCoweight::zero(rank),
            c_d: rat(0),
        }
    }

    pub fn d_rot(rank: usize) -> Self {
        Self {
            c_k: rat(0),
            fin: FinCoweight::zero(rank),
            c_d: rat(1),
        }
    }

    pub fn from_fin(fin: FinCoweight) -> Self {
        Self {
            c_k: rat(0),
            c_d: rat(0),
            fin,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            c_k: &self.c_k + &other.c_k,
            fin: self.fin.add(&other.fin),
            c_d: &self.c_d + &other.c_d,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            c_k: &self.c_k * c,
            fin: self.fin.scale(c),
            c_d: &self.c_d * c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c_k.is_zero() && self.fin.is_zero() && self.c_d.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.fin.rank()
    }
}

/// The natural pairing `X^*(tilde T) x X_*(tilde T) -> Q`.
pub fn pair(datum: &RootDatum, xi: &AffWeight, eta: &AffCoweight) -> Result<Rat> {
    if xi.rank() != datum.rank() || eta.rank() != datum.rank() {
        return Err(Error::DatumMismatch(format!(
            "pairing ranks {} and {} against datum {}",
            xi.rank(),
            eta.rank(),
            datum.descriptor()
        )));
    }
    Ok(&xi.c_lambda * &eta.c_k + datum.pairing(&xi.fin, &eta.fin) + &xi.c_delta * &eta.c_d)
}

/// Affine simple roots: `alpha_0 = delta - theta`, then the finite ones.
pub fn affine_simple_root(datum: &RootDatum, i: usize) -> Result<AffWeight> {
    let n = datum.rank();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if i == 0 {
        let (theta, _) = datum.highest_root();
        Ok(AffWeight {
            c_lambda: rat(0),
            fin: theta.neg(),
            c_delta: rat(1),
        })
    } else {
        Ok(AffWeight::from_fin(datum.simple_root(i - 1)?))
    }
}

/// Affine simple coroots: `alpha_0^vee = K - theta^vee` with
/// `K = 2 h^vee K_can`, then the finite ones.
pub fn affine_simple_coroot(datum: &RootDatum, i: usize) -> Result<AffCoweight> {
    let n = datum.rank();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if i == 0 {
        let (_, theta_v) = datum.highest_root();
        Ok(AffCoweight {
            c_k: rat(2 * datum.dual_coxeter_number()),
            fin: theta_v.neg(),
            c_d: rat(0),
        })
    } else {
        Ok(AffCoweight::from_fin(datum.simple_coroot(i - 1)?))
    }
}

/// The element `K = 2 h^vee K_can`.
pub fn central_k(datum: &RootDatum) -> AffCoweight {
    AffCoweight::k_can(datum.rank()).scale(&rat(2 * datum.dual_coxeter_number()))
}

/// `Lambda_0 = L_can / (2 h^vee)`, normalized so `<Lambda_0, K> = 1`.
pub fn lambda_zero(datum: &RootDatum) -> AffWeight {
    AffWeight::lambda_can(datum.rank()).scale(&Rat::new(
        1.into(),
        (2 * datum.dual_coxeter_number()).into(),
    ))
}

/// The pairing matrix `<alpha_i, alpha_j^vee>` for `i, j` in `0..=n`;
/// this is the untwisted affine Cartan matrix of the datum.
pub fn affine_cartan_matrix(datum: &RootDatum) -> Vec<Vec<Rat>> {
    let n = datum.rank();
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    pair(
                        datum,
                        &affine_simple_root(datum, i).unwrap(),
                        &affine_simple_coroot(datum, j).unwrap(),
                    )
                    .unwrap()
                })
                .collect()
        })
        .collect()
}
