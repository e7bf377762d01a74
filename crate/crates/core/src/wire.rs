//! JSON wire formats shared by the CLI and the Python bindings.
//!
//! Rationals travel as `"p/q"` strings (plain `"p"` when integral) so no
//! precision is ever lost. Group elements serialize their translation
//! part in coordinates of the declared cocharacter lattice, which makes
//! the entries integers in both isogeny flavors; permutations refer to
//! the datum's canonical root ordering (positives sorted by height then
//! coordinates, then their negatives in the same order).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::afflattice::{AffCoweight, AffWeight};
use crate::convolution::DCosetFn;
use crate::daha::DahaElt;
use crate::error::{Error, Result};
use crate::extweyl::{self, CoxOmegaWord, ExtWeylElt};
use crate::parahoric::ParahoricType;
use crate::poly::{u_index, AffPoly, Monomial};
use crate::rat::{rat_from_str, rat_to_string, Rat};
use crate::rootsys::{FinCoweight, FinWeight, RootDatum, WeylElt};

pub fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

pub fn strings_to_rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| rat_from_str(s)).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireAffWeight {
    pub c_lambda: String,
    pub fin: Vec<String>,
    pub c_delta: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireAffCoweight {
    pub c_k: String,
    pub fin: Vec<String>,
    pub c_d: String,
}

pub fn aff_weight_to_wire(xi: &AffWeight) -> WireAffWeight {
    WireAffWeight {
        c_lambda: rat_to_string(&xi.c_lambda),
        fin: rats_to_strings(&xi.fin.0),
        c_delta: rat_to_string(&xi.c_delta),
    }
}

pub fn aff_weight_from_wire(datum: &RootDatum, w: &WireAffWeight) -> Result<AffWeight> {
    if w.fin.len() != datum.rank() {
        return Err(Error::DatumMismatch(format!(
            "weight of rank {} against datum {}",
            w.fin.len(),
            datum.descriptor()
        )));
    }
    Ok(AffWeight {
        c_lambda: rat_from_str(&w.c_lambda)?,
        fin: FinWeight(strings_to_rats(&w.fin)?),
        c_delta: rat_from_str(&w.c_delta)?,
    })
}

pub fn aff_coweight_to_wire(eta: &AffCoweight) -> WireAffCoweight {
    WireAffCoweight {
        c_k: rat_to_string(&eta.c_k),
        fin: rats_to_strings(&eta.fin.0),
        c_d: rat_to_string(&eta.c_d),
    }
}

pub fn aff_coweight_from_wire(datum: &RootDatum, w: &WireAffCoweight) -> Result<AffCoweight> {
    if w.fin.len() != datum.rank() {
        return Err(Error::DatumMismatch(format!(
            "coweight of rank {} against datum {}",
            w.fin.len(),
            datum.descriptor()
        )));
    }
    Ok(AffCoweight {
        c_k: rat_from_str(&w.c_k)?,
        fin: FinCoweight(strings_to_rats(&w.fin)?),
        c_d: rat_from_str(&w.c_d)?,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireExtWeyl {
    pub lambda: Vec<i64>,
    pub w_perm: Vec<u32>,
}

pub fn ext_weyl_to_wire(datum: &RootDatum, a: &ExtWeylElt) -> Result<WireExtWeyl> {
    let coords = datum.cochar_lattice_coords(&a.lambda)?;
    let lambda = coords
        .iter()
        .map(|n| i64::try_from(n.clone()).map_err(|_| Error::Parse("coordinate overflow".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(WireExtWeyl {
        lambda,
        w_perm: a.w.0.clone(),
    })
}

pub fn ext_weyl_from_wire(datum: &RootDatum, w: &WireExtWeyl) -> Result<ExtWeylElt> {
    let coords: Vec<BigInt> = w.lambda.iter().map(|&n| BigInt::from(n)).collect();
    let lambda = datum.coweight_from_cochar_coords(&coords)?;
    if w.w_perm.len() != datum.n_roots() {
        return Err(Error::DatumMismatch(format!(
            "permutation over {} roots against datum {} with {}",
            w.w_perm.len(),
            datum.descriptor(),
            datum.n_roots()
        )));
    }
    let mut seen = vec![false; w.w_perm.len()];
    for &p in &w.w_perm {
        let i = p as usize;
        if i >= seen.len() || seen[i] {
            return Err(Error::Parse("w_perm is not a permutation".into()));
        }
        seen[i] = true;
    }
    ExtWeylElt::new(datum, lambda, WeylElt(w.w_perm.clone()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireCoxOmegaWord {
    pub word: Vec<usize>,
    pub omega: usize,
}

/// Identifies a length-zero element by its index in the datum's sorted
/// length-zero subgroup (identity first).
pub fn omega_id(datum: &RootDatum, omega: &ExtWeylElt) -> Result<usize> {
    extweyl::omega_elements(datum)
        .iter()
        .position(|o| o == omega)
        .ok_or_else(|| Error::DatumMismatch("not a length-zero element of this datum".into()))
}

pub fn cox_word_to_wire(datum: &RootDatum, w: &CoxOmegaWord) -> Result<WireCoxOmegaWord> {
    Ok(WireCoxOmegaWord {
        word: w.word.clone(),
        omega: omega_id(datum, &w.omega)?,
    })
}

pub fn cox_word_from_wire(datum: &RootDatum, w: &WireCoxOmegaWord) -> Result<CoxOmegaWord> {
    let omegas = extweyl::omega_elements(datum);
    let omega = omegas.get(w.omega).cloned().ok_or(Error::IndexOutOfRange {
        index: w.omega,
        max: omegas.len() - 1,
    })?;
    Ok(CoxOmegaWord {
        word: w.word.clone(),
        omega,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WirePolyTerm {
    /// Exponents keyed by lattice variable index (`"0"` is the central
    /// character, `"1"..` the simple-root coordinates, the last index the
    /// rotation character) or `"u"`; zero exponents are omitted.
    pub mono: BTreeMap<String, u8>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireDahaTerm {
    pub group: WireExtWeyl,
    pub poly: Vec<WirePolyTerm>,
}

pub type WireDahaElt = Vec<WireDahaTerm>;

pub fn poly_to_wire(datum: &RootDatum, p: &AffPoly) -> Vec<WirePolyTerm> {
    let u = u_index(datum);
    p.terms
        .iter()
        .map(|(m, c)| {
            let mut mono = BTreeMap::new();
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let key = if v == u {
                    "u".to_string()
                } else {
                    v.to_string()
                };
                mono.insert(key, e);
            }
            WirePolyTerm {
                mono,
                coeff: rat_to_string(c),
            }
        })
        .collect()
}

pub fn poly_from_wire(datum: &RootDatum, terms: &[WirePolyTerm]) -> Result<AffPoly> {
    let nvars = crate::poly::nvars_for(datum);
    let u = u_index(datum);
    let mut p = AffPoly::zero(nvars);
    for t in terms {
        let mut m = Monomial::one(nvars);
        for (key, &e) in &t.mono {
            let v = if key == "u" {
                u
            } else {
                let idx: usize = key
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable key `{key}`")))?;
                if idx >= u {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        max: u - 1,
                    });
                }
                idx
            };
            m.0[v] = m.0[v]
                .checked_add(e)
                .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
        }
        p.add_term(m, rat_from_str(&t.coeff)?);
    }
    Ok(p)
}

pub fn daha_to_wire(datum: &RootDatum, a: &DahaElt) -> Result<WireDahaElt> {
    a.terms
        .iter()
        .map(|(g, p)| {
            Ok(WireDahaTerm {
                group: ext_weyl_to_wire(datum, g)?,
                poly: poly_to_wire(datum, p),
            })
        })
        .collect()
}

pub fn daha_from_wire(datum: &RootDatum, terms: &WireDahaElt) -> Result<DahaElt> {
    let mut out = DahaElt::zero();
    for t in terms {
        out.add_term(
            ext_weyl_from_wire(datum, &t.group)?,
            poly_from_wire(datum, &t.poly)?,
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireSupportTerm {
    pub rep: WireExtWeyl,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireDCosetFn {
    #[serde(rename = "P")]
    pub p: Vec<usize>,
    #[serde(rename = "Q")]
    pub q: Vec<usize>,
    pub support: Vec<WireSupportTerm>,
}

pub fn dcoset_to_wire(datum: &RootDatum, f: &DCosetFn) -> Result<WireDCosetFn> {
    Ok(WireDCosetFn {
        p: f.p.indices(),
        q: f.q.indices(),
        support: f
            .support
            .iter()
            .map(|(rep, c)| {
                Ok(WireSupportTerm {
                    rep: ext_weyl_to_wire(datum, rep)?,
                    coeff: rat_to_string(c),
                })
            })
            .collect::<Result<Vec<_>>>()?,
    })
}

pub fn dcoset_from_wire(datum: &RootDatum, w: &WireDCosetFn) -> Result<DCosetFn> {
    let p = ParahoricType::new(datum, w.p.iter().copied().collect())?;
    let q = ParahoricType::new(datum, w.q.iter().copied().collect())?;
    let mut f = DCosetFn::zero(p, q);
    for t in &w.support {
        let rep = ext_weyl_from_wire(datum, &t.rep)?;
        f.add_at(datum, &rep, rat_from_str(&t.coeff)?);
    }
    Ok(f)
}
