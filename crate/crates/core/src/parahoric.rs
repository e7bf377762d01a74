//! Standard parahoric types: proper subsets of the affine simple
//! reflections, their finite Levi Weyl groups inside the extended affine
//! Weyl group, and the classical integer-sequence indexing for types A,
//! B and C.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::extweyl::{self, ExtWeylElt};
use crate::rootsys::{CartanType, RootDatum};

/// A standard parahoric type: the subset of affine node indices whose
/// simple reflections generate the (finite) Levi Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParahoricType {
    subset: BTreeSet<usize>,
}

/// Strictly increasing sequence indexing a standard parahoric of a
/// classical group; the entries are the affine nodes *not* merged, i.e.
/// the complement of the parahoric subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalIndex(pub Vec<usize>);

impl ParahoricType {
    /// A subset is a valid standard parahoric type exactly when it is a
    /// proper subset of the affine node set, which is what makes the
    /// generated group finite for irreducible data.
    pub fn new(datum: &RootDatum, subset: BTreeSet<usize>) -> Result<Self> {
        let n = datum.rank();
        if let Some(&bad) = subset.iter().find(|&&i| i > n) {
            return Err(Error::IndexOutOfRange { index: bad, max: n });
        }
        if subset.len() == n + 1 {
            return Err(Error::InfiniteGroup(
                "the full affine node set generates an infinite group".into(),
            ));
        }
        Ok(Self { subset })
    }

    pub fn iwahori(_datum: &RootDatum) -> Self {
        Self {
            subset: BTreeSet::new(),
        }
    }

    pub fn subset(&self) -> &BTreeSet<usize> {
        &self.subset
    }

    pub fn indices(&self) -> Vec<usize> {
        self.subset.iter().copied().collect()
    }

    pub fn is_iwahori(&self) -> bool {
        self.subset.is_empty()
    }

    /// Explicit element list of `W_P`, closed under multiplication.
    pub fn levi_weyl_group(&self, datum: &RootDatum) -> Result<Vec<ExtWeylElt>> {
        extweyl::generated_subgroup(datum, &self.indices(), 1 << 22)
    }
}

/// Every standard parahoric type, i.e. every proper subset of the
/// affine nodes, in ascending bitmask order starting with the Iwahori.
pub fn enumerate_standard(datum: &RootDatum) -> Vec<ParahoricType> {
    let nodes = datum.rank() + 1;
    let full: u64 = (1 << nodes) - 1;
    (0..full)
        .map(|mask| ParahoricType {
            subset: (0..nodes).filter(|i| mask & (1 << i) != 0).collect(),
        })
        .collect()
}

fn check_classical(datum: &RootDatum) -> Result<()> {
    match datum.cartan_type() {
        CartanType::A | CartanType::B | CartanType::C => Ok(()),
        t => Err(Error::Unsupported(format!(
            "classical indexing is defined for types A, B, C; got {}",
            t.letter()
        ))),
    }
}

/// The sequence of nodes not merged into the parahoric, sorted
/// increasingly; for type A rank `n-1` the values run in `[0, n)`, for
/// types B/C rank `n` in `[0, n]`.
pub fn to_classical_index(datum: &RootDatum, p: &ParahoricType) -> Result<ClassicalIndex> {
    check_classical(datum)?;
    let nodes = datum.rank() + 1;
    Ok(ClassicalIndex(
        (0..nodes).filter(|i| !p.subset.contains(i)).collect(),
    ))
}

pub fn from_classical_index(datum: &RootDatum, index: &ClassicalIndex) -> Result<ParahoricType> {
    check_classical(datum)?;
    let nodes = datum.rank() + 1;
    if index.0.is_empty() {
        return Err(Error::Parse(
            "classical index sequence must be nonempty".into(),
        ));
    }
    if !index.0.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Parse(
            "classical index sequence must be strictly increasing".into(),
        ));
    }
    if *index.0.last().unwrap() >= nodes {
        return Err(Error::IndexOutOfRange {
            index: *index.0.last().unwrap(),
            max: nodes - 1,
        });
    }
    let excluded: BTreeSet<usize> = index.0.iter().copied().collect();
    ParahoricType::new(
        datum,
        (0..nodes).filter(|i| !excluded.contains(i)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::IsogenyFlavor;

    fn datum(t: CartanType, n: usize) -> RootDatum {
        RootDatum::new(t, n, IsogenyFlavor::SimplyConnected).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        // SL(2): three standard types
        let d = datum(CartanType::A, 1);
        let all = enumerate_standard(&d);
        assert_eq!(all.len(), 3);
        assert!(all[0].is_iwahori());

        // SL(n): 2^n - 1 for affine node count n
        for rank in 1..=5 {
            let d = datum(CartanType::A, rank);
            assert_eq!(enumerate_standard(&d).len(), (1 << (rank + 1)) - 1);
        }
        // Sp(2n) and SO(2n+1): 2^{n+1} - 1
        for rank in 2..=4 {
            for t in [CartanType::B, CartanType::C] {
                let d = datum(t, rank);
                assert_eq!(enumerate_standard(&d).len(), (1 << (rank + 1)) - 1);
            }
        }
    }

    #[test]
    fn rejects_full_subset_and_bad_indices() {
        let d = datum(CartanType::A, 1);
        assert!(ParahoricType::new(&d, [0, 1].into_iter().collect()).is_err());
        assert!(ParahoricType::new(&d, [5].into_iter().collect()).is_err());
    }

    #[test]
    fn levi_weyl_groups() {
        let d = datum(CartanType::A, 1);
        let iwahori = ParahoricType::iwahori(&d);
        assert_eq!(iwahori.levi_weyl_group(&d).unwrap().len(), 1);
        let p = ParahoricType::new(&d, [1].into_iter().collect()).unwrap();
        let w = p.levi_weyl_group(&d).unwrap();
        assert_eq!(w.len(), 2);

        let d = datum(CartanType::A, 2);
        let p = ParahoricType::new(&d, [1, 2].into_iter().collect()).unwrap();
        assert_eq!(p.levi_weyl_group(&d).unwrap().len(), 6);
        // the subgroup through node 0 is also an A2 Weyl group
        let p = ParahoricType::new(&d, [0, 1].into_iter().collect()).unwrap();
        assert_eq!(p.levi_weyl_group(&d).unwrap().len(), 6);
    }

    #[test]
    fn levi_group_closure_and_delta_fixed() {
        let d = datum(CartanType::A, 2);
        let p = ParahoricType::new(&d, [0, 2].into_iter().collect()).unwrap();
        let elems = p.levi_weyl_group(&d).unwrap();
        let set: std::collections::BTreeSet<_> = elems.iter().cloned().collect();
        for a in &elems {
            for b in &elems {
                assert!(set.contains(&extweyl::mul(&d, a, b)));
            }
            let delta = crate::afflattice::AffWeight::delta(d.rank());
            assert_eq!(extweyl::act_on_weight(&d, a, &delta), delta);
        }
    }

    #[test]
    fn inclusion_of_types_gives_inclusion_of_groups() {
        let d = datum(CartanType::A, 2);
        let small = ParahoricType::new(&d, [1].into_iter().collect()).unwrap();
        let big = ParahoricType::new(&d, [0, 1].into_iter().collect()).unwrap();
        let ws: BTreeSet<_> = small.levi_weyl_group(&d).unwrap().into_iter().collect();
        let wb: BTreeSet<_> = big.levi_weyl_group(&d).unwrap().into_iter().collect();
        assert!(ws.is_subset(&wb));
    }

    #[test]
    fn classical_indexing() {
        // Iwahori of SL(2) <-> (0, 1)
        let d = datum(CartanType::A, 1);
        let iw = ParahoricType::iwahori(&d);
        assert_eq!(to_classical_index(&d, &iw).unwrap().0, vec![0, 1]);

        // G(O) of SL(n): all finite nodes merged <-> (0)
        for rank in 1..=4 {
            let d = datum(CartanType::A, rank);
            let go = ParahoricType::new(&d, (1..=rank).collect()).unwrap();
            assert_eq!(to_classical_index(&d, &go).unwrap().0, vec![0]);
        }

        // round trips on every enumerated type
        for t in [CartanType::A, CartanType::B, CartanType::C] {
            let rank = if t == CartanType::A { 4 } else { 3 };
            let d = datum(t, rank);
            for p in enumerate_standard(&d) {
                let idx = to_classical_index(&d, &p).unwrap();
                assert_eq!(from_classical_index(&d, &idx).unwrap(), p);
            }
        }

        // unsupported type
        let d = datum(CartanType::G, 2);
        assert!(to_classical_index(&d, &ParahoricType::iwahori(&d)).is_err());

        // malformed sequences
        let d = datum(CartanType::A, 2);
        assert!(from_classical_index(&d, &ClassicalIndex(vec![])).is_err());
        assert!(from_classical_index(&d, &ClassicalIndex(vec![1, 1])).is_err());
        assert!(from_classical_index(&d, &ClassicalIndex(vec![0, 7])).is_err());
    }
}
