//! Exhaustive submodule enumeration over small finite fields.
//!
//! Toral generators are diagonal, so every submodule is the sum of its intersections with the
//! joint eigenspaces. It is therefore a sum of cyclic submodules generated by joint
//! eigenvectors, and those are enumerated point by point.

use super::{FLModule, ReprError};
use crate::linalg::{mat_vec, Subspace};
use crate::scalars::Field;
use std::collections::{BTreeMap, HashSet};

pub const MAX_BRUTE_DIM: usize = 16;
pub const MAX_FIELD_SIZE: u64 = 10_000;
const MAX_POINTS: u64 = 2_000_000;
const MAX_LATTICE: usize = 20_000;

#[derive(Clone, Debug)]
pub struct SubmoduleLattice<K: Field> {
    pub ambient: usize,
    /// All submodules, sorted by dimension.
    pub subs: Vec<Subspace<K>>,
}

impl<K: Field> SubmoduleLattice<K> {
    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.ambient > 0 && self.subs.len() == 2
    }

    /// Proper submodules not contained in any other proper submodule.
    pub fn maximal(&self, k: &K) -> Vec<&Subspace<K>> {
        let proper: Vec<&Subspace<K>> = self
            .subs
            .iter()
            .filter(|s| s.dim() < self.ambient)
            .collect();
        proper
            .iter()
            .filter(|s| {
                !proper
                    .iter()
                    .any(|t| t.dim() > s.dim() && s.rows.iter().all(|r| t.contains(k, r)))
            })
            .copied()
            .collect()
    }

    /// The unique maximal submodule, when the module is local.
    pub fn unique_maximal(&self, k: &K) -> Option<&Subspace<K>> {
        let m = self.maximal(k);
        (m.len() == 1).then(|| m[0])
    }
}

fn cyclic<K: Field>(m: &FLModule<K>, v: Vec<K::E>) -> Subspace<K> {
    let k = &m.field;
    let mut s = Subspace::new(m.dim());
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        if s.insert(k, x.clone()) {
            for g in &m.gens {
                stack.push(mat_vec(k, &g.mat, &x));
            }
        }
    }
    s
}

type Key<E> = (Vec<usize>, Vec<Vec<E>>);

fn key<K: Field>(s: &Subspace<K>) -> Key<K::E> {
    (s.pivots.clone(), s.rows.clone())
}

pub fn brute_submodules<K: Field>(m: &FLModule<K>) -> Result<SubmoduleLattice<K>, ReprError> {
    let k = &m.field;
    let d = m.dim();
    if d > MAX_BRUTE_DIM {
        return Err(ReprError::TooLarge(format!(
            "dimension {d} exceeds {MAX_BRUTE_DIM}"
        )));
    }
    let q = match k.size() {
        Some(q) if q <= MAX_FIELD_SIZE => q,
        Some(q) => return Err(ReprError::FieldTooLarge(q)),
        None => return Err(ReprError::FieldTooLarge(u64::MAX)),
    };
    // joint eigenspaces of the toral generators
    let mut groups: BTreeMap<Vec<String>, Vec<usize>> = BTreeMap::new();
    for i in 0..d {
        let sig: Vec<String> = m
            .gens
            .iter()
            .filter(|g| g.toral)
            .map(|g| format!("{:?}", g.mat[i][i]))
            .collect();
        groups.entry(sig).or_default().push(i);
    }
    for g in m.gens.iter().filter(|g| g.toral) {
        for (i, row) in g.mat.iter().enumerate() {
            if row.iter().enumerate().any(|(j, x)| j != i && !k.is_zero(x)) {
                return Err(ReprError::NotAModule(format!(
                    "toral generator {} is not diagonal",
                    g.name
                )));
            }
        }
    }
    let points: u64 = groups
        .values()
        .map(|idx| (q.pow(idx.len() as u32) - 1) / (q - 1))
        .sum();
    if points > MAX_POINTS {
        return Err(ReprError::TooLarge(format!("{points} projective points")));
    }
    let mut seen: HashSet<Key<K::E>> = HashSet::new();
    let mut subs: Vec<Subspace<K>> = vec![];
    let zero = Subspace::new(d);
    seen.insert(key(&zero));
    subs.push(zero);
    for idx in groups.values() {
        let e = idx.len();
        for lead in 0..e {
            let free = e - lead - 1;
            for code in 0..q.pow(free as u32) {
                let mut v = vec![k.zero(); d];
                v[idx[lead]] = k.one();
                let mut c = code;
                for t in 0..free {
                    v[idx[lead + 1 + t]] = k.nth(c % q);
                    c /= q;
                }
                let s = cyclic(m, v);
                if seen.insert(key(&s)) {
                    subs.push(s);
                }
            }
        }
    }
    // close under sums
    let mut frontier: Vec<usize> = (0..subs.len()).collect();
    while !frontier.is_empty() {
        let mut next = vec![];
        for &i in &frontier {
            for j in 0..subs.len() {
                let s = subs[i].sum(k, &subs[j]);
                if seen.insert(key(&s)) {
                    subs.push(s);
                    next.push(subs.len() - 1);
                    if subs.len() > MAX_LATTICE {
                        return Err(ReprError::TooLarge(format!(
                            "more than {MAX_LATTICE} submodules"
                        )));
                    }
                }
            }
        }
        frontier = next;
    }
    subs.sort_by_key(|s| s.dim());
    Ok(SubmoduleLattice { ambient: d, subs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{build_small_quantum, Part};
    use crate::repr::{baby_verma, radical, simple_head};
    use crate::rootdata::{RootDatum, Weight};
    use crate::scalars::{make_field, Cyclo, Gf};

    #[test]
    fn steinberg_simple_and_trivial_chain() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A1").unwrap();
        let g = build_small_quantum(&rd, &k, Part::G).unwrap();
        let st = baby_verma(&g, &Weight(vec![4])).unwrap();
        assert!(brute_submodules(&st).unwrap().is_simple());
        let z0 = baby_verma(&g, &Weight(vec![0])).unwrap();
        let lat = brute_submodules(&z0).unwrap();
        let max = lat.unique_maximal(&k).unwrap();
        assert_eq!(max.dim(), 4);
        let rad = Subspace::spanned_by(&k, 5, &radical(&z0));
        assert!(max.equals(&rad));
        let (l, _) = simple_head(&z0);
        assert!(brute_submodules(&l).unwrap().is_simple());
    }

    #[test]
    fn zero_module_and_large_field() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A1").unwrap();
        let g = build_small_quantum(&rd, &k, Part::G).unwrap();
        let mut z = baby_verma(&g, &Weight(vec![0])).unwrap();
        z.weights.clear();
        for gen in z.gens.iter_mut() {
            gen.mat.clear();
        }
        let lat = brute_submodules(&z).unwrap();
        assert_eq!(lat.len(), 1);
        let q0 = Cyclo::new(&make_field(0, 5).unwrap()).unwrap();
        let gq = build_small_quantum(&rd, &q0, Part::G).unwrap();
        let zq = baby_verma(&gq, &Weight(vec![1])).unwrap();
        assert!(matches!(
            brute_submodules(&zq),
            Err(ReprError::FieldTooLarge(_))
        ));
    }
}
