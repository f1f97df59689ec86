//! Cohomology H^•(A, k) of connected graded algebras through minimal free resolutions.

pub mod cobar;
pub mod growth;
pub mod products;
pub mod resolution;

use crate::algebras::{AlgError, BasedAlgebra, Grade, SparseVec, TowerAlgebra, MAX_GRADE_LEN};
use crate::scalars::Field;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

pub use cobar::{b1_oracle, cobar_betti, cobar_f2_check, monomial_basis, F2Report, MonomialBasis};
pub use growth::{
    growth_rate, series_betti, spectral_bound_check, tower_betti, GrowthReport, SpectralReport,
};
pub use products::{
    restriction_on_cohomology, simple_root_embedding, yoneda_product, CohomClass, RestrictionReport,
};
pub use resolution::{
    minimal_resolution, minimal_resolution_at, torus_invariant_betti, Resolution,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CohomError {
    #[error("algebra is not local: {0}")]
    NotLocal(String),
    #[error("Betti numbers did not stabilize up to internal degree {0}")]
    CutoffUnstable(u32),
    #[error("an internal-degree cutoff is required for infinite-dimensional algebras")]
    CutoffRequired,
    #[error("degree {0} outside the computed range 0..={1}")]
    DegreeOutOfRange(usize, usize),
    #[error("generator weights are unavailable")]
    WeightsMissing,
    #[error("monomials do not form a basis: {0}")]
    BasisMismatch(String),
    #[error("map is not an algebra embedding: {0}")]
    NotASubalgebraMap(String),
    #[error("sequence too short: {0} < 8 terms")]
    TooShort(usize),
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A connected ℕ^g-graded algebra with finite-dimensional graded pieces.
///
/// Basis elements are addressed by opaque ids; the unit is a basis element of grade 0 and
/// spans the grade-0 piece.
pub trait GradedAlgebra<K: Field>: Send + Sync {
    fn field(&self) -> &K;
    fn unit_id(&self) -> usize;
    fn is_finite(&self) -> bool;
    /// Grades with a nonzero piece and total degree at most `max_total`, in increasing order.
    fn grades_upto(&self, max_total: u32) -> Vec<Grade>;
    fn basis_in(&self, g: &Grade) -> Vec<usize>;
    fn grade_of(&self, id: usize) -> Grade;
    /// Weight in root coordinates.
    fn weight_of(&self, id: usize) -> Vec<i64>;
    fn mul(&self, a: usize, b: usize) -> SparseVec<K::E>;
    fn root_type(&self) -> String;
    fn label(&self, id: usize) -> String;
    /// Largest total degree of a nonzero piece, for finite algebras.
    fn top_total(&self) -> Option<u32>;
}

/// A finite-dimensional [`BasedAlgebra`] with a connected grading.
pub struct FiniteGraded<K: Field> {
    pub alg: Arc<BasedAlgebra<K>>,
    by_grade: BTreeMap<Grade, Vec<usize>>,
    grades: Vec<Grade>,
    unit: usize,
}

impl<K: Field> FiniteGraded<K> {
    pub fn new(alg: Arc<BasedAlgebra<K>>) -> Result<Self, CohomError> {
        let k = &alg.field;
        let unit = match alg.unit().as_slice() {
            [(u, c)] if k.is_one(c) => *u,
            _ => return Err(CohomError::NotLocal("unit is not a basis element".into())),
        };
        let mut by_grade: BTreeMap<Grade, Vec<usize>> = BTreeMap::new();
        for i in 0..alg.dim() {
            let g = alg.grade(i).ok_or_else(|| {
                CohomError::NotLocal(format!("{} carries no grading", alg.info.kind))
            })?;
            by_grade.entry(g).or_default().push(i);
        }
        let zero = match by_grade.keys().next() {
            Some(g) if g.total() == 0 => *g,
            _ => return Err(CohomError::NotLocal("no grade-zero piece".into())),
        };
        if by_grade[&zero] != vec![unit] || by_grade.keys().filter(|g| g.total() == 0).count() != 1
        {
            return Err(CohomError::NotLocal(
                "grade-zero piece is not spanned by the unit".into(),
            ));
        }
        for i in 0..alg.dim() {
            if i != unit && !k.is_zero(&alg.augmentation(i)) {
                return Err(CohomError::NotLocal(
                    "augmentation does not vanish in positive degree".into(),
                ));
            }
        }
        let grades = by_grade.keys().copied().collect();
        Ok(FiniteGraded {
            alg,
            by_grade,
            grades,
            unit,
        })
    }
}

impl<K: Field> GradedAlgebra<K> for FiniteGraded<K> {
    fn field(&self) -> &K {
        &self.alg.field
    }
    fn unit_id(&self) -> usize {
        self.unit
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn grades_upto(&self, max_total: u32) -> Vec<Grade> {
        self.grades
            .iter()
            .copied()
            .filter(|g| g.total() <= max_total)
            .collect()
    }
    fn basis_in(&self, g: &Grade) -> Vec<usize> {
        self.by_grade.get(g).cloned().unwrap_or_default()
    }
    fn grade_of(&self, id: usize) -> Grade {
        self.alg.grade(id).unwrap()
    }
    fn weight_of(&self, id: usize) -> Vec<i64> {
        self.alg.weight(id)
    }
    fn mul(&self, a: usize, b: usize) -> SparseVec<K::E> {
        self.alg.mul_basis(a, b)
    }
    fn root_type(&self) -> String {
        self.alg.info.root_type.clone()
    }
    fn label(&self, id: usize) -> String {
        self.alg.label(id)
    }
    fn top_total(&self) -> Option<u32> {
        self.grades.last().map(|g| g.total())
    }
}

const TOWER_BASE: usize = 64;

/// A tower algebra with possibly unbounded generators, graded by exponent vectors.
/// Ids pack the exponent vector in base 64, first generator most significant.
pub struct TowerGraded<K: Field> {
    pub tower: TowerAlgebra<K>,
}

impl<K: Field> TowerGraded<K> {
    pub fn new(tower: TowerAlgebra<K>) -> Result<Self, CohomError> {
        if tower.num_gens() > MAX_GRADE_LEN {
            return Err(CohomError::TooLarge(format!(
                "{} generators",
                tower.num_gens()
            )));
        }
        Ok(TowerGraded { tower })
    }

    fn encode(&self, a: &[u32]) -> usize {
        a.iter().fold(0, |acc, &x| acc * TOWER_BASE + x as usize)
    }

    fn decode(&self, mut id: usize) -> Vec<u32> {
        let m = self.tower.num_gens();
        let mut a = vec![0u32; m];
        for t in (0..m).rev() {
            a[t] = (id % TOWER_BASE) as u32;
            id /= TOWER_BASE;
        }
        a
    }
}

impl<K: Field> GradedAlgebra<K> for TowerGraded<K> {
    fn field(&self) -> &K {
        &self.tower.field
    }
    fn unit_id(&self) -> usize {
        0
    }
    fn is_finite(&self) -> bool {
        self.tower.is_finite()
    }
    fn grades_upto(&self, max_total: u32) -> Vec<Grade> {
        let max_total = max_total.min(TOWER_BASE as u32 - 1);
        let mut out = vec![];
        let m = self.tower.num_gens();
        let mut cur = vec![0u32; m];
        fn rec(
            t: usize,
            left: u32,
            cur: &mut Vec<u32>,
            gens: &[crate::algebras::TowerGen],
            out: &mut Vec<Grade>,
        ) {
            if t == cur.len() {
                out.push(Grade::from_slice(cur));
                return;
            }
            let top = gens[t].bound.map_or(left, |b| left.min(b - 1));
            for x in 0..=top {
                cur[t] = x;
                rec(t + 1, left - x, cur, gens, out);
            }
            cur[t] = 0;
        }
        rec(0, max_total, &mut cur, &self.tower.gens, &mut out);
        out.sort();
        out
    }
    fn basis_in(&self, g: &Grade) -> Vec<usize> {
        let a = g.coords();
        if a.len() == self.tower.num_gens()
            && self.tower.allowed(&a)
            && a.iter().all(|&x| (x as usize) < TOWER_BASE)
        {
            vec![self.encode(&a)]
        } else {
            vec![]
        }
    }
    fn grade_of(&self, id: usize) -> Grade {
        Grade::from_slice(&self.decode(id))
    }
    fn weight_of(&self, id: usize) -> Vec<i64> {
        self.tower.weight(&self.decode(id))
    }
    fn mul(&self, a: usize, b: usize) -> SparseVec<K::E> {
        match self.tower.mul(&self.decode(a), &self.decode(b)) {
            Some((c, s)) if s.iter().all(|&x| (x as usize) < TOWER_BASE) => {
                vec![(self.encode(&s), c)]
            }
            _ => vec![],
        }
    }
    fn root_type(&self) -> String {
        self.tower.info.root_type.clone()
    }
    fn label(&self, id: usize) -> String {
        let v: Vec<String> = self.decode(id).iter().map(|x| x.to_string()).collect();
        format!("X[{}]", v.join(","))
    }
    fn top_total(&self) -> Option<u32> {
        if self.tower.is_finite() {
            Some(self.tower.gens.iter().map(|g| g.bound.unwrap() - 1).sum())
        } else {
            None
        }
    }
}

/// Wraps a finite algebra for the resolution engine.
pub fn graded<K: Field>(alg: &BasedAlgebra<K>) -> Result<Arc<dyn GradedAlgebra<K>>, CohomError> {
    Ok(Arc::new(FiniteGraded::new(Arc::new(alg.clone()))?))
}

/// Wraps a tower algebra (finite or not) for the resolution engine.
pub fn graded_tower<K: Field>(
    t: &TowerAlgebra<K>,
) -> Result<Arc<dyn GradedAlgebra<K>>, CohomError> {
    Ok(Arc::new(TowerGraded::new(t.clone())?))
}
