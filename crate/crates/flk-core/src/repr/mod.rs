//! Modules given by action matrices: baby Verma modules, simple heads, characters, Ext¹.

pub mod brute;
pub mod ext;
pub mod verma;

use crate::algebras::AlgError;
use crate::linalg::Mat;
use crate::rootdata::Weight;
use crate::scalars::Field;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

pub use brute::{brute_submodules, SubmoduleLattice};
pub use ext::{
    basis_action, check_relations, ext1, ext1_with_budget, hom_dim, is_free_on, regular_module,
    trivial_module, EXT_BUDGET,
};
pub use verma::{baby_verma, character, contravariant_gram, radical, shift_character, simple_head};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("field has {0} elements, too many to enumerate")]
    FieldTooLarge(u64),
    #[error("module too large: {0}")]
    TooLarge(String),
    #[error("action matrices violate the algebra relations: {0}")]
    NotAModule(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Clone, Debug)]
pub struct ModGen<E> {
    pub name: String,
    /// Column j is the image of basis vector j.
    pub mat: Mat<E>,
    /// Diagonal operators from the toral part; used to split submodules into eigenspaces.
    pub toral: bool,
}

#[derive(Clone, Debug)]
pub struct FLModule<K: Field> {
    pub field: K,
    pub label: String,
    /// X-weight of each basis vector, fundamental-weight coordinates.
    pub weights: Vec<Weight>,
    pub gens: Vec<ModGen<K::E>>,
    /// r_x = e_λᵀ ω(x) for the basis vector x v_λ (baby Vermas only).
    pub contra_rows: Option<Mat<K::E>>,
    /// Action of an arbitrary algebra basis element, when known in closed form.
    pub basis_rep: Option<BasisRep<K::E>>,
}

/// Basis index ↦ action matrix.
#[derive(Clone)]
pub struct BasisRep<E>(pub Arc<dyn Fn(usize) -> Mat<E> + Send + Sync>);

impl<E> std::fmt::Debug for BasisRep<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("BasisRep")
    }
}

/// Formal character: weight ↦ multiplicity.
pub type Character = BTreeMap<Vec<i64>, usize>;

impl<K: Field> FLModule<K> {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn gen(&self, name: &str) -> Option<&Mat<K::E>> {
        self.gens.iter().find(|g| g.name == name).map(|g| &g.mat)
    }

    /// Keeps only the listed generators (restriction to the subalgebra they generate).
    pub fn restrict(&self, names: &[&str]) -> FLModule<K> {
        let mut m = self.clone();
        m.gens.retain(|g| names.contains(&g.name.as_str()));
        m.contra_rows = None;
        m.basis_rep = None;
        m
    }

    pub fn apply(&self, name: &str, v: &[K::E]) -> Option<Vec<K::E>> {
        self.gen(name)
            .map(|m| crate::linalg::mat_vec(&self.field, m, v))
    }

    /// Every generator maps the weight-μ space into weight μ + wt(generator) for some fixed shift.
    pub fn weight_compatible(&self) -> bool {
        let k = &self.field;
        for g in &self.gens {
            let mut shift: Option<Vec<i64>> = None;
            for j in 0..self.dim() {
                for i in 0..self.dim() {
                    if k.is_zero(&g.mat[i][j]) {
                        continue;
                    }
                    let d: Vec<i64> = self.weights[i]
                        .0
                        .iter()
                        .zip(&self.weights[j].0)
                        .map(|(a, b)| a - b)
                        .collect();
                    match &shift {
                        None => shift = Some(d),
                        Some(s) if *s != d => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// One-dimensional module of the given weight on which the listed nilpotent generators act by 0
/// and each toral generator acts by its given scalar.
pub fn one_dim<K: Field>(
    field: &K,
    weight: Weight,
    gens: Vec<(String, K::E, bool)>,
) -> FLModule<K> {
    FLModule {
        field: field.clone(),
        label: format!("k{:?}", weight.0),
        weights: vec![weight],
        gens: gens
            .into_iter()
            .map(|(name, x, toral)| ModGen {
                name,
                mat: vec![vec![x]],
                toral,
            })
            .collect(),
        contra_rows: None,
        basis_rep: None,
    }
}
