//! Versioned JSON dumps of algebras and resolutions.
//!
//! Scalars are stored as coefficient vectors over the basis 1, ζ, …, ζ^{d−1} of the field,
//! each coefficient as a decimal string (a rational `a/b` in characteristic zero). Every list
//! is written in a fixed order, so export ∘ import ∘ export is byte-identical.
//!
//! Tabulated algebras store their full structure constants. Lazily multiplied ones store only
//! the products computed so far together with the build parameters; import rebuilds the
//! algebra from those parameters and checks the stored products against it.

use crate::algebras::{
    associated_graded, build_dividedpower_kernel_a1, small::build_small_quantum_with_word,
    tower::build_tower_algebra_with_word, AlgError, AlgInfo, BasedAlgebra, Grade, HopfData,
    HopfGenerator, KernelPart, Part, SparseVec, TableCore,
};
use crate::cohomology::resolution::{FreeElem, FreeGen};
use crate::cohomology::{GradedAlgebra, Resolution};
use crate::rootdata::RootDatum;
use crate::scalars::{Field, FieldCtx, FieldElement};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;
const ALG_FORMAT: &str = "flk-algebra";
const RES_FORMAT: &str = "flk-resolution";

#[derive(Error, Debug)]
pub enum PersistError {
    #[error("format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("malformed dump: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

pub type Coeff = Vec<String>;
pub type SparseDump = Vec<(usize, Coeff)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfDump {
    pub name: String,
    pub element: SparseDump,
    pub adjoint_terms: Vec<(SparseDump, SparseDump)>,
    pub antipode_terms: Vec<(SparseDump, SparseDump)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub format: String,
    pub version: u32,
    pub field: FieldCtx,
    /// Build parameters; the rebuild recipe for lazily multiplied algebras.
    pub info: AlgInfo,
    pub tabulated: bool,
    pub labels: Vec<String>,
    pub weights: Vec<Vec<i64>>,
    pub grades: Option<Vec<Vec<u32>>>,
    pub augmentation: Vec<Coeff>,
    pub unit: SparseDump,
    /// (i, j, k, c): b_i b_j has coefficient c on b_k.
    pub products: Vec<(usize, usize, usize, Coeff)>,
    pub filtration: Option<Vec<u64>>,
    pub generators: Vec<(String, SparseDump)>,
    pub hopf: Option<Vec<HopfDump>>,
}

fn enc<K: Field>(k: &K, x: &K::E) -> Coeff {
    k.ctx().coeff_strings(&k.to_element(x))
}

fn dec<K: Field>(k: &K, c: &Coeff) -> Result<K::E, PersistError> {
    let ctx = k.ctx();
    if c.len() != ctx.degree() {
        return Err(PersistError::FieldMismatch(format!(
            "{} coefficients for a field of degree {}",
            c.len(),
            ctx.degree()
        )));
    }
    let bad = |s: &String| PersistError::Format(format!("bad coefficient {s}"));
    let el = if ctx.is_finite() {
        FieldElement::Finite(
            c.iter()
                .map(|s| s.parse::<u64>().map_err(|_| bad(s)))
                .collect::<Result<_, _>>()?,
        )
    } else {
        FieldElement::Rational(
            c.iter()
                .map(|s| BigRational::from_str(s).map_err(|_| bad(s)))
                .collect::<Result<_, _>>()?,
        )
    };
    Ok(k.from_element(&el))
}

fn enc_sv<K: Field>(k: &K, v: &SparseVec<K::E>) -> SparseDump {
    let mut out: SparseDump = v.iter().map(|(i, c)| (*i, enc(k, c))).collect();
    out.sort();
    out
}

fn dec_sv<K: Field>(k: &K, v: &SparseDump) -> Result<SparseVec<K::E>, PersistError> {
    v.iter().map(|(i, c)| Ok((*i, dec(k, c)?))).collect()
}

fn enc_pairs<K: Field>(
    k: &K,
    v: &[(SparseVec<K::E>, SparseVec<K::E>)],
) -> Vec<(SparseDump, SparseDump)> {
    v.iter()
        .map(|(a, b)| (enc_sv(k, a), enc_sv(k, b)))
        .collect()
}

fn dec_pairs<K: Field>(
    k: &K,
    v: &[(SparseDump, SparseDump)],
) -> Result<Vec<(SparseVec<K::E>, SparseVec<K::E>)>, PersistError> {
    v.iter()
        .map(|(a, b)| Ok((dec_sv(k, a)?, dec_sv(k, b)?)))
        .collect()
}

pub fn export_algebra<K: Field>(alg: &BasedAlgebra<K>) -> AlgebraDump {
    let k = &alg.field;
    let n = alg.dim();
    let mut products = vec![];
    let mut push = |i: usize, j: usize, v: &SparseVec<K::E>| {
        let mut v: Vec<_> = v.iter().map(|(t, c)| (*t, enc(k, c))).collect();
        v.sort();
        products.extend(v.into_iter().map(|(t, c)| (i, j, t, c)));
    };
    if alg.is_tabulated() {
        for i in 0..n {
            for j in 0..n {
                push(i, j, &alg.mul_basis(i, j));
            }
        }
    } else {
        for ((i, j), v) in alg.cached_products() {
            push(i, j, &v);
        }
    }
    let grades: Option<Vec<Vec<u32>>> = (0..n).map(|i| alg.grade(i).map(|g| g.coords())).collect();
    AlgebraDump {
        format: ALG_FORMAT.into(),
        version: FORMAT_VERSION,
        field: k.ctx().clone(),
        info: alg.info.clone(),
        tabulated: alg.is_tabulated(),
        labels: (0..n).map(|i| alg.label(i)).collect(),
        weights: (0..n).map(|i| alg.weight(i)).collect(),
        grades,
        augmentation: (0..n).map(|i| enc(k, &alg.augmentation(i))).collect(),
        unit: enc_sv(k, &alg.unit()),
        products,
        filtration: alg.filtration.clone(),
        generators: alg
            .generators
            .iter()
            .map(|(s, v)| (s.clone(), enc_sv(k, v)))
            .collect(),
        hopf: alg.hopf.as_ref().map(|h| {
            h.generators
                .iter()
                .map(|g| HopfDump {
                    name: g.name.clone(),
                    element: enc_sv(k, &g.element),
                    adjoint_terms: enc_pairs(k, &g.adjoint_terms),
                    antipode_terms: enc_pairs(k, &g.antipode_terms),
                })
                .collect()
        }),
    }
}

/// Rebuilds an algebra from its build parameters.
pub fn rebuild<K: Field>(
    info: &AlgInfo,
    field: &K,
    filtration: Option<&[u64]>,
) -> Result<BasedAlgebra<K>, AlgError> {
    if let Some(inner) = info.kind.strip_prefix("gr ") {
        let deg = filtration
            .ok_or_else(|| AlgError::BadParameters("gr algebra without filtration".into()))?;
        let base = rebuild(
            &AlgInfo {
                kind: inner.into(),
                ..info.clone()
            },
            field,
            None,
        )?;
        return associated_graded(&base, deg, 4096);
    }
    let rd = RootDatum::from_type_str(&info.root_type)?;
    match info.kind.as_str() {
        "small" => {
            build_small_quantum_with_word(&rd, field, Part::from_str(&info.part)?, &info.w0_word)
        }
        "kernel" => build_dividedpower_kernel_a1(field, info.r, KernelPart::from_str(&info.part)?),
        "tower" => {
            build_tower_algebra_with_word(&rd, field, info.r, &info.kill, &info.w0_word)?.to_based()
        }
        other => Err(AlgError::UnsupportedType(format!("no recipe for {other}"))),
    }
}

pub fn import_algebra<K: Field>(
    field: &K,
    dump: &AlgebraDump,
) -> Result<BasedAlgebra<K>, PersistError> {
    if dump.format != ALG_FORMAT {
        return Err(PersistError::Format(format!(
            "not an algebra dump: {}",
            dump.format
        )));
    }
    if dump.version != FORMAT_VERSION {
        return Err(PersistError::VersionMismatch {
            found: dump.version,
            expected: FORMAT_VERSION,
        });
    }
    if dump.field != *field.ctx() {
        return Err(PersistError::FieldMismatch(format!(
            "dump has {:?}, target has {:?}",
            dump.field,
            field.ctx()
        )));
    }
    let k = field;
    let n = dump.labels.len();
    let mut table: HashMap<(usize, usize), SparseVec<K::E>> = HashMap::new();
    for (i, j, t, c) in &dump.products {
        if *i >= n || *j >= n || *t >= n {
            return Err(PersistError::Format(format!(
                "product index ({i}, {j}, {t}) out of range"
            )));
        }
        table.entry((*i, *j)).or_default().push((*t, dec(k, c)?));
    }
    let mut alg = if dump.tabulated {
        let grades = dump
            .grades
            .as_ref()
            .map(|g| g.iter().map(|c| Grade::from_slice(c)).collect());
        let aug = dump
            .augmentation
            .iter()
            .map(|c| dec(k, c))
            .collect::<Result<Vec<_>, _>>()?;
        let core = TableCore::from_triples(
            dump.labels.clone(),
            dump.weights.clone(),
            grades,
            aug,
            dec_sv(k, &dump.unit)?,
            &|i, j| table.get(&(i, j)).cloned().unwrap_or_default(),
        );
        let mut a = BasedAlgebra::new(field.clone(), dump.info.clone(), Arc::new(core));
        a.filtration = dump.filtration.clone();
        a.generators = dump
            .generators
            .iter()
            .map(|(s, v)| Ok((s.clone(), dec_sv(k, v)?)))
            .collect::<Result<_, PersistError>>()?;
        a.hopf = match &dump.hopf {
            None => None,
            Some(h) => Some(HopfData {
                generators: h
                    .iter()
                    .map(|g| {
                        Ok(HopfGenerator {
                            name: g.name.clone(),
                            element: dec_sv(k, &g.element)?,
                            adjoint_terms: dec_pairs(k, &g.adjoint_terms)?,
                            antipode_terms: dec_pairs(k, &g.antipode_terms)?,
                        })
                    })
                    .collect::<Result<_, PersistError>>()?,
            }),
        };
        a
    } else {
        let a = rebuild(&dump.info, field, dump.filtration.as_deref())?;
        if a.dim() != n {
            return Err(PersistError::Format(format!(
                "rebuilt dimension {} differs from {n}",
                a.dim()
            )));
        }
        let mut keys: Vec<_> = table.keys().copied().collect();
        keys.sort();
        for (i, j) in keys {
            let mut want = table[&(i, j)].clone();
            want.sort_by_key(|x| x.0);
            let mut got = a.mul_basis(i, j);
            got.sort_by_key(|x| x.0);
            if got != want {
                return Err(PersistError::Format(format!(
                    "cached product ({i}, {j}) disagrees with the rebuilt algebra"
                )));
            }
        }
        a
    };
    alg.notes.push("imported".into());
    Ok(alg)
}

pub fn algebra_to_json<K: Field>(alg: &BasedAlgebra<K>) -> Result<String, PersistError> {
    Ok(serde_json::to_string(&export_algebra(alg))?)
}

pub fn algebra_from_json<K: Field>(field: &K, s: &str) -> Result<BasedAlgebra<K>, PersistError> {
    import_algebra(field, &serde_json::from_str(s)?)
}

pub fn save_algebra<K: Field>(alg: &BasedAlgebra<K>, path: &Path) -> Result<(), PersistError> {
    Ok(std::fs::write(path, algebra_to_json(alg)?)?)
}

pub fn load_algebra<K: Field>(field: &K, path: &Path) -> Result<BasedAlgebra<K>, PersistError> {
    algebra_from_json(field, &std::fs::read_to_string(path)?)
}

/// Reads only the field context of a dump, to pick a field before importing.
pub fn peek_field(s: &str) -> Result<FieldCtx, PersistError> {
    #[derive(Deserialize)]
    struct Head {
        version: u32,
        field: FieldCtx,
    }
    let h: Head = serde_json::from_str(s)?;
    if h.version != FORMAT_VERSION {
        return Err(PersistError::VersionMismatch {
            found: h.version,
            expected: FORMAT_VERSION,
        });
    }
    Ok(h.field)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDump {
    pub format: String,
    pub version: u32,
    pub field: FieldCtx,
    pub n_max: usize,
    pub cutoff: Option<u32>,
    pub betti: Vec<usize>,
    /// Per degree: (grade, weight) of each free generator.
    pub gens: Vec<Vec<(Vec<u32>, Vec<i64>)>>,
    /// Per degree and generator: ((generator, basis id), coefficient) terms of the differential.
    pub diffs: Vec<Vec<Vec<((usize, usize), Coeff)>>>,
}

pub fn export_resolution<K: Field>(res: &Resolution<K>) -> ResolutionDump {
    let k = res.field();
    ResolutionDump {
        format: RES_FORMAT.into(),
        version: FORMAT_VERSION,
        field: k.ctx().clone(),
        n_max: res.n_max,
        cutoff: res.cutoff,
        betti: res.betti(),
        gens: res
            .gens
            .iter()
            .map(|v| {
                v.iter()
                    .map(|g| (g.grade.coords(), g.weight.clone()))
                    .collect()
            })
            .collect(),
        diffs: res
            .diffs
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| {
                        let mut t: Vec<_> = x.iter().map(|(key, c)| (*key, enc(k, c))).collect();
                        t.sort();
                        t
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Attaches a stored resolution to its algebra; d∘d = 0 and minimality are re-checked.
pub fn import_resolution<K: Field>(
    alg: Arc<dyn GradedAlgebra<K>>,
    dump: &ResolutionDump,
) -> Result<Resolution<K>, PersistError> {
    if dump.format != RES_FORMAT {
        return Err(PersistError::Format(format!(
            "not a resolution dump: {}",
            dump.format
        )));
    }
    if dump.version != FORMAT_VERSION {
        return Err(PersistError::VersionMismatch {
            found: dump.version,
            expected: FORMAT_VERSION,
        });
    }
    let k = alg.field().clone();
    if dump.field != *k.ctx() {
        return Err(PersistError::FieldMismatch(format!(
            "dump has {:?}, target has {:?}",
            dump.field,
            k.ctx()
        )));
    }
    let gens: Vec<Vec<FreeGen>> = dump
        .gens
        .iter()
        .map(|v| {
            v.iter()
                .map(|(g, w)| FreeGen {
                    grade: Grade::from_slice(g),
                    weight: w.clone(),
                })
                .collect()
        })
        .collect();
    let diffs: Vec<Vec<FreeElem<K::E>>> = dump
        .diffs
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x.iter().map(|(key, c)| Ok((*key, dec(&k, c)?))).collect())
                .collect()
        })
        .collect::<Result<_, PersistError>>()?;
    let res = Resolution {
        alg,
        n_max: dump.n_max,
        cutoff: dump.cutoff,
        gens,
        diffs,
    };
    if res.betti() != dump.betti || !res.verify() {
        return Err(PersistError::Format(
            "stored differentials do not form a minimal resolution".into(),
        ));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{build_small_quantum, build_tower_algebra};
    use crate::cohomology::{graded, minimal_resolution};
    use crate::scalars::{make_field, make_field_with_factor, Cyclo, Gf};

    #[test]
    fn algebra_round_trip_is_byte_identical() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A1").unwrap();
        for part in [Part::U, Part::B, Part::G] {
            let a = build_small_quantum(&rd, &k, part).unwrap();
            let s = algebra_to_json(&a).unwrap();
            let b = algebra_from_json(&k, &s).unwrap();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let (mut x, mut y) = (a.mul_basis(i, j), b.mul_basis(i, j));
                    x.sort_by_key(|t| t.0);
                    y.sort_by_key(|t| t.0);
                    assert_eq!(x, y);
                }
            }
            assert_eq!(algebra_to_json(&b).unwrap(), s);
        }
        let q = Cyclo::new(&make_field(0, 5).unwrap()).unwrap();
        let a = build_small_quantum(&rd, &q, Part::U).unwrap();
        let s = algebra_to_json(&a).unwrap();
        assert_eq!(
            algebra_to_json(&algebra_from_json(&q, &s).unwrap()).unwrap(),
            s
        );
    }

    #[test]
    fn mismatches() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A1").unwrap();
        let a = build_small_quantum(&rd, &k, Part::U).unwrap();
        let mut d = export_algebra(&a);
        d.version = 99;
        assert!(matches!(
            import_algebra(&k, &d),
            Err(PersistError::VersionMismatch { found: 99, .. })
        ));
        // 𝔽_11 contains ζ_5, so Φ_5 splits into linear factors; pick another one
        let other = Gf::new(&make_field_with_factor(11, 5, 1).unwrap()).unwrap();
        assert_ne!(other.ctx().m, k.ctx().m);
        let d = export_algebra(&a);
        assert!(matches!(
            import_algebra(&other, &d),
            Err(PersistError::FieldMismatch(_))
        ));
        let mut d2 = d.clone();
        d2.field.m[0] += 1;
        assert!(matches!(
            import_algebra(&k, &d2),
            Err(PersistError::FieldMismatch(_))
        ));
    }

    #[test]
    fn lazy_export_keeps_cache_and_recipe() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A2").unwrap();
        let g = build_small_quantum(&rd, &k, Part::B).unwrap();
        assert!(!g.is_tabulated());
        for i in 0..20 {
            g.mul_basis(i, 3 * i + 1);
        }
        let d = export_algebra(&g);
        assert!(!d.tabulated);
        let pairs: std::collections::BTreeSet<(usize, usize)> =
            d.products.iter().map(|x| (x.0, x.1)).collect();
        assert!(pairs.len() <= 20);
        let h = import_algebra(&k, &d).unwrap();
        assert_eq!(h.dim(), g.dim());
        assert_eq!(h.mul_basis(5, 16), g.mul_basis(5, 16));
        let mut bad = d.clone();
        if let Some(x) = bad.products.first_mut() {
            x.3 = enc(&k, &k.add(&dec(&k, &x.3).unwrap(), &k.one()));
        }
        assert!(matches!(
            import_algebra(&k, &bad),
            Err(PersistError::Format(_))
        ));
    }

    #[test]
    fn resolution_round_trip() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A2").unwrap();
        let t = build_tower_algebra(&rd, &k, 0, &[0, 1, 2])
            .unwrap()
            .to_based()
            .unwrap();
        let ga = graded(&t).unwrap();
        let res = minimal_resolution(ga.clone(), 3, None).unwrap();
        let d = export_resolution(&res);
        let s = serde_json::to_string(&d).unwrap();
        let back = import_resolution(ga, &serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back.betti(), res.betti());
        assert_eq!(serde_json::to_string(&export_resolution(&back)).unwrap(), s);
    }
}
