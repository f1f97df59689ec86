use anyhow::{bail, Context, Result};
use flk_core::algebras::{
    associated_graded, build_dividedpower_kernel_a1, build_small_quantum, build_tower_algebra,
    pbw_filtration, BasedAlgebra, KernelPart, Part,
};
use flk_core::persist::{algebra_from_json, algebra_to_json, peek_field};
use flk_core::rootdata::RootDatum;
use flk_core::scalars::{make_field, Cyclo, Field, Gf};
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const CACHE_ENV: &str = "FLK_CACHE_DIR";

/// Everything needed to build one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgSpec {
    pub root_type: String,
    pub ell: u64,
    pub p: u64,
    pub r: u32,
    pub part: String,
    pub tower: bool,
    pub kill: Vec<i64>,
    pub gr: bool,
}

impl AlgSpec {
    pub fn cache_key(&self) -> String {
        let kill: Vec<String> = self.kill.iter().map(|x| x.to_string()).collect();
        format!(
            "{}-{}-l{}-p{}-r{}-{}{}{}.json",
            if self.tower { "tower" } else { "alg" },
            self.root_type,
            self.ell,
            self.p,
            self.r,
            self.part,
            if self.tower {
                format!("-k{}", kill.join("_"))
            } else {
                String::new()
            },
            if self.gr { "-gr" } else { "" }
        )
    }
}

pub enum AnyAlgebra {
    Gf(BasedAlgebra<Gf>),
    Q(BasedAlgebra<Cyclo>),
}

impl AnyAlgebra {
    pub fn to_json(&self) -> Result<String> {
        Ok(match self {
            AnyAlgebra::Gf(a) => algebra_to_json(a)?,
            AnyAlgebra::Q(a) => algebra_to_json(a)?,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Gf(a) => a.dim(),
            AnyAlgebra::Q(a) => a.dim(),
        }
    }

    pub fn tabulated(&self) -> bool {
        match self {
            AnyAlgebra::Gf(a) => a.is_tabulated(),
            AnyAlgebra::Q(a) => a.is_tabulated(),
        }
    }

    pub fn describe(&self) -> String {
        let i = match self {
            AnyAlgebra::Gf(a) => &a.info,
            AnyAlgebra::Q(a) => &a.info,
        };
        format!(
            "{} {} part={} ℓ={} p={} r={}",
            i.kind, i.root_type, i.part, i.ell, i.p, i.r
        )
    }
}

/// The cache directory: an explicit setting wins over `FLK_CACHE_DIR`.
pub fn cache_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| {
        std::env::var_os(CACHE_ENV)
            .filter(|s| !s.is_empty())
            .map(PathBuf::from)
    })
}

pub fn build_with<K: Field>(k: &K, s: &AlgSpec) -> Result<BasedAlgebra<K>> {
    let rd = RootDatum::from_type_str(&s.root_type)?;
    let mut alg = if s.tower {
        let kill: Vec<usize> = s
            .kill
            .iter()
            .map(|&x| usize::try_from(x))
            .collect::<Result<_, _>>()?;
        build_tower_algebra(&rd, k, s.r, &kill)?.to_based()?
    } else if s.r >= 1 {
        if s.root_type != "A1" {
            bail!("divided-power kernels with r ≥ 1 are available for A1 only");
        }
        build_dividedpower_kernel_a1(k, s.r, KernelPart::from_str(&s.part)?)?
    } else {
        build_small_quantum(&rd, k, Part::from_str(&s.part)?)?
    };
    if s.gr {
        alg = associated_graded(&alg, &pbw_filtration(&alg)?, 4096)?;
    }
    Ok(alg)
}

/// Builds an algebra, reading and writing `<cache>/<key>.json` when a cache directory is given.
pub fn build_algebra(s: &AlgSpec, cache: Option<&Path>) -> Result<AnyAlgebra> {
    if let Some(dir) = cache {
        let path = dir.join(s.cache_key());
        if path.exists() {
            return load_any(&path);
        }
    }
    let alg = if s.p == 0 {
        AnyAlgebra::Q(build_with(&Cyclo::new(&make_field(0, s.ell)?)?, s)?)
    } else {
        AnyAlgebra::Gf(build_with(&Gf::new(&make_field(s.p, s.ell)?)?, s)?)
    };
    if let Some(dir) = cache {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        // write then rename, so concurrent scenarios never read a partial dump
        let tmp = dir.join(format!(
            ".{}.{}.{:?}",
            s.cache_key(),
            std::process::id(),
            std::thread::current().id()
        ));
        std::fs::write(&tmp, alg.to_json()?)?;
        std::fs::rename(&tmp, dir.join(s.cache_key()))?;
    }
    Ok(alg)
}

pub fn load_any(path: &Path) -> Result<AnyAlgebra> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ctx = peek_field(&text)?;
    Ok(if ctx.p == 0 {
        AnyAlgebra::Q(algebra_from_json(&Cyclo::new(&ctx)?, &text)?)
    } else {
        AnyAlgebra::Gf(algebra_from_json(&Gf::new(&ctx)?, &text)?)
    })
}

pub fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<i64>()
                .with_context(|| format!("not an integer: {x}"))
        })
        .collect()
}

pub fn weight_string(w: &[i64]) -> String {
    let v: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}
