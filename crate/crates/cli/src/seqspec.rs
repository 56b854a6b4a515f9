//! Compact sequence descriptions for the command line.
//!
//! A spec is `name` or `name,key=value,key=value,...`:
//!
//! | name            | keys                                                        |
//! |-----------------|-------------------------------------------------------------|
//! | `kritzinger`    | `init` (values joined with `+`, default `0.5`), `init-file` |
//! | `kronecker`     | `alpha` (default the golden ratio), `start` (default 1)     |
//! | `vdc`           | `base` (default 2), `perm-file`, `perm-mode` (`broadcast`, `per-position`) |
//! | `sobol`         | `dim` (1..=3, default 1), `skip-zero` (default `true`)      |
//! | `kritzinger-nd` | `dim` (2 or 3, default 2), `method` (`random`, `grid`, `graddesc`, `multistart`), `budget`, `grid` |
//! | `optimal`       | (none) the size-n one-dimensional sets `{(2i−1)/(2n)}`      |
//!
//! `optimal` is a per-size family, not a prefix-nested sequence: the set for
//! each n is built from scratch. Paths given to `init-file`/`perm-file` may
//! not contain commas (the key separator).

use std::path::Path;

use lowdisc::greedy1d::generate_1d;
use lowdisc::optim::{generate_nd, Method, OptimizerConfig};
use lowdisc::sequences::{
    kronecker, parse_permutations, sobol, van_der_corput, KroneckerSpec, PermAssignment,
    SobolSpec, VdcSpec,
};
use lowdisc::textio::read_points_from_path;
use lowdisc::{Error, PointSet, Result};

/// A parsed sequence description.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    Kritzinger1d { init: Vec<f64> },
    Kronecker(KroneckerSpec),
    VanDerCorput(VdcSpec),
    Sobol(SobolSpec),
    KritzingerNd { dim: usize, cfg: OptimizerConfig },
    Optimal,
}

fn parse_kv(part: &str) -> Result<(&str, &str)> {
    part.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Error::domain(format!("expected key=value in sequence spec, got `{part}`")))
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::domain(format!("bad value `{v}` for `{key}`")))
}

impl SequenceSpec {
    /// Parses a spec string. File-backed keys (`init-file`, `perm-file`) are
    /// read here so later generation is infallible I/O-wise.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = s.split(',');
        let name = parts.next().unwrap_or("").trim();
        let kvs: Vec<(&str, &str)> = parts
            .map(|p| parse_kv(p.trim()))
            .collect::<Result<Vec<_>>>()?;
        let reject_unknown = |allowed: &[&str]| -> Result<()> {
            for (k, _) in &kvs {
                if !allowed.contains(k) {
                    return Err(Error::domain(format!(
                        "unknown key `{k}` for sequence `{name}` (allowed: {})",
                        allowed.join(", ")
                    )));
                }
            }
            Ok(())
        };
        match name {
            "kritzinger" => {
                reject_unknown(&["init", "init-file"])?;
                let mut init = vec![0.5];
                for (k, v) in &kvs {
                    match *k {
                        "init" => {
                            init = v
                                .split('+')
                                .map(|t| parse_num("init", t.trim()))
                                .collect::<Result<Vec<f64>>>()?;
                        }
                        "init-file" => {
                            let ps = read_points_from_path(Path::new(v))?;
                            if ps.dim() != 1 {
                                return Err(Error::domain(format!(
                                    "init-file must hold one-dimensional points, got d = {}",
                                    ps.dim()
                                )));
                            }
                            init = ps.column(0);
                        }
                        _ => unreachable!(),
                    }
                }
                Ok(SequenceSpec::Kritzinger1d { init })
            }
            "kronecker" => {
                reject_unknown(&["alpha", "start"])?;
                let mut spec = KroneckerSpec::default();
                for (k, v) in &kvs {
                    match *k {
                        "alpha" => spec.alpha = parse_num(k, v)?,
                        "start" => spec.start_index = parse_num(k, v)?,
                        _ => unreachable!(),
                    }
                }
                Ok(SequenceSpec::Kronecker(spec))
            }
            "vdc" => {
                reject_unknown(&["base", "perm-file", "perm-mode"])?;
                let mut base = 2u32;
                let mut perm_file: Option<&str> = None;
                let mut mode = "broadcast";
                for (k, v) in &kvs {
                    match *k {
                        "base" => base = parse_num(k, v)?,
                        "perm-file" => perm_file = Some(v),
                        "perm-mode" => mode = v,
                        _ => unreachable!(),
                    }
                }
                let perms = match perm_file {
                    None => PermAssignment::Identity,
                    Some(path) => {
                        let file = std::fs::File::open(path)
                            .map_err(|e| Error::io(Path::new(path), e))?;
                        let perms = parse_permutations(file)?;
                        match mode {
                            "broadcast" => {
                                if perms.len() != 1 {
                                    return Err(Error::domain(format!(
                                        "perm-mode=broadcast needs exactly one permutation, \
                                         file has {}",
                                        perms.len()
                                    )));
                                }
                                PermAssignment::Broadcast(perms.into_iter().next().unwrap())
                            }
                            "per-position" => PermAssignment::PerPosition(perms),
                            other => {
                                return Err(Error::domain(format!(
                                    "perm-mode must be `broadcast` or `per-position`, got `{other}`"
                                )))
                            }
                        }
                    }
                };
                Ok(SequenceSpec::VanDerCorput(VdcSpec { base, perms }))
            }
            "sobol" => {
                reject_unknown(&["dim", "skip-zero"])?;
                let mut dim = 1usize;
                let mut skip_zero = true;
                for (k, v) in &kvs {
                    match *k {
                        "dim" => dim = parse_num(k, v)?,
                        "skip-zero" => skip_zero = parse_num(k, v)?,
                        _ => unreachable!(),
                    }
                }
                let mut spec = SobolSpec::new(dim)?;
                spec.skip_zero = skip_zero;
                Ok(SequenceSpec::Sobol(spec))
            }
            "kritzinger-nd" => {
                reject_unknown(&["dim", "method", "budget", "grid"])?;
                let mut dim = 2usize;
                let mut cfg = OptimizerConfig::default();
                for (k, v) in &kvs {
                    match *k {
                        "dim" => dim = parse_num(k, v)?,
                        "method" => {
                            cfg.method = match *v {
                                "random" => Method::Random,
                                "grid" => Method::Grid,
                                "graddesc" => Method::GradDesc,
                                "multistart" => Method::MultiStart,
                                other => {
                                    return Err(Error::domain(format!(
                                        "unknown method `{other}`"
                                    )))
                                }
                            }
                        }
                        "budget" => cfg.budget = parse_num(k, v)?,
                        "grid" => cfg.grid_resolution = parse_num(k, v)?,
                        _ => unreachable!(),
                    }
                }
                if !(2..=3).contains(&dim) {
                    return Err(Error::domain(format!(
                        "kritzinger-nd supports dim 2 or 3, got {dim}"
                    )));
                }
                Ok(SequenceSpec::KritzingerNd { dim, cfg })
            }
            "optimal" => {
                reject_unknown(&[])?;
                Ok(SequenceSpec::Optimal)
            }
            other => Err(Error::domain(format!(
                "unknown sequence `{other}` (expected kritzinger, kronecker, vdc, sobol, \
                 kritzinger-nd, or optimal)"
            ))),
        }
    }

    /// Dimension of the generated points.
    pub fn dim(&self) -> usize {
        match self {
            SequenceSpec::Kritzinger1d { .. }
            | SequenceSpec::Kronecker(_)
            | SequenceSpec::VanDerCorput(_)
            | SequenceSpec::Optimal => 1,
            SequenceSpec::Sobol(s) => s.dim,
            SequenceSpec::KritzingerNd { dim, .. } => *dim,
        }
    }

    /// Per-size families rebuild the whole set at each n instead of taking
    /// prefixes of one long run.
    pub fn is_per_size_family(&self) -> bool {
        matches!(self, SequenceSpec::Optimal)
    }

    /// The first `n` points. `seed` feeds the heuristic minimizers; the
    /// deterministic families ignore it.
    pub fn generate(&self, n: usize, seed: u64) -> Result<PointSet> {
        match self {
            SequenceSpec::Kritzinger1d { init } => {
                if n < init.len() {
                    return Err(Error::domain(format!(
                        "n = {n} is smaller than the {}-point initial set",
                        init.len()
                    )));
                }
                generate_1d(&PointSet::from_coords_1d(init), n - init.len())
            }
            SequenceSpec::Kronecker(spec) => kronecker(spec, n),
            SequenceSpec::VanDerCorput(spec) => van_der_corput(spec, n),
            SequenceSpec::Sobol(spec) => sobol(spec, n),
            SequenceSpec::KritzingerNd { dim, cfg } => {
                let cfg = OptimizerConfig { seed, ..*cfg };
                generate_nd(&PointSet::new(*dim)?, n, &cfg)
            }
            SequenceSpec::Optimal => self.set_at(n),
        }
    }

    /// The size-n member of a per-size family.
    pub fn set_at(&self, n: usize) -> Result<PointSet> {
        match self {
            SequenceSpec::Optimal => Ok(PointSet::from_coords_1d(
                &(1..=n)
                    .map(|i| (2 * i - 1) as f64 / (2 * n) as f64)
                    .collect::<Vec<_>>(),
            )),
            _ => Err(Error::domain(
                "set_at applies only to per-size families; use generate",
            )),
        }
    }

    /// Canonical one-line description echoed into CSV comments.
    pub fn label(&self) -> String {
        match self {
            SequenceSpec::Kritzinger1d { init } => format!(
                "kritzinger,init={}",
                init.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            ),
            SequenceSpec::Kronecker(s) => {
                format!("kronecker,alpha={},start={}", s.alpha, s.start_index)
            }
            SequenceSpec::VanDerCorput(s) => {
                let mode = match &s.perms {
                    PermAssignment::Identity => "identity".to_string(),
                    PermAssignment::Broadcast(p) => format!("broadcast[{}]", p.len()),
                    PermAssignment::PerPosition(ps) => format!("per-position[{}]", ps.len()),
                };
                format!("vdc,base={},perms={mode}", s.base)
            }
            SequenceSpec::Sobol(s) => format!("sobol,dim={},skip-zero={}", s.dim, s.skip_zero),
            SequenceSpec::KritzingerNd { dim, cfg } => format!(
                "kritzinger-nd,dim={dim},method={},budget={},grid={}",
                match cfg.method {
                    Method::Random => "random",
                    Method::Grid => "grid",
                    Method::GradDesc => "graddesc",
                    Method::MultiStart => "multistart",
                },
                cfg.budget,
                cfg.grid_resolution
            ),
            SequenceSpec::Optimal => "optimal".to_string(),
        }
    }
}
