//! Family and tolerance options shared by the subcommands, and their merge
//! with an optional JSON config file.

use std::path::{Path, PathBuf};

use clap::Args;
use poncelet_core::families::{chapple_distance, critical_lambda, BicentricParams, ConfocalParams};
use poncelet_core::verification::ClaimInput;
use poncelet_core::{Family, FamilyConfig, FamilyParams, TangentBranch, Tolerances, Tracked};
use serde::Deserialize;

use crate::CliError;

#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// bic-I, bic-II, bic-III, conf-I, conf-II or conf-III
    #[arg(long)]
    pub family: Option<Family>,
    /// Outer circle radius
    #[arg(long = "R", value_name = "R")]
    pub big_r: Option<f64>,
    /// Inner circle radius
    #[arg(long)]
    pub r: Option<f64>,
    /// Distance between the circle centers
    #[arg(long)]
    pub d: Option<f64>,
    /// Pencil parameter of the second caustic (three-caustic families)
    #[arg(long)]
    pub u: Option<f64>,
    /// Outer ellipse major semi-axis
    #[arg(long)]
    pub a: Option<f64>,
    /// Outer ellipse minor semi-axis
    #[arg(long)]
    pub b: Option<f64>,
    /// Confocal caustic parameter; the caustic has semi-axes √(a²−λ), √(b²−λ)
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Tangent choice for the two caustics: ++, +-, -+ or --
    #[arg(long, allow_hyphen_values = true)]
    pub branch: Option<TangentBranch>,
    /// JSON file with the same keys; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct TolArgs {
    /// Spread below which a locus counts as stationary (default 1e-8)
    #[arg(long)]
    pub point_tol: Option<f64>,
    /// Relative singular-value threshold for a conic fit (default 1e-28)
    #[arg(long)]
    pub conic_tol: Option<f64>,
    /// Same threshold for curves of degree 3 and up (default 1e-28)
    #[arg(long)]
    pub curve_tol: Option<f64>,
    /// Shape tolerance for circle and degeneracy tests on a fitted conic (default 1e-8)
    #[arg(long)]
    pub circle_tol: Option<f64>,
    /// Highest degree tried by the fit ladder (default 8)
    #[arg(long)]
    pub max_degree: Option<u32>,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub family: Option<String>,
    #[serde(rename = "R")]
    pub big_r: Option<f64>,
    pub r: Option<f64>,
    pub d: Option<f64>,
    pub u: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub lambda: Option<f64>,
    pub branch: Option<String>,
    pub centers: Option<Vec<String>>,
    pub samples: Option<usize>,
    pub tolerances: Option<PartialTolerances>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialTolerances {
    pub point_tol: Option<f64>,
    pub conic_tol: Option<f64>,
    pub curve_tol: Option<f64>,
    pub circle_tol: Option<f64>,
    pub max_degree: Option<u32>,
}

pub fn read_config(path: Option<&Path>) -> Result<ConfigFile, CliError> {
    let Some(path) = path else { return Ok(ConfigFile::default()) };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

/// Flag values with config-file values filled in underneath.
#[derive(Debug, Clone, Default)]
pub struct Merged {
    pub family: Option<Family>,
    pub big_r: Option<f64>,
    pub r: Option<f64>,
    pub d: Option<f64>,
    pub u: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub lambda: Option<f64>,
    pub branch: TangentBranch,
    pub config: ConfigFile,
}

impl FamilyArgs {
    pub fn merge(&self) -> Result<Merged, CliError> {
        let config = read_config(self.config.as_deref())?;
        let family = match (self.family, &config.family) {
            (Some(f), _) => Some(f),
            (None, Some(s)) => Some(s.parse().map_err(CliError::Usage)?),
            (None, None) => None,
        };
        let branch = match (self.branch, &config.branch) {
            (Some(b), _) => b,
            (None, Some(s)) => s.parse().map_err(CliError::Usage)?,
            (None, None) => TangentBranch::default(),
        };
        Ok(Merged {
            family,
            big_r: self.big_r.or(config.big_r),
            r: self.r.or(config.r),
            d: self.d.or(config.d),
            u: self.u.or(config.u),
            a: self.a.or(config.a),
            b: self.b.or(config.b),
            lambda: self.lambda.or(config.lambda),
            branch,
            config,
        })
    }
}

fn need(v: Option<f64>, flag: &str, family: Family) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

impl Merged {
    /// The family configuration; every missing or invalid value is a usage
    /// error.
    pub fn family_config(&self) -> Result<FamilyConfig, CliError> {
        let f = self.family.ok_or_else(|| CliError::Usage("--family is required".into()))?;
        let params = if f.is_bicentric() {
            let big_r = need(self.big_r, "R", f)?;
            let r = need(self.r, "r", f)?;
            let d = match (f, self.d) {
                (Family::BicI, None) => chapple_distance(big_r, r).map_err(|e| CliError::Usage(e.to_string()))?,
                (_, d) => need(d, "d", f)?,
            };
            let mut p = BicentricParams::new(big_r, r, d);
            if f == Family::BicIII {
                p = p.with_u(need(self.u, "u", f)?);
            }
            FamilyParams::Bicentric(p)
        } else {
            let a = need(self.a, "a", f)?;
            let b = need(self.b, "b", f)?;
            let lambda = match (f, self.lambda) {
                (Family::ConfI, None) => critical_lambda(a, b).map_err(|e| CliError::Usage(e.to_string()))?,
                (_, l) => need(l, "lambda", f)?,
            };
            let mut p = ConfocalParams::new(a, b, lambda);
            if f == Family::ConfIII {
                p = p.with_u(need(self.u, "u", f)?);
            }
            FamilyParams::Confocal(p)
        };
        FamilyConfig::build(f, params, self.branch).map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Claim parameters from whatever shape flags were given. A bicentric
    /// pair without `--d` is taken as poristic; a confocal pair without
    /// `--lambda` uses λ = b²/2.
    pub fn claim_input(&self, samples: Option<usize>, tolerances: Tolerances) -> Result<ClaimInput, CliError> {
        let usage = |e: poncelet_core::FamilyError| CliError::Usage(e.to_string());
        let bicentric = match (self.big_r, self.r) {
            (Some(big_r), Some(r)) => {
                let d = match self.d {
                    Some(d) => d,
                    None => chapple_distance(big_r, r).map_err(usage)?,
                };
                let mut p = BicentricParams::new(big_r, r, d);
                p.u = self.u;
                p.validate().map_err(usage)?;
                Some(p)
            }
            (None, None) if self.d.is_none() => None,
            _ => return Err(CliError::Usage("bicentric claims need both --R and --r".into())),
        };
        let confocal = match (self.a, self.b) {
            (Some(a), Some(b)) => {
                let mut p = ConfocalParams::new(a, b, self.lambda.unwrap_or(0.5 * b * b));
                p.pencil_u = self.u;
                p.validate().map_err(usage)?;
                Some(p)
            }
            (None, None) if self.lambda.is_none() => None,
            _ => return Err(CliError::Usage("confocal claims need both --a and --b".into())),
        };
        Ok(ClaimInput { bicentric, confocal, samples, tolerances: Some(tolerances) })
    }

    pub fn samples(&self, flag: Option<usize>, default: usize) -> Result<usize, CliError> {
        let n = flag.or(self.config.samples).unwrap_or(default);
        if n == 0 {
            return Err(CliError::Usage("-n must be positive".into()));
        }
        Ok(n)
    }

    /// Tracked points from the flags, else from the config file.
    pub fn tracked(&self, flags: &[String]) -> Result<Vec<Tracked>, CliError> {
        let list: &[String] = if flags.is_empty() { self.config.centers.as_deref().unwrap_or(&[]) } else { flags };
        list.iter().map(|s| s.parse::<Tracked>().map_err(|e| CliError::Usage(e.to_string()))).collect()
    }

    pub fn tolerances(&self, t: &TolArgs) -> Tolerances {
        let base = Tolerances::default();
        let c = self.config.tolerances.clone().unwrap_or_default();
        Tolerances {
            point_tol: t.point_tol.or(c.point_tol).unwrap_or(base.point_tol),
            conic_tol: t.conic_tol.or(c.conic_tol).unwrap_or(base.conic_tol),
            curve_tol: t.curve_tol.or(c.curve_tol).unwrap_or(base.curve_tol),
            circle_tol: t.circle_tol.or(c.circle_tol).unwrap_or(base.circle_tol),
            max_degree: t.max_degree.or(c.max_degree).unwrap_or(base.max_degree),
        }
    }
}
