//! Scenario files: TOML with exact rationals as `"p/q"` strings and
//! matrices as row-major arrays. Unknown keys are rejected, and the whole
//! file is parsed and validated before any computation starts.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use llvkit::{
    parse_rat, BBFLattice, ChernData, HodgeIsometry, MukaiExtension, PeriodPoint, QMatrix,
    QVector, SpParams,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid scenario field `{field}`: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: &str, message: impl ToString) -> CliError {
    CliError::Validation {
        field: field.to_string(),
        message: message.to_string(),
    }
}

/// The verification suites, in canonical execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    Sl2,
    Sym,
    HardLefschetz,
    Fujiki,
    DegreeReversal,
    LscCertificate,
    SpGroup,
    Twistor,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Sl2,
        SuiteName::Sym,
        SuiteName::HardLefschetz,
        SuiteName::Fujiki,
        SuiteName::DegreeReversal,
        SuiteName::LscCertificate,
        SuiteName::SpGroup,
        SuiteName::Twistor,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Sl2 => "sl2",
            SuiteName::Sym => "sym",
            SuiteName::HardLefschetz => "hard_lefschetz",
            SuiteName::Fujiki => "fujiki",
            SuiteName::DegreeReversal => "degree_reversal",
            SuiteName::LscCertificate => "lsc_certificate",
            SuiteName::SpGroup => "sp_group",
            SuiteName::Twistor => "twistor",
        }
    }

    pub fn from_str_name(s: &str) -> Option<SuiteName> {
        SuiteName::ALL.iter().copied().find(|n| n.as_str() == s)
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum LatticeSpec {
    Name(String),
    Gram {
        gram: Vec<Vec<String>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SuiteSelection {
    One(SuiteName),
    Many(Vec<SuiteName>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PeriodPointSpec {
    x: Vec<String>,
    y: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsometrySpec {
    level: String,
    matrix: Vec<Vec<String>>,
    #[serde(default = "default_sign")]
    sign: i8,
}

fn default_sign() -> i8 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChernSpec {
    r: u32,
    lambda_x: Vec<String>,
    lambda_y: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpSpec {
    n: u32,
    e: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    lattice: LatticeSpec,
    seed: u64,
    #[serde(default)]
    suite: Option<SuiteSelection>,
    #[serde(default)]
    bound: Option<u32>,
    #[serde(default)]
    sym_powers: Option<Vec<u32>>,
    #[serde(default)]
    max_sym_power: Option<u32>,
    #[serde(default)]
    period_points: Vec<PeriodPointSpec>,
    #[serde(default)]
    isometries: Vec<IsometrySpec>,
    #[serde(default)]
    chern: Vec<ChernSpec>,
    #[serde(default)]
    sp: Option<SpSpec>,
}

/// Fully validated scenario, ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub lattice: BBFLattice,
    pub lattice_desc: String,
    pub extension: MukaiExtension,
    pub suites: Vec<SuiteName>,
    pub seed: u64,
    pub bound: u32,
    pub sym_powers: Vec<u32>,
    pub max_sym_power: u32,
    pub period_points: Vec<PeriodPoint>,
    pub isometries: Vec<HodgeIsometry>,
    pub chern: Vec<ChernData>,
    pub sp: Option<SpParams>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Scenario::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Scenario, CliError> {
        let file: ScenarioFile =
            toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        Scenario::from_file(file)
    }

    fn from_file(file: ScenarioFile) -> Result<Scenario, CliError> {
        let (lattice, lattice_desc) = match &file.lattice {
            LatticeSpec::Name(name) => (
                BBFLattice::parse(name).map_err(|e| invalid("lattice", e))?,
                name.clone(),
            ),
            LatticeSpec::Gram { gram } => {
                let m = parse_matrix("lattice.gram", gram)?;
                let labels = (1..=m.rows()).map(|i| format!("v{i}")).collect();
                let lattice =
                    BBFLattice::new(m, labels).map_err(|e| invalid("lattice.gram", e))?;
                (lattice, "explicit gram".to_string())
            }
        };
        let extension = MukaiExtension::new(lattice.clone())
            .map_err(|e| invalid("lattice", e))?;

        let suites = match file.suite {
            None => SuiteName::ALL.to_vec(),
            Some(SuiteSelection::One(s)) => vec![s],
            Some(SuiteSelection::Many(mut v)) => {
                if v.is_empty() {
                    return Err(invalid("suite", "empty suite list"));
                }
                v.sort();
                v.dedup();
                v
            }
        };

        let bound = file.bound.unwrap_or(20);
        if bound == 0 {
            return Err(invalid("bound", "must be positive"));
        }
        let max_sym_power = file.max_sym_power.unwrap_or(5);
        let sym_powers = file.sym_powers.unwrap_or_else(|| vec![2, 3]);
        for &n in &sym_powers {
            if n < 2 || n > max_sym_power {
                return Err(invalid(
                    "sym_powers",
                    format!("power {n} outside 2..={max_sym_power}"),
                ));
            }
        }

        let rank = lattice.rank();
        let mut period_points = Vec::new();
        for (i, spec) in file.period_points.iter().enumerate() {
            let field = format!("period_points[{i}]");
            let x = parse_vector(&field, &spec.x, rank)?;
            let y = parse_vector(&field, &spec.y, rank)?;
            let p = PeriodPoint::new(&lattice, x, y).map_err(|e| invalid(&field, e))?;
            period_points.push(p);
        }

        let mut isometries = Vec::new();
        for (i, spec) in file.isometries.iter().enumerate() {
            let field = format!("isometries[{i}]");
            let m = parse_matrix(&field, &spec.matrix)?;
            let iso = match spec.level.as_str() {
                "base" => HodgeIsometry::new_base(&lattice, m, spec.sign),
                "mukai" => HodgeIsometry::new_mukai(&extension, m, spec.sign),
                other => {
                    return Err(invalid(
                        &field,
                        format!("level must be \"base\" or \"mukai\", got {other:?}"),
                    ))
                }
            }
            .map_err(|e| invalid(&field, e))?;
            isometries.push(iso);
        }

        let mut chern = Vec::new();
        for (i, spec) in file.chern.iter().enumerate() {
            let field = format!("chern[{i}]");
            let lambda_x = parse_vector(&field, &spec.lambda_x, rank)?;
            let lambda_y = parse_vector(&field, &spec.lambda_y, rank)?;
            let cd = ChernData::new(spec.r, lambda_x, lambda_y)
                .map_err(|e| invalid(&field, e))?;
            chern.push(cd);
        }

        let sp = match file.sp {
            None => None,
            Some(s) => Some(SpParams::new(s.n, s.e).map_err(|e| invalid("sp", e))?),
        };

        Ok(Scenario {
            lattice,
            lattice_desc,
            extension,
            suites,
            seed: file.seed,
            bound,
            sym_powers,
            max_sym_power,
            period_points,
            isometries,
            chern,
            sp,
        })
    }

    /// Apply command-line overrides: a non-empty suite list replaces the
    /// scenario selection, and seed / bound / sym powers override fields.
    pub fn apply_overrides(
        &mut self,
        suites: &[String],
        seed: Option<u64>,
        bound: Option<u32>,
        sym_powers: &[u32],
    ) -> Result<(), CliError> {
        if !suites.is_empty() {
            let mut parsed = Vec::new();
            for s in suites {
                let name = SuiteName::from_str_name(s)
                    .ok_or_else(|| invalid("--suite", format!("unknown suite {s:?}")))?;
                parsed.push(name);
            }
            parsed.sort();
            parsed.dedup();
            self.suites = parsed;
        }
        if let Some(seed) = seed {
            self.seed = seed;
        }
        if let Some(bound) = bound {
            if bound == 0 {
                return Err(invalid("--bound", "must be positive"));
            }
            self.bound = bound;
        }
        if !sym_powers.is_empty() {
            for &n in sym_powers {
                if n < 2 || n > self.max_sym_power {
                    return Err(invalid(
                        "--sym-n",
                        format!("power {n} outside 2..={}", self.max_sym_power),
                    ));
                }
            }
            let mut v = sym_powers.to_vec();
            v.sort_unstable();
            v.dedup();
            self.sym_powers = v;
        }
        Ok(())
    }
}

fn parse_vector(field: &str, entries: &[String], dim: usize) -> Result<QVector, CliError> {
    if entries.len() != dim {
        return Err(invalid(
            field,
            format!("expected {dim} entries, got {}", entries.len()),
        ));
    }
    let parsed = entries
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| invalid(field, e))?;
    Ok(QVector::new(parsed))
}

fn parse_matrix(field: &str, rows: &[Vec<String>]) -> Result<QMatrix, CliError> {
    if rows.is_empty() {
        return Err(invalid(field, "matrix needs at least one row"));
    }
    let parsed = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| invalid(field, e))?;
    QMatrix::from_rows(parsed).map_err(|e| invalid(field, e))
}
