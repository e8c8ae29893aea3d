//! Command-line front end: dispatches the library computations and emits
//! deterministic CSV (9 significant digits, scientific notation).
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nanotrap_core::atomicdata::{format_transition_table, load_transition_table, Source};
use nanotrap_core::magic::MagicSearchSpec;
use nanotrap_core::polarizability::Manifold;
use nanotrap_core::trap::{GridAxis, GridSpec, TrapConfig, TrapSystem, PRESET_NAMES};
use nanotrap_core::{alpha_triple, find_magic, solve_he11, AtomModel, FiberSpec};

const DATA_ENV: &str = "CS_NANOTRAP_DATA";

#[derive(Parser)]
#[command(name = "nanotrap", version, about = "Light shifts and nanofiber trap potentials for Cs")]
struct Cli {
    /// Optional TOML config file with one section per subcommand; command-line
    /// flags override config values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dynamic polarizability triple over a wavelength grid.
    Polarizability(PolarizabilityArgs),
    /// Magic-wavelength search for a ground/excited manifold pair.
    Magic(MagicArgs),
    /// Trap potential grid for a scenario preset.
    Potential(PotentialArgs),
    /// HE11 mode parameters per wavelength.
    Modeinfo(ModeinfoArgs),
    /// Run the invariant checks on a dataset.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct PolarizabilityArgs {
    /// Dataset file (resolved against $CS_NANOTRAP_DATA; shipped names fall
    /// back to the embedded copies). Default: cs_mckeever_corrected.csv.
    #[arg(long)]
    dataset: Option<String>,
    /// Manifold, e.g. 6S1/2:F=4.
    #[arg(long)]
    manifold: Option<String>,
    /// Grid start, nm.
    #[arg(long)]
    from: Option<f64>,
    /// Grid end, nm.
    #[arg(long)]
    to: Option<f64>,
    /// Number of samples (>= 2).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print column descriptions to stderr.
    #[arg(long)]
    gnuplot_hints: bool,
}

#[derive(Args)]
struct MagicArgs {
    #[arg(long)]
    dataset: Option<String>,
    /// Ground manifold, e.g. 6S1/2:F=4.
    #[arg(long)]
    ground: Option<String>,
    /// Excited manifold, e.g. 6P3/2:F=4.
    #[arg(long)]
    excited: Option<String>,
    /// Search bracket "lo,hi" in nm, e.g. 930,940.
    #[arg(long)]
    bracket: Option<String>,
    /// Plane-wave intensity, W/m².
    #[arg(long)]
    intensity: Option<f64>,
    /// Bisection tolerance, nm.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    gnuplot_hints: bool,
}

#[derive(Args)]
struct PotentialArgs {
    #[arg(long)]
    dataset: Option<String>,
    /// Scenario preset: vetsch | magic-compensated | goban-magic | goban-actual.
    #[arg(long)]
    preset: Option<String>,
    /// Grid axis: radial | azimuthal | axial.
    #[arg(long)]
    axis: Option<String>,
    /// Grid start (m for radial/axial, rad for azimuthal).
    #[arg(long)]
    from: Option<f64>,
    /// Grid end.
    #[arg(long)]
    to: Option<f64>,
    /// Number of samples (>= 2).
    #[arg(long)]
    n: Option<usize>,
    /// Fixed azimuth for radial/axial cuts, rad.
    #[arg(long)]
    phi: Option<f64>,
    /// Fixed axial position for radial/azimuthal cuts, m.
    #[arg(long)]
    z: Option<f64>,
    /// Fixed distance from the surface for azimuthal/axial cuts, m.
    #[arg(long)]
    d: Option<f64>,
    /// Manifolds to evaluate (overrides the preset's list).
    #[arg(long)]
    manifold: Vec<String>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    gnuplot_hints: bool,
}

#[derive(Args)]
struct ModeinfoArgs {
    /// Fiber radius, m.
    #[arg(long)]
    radius: Option<f64>,
    /// Wavelengths in m, comma separated.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    gnuplot_hints: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    dataset: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.config.as_deref().map(read_config).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => return usage_error(&e),
    };
    let result = match cli.command {
        Command::Polarizability(a) => cmd_polarizability(a, &config),
        Command::Magic(a) => cmd_magic(a, &config),
        Command::Potential(a) => cmd_potential(a, &config),
        Command::Modeinfo(a) => cmd_modeinfo(a, &config),
        Command::Validate(a) => cmd_validate(a, &config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => usage_error(&msg),
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("usage error: {msg}");
    ExitCode::from(2)
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<nanotrap_core::Error> for CliError {
    fn from(e: nanotrap_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

// --- config file -----------------------------------------------------------

fn read_config(path: &Path) -> Result<toml::Table, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    text.parse::<toml::Table>()
        .map_err(|e| format!("cannot parse config {}: {e}", path.display()))
}

fn cfg_get<'a>(config: &'a toml::Table, section: &str, key: &str) -> Option<&'a toml::Value> {
    config.get(section)?.as_table()?.get(key)
}

fn cfg_string(config: &toml::Table, section: &str, key: &str) -> Option<String> {
    cfg_get(config, section, key).and_then(|v| v.as_str().map(str::to_string))
}

fn cfg_f64(config: &toml::Table, section: &str, key: &str) -> Option<f64> {
    cfg_get(config, section, key).and_then(|v| v.as_float().or_else(|| v.as_integer().map(|i| i as f64)))
}

fn cfg_usize(config: &toml::Table, section: &str, key: &str) -> Option<usize> {
    cfg_get(config, section, key).and_then(|v| v.as_integer()).map(|i| i as usize)
}

fn require<T>(value: Option<T>, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required parameter `{what}`")))
}

// --- dataset resolution ------------------------------------------------------

fn load_dataset(spec: Option<&str>) -> Result<AtomModel, CliError> {
    let name = spec.unwrap_or("cs_mckeever_corrected.csv");
    let direct = Path::new(name);
    if direct.exists() {
        let text = std::fs::read_to_string(direct)
            .map_err(|e| CliError::Domain(format!("cannot read dataset {name}: {e}")))?;
        return Ok(AtomModel::from_table_str(&text, Source::External)?);
    }
    if let Ok(dir) = std::env::var(DATA_ENV) {
        let candidate = Path::new(&dir).join(name);
        if candidate.exists() {
            let text = std::fs::read_to_string(&candidate)
                .map_err(|e| CliError::Domain(format!("cannot read dataset {}: {e}", candidate.display())))?;
            return Ok(AtomModel::from_table_str(&text, Source::External)?);
        }
    }
    match Path::new(name).file_name().and_then(|s| s.to_str()) {
        Some("cs_mckeever_corrected.csv") => Ok(AtomModel::mckeever_corrected()),
        Some("cs_clark.csv") => Ok(AtomModel::clark()),
        _ => Err(CliError::Domain(format!(
            "dataset `{name}` not found (searched working directory and ${DATA_ENV})"
        ))),
    }
}

// --- output ------------------------------------------------------------------

fn sci(x: f64) -> String {
    format!("{x:.8e}")
}

/// Write the CSV either to stdout or atomically (temp file + rename) to the
/// requested path.
fn emit(output: Option<&Path>, csv: &str) -> CliResult {
    match output {
        None => {
            print!("{csv}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .map_err(|e| CliError::Domain(format!("cannot create temp file in {}: {e}", dir.display())))?;
            tmp.write_all(csv.as_bytes())
                .map_err(|e| CliError::Domain(format!("write failed: {e}")))?;
            tmp.persist(path)
                .map_err(|e| CliError::Domain(format!("cannot rename into {}: {e}", path.display())))?;
            Ok(())
        }
    }
}

fn hints(enabled: bool, lines: &[&str]) {
    if enabled {
        for l in lines {
            eprintln!("# {l}");
        }
    }
}

// --- subcommands --------------------------------------------------------------

fn cmd_polarizability(args: PolarizabilityArgs, config: &toml::Table) -> CliResult {
    let sec = "polarizability";
    let dataset = args.dataset.or_else(|| cfg_string(config, sec, "dataset"));
    let manifold_str = require(args.manifold.or_else(|| cfg_string(config, sec, "manifold")), "manifold")?;
    let from = require(args.from.or_else(|| cfg_f64(config, sec, "from")), "from")?;
    let to = require(args.to.or_else(|| cfg_f64(config, sec, "to")), "to")?;
    let n = require(args.n.or_else(|| cfg_usize(config, sec, "n")), "n")?;
    if n < 2 || !from.is_finite() || !to.is_finite() || from >= to {
        return Err(CliError::Usage(format!("need n >= 2 and from < to, got n={n}, from={from}, to={to}")));
    }
    let atom = load_dataset(dataset.as_deref())?;
    let m: Manifold = manifold_str.parse().map_err(|e: nanotrap_core::Error| CliError::Usage(e.to_string()))?;

    let mut csv = String::from("lambda_nm,omega_rad_s,alpha0_si,alpha1_si,alpha2_si\n");
    for i in 0..n {
        let lambda = from + (to - from) * i as f64 / (n - 1) as f64;
        let omega = 2.0 * std::f64::consts::PI * nanotrap_core::constants::C / (lambda * 1e-9);
        let a = alpha_triple(&atom, &m, omega)?;
        writeln!(csv, "{},{},{},{},{}", sci(lambda), sci(omega), sci(a.alpha0), sci(a.alpha1), sci(a.alpha2))
            .unwrap();
    }
    hints(
        args.gnuplot_hints,
        &[
            "column 1: lambda_nm — vacuum wavelength (nm)",
            "column 2: omega_rad_s — drive angular frequency (rad/s)",
            "columns 3-5: alpha0/alpha1/alpha2 — scalar/vector/tensor polarizability (C^2 m^2 / J)",
        ],
    );
    emit(args.output.as_deref(), &csv)
}

fn cmd_magic(args: MagicArgs, config: &toml::Table) -> CliResult {
    let sec = "magic";
    let dataset = args.dataset.or_else(|| cfg_string(config, sec, "dataset"));
    let ground = require(args.ground.or_else(|| cfg_string(config, sec, "ground")), "ground")?;
    let excited = require(args.excited.or_else(|| cfg_string(config, sec, "excited")), "excited")?;
    let bracket = require(args.bracket.or_else(|| cfg_string(config, sec, "bracket")), "bracket")?;
    let intensity = args
        .intensity
        .or_else(|| cfg_f64(config, sec, "intensity"))
        .unwrap_or(2.9e9);
    let tolerance = args
        .tolerance
        .or_else(|| cfg_f64(config, sec, "tolerance"))
        .unwrap_or(0.01);

    let (lo, hi) = bracket
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse::<f64>().ok()?, b.trim().parse::<f64>().ok()?)))
        .ok_or_else(|| CliError::Usage(format!("cannot parse bracket `{bracket}` (expected lo,hi in nm)")))?;

    let atom = load_dataset(dataset.as_deref())?;
    let parse_m = |s: &str| -> Result<Manifold, CliError> {
        s.parse().map_err(|e: nanotrap_core::Error| CliError::Usage(e.to_string()))
    };
    let mut spec = MagicSearchSpec::new(parse_m(&ground)?, parse_m(&excited)?, (lo, hi));
    spec.intensity = intensity;
    spec.tolerance_nm = tolerance;
    let root = find_magic(&spec, &atom)?;

    let mut csv = String::from("ground,excited,intensity_w_m2,lambda_magic_nm\n");
    writeln!(csv, "{},{},{},{}", spec.ground, spec.excited, sci(intensity), sci(root)).unwrap();
    hints(
        args.gnuplot_hints,
        &["column 4: lambda_magic_nm — crossing of the mF-averaged ground and excited light shifts"],
    );
    emit(args.output.as_deref(), &csv)
}

fn cmd_potential(args: PotentialArgs, config: &toml::Table) -> CliResult {
    let sec = "potential";
    let dataset = args.dataset.or_else(|| cfg_string(config, sec, "dataset"));
    let preset = require(args.preset.or_else(|| cfg_string(config, sec, "preset")), "preset")?;
    let axis_name = require(args.axis.or_else(|| cfg_string(config, sec, "axis")), "axis")?;
    let n = require(args.n.or_else(|| cfg_usize(config, sec, "n")), "n")?;
    if n < 2 {
        return Err(CliError::Usage(format!("grid needs n >= 2, got {n}")));
    }
    let phi = args.phi.or_else(|| cfg_f64(config, sec, "phi")).unwrap_or(0.0);
    let z = args.z.or_else(|| cfg_f64(config, sec, "z")).unwrap_or(0.0);
    let from = args.from.or_else(|| cfg_f64(config, sec, "from"));
    let to = args.to.or_else(|| cfg_f64(config, sec, "to"));
    let d = args.d.or_else(|| cfg_f64(config, sec, "d"));

    let axis = match axis_name.as_str() {
        "radial" => GridAxis::Radial {
            d_from: require(from, "from")?,
            d_to: require(to, "to")?,
            phi,
            z,
        },
        "azimuthal" => GridAxis::Azimuthal {
            phi_from: from.unwrap_or(0.0),
            phi_to: to.unwrap_or(2.0 * std::f64::consts::PI),
            d: require(d, "d")?,
            z,
        },
        "axial" => GridAxis::Axial {
            z_from: require(from, "from")?,
            z_to: require(to, "to")?,
            d: require(d, "d")?,
            phi,
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown axis `{other}` (expected radial, azimuthal or axial)"
            )))
        }
    };

    let atom = load_dataset(dataset.as_deref())?;
    let cfg = TrapConfig::preset(&preset).map_err(|e| match e {
        nanotrap_core::Error::UnknownPreset(_) => CliError::Domain(format!(
            "{e}; available presets: {}",
            PRESET_NAMES.join(", ")
        )),
        other => CliError::Domain(other.to_string()),
    })?;
    let manifolds: Vec<Manifold> = if args.manifold.is_empty() {
        cfg.manifolds.clone()
    } else {
        args.manifold
            .iter()
            .map(|s| s.parse().map_err(|e: nanotrap_core::Error| CliError::Usage(e.to_string())))
            .collect::<Result<_, _>>()?
    };
    let sys = TrapSystem::new(cfg)?;
    let grid = sys.potential_grid(&GridSpec { axis, samples: n }, &manifolds, &atom)?;

    let mut csv = String::from(grid.coord_label);
    for col in &grid.columns {
        for k in 0..col.manifold.f.multiplicity() {
            write!(csv, ",U_mK[{}][{k}]", col.manifold).unwrap();
        }
    }
    for col in &grid.columns {
        for k in 0..col.manifold.f.multiplicity() {
            write!(csv, ",U_MHz[{}][{k}]", col.manifold).unwrap();
        }
    }
    csv.push('\n');
    for (i, coord) in grid.coords.iter().enumerate() {
        write!(csv, "{}", sci(*coord)).unwrap();
        for col in &grid.columns {
            for v in &col.energies_mk[i] {
                write!(csv, ",{}", sci(*v)).unwrap();
            }
        }
        for col in &grid.columns {
            for v in &col.energies_mhz[i] {
                write!(csv, ",{}", sci(*v)).unwrap();
            }
        }
        csv.push('\n');
    }
    hints(
        args.gnuplot_hints,
        &[
            "column 1: grid coordinate (d_m: metres from the surface; phi_rad; z_m)",
            "U_mK[manifold][k]: k-th ascending adiabatic sublevel energy, U/k_B in mK",
            "U_MHz[manifold][k]: same sublevel as U/h in MHz",
        ],
    );
    emit(args.output.as_deref(), &csv)
}

fn cmd_modeinfo(args: ModeinfoArgs, config: &toml::Table) -> CliResult {
    let sec = "modeinfo";
    let radius = require(args.radius.or_else(|| cfg_f64(config, sec, "radius")), "radius")?;
    let lambda_list = require(args.lambda.or_else(|| cfg_string(config, sec, "lambda")), "lambda")?;
    let lambdas: Vec<f64> = lambda_list
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("cannot parse lambda list `{lambda_list}`")))?;
    if lambdas.is_empty() {
        return Err(CliError::Usage("empty lambda list".into()));
    }
    let spec = FiberSpec::new(radius);
    let mut csv = String::from("lambda_m,n1,v_number,beta_rad_m,beta_over_k0,q_1_m\n");
    for lambda in lambdas {
        let mode = solve_he11(&spec, lambda)?;
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            sci(lambda),
            sci(mode.n1),
            sci(mode.v_number()),
            sci(mode.beta),
            sci(mode.beta / mode.k0),
            sci(mode.q)
        )
        .unwrap();
    }
    hints(
        args.gnuplot_hints,
        &[
            "beta_rad_m: HE11 propagation constant; beta_over_k0: effective index",
            "q_1_m: exterior evanescent decay constant; v_number: k0 a sqrt(n1^2 - n2^2)",
        ],
    );
    emit(args.output.as_deref(), &csv)
}

fn cmd_validate(args: ValidateArgs, config: &toml::Table) -> CliResult {
    let dataset = args.dataset.or_else(|| cfg_string(config, "validate", "dataset"));
    let atom = load_dataset(dataset.as_deref())?;
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool, detail: String| {
        println!("{} {name}: {detail}", if ok { "ok " } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let recs = atom.transitions();
    check("rows", !recs.is_empty(), format!("{} transitions", recs.len()));
    check(
        "positivity",
        recs.iter().all(|r| r.reduced_dipole_sq() > 0.0 && r.omega() > 0.0),
        "d^2 > 0 and omega > 0 for every record".into(),
    );
    let round_trip = load_transition_table(&format_transition_table(recs), Source::External)
        .map(|again| again == recs)
        .unwrap_or(false);
    check("round-trip", round_trip, "format/parse reproduces the table".into());

    // cross-check against the other shipped dataset where transitions overlap
    let (this, other) = (recs, AtomModel::clark());
    let other = if recs.iter().any(|r| r.source == Source::Clark) {
        AtomModel::mckeever_corrected()
    } else {
        other
    };
    let mut shared = 0usize;
    let mut agree = true;
    for a in this {
        for b in other.transitions() {
            if a.lower == b.lower && a.upper == b.upper && a.source != Source::External {
                shared += 1;
                let tol = 0.5_f64.max(1e-3 * a.lambda_nm);
                agree &= (a.lambda_nm - b.lambda_nm).abs() <= tol;
            }
        }
    }
    check(
        "cross-check",
        agree,
        format!("{shared} shared transitions agree in wavelength"),
    );

    if failures > 0 {
        return Err(CliError::Domain(format!("{failures} validation check(s) failed")));
    }
    Ok(())
}
