//! Command-line front end. Every analysis the library offers is reachable
//! from one binary; outputs are deterministic JSON or CSV so runs can be
//! diffed and archived.
//!
//! Exit codes: 0 success, 1 numerical failure (a residual bound was
//! exceeded), 2 validation error (the message names the violated
//! precondition).

mod output;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use output::{emit, fnum, json_string};
use qwalk_core::coin::{verify_short_range, CoinField, CoinParams};
use qwalk_core::config::CoinConfig;
use qwalk_core::finite::{build_ring, classify, eig_full, Classification};
use qwalk_core::kgrid::check_identities;
use qwalk_core::lattice::{evolve, observe, velocity_histogram, WalkState};
use qwalk_core::spectra::{
    contains, essential_spectrum, mourre_lower_bound, thresholds, Origin, RhoValue, SpectralArcs,
};
use qwalk_core::symbol::eigenpairs;
use qwalk_core::{Error, Result};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Spectral analysis and simulation of 1-D quantum walks with anisotropic coins")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the coin field comes from. Config files always use radians; the
/// --degrees flag converts only angles passed inline on the command line.
#[derive(Args)]
struct CoinSource {
    /// Coin-field config file (JSON)
    #[arg(long, value_name = "FILE", conflicts_with = "coin_params")]
    coin: Option<PathBuf>,
    /// Inline constant coin "a,alpha,beta,delta"
    #[arg(long, value_name = "A,ALPHA,BETA,DELTA", allow_hyphen_values = true)]
    coin_params: Option<String>,
    /// Treat inline command-line angles as degrees
    #[arg(long)]
    degrees: bool,
}

impl CoinSource {
    fn field(&self) -> Result<CoinField> {
        match (&self.coin, &self.coin_params) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::Validation(format!("cannot read coin config {}: {e}", path.display()))
                })?;
                CoinConfig::from_json(&text)?.build()
            }
            (None, Some(s)) => {
                let p = parse_coin_params(s, self.degrees)?;
                Ok(CoinField::constant(qwalk_core::coin::reconstruct(&p)?))
            }
            _ => Err(Error::Validation(
                "a coin source is required: pass --coin <file> or --coin-params \"a,alpha,beta,delta\"".into(),
            )),
        }
    }

    /// Converts an inline angle argument according to --degrees.
    fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Essential spectrum as arcs (and isolated points) on the unit circle
    Arcs {
        #[command(flatten)]
        src: CoinSource,
        /// Emit machine-readable JSON instead of text
        #[arg(long)]
        json: bool,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Threshold set τ(U): endpoints of both asymptotic spectra
    Thresholds {
        #[command(flatten)]
        src: CoinSource,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bound for the Mourre function at angle θ
    Mourre {
        #[command(flatten)]
        src: CoinSource,
        /// Evaluation angle θ (inline angle, --degrees applies)
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dispersion CSV: k, Re λ1, Im λ1, Re λ2, Im λ2, v1, v2
    Dispersion {
        #[command(flatten)]
        src: CoinSource,
        /// Number of momentum samples over [0, 2π)
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a localized state and emit the position distribution (x, p)
    Evolve {
        #[command(flatten)]
        src: CoinSource,
        #[arg(long)]
        steps: usize,
        /// Initial state "x:re_up,im_up,re_down,im_down"
        #[arg(long, default_value = "0:1,0,0,0", allow_hyphen_values = true)]
        initial: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of X_t/t after t steps (bin_center, mass)
    VelocityHist {
        #[command(flatten)]
        src: CoinSource,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "0:1,0,0,0", allow_hyphen_values = true)]
        initial: String,
        #[arg(long, default_value_t = 64)]
        bins: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagonalize the walk on an N-site ring and classify each eigenpair
    Eigs {
        #[command(flatten)]
        src: CoinSource,
        /// Ring size N (even, at least 8)
        #[arg(long)]
        sites: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid-check the conjugate-operator commutator identities
    CheckCommutators {
        #[command(flatten)]
        src: CoinSource,
        /// Momentum grid size K (power of two, at least 32)
        #[arg(long)]
        grid: usize,
        /// Residual bound; exceeding it is a numerical failure (exit 1)
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a coin config: unitarity, limits, and short-range tails
    VerifyCoin {
        #[command(flatten)]
        src: CoinSource,
        /// Check sites x in [-window, window]
        #[arg(long, default_value_t = 64)]
        window: i64,
        /// Short-range constant κ
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        /// Short-range decay exponent ε
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(1)
        }
        Err(Error::Validation(msg)) => {
            eprintln!("validation error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Arcs { src, json, out } => cmd_arcs(&src, json, &out),
        Command::Thresholds { src, json, out } => cmd_thresholds(&src, json, &out),
        Command::Mourre { src, theta, json, out } => cmd_mourre(&src, theta, json, &out),
        Command::Dispersion { src, samples, out } => cmd_dispersion(&src, samples, &out),
        Command::Evolve { src, steps, initial, out } => cmd_evolve(&src, steps, &initial, &out),
        Command::VelocityHist { src, steps, initial, bins, out } => {
            cmd_velocity_hist(&src, steps, &initial, bins, &out)
        }
        Command::Eigs { src, sites, out } => cmd_eigs(&src, sites, &out),
        Command::CheckCommutators { src, grid, tol, json, out } => {
            cmd_check_commutators(&src, grid, tol, json, &out)
        }
        Command::VerifyCoin { src, window, kappa, eps, json, out } => {
            cmd_verify_coin(&src, window, kappa, eps, json, &out)
        }
    }
}

fn parse_coin_params(s: &str, degrees: bool) -> Result<CoinParams> {
    let nums = parse_floats(s)?;
    if nums.len() != 4 {
        return Err(Error::Validation(format!(
            "--coin-params needs four values \"a,alpha,beta,delta\", got {} in {s:?}",
            nums.len()
        )));
    }
    let ang = |x: f64| if degrees { x.to_radians() } else { x };
    CoinParams::from_a(nums[0], ang(nums[1]), ang(nums[2]), ang(nums[3]))
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Validation(format!("{part:?} is not a number")))
        })
        .collect()
}

fn parse_initial(s: &str) -> Result<WalkState> {
    let (site, amps) = s.split_once(':').ok_or_else(|| {
        Error::Validation(format!(
            "--initial needs \"x:re_up,im_up,re_down,im_down\", got {s:?}"
        ))
    })?;
    let x: i64 = site
        .trim()
        .parse()
        .map_err(|_| Error::Validation(format!("initial site {site:?} is not an integer")))?;
    let nums = parse_floats(amps)?;
    if nums.len() != 4 {
        return Err(Error::Validation(format!(
            "--initial spinor needs four components, got {}",
            nums.len()
        )));
    }
    let state = WalkState::delta(x, [C64::new(nums[0], nums[1]), C64::new(nums[2], nums[3])]);
    if state.norm_sq() == 0.0 {
        return Err(Error::Validation("initial state must be nonzero".into()));
    }
    Ok(state)
}

fn write_out(out: &Option<PathBuf>, content: &str) -> Result<()> {
    emit(out, content).map_err(|e| {
        let target = out
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "stdout".into());
        Error::Validation(format!("cannot write output to {target}: {e}"))
    })
}

fn arcs_json(s: &SpectralArcs) -> Value {
    json!({
        "schema": 1,
        "arcs": s.arcs.iter().map(|a| json!([a.start, a.len])).collect::<Vec<_>>(),
        "points": s.points,
    })
}

fn origin_str(o: Origin) -> &'static str {
    match o {
        Origin::Left => "left",
        Origin::Right => "right",
        Origin::Both => "both",
    }
}

fn cmd_arcs(src: &CoinSource, as_json: bool, out: &Option<PathBuf>) -> Result<()> {
    let field = src.field()?;
    let ess = essential_spectrum(&field.left_params(), &field.right_params());
    let text = if as_json {
        json_string(&arcs_json(&ess))
    } else {
        let mut lines = String::new();
        for a in &ess.arcs {
            lines.push_str(&format!(
                "arc    start {:.6} rad  length {:.6} rad\n",
                a.start, a.len
            ));
        }
        for p in &ess.points {
            lines.push_str(&format!("point  {p:.6} rad (infinite multiplicity)\n"));
        }
        lines
    };
    write_out(out, &text)
}

fn cmd_thresholds(src: &CoinSource, as_json: bool, out: &Option<PathBuf>) -> Result<()> {
    let field = src.field()?;
    let tau = thresholds(&field.left_params(), &field.right_params());
    let text = if as_json {
        json_string(&json!({
            "schema": 1,
            "thresholds": tau.angles(),
        }))
    } else {
        let mut lines = String::new();
        for t in &tau.points {
            lines.push_str(&format!(
                "threshold  {:.6} rad  ({})\n",
                t.angle,
                origin_str(t.origin)
            ));
        }
        if tau.points.is_empty() {
            lines.push_str("no thresholds (both sides cover the full circle)\n");
        }
        lines
    };
    write_out(out, &text)
}

fn cmd_mourre(src: &CoinSource, theta: f64, as_json: bool, out: &Option<PathBuf>) -> Result<()> {
    let field = src.field()?;
    let theta = src.angle(theta);
    let rho = mourre_lower_bound(&field.left_params(), &field.right_params(), theta);
    let text = if as_json {
        let value = match rho {
            RhoValue::Finite(v) => json!(v),
            RhoValue::Infinite => json!("inf"),
        };
        json_string(&json!({"schema": 1, "rho": value}))
    } else {
        match rho {
            RhoValue::Finite(v) => format!("rho >= {v:.6} at theta = {theta:.6} rad\n"),
            RhoValue::Infinite => {
                format!("theta = {theta:.6} rad is off the spectrum (rho = +inf)\n")
            }
        }
    };
    write_out(out, &text)
}

fn cmd_dispersion(src: &CoinSource, samples: usize, out: &Option<PathBuf>) -> Result<()> {
    if samples == 0 {
        return Err(Error::Validation("--samples must be at least 1".into()));
    }
    let field = src.field()?;
    let left = field.left_coin();
    if left.op_norm_diff(&field.right_coin()) > 1e-14 {
        return Err(Error::Validation(
            "dispersion needs a constant coin, but the config has distinct left/right limits"
                .into(),
        ));
    }
    let p = field.left_params();
    let mut csv = String::from("k,re_lambda1,im_lambda1,re_lambda2,im_lambda2,v1,v2\n");
    for m in 0..samples {
        let k = std::f64::consts::TAU * m as f64 / samples as f64;
        let e = eigenpairs(&p, k);
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fnum(k),
            fnum(e.lambda[0].re),
            fnum(e.lambda[0].im),
            fnum(e.lambda[1].re),
            fnum(e.lambda[1].im),
            fnum(e.v[0]),
            fnum(e.v[1]),
        ));
    }
    write_out(out, &csv)
}

fn cmd_evolve(src: &CoinSource, steps: usize, initial: &str, out: &Option<PathBuf>) -> Result<()> {
    let field = src.field()?;
    let state = parse_initial(initial)?;
    let report = observe(&evolve(&field, &state, steps));
    let mut csv = String::from("x,p\n");
    for (x, p) in &report.distribution {
        csv.push_str(&format!("{x},{}\n", fnum(*p)));
    }
    write_out(out, &csv)
}

fn cmd_velocity_hist(
    src: &CoinSource,
    steps: usize,
    initial: &str,
    bins: usize,
    out: &Option<PathBuf>,
) -> Result<()> {
    let field = src.field()?;
    let state = parse_initial(initial)?;
    let hist = velocity_histogram(&field, &state, steps, bins)?;
    let mut csv = String::from("bin_center,mass\n");
    for (center, mass) in &hist.bins {
        csv.push_str(&format!("{},{}\n", fnum(*center), fnum(*mass)));
    }
    write_out(out, &csv)
}

fn cmd_eigs(src: &CoinSource, sites: usize, out: &Option<PathBuf>) -> Result<()> {
    let field = src.field()?;
    let left = field.left_params();
    let right = field.right_params();
    let ess = essential_spectrum(&left, &right);
    let tau = thresholds(&left, &right);
    let ring = build_ring(&field, sites)?;
    let mut decomp = eig_full(&ring)?;
    classify(&mut decomp.reports, &ess, &tau, 0.05, 0.125)?;

    let inside = decomp
        .reports
        .iter()
        .filter(|r| contains(&ess, r.phase))
        .count();
    let inside_fraction = inside as f64 / decomp.reports.len() as f64;
    let gap_states: Vec<f64> = decomp
        .reports
        .iter()
        .filter(|r| r.classification == Classification::GapLocalized)
        .map(|r| r.phase)
        .collect();

    let reports: Vec<Value> = decomp
        .reports
        .iter()
        .map(|r| {
            json!({
                "phase": r.phase,
                "residual": r.residual,
                "ipr": r.ipr,
                "com": r.com,
                "width99": r.width99,
                "classification": r.classification.as_str(),
                "nearest_threshold_dist": r.nearest_threshold_dist,
            })
        })
        .collect();
    let doc = json!({
        "schema": 1,
        "reports": reports,
        "summary": {
            "inside_fraction": inside_fraction,
            "gap_states": gap_states,
            "thresholds": tau.angles(),
        },
    });
    write_out(out, &json_string(&doc))
}

fn cmd_check_commutators(
    src: &CoinSource,
    grid: usize,
    tol: f64,
    as_json: bool,
    out: &Option<PathBuf>,
) -> Result<()> {
    let field = src.field()?;
    let left = field.left_coin();
    if left.op_norm_diff(&field.right_coin()) > 1e-14 {
        return Err(Error::Validation(
            "commutator identities are defined for a constant coin, but the config has distinct left/right limits".into(),
        ));
    }
    let p = field.left_params();
    let res = check_identities(&p, grid)?;
    let text = if as_json {
        json_string(&json!({
            "schema": 1,
            "grid": grid,
            "residuals": {
                "r_xv_h": res.r_xv_h,
                "r_xu_uv": res.r_xu_uv,
                "r_a_v2": res.r_a_v2,
                "r_commute_uv": res.r_commute_uv,
                "r_commute_uh": res.r_commute_uh,
                "r_norm_u": res.r_norm_u,
            },
            "max": res.max(),
        }))
    } else {
        format!(
            "K = {grid}\n\
             i(XV - VX) - H        {:.3e}\n\
             (XU - UX) - UV        {:.3e}\n\
             U*(AU - UA) - V^2     {:.3e}\n\
             [U, V]                {:.3e}\n\
             [U, H]                {:.3e}\n\
             sum of projections    {:.3e}\n",
            res.r_xv_h, res.r_xu_uv, res.r_a_v2, res.r_commute_uv, res.r_commute_uh, res.r_norm_u
        )
    };
    write_out(out, &text)?;
    if res.max() > tol {
        return Err(Error::Numerical(format!(
            "commutator residual {:.3e} exceeds the bound {tol:.1e} at K = {grid}",
            res.max()
        )));
    }
    Ok(())
}

fn cmd_verify_coin(
    src: &CoinSource,
    window: i64,
    kappa: f64,
    eps: f64,
    as_json: bool,
    out: &Option<PathBuf>,
) -> Result<()> {
    if window < 1 {
        return Err(Error::Validation("--window must be at least 1".into()));
    }
    let field = src.field()?;
    let mut worst_unitarity = 0.0_f64;
    for x in -window..=window {
        worst_unitarity = worst_unitarity.max(field.coin_at(x).mat().unitarity_defect());
    }
    let sr = verify_short_range(&field, -window..=window, kappa, eps)?;
    let left = field.left_params();
    let right = field.right_params();

    let params_json = |p: &CoinParams| {
        json!({"a": p.a, "alpha": p.alpha, "beta": p.beta, "delta": p.delta})
    };
    let text = if as_json {
        json_string(&json!({
            "schema": 1,
            "window": window,
            "unitarity_defect": worst_unitarity,
            "left": params_json(&left),
            "right": params_json(&right),
            "short_range": {
                "pass": sr.pass,
                "kappa": kappa,
                "eps": eps,
                "worst_ratio": sr.worst_ratio,
                "worst_x": sr.worst_x,
            },
        }))
    } else {
        format!(
            "coins unitary to {worst_unitarity:.3e} on [{}, {}]\n\
             left limit   a={:.6} alpha={:.6} beta={:.6} delta={:.6}\n\
             right limit  a={:.6} alpha={:.6} beta={:.6} delta={:.6}\n\
             short-range (kappa={kappa}, eps={eps}): {} (worst ratio {:.3}{})\n",
            -window,
            window,
            left.a,
            left.alpha,
            left.beta,
            left.delta,
            right.a,
            right.alpha,
            right.beta,
            right.delta,
            if sr.pass { "pass" } else { "FAIL" },
            sr.worst_ratio,
            sr.worst_x
                .map(|x| format!(" at x = {x}"))
                .unwrap_or_default(),
        )
    };
    write_out(out, &text)
}
