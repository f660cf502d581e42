use catlab_core::channel::evolve_cat;
use catlab_core::figures::{self, FigureCurve, TILTED_BATH_N};
use catlab_core::optimizer::{optimal_r, optimal_xi_analytic, optimal_xi_numeric, OptimizationResult};
use catlab_core::phase_space::{purity_grid_oracle, DEFAULT_EXTENT_SIGMAS};
use catlab_core::purity::{decoherence_time, hybrid_time_grid, interference_weight, purity_closed_form};
use catlab_core::{CatSpec, ChannelSpec, Error};
use rayon::prelude::*;

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::output::{fmt_num, CsvTable};

/// Largest accepted relative deviation between closed form and grid oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-4;
pub const ORACLE_TIMES: [f64; 4] = [0.0, 0.05, 0.5, 2.0];

/// Run one command, write its CSV and return a one-line summary for stdout.
pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    let (table, summary) = match cfg.command {
        Command::Evolve => evolve(cfg)?,
        Command::PurityCurve => purity_curve(cfg)?,
        Command::Sweep => sweep(cfg)?,
        Command::OptimizeXi => optimize_xi(cfg)?,
        Command::OptimizeR => optimize_r(cfg)?,
        Command::Figure1 => figure(cfg, figures::figure1()?, figure1_notes())?,
        Command::Figure2 => figure(cfg, figures::figure2()?, figure2_notes())?,
        Command::OracleCheck => return oracle_check(cfg),
    };
    table.write_atomic(&cfg.out)?;
    Ok(summary)
}

fn base_table(cfg: &RunConfig, header: &[&'static str]) -> CsvTable {
    let mut t = CsvTable::new(header);
    t.comment(format!("catlab {}", env!("CARGO_PKG_VERSION")));
    t.comment(cfg.provenance());
    t
}

/// Evaluation time in units of `1 / Gamma`, defaulting to the decoherence time.
fn t_eval_gamma(cfg: &RunConfig) -> Result<f64, CliError> {
    match cfg.t_eval {
        Some(t) => Ok(t),
        None => Ok(decoherence_time(&cfg.cat, &cfg.channel)? * cfg.channel.gamma),
    }
}

fn evolve(cfg: &RunConfig) -> Result<(CsvTable, String), CliError> {
    let t = cfg.t_max / cfg.channel.gamma;
    let state = evolve_cat(&cfg.cat, &cfg.channel, t)?;
    let purity = purity_closed_form(&cfg.cat, &cfg.channel, t)?;
    let mut table = base_table(
        cfg,
        &[
            "term", "log_weight_re", "log_weight_im", "cx_re", "cx_im", "cp_re", "cp_im", "sxx", "sxp", "spp",
        ],
    );
    table.comment(format!("t_gamma={}", cfg.t_max));
    table.comment(format!("purity={}", fmt_num(purity)));
    for (i, term) in state.mixture.terms().iter().enumerate() {
        let lw = term.log_weight();
        let c = term.center();
        let s = term.cov();
        let mut cells = vec![i.to_string()];
        cells.extend(
            [lw.re, lw.im, c.cx.re, c.cx.im, c.cp.re, c.cp.im, s.sxx(), s.sxp(), s.spp()]
                .iter()
                .map(|&v| fmt_num(v)),
        );
        table.row(cells);
    }
    let summary = format!("t_gamma={} purity={}", cfg.t_max, fmt_num(purity));
    Ok((table, summary))
}

fn purity_curve(cfg: &RunConfig) -> Result<(CsvTable, String), CliError> {
    let grid = hybrid_time_grid(cfg.t_max, cfg.samples)?;
    let gamma = cfg.channel.gamma;
    let points = grid
        .par_iter()
        .map(|&gt| {
            let t = gt / gamma;
            Ok::<_, Error>((
                gt,
                purity_closed_form(&cfg.cat, &cfg.channel, t)?,
                interference_weight(&cfg.cat, &cfg.channel, t)?,
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = base_table(cfg, &["t_gamma", "purity", "interference_weight"]);
    for &(gt, mu, w) in &points {
        table.numeric_row(&[gt, mu, w]);
    }
    let last = points.last().map(|p| p.1).unwrap_or(f64::NAN);
    Ok((table, format!("samples={} final_purity={}", points.len(), fmt_num(last))))
}

fn sweep(cfg: &RunConfig) -> Result<(CsvTable, String), CliError> {
    let gt = t_eval_gamma(cfg)?;
    let t = gt / cfg.channel.gamma;
    let n = cfg.samples;
    let values: Vec<f64> = (0..n)
        .map(|i| cfg.sweep_min + (cfg.sweep_max - cfg.sweep_min) * i as f64 / (n - 1) as f64)
        .collect();
    let param = cfg.sweep_param;
    let purities = values
        .par_iter()
        .map(|&v| {
            let spec = param.apply(cfg.cat, v);
            spec.validate()?;
            purity_closed_form(&spec, &cfg.channel, t)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = base_table(cfg, &["parameter", "purity"]);
    table.comment(format!("t_eval_gamma={gt}"));
    for (&v, &mu) in values.iter().zip(&purities) {
        table.numeric_row(&[v, mu]);
    }
    Ok((table, format!("sweep={} points={n} t_eval_gamma={gt}", param.name())))
}

fn optimization_table(cfg: &RunConfig, res: &OptimizationResult, gt: f64) -> CsvTable {
    let mut table = base_table(cfg, &["parameter", "purity"]);
    table.comment(format!("t_eval_gamma={gt}"));
    table.comment(format!("argmax={}", fmt_num(res.argmax)));
    table.comment(format!("value={}", fmt_num(res.value)));
    table.comment(format!("method={:?}", res.method));
    table.comment(format!("status={:?}", res.status));
    for &(p, mu) in &res.scan {
        table.numeric_row(&[p, mu]);
    }
    table
}

fn optimize_xi(cfg: &RunConfig) -> Result<(CsvTable, String), CliError> {
    let gt = t_eval_gamma(cfg)?;
    let res = optimal_xi_numeric(&cfg.cat, &cfg.channel, gt / cfg.channel.gamma)?;
    let mut table = optimization_table(cfg, &res, gt);
    match optimal_xi_analytic(cfg.cat.r0, cfg.cat.phi0, &cfg.channel) {
        Ok(xi) => table.comment(format!("analytic_xi={}", fmt_num(xi))),
        Err(Error::UnsupportedAnalytic(_)) => table.comment("analytic_xi=none"),
        Err(e) => return Err(e.into()),
    }
    let summary = format!(
        "xi_opt={} purity={} status={:?}",
        fmt_num(res.argmax),
        fmt_num(res.value),
        res.status
    );
    Ok((table, summary))
}

fn optimize_r(cfg: &RunConfig) -> Result<(CsvTable, String), CliError> {
    let gt = t_eval_gamma(cfg)?;
    let res = optimal_r(cfg.cat.beta_abs, &cfg.channel, gt / cfg.channel.gamma, cfg.cat.theta)?;
    let table = optimization_table(cfg, &res, gt);
    let summary = format!(
        "r_opt={} purity={} status={:?}",
        fmt_num(res.argmax),
        fmt_num(res.value),
        res.status
    );
    Ok((table, summary))
}

fn describe(label: &str, spec: &CatSpec, ch: &ChannelSpec) -> String {
    format!(
        "curve {label}: beta_abs={} xi={} r0={} phi0={} theta={} gamma={} n={} m1={} m2={}",
        spec.beta_abs, spec.xi, spec.r0, spec.phi0, spec.theta, ch.gamma, ch.n, ch.m1, ch.m2
    )
}

fn figure1_notes() -> Vec<String> {
    let mut notes: Vec<String> = figures::figure1_configs()
        .map(|cs| cs.iter().map(|(l, s, c)| describe(l, s, c)).collect())
        .unwrap_or_default();
    notes.push(format!(
        "assumption: the continuous curve uses N={TILTED_BATH_N} so that M=2+2i gives asymptotic purity 0.5"
    ));
    notes
}

fn figure2_notes() -> Vec<String> {
    figures::figure2_configs()
        .map(|cs| cs.iter().map(|(l, s, c)| describe(l, s, c)).collect())
        .unwrap_or_default()
}

fn figure(cfg: &RunConfig, curves: Vec<FigureCurve>, notes: Vec<String>) -> Result<(CsvTable, String), CliError> {
    let mut table = CsvTable::new(&["curve", "t_gamma", "purity", "interference_weight"]);
    table.comment(format!("catlab {}", env!("CARGO_PKG_VERSION")));
    table.comment(format!("command={}", cfg.command.name()));
    for n in &notes {
        table.comment(n);
    }
    let mut finals = Vec::new();
    for c in &curves {
        for ((&t, &mu), &w) in c.curve.times.iter().zip(&c.curve.purities).zip(&c.interference) {
            table.row(vec![c.label.to_string(), fmt_num(t), fmt_num(mu), fmt_num(w)]);
        }
        finals.push(format!("{}={}", c.label, fmt_num(*c.curve.purities.last().unwrap_or(&f64::NAN))));
    }
    Ok((table, format!("curves={} final {}", curves.len(), finals.join(" "))))
}

fn oracle_check(cfg: &RunConfig) -> Result<String, CliError> {
    let gamma = cfg.channel.gamma;
    let rows = ORACLE_TIMES
        .iter()
        .map(|&gt| {
            let t = gt / gamma;
            let closed = purity_closed_form(&cfg.cat, &cfg.channel, t)?;
            let mix = evolve_cat(&cfg.cat, &cfg.channel, t)?.mixture;
            let oracle = purity_grid_oracle(&mix, cfg.oracle_resolution, DEFAULT_EXTENT_SIGMAS)?;
            Ok::<_, Error>([gt, closed, oracle, (closed - oracle).abs() / oracle])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let worst = rows.iter().map(|r| r[3]).fold(0.0, f64::max);
    let mut table = base_table(cfg, &["t_gamma", "closed_form", "oracle", "rel_dev"]);
    table.comment(format!("max_rel_dev={}", fmt_num(worst)));
    for r in &rows {
        table.numeric_row(r);
    }
    table.write_atomic(&cfg.out)?;
    if worst > ORACLE_TOLERANCE {
        return Err(CliError::Numerical(format!(
            "closed form and grid oracle disagree: max relative deviation {worst:e} > {ORACLE_TOLERANCE:e}"
        )));
    }
    Ok(format!("max_rel_dev={}", fmt_num(worst)))
}
