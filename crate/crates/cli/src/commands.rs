use casimir_core::foucault::{default_gamma_scale, foucault_density_grid, foucault_distance_scan, foucault_total};
use casimir_core::modes::critical_wavevector;
use casimir_core::pressure::{gamma_limit_scan, plasma_counterpart, pressure_lifshitz, pressure_matsubara};
use casimir_core::units::{m_to_nm, nm_to_m};
use casimir_core::{mode_chart, CavityConfig, Material, ModeChart, PressureMethod, PressureResult};
use rayon::prelude::*;

use crate::grid::Grid;
use crate::output::{Cell, Table};
use crate::{Common, Failure, Method};

pub fn cavity(common: &Common) -> Result<CavityConfig, Failure> {
    Ok(CavityConfig::from_setup(common.setup.name(), nm_to_m(common.l_nm), common.t_k)?.with_tol(common.tol)?)
}

/// Prints a human-readable line; kept off stdout when the CSV goes there.
pub fn summary(common: &Common, line: &str) {
    if common.out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn table(command: &str, common: &Common, columns: &[&'static str]) -> Table {
    let mut t = Table::new(columns);
    t.set("command", command);
    t.set("setup", common.setup.name());
    t.set("L_nm", common.l_nm);
    t.set("T_K", common.t_k);
    t.set("tol", common.tol);
    t
}

const PRESSURE_COLUMNS: [&str; 4] = ["gamma_scale", "P_Pa", "err_Pa", "method"];

fn pressure_row(scale: f64, r: &PressureResult) -> Vec<Cell> {
    vec![
        scale.into(),
        r.pressure.into(),
        r.error_estimate.into(),
        r.method.to_string().as_str().into(),
    ]
}

fn engines(cfg: &CavityConfig, method: Method) -> Result<Vec<PressureResult>, Failure> {
    let mut out = Vec::new();
    if matches!(method, Method::Matsubara | Method::Both) {
        out.push(pressure_matsubara(cfg)?);
    }
    if matches!(method, Method::Lifshitz | Method::Both) {
        out.push(pressure_lifshitz(cfg)?);
    }
    Ok(out)
}

pub fn pressure(common: &Common, gamma_scale: f64, method: Method) -> Result<(), Failure> {
    let cfg = cavity(common)?.with_gamma_scale(gamma_scale)?;
    let results = engines(&cfg, method)?;
    let mut t = table("pressure", common, &PRESSURE_COLUMNS);
    t.set("gamma_scale", gamma_scale);
    t.set("method", method.name());
    for r in &results {
        t.push(pressure_row(gamma_scale, r));
    }
    t.emit(common.out.as_deref())?;
    let parts: Vec<String> = results
        .iter()
        .map(|r| format!("P^{}={:.9e} Pa (+/- {:.1e})", r.method, r.pressure, r.error_estimate))
        .collect();
    let mut line = format!("{} L={} nm T={} K: {}", common.setup.name(), common.l_nm, common.t_k, parts.join(", "));
    if let [a, b] = &results[..] {
        line.push_str(&format!(", relative difference {:.2e}", (a.pressure - b.pressure).abs() / a.pressure.abs()));
    }
    summary(common, &line);
    Ok(())
}

pub fn pressure_scan(common: &Common, scales: &[f64], method: Method, plasma_point: bool) -> Result<(), Failure> {
    let cfg = cavity(common)?;
    let mut t = table("pressure-scan", common, &PRESSURE_COLUMNS);
    t.set("gamma_scales", Grid(scales.to_vec()));
    t.set("method", method.name());
    t.set("plasma_point", plasma_point);

    if scales.is_empty() || scales.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Failure::Input("gamma scales must be a non-empty, strictly decreasing list".into()));
    }
    let mut rows: Vec<(f64, PressureResult)> = Vec::new();
    if matches!(method, Method::Matsubara | Method::Both) {
        rows.extend(gamma_limit_scan(&cfg, scales)?);
    }
    if matches!(method, Method::Lifshitz | Method::Both) {
        for &s in scales {
            rows.push((s, pressure_lifshitz(&cfg.clone().with_gamma_scale(s)?)?));
        }
    }
    for (s, r) in &rows {
        t.push(pressure_row(*s, r));
    }

    let mut line = format!("{} scan over {} scales", common.setup.name(), scales.len());
    if let Some((s, r)) = rows.iter().filter(|(_, r)| r.method == PressureMethod::MatsubaraSum).last() {
        line.push_str(&format!("; P^LM at scale {s:e}: {:.9e} Pa", r.pressure));
    }
    if plasma_point {
        let plasma = pressure_matsubara(&plasma_counterpart(&cfg))?;
        let f_scale = default_gamma_scale(&cfg);
        let f = foucault_total(&cfg, f_scale)?;
        t.set("foucault_gamma_scale", f_scale);
        let mut p0 = pressure_row(0.0, &plasma);
        p0[3] = "matsubara-plasma".into();
        t.push(p0);
        t.push(vec![
            0.0.into(),
            (plasma.pressure + f).into(),
            (plasma.error_estimate + common.tol * f.abs()).into(),
            "lifshitz-limit".into(),
        ]);
        line.push_str(&format!(
            "; P_0^LM={:.9e} Pa, P_0^L={:.9e} Pa (Foucault part {f:.6e} Pa)",
            plasma.pressure,
            plasma.pressure + f
        ));
    }
    t.emit(common.out.as_deref())?;
    summary(common, &line);
    Ok(())
}

fn foucault_scale(cfg: &CavityConfig, gamma_scale: Option<f64>) -> f64 {
    gamma_scale.unwrap_or_else(|| default_gamma_scale(cfg))
}

pub fn foucault_k(common: &Common, gamma_scale: Option<f64>, k_grid: Option<Grid>) -> Result<(), Failure> {
    let cfg = cavity(common)?;
    let scale = foucault_scale(&cfg, gamma_scale);
    let l = cfg.separation;
    let grid = k_grid.unwrap_or_else(|| Grid::log(1e-2 / l, 20.0 / l, 200));
    let dens = foucault_density_grid(&cfg, &grid.0, scale)?;
    let mut t = table("foucault-k", common, &["k_radpm", "density_Pa_m_per_rad"]);
    t.set("gamma_scale", scale);
    t.set("k_grid", &grid);
    t.set("density_normalization", "integral_dk_gives_Pa");
    for d in &dens {
        t.push(vec![d.k.into(), d.value.into()]);
    }
    t.emit(common.out.as_deref())?;
    let flips: Vec<String> = dens
        .windows(2)
        .filter(|w| (w[0].value < 0.0) != (w[1].value < 0.0))
        .map(|w| format!("{:.4e}", (w[0].k * w[1].k).sqrt()))
        .collect();
    let positive = dens.iter().filter(|d| d.value > 0.0).count();
    summary(
        common,
        &format!(
            "{}: {} wavevectors, {positive} repulsive, {} attractive; sign changes near k = [{}] rad/m",
            common.setup.name(),
            dens.len(),
            dens.len() - positive,
            flips.join(", ")
        ),
    );
    Ok(())
}

pub fn foucault_l(common: &Common, gamma_scale: Option<f64>, l_grid: Option<Grid>) -> Result<(), Failure> {
    let cfg = cavity(common)?;
    let scale = foucault_scale(&cfg, gamma_scale);
    let grid = l_grid.unwrap_or_else(|| Grid::log(100.0, 1000.0, 19));
    let scan = foucault_distance_scan(&cfg, &grid.scaled(1e-9), scale)?;
    let mut t = table("foucault-L", common, &["L_nm", "total_Pa"]);
    t.set("gamma_scale", scale);
    t.set("L_grid_nm", &grid);
    for (l, p) in &scan {
        t.push(vec![m_to_nm(*l).into(), (*p).into()]);
    }
    t.emit(common.out.as_deref())?;
    let positive = scan.iter().filter(|(_, p)| *p > 0.0).count();
    summary(
        common,
        &format!(
            "{}: Foucault pressure at {} separations, {positive} repulsive, {} attractive",
            common.setup.name(),
            scan.len(),
            scan.len() - positive
        ),
    );
    Ok(())
}

fn magnetic_mirror(cfg: &CavityConfig) -> Option<Material> {
    cfg.mirrors().into_iter().find(|m| m.is_magnetic())
}

pub fn modes(common: &Common, gamma_scale: Option<f64>, k_over_k0: &[f64]) -> Result<(), Failure> {
    let base = cavity(common)?;
    let scale = gamma_scale.unwrap_or_else(|| match magnetic_mirror(&base) {
        Some(m) => 1e-3 * m.omega_m.0 / base.max_gamma(),
        None => 1.0,
    });
    let cfg = base.with_gamma_scale(scale)?;
    let k0 = critical_wavevector(&magnetic_mirror(&cfg).unwrap_or_else(Material::ni))?.0;
    if k_over_k0.iter().any(|k| !(k.is_finite() && *k > 0.0)) {
        return Err(Failure::Input("k-over-k0 values must be positive".into()));
    }
    let charts: Vec<ModeChart> = k_over_k0
        .par_iter()
        .map(|&r| mode_chart(&cfg, r * k0))
        .collect::<Result<_, _>>()?;

    let mut t = table(
        "modes",
        common,
        &[
            "k_radpm",
            "gamma_tilde",
            "omega_m_tilde",
            "xi0_minus",
            "xi0_plus",
            "N_foucault",
            "N_magnetic",
            "N_Sminus",
            "N_Splus",
        ],
    );
    t.set("gamma_scale", scale);
    t.set("k_over_k0", Grid(k_over_k0.to_vec()));
    t.set("k0_radpm", k0);
    t.set("slab_factor", cfg.slab_factor);
    let mut lines = vec![format!(
        "{:>8} {:>12} {:>12} {:>12} {:>12} {:>4} {:>4} {:>4} {:>4}",
        "k/k0", "gamma~", "omega_m~", "xi0-", "xi0+", "Nf", "Nm", "S-", "S+"
    )];
    let show = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4e}"));
    let show_n = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
    for (r, c) in k_over_k0.iter().zip(&charts) {
        let omega_m_tilde = c.omega_m_tilde.map(|w| w.0);
        t.push(vec![
            c.k.0.into(),
            c.gamma_tilde.0.into(),
            omega_m_tilde.into(),
            c.xi0_minus.into(),
            c.xi0_plus.into(),
            c.winding("foucault").into(),
            c.winding("magnetic").into(),
            c.winding("S-").into(),
            c.winding("S+").into(),
        ]);
        lines.push(format!(
            "{:>8} {:>12} {:>12} {:>12} {:>12} {:>4} {:>4} {:>4} {:>4}",
            r,
            show(Some(c.gamma_tilde.0)),
            show(omega_m_tilde),
            show(c.xi0_minus),
            show(c.xi0_plus),
            show_n(c.winding("foucault")),
            show_n(c.winding("magnetic")),
            show_n(c.winding("S-")),
            show_n(c.winding("S+")),
        ));
    }
    t.emit(common.out.as_deref())?;
    summary(common, &lines.join("\n"));
    Ok(())
}
