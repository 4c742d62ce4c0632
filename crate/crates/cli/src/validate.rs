use casimir_core::modes::{
    critical_wavevector, gamma_tilde, gamma_tilde_asymptotic, kz_zero_points, omega_m_tilde_asymptotic,
    te_zeros_imag_axis, xi0_asymptotic,
};
use casimir_core::pressure::{ideal_pressure, pressure_lifshitz, pressure_matsubara};
use casimir_core::units::nm_to_m;
use casimir_core::{CasimirError, CavityConfig, Material, MirrorResponse};

use crate::commands::summary;
use crate::{Common, Failure};

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn engines(common: &Common) -> Result<Vec<Check>, CasimirError> {
    let mut out = Vec::new();
    for pair in ["au-au", "au-ni", "ni-ni"] {
        let cfg = CavityConfig::from_setup(pair, nm_to_m(common.l_nm), common.t_k)?.with_tol(common.tol)?;
        let lm = pressure_matsubara(&cfg)?.pressure;
        let l = pressure_lifshitz(&cfg)?.pressure;
        let r = rel(l, lm);
        out.push(Check {
            name: format!("engines {pair}"),
            ok: r <= 1e-3,
            detail: format!("P^LM={lm:.9e} P^L={l:.9e} rel={r:.1e}"),
        });
    }
    let ideal = CavityConfig::from_setup("au-au", nm_to_m(common.l_nm), common.t_k.min(30.0))?
        .with_response(MirrorResponse::Ideal);
    let p = pressure_matsubara(&ideal)?.pressure;
    let oracle = ideal_pressure(ideal.separation);
    out.push(Check {
        name: "ideal mirrors".into(),
        ok: rel(p, oracle) <= 2e-2,
        detail: format!("P^LM={p:.6e} vs {oracle:.6e} at T={} K", ideal.temperature),
    });
    Ok(out)
}

fn asymptotics() -> Result<Vec<Check>, CasimirError> {
    let ni = Material::ni();
    let ni = ni.with_gamma_scale(1e-3 * ni.omega_m.0 / ni.gamma.0)?;
    let k0 = critical_wavevector(&ni)?.0;
    let mut out = Vec::new();
    for ratio in [0.5, 2.0, 5.0] {
        let k = ratio * k0;
        let g = rel(gamma_tilde(&ni, k)?.0, gamma_tilde_asymptotic(&ni, k));
        let wt = kz_zero_points(&ni, k)?.omega_m_tilde.map_or(f64::NAN, |w| w.0);
        let m = rel(wt, omega_m_tilde_asymptotic(&ni, k));
        let zeros = te_zeros_imag_axis(&ni, k)?;
        let approx = xi0_asymptotic(ni.gamma.0, k, k0);
        let near = if approx > 0.0 { zeros.xi0_plus } else { zeros.xi0_minus };
        let x = rel(near, approx);
        out.push(Check {
            name: format!("asymptotics k={ratio}k0"),
            ok: g <= 1e-2 && m <= 1e-2 && x <= 5e-2,
            detail: format!("gamma~ {g:.1e}, omega_m~ {m:.1e}, xi0 {x:.1e}"),
        });
    }
    Ok(out)
}

pub fn run(common: &Common) -> Result<(), Failure> {
    let mut checks = engines(common)?;
    checks.extend(asymptotics()?);
    let failed = checks.iter().filter(|c| !c.ok).count();
    for c in &checks {
        let status = if c.ok { "ok" } else { "FAIL" };
        summary(common, &format!("{status:>4}  {}: {}", c.name, c.detail));
    }
    if let Some(path) = &common.out {
        let mut t = crate::output::Table::new(&["check", "ok", "detail"]);
        t.set("command", "validate");
        t.set("L_nm", common.l_nm);
        t.set("T_K", common.t_k);
        t.set("tol", common.tol);
        for c in &checks {
            t.push(vec![c.name.as_str().into(), c.ok.to_string().as_str().into(), c.detail.as_str().into()]);
        }
        t.emit(Some(path))?;
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Violations(failed))
    }
}
