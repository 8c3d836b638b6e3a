//! Acceptance suite: every benchmark criterion in one sequential runner,
//! printing one pass/fail line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use active_flux::mesh::l1_error;
use active_flux::problems;
use active_flux::riemann;
use active_flux::{
    advance_with_bp_protocol, BpMode, Error, LimiterConfig, Scheme, SplittingKind, StepController,
};

struct Criterion {
    name: &'static str,
    budget_seconds: f64,
    run: fn() -> Result<String, String>,
}

#[test]
fn acceptance_criteria() {
    let criteria = [
        Criterion {
            name: "1 euler accuracy orders",
            budget_seconds: 60.0,
            run: criterion_accuracy,
        },
        Criterion {
            name: "2 advection limiter table",
            budget_seconds: 30.0,
            run: criterion_advection_table,
        },
        Criterion {
            name: "3 burgers transonic spike",
            budget_seconds: 10.0,
            run: criterion_burgers_spike,
        },
        Criterion {
            name: "4 double rarefaction",
            budget_seconds: 20.0,
            run: criterion_double_rarefaction,
        },
        Criterion {
            name: "5 leblanc",
            budget_seconds: 300.0,
            run: criterion_leblanc,
        },
        Criterion {
            name: "6 sedov",
            budget_seconds: 60.0,
            run: criterion_sedov,
        },
        Criterion {
            name: "7 blast wave",
            budget_seconds: 60.0,
            run: criterion_blast_wave,
        },
        Criterion {
            name: "8 property suites",
            budget_seconds: 60.0,
            run: criterion_property_suites,
        },
    ];
    let mut failures = Vec::new();
    for c in &criteria {
        let started = Instant::now();
        let outcome = (c.run)();
        let wall = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) if wall <= c.budget_seconds => {
                println!("acceptance {:<28} PASS  [{wall:.1}s]  {detail}", c.name);
            }
            Ok(detail) => {
                println!(
                    "acceptance {:<28} FAIL  [{wall:.1}s > {:.0}s budget]  {detail}",
                    c.name, c.budget_seconds
                );
                failures.push(c.name);
            }
            Err(msg) => {
                println!("acceptance {:<28} FAIL  [{wall:.1}s]  {msg}", c.name);
                failures.push(c.name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

fn run_problem(
    spec: &problems::ProblemSpec,
    n: usize,
    cfl: f64,
    splitting: SplittingKind,
    limiter: LimiterConfig,
) -> Result<
    (
        active_flux::AfState,
        active_flux::RunDiagnostics,
        active_flux::Equation,
    ),
    Error,
> {
    let (eq, grid, state) = spec.initialize(n)?;
    let scheme = Scheme::new(eq, grid, spec.boundary, splitting, limiter)?;
    let ctrl = StepController::new(cfl, spec.t_final);
    let (out, diag) = advance_with_bp_protocol(&scheme, state, &ctrl)?;
    Ok((out, diag, eq))
}

/// Criterion 1: third-order l1 convergence for JS, LLF, VH and second order
/// for SW on the smooth gamma = 3 flow, BP limiters on, CFL 0.18.
fn criterion_accuracy() -> Result<String, String> {
    let spec = problems::euler_accuracy();
    let meshes = [40usize, 80, 160, 320];
    let mut summary = String::new();
    for kind in [
        SplittingKind::Js,
        SplittingKind::LlfFvs,
        SplittingKind::VhFvs,
        SplittingKind::SwFvs,
    ] {
        let mut errors = Vec::new();
        for &n in &meshes {
            let (out, _, eq) = run_problem(&spec, n, 0.18, kind, LimiterConfig::bp_global())
                .map_err(|e| format!("{kind:?} n={n}: {e}"))?;
            let grid = active_flux::Grid1d::new(spec.x_min, spec.x_max, n).unwrap();
            let reference = spec
                .reference_averages(&grid, spec.t_final)
                .map_err(|e| e.to_string())?
                .expect("exact reference");
            errors.push(l1_error(&out, &reference, eq.n_components()));
        }
        // observed order over N = 40 -> 320 per component
        let span = (meshes.len() - 1) as f64;
        let mut orders = [0.0f64; 3];
        for (c, order) in orders.iter_mut().enumerate() {
            *order = (errors[0][c] / errors[meshes.len() - 1][c]).log2() / span;
        }
        summary.push_str(&format!(
            "{} {:.2}/{:.2}/{:.2}  ",
            kind.name(),
            orders[0],
            orders[1],
            orders[2]
        ));
        for (c, order) in orders.iter().enumerate() {
            if kind == SplittingKind::SwFvs {
                if !(1.6..=2.4).contains(order) {
                    return Err(format!(
                        "SW component {c} order {order:.2} outside [1.6, 2.4]; {summary}"
                    ));
                }
            } else if *order < 2.7 {
                return Err(format!(
                    "{kind:?} component {c} order {order:.2} below 2.7; {summary}"
                ));
            }
        }
    }
    Ok(summary)
}

/// Criterion 2: with global MP limiting on both degrees of freedom the
/// combined range over the whole run stays exactly inside [0, 1]; with
/// either limiter alone a violation of at least 1e-5 occurs.
fn criterion_advection_table() -> Result<String, String> {
    let spec = problems::advection_profile();
    let run = |avg: BpMode, point: BpMode| -> Result<(f64, f64), String> {
        let limiter = LimiterConfig {
            bp_average: avg,
            bp_point: point,
            power_law: false,
        };
        let (_, diag, _) = run_problem(&spec, 400, 0.1, SplittingKind::LlfFvs, limiter)
            .map_err(|e| e.to_string())?;
        Ok((diag.comp_min[0], diag.comp_max[0]))
    };
    let (min_both, max_both) = run(BpMode::Global, BpMode::Global)?;
    if !(min_both >= 0.0 && max_both <= 1.0) {
        return Err(format!(
            "dual limiter range [{min_both:.3e}, {max_both:.3e}] leaves [0, 1]"
        ));
    }
    let (min_avg, max_avg) = run(BpMode::Global, BpMode::Off)?;
    let viol_avg = (-min_avg).max(max_avg - 1.0);
    if viol_avg < 1e-5 {
        return Err(format!(
            "average-only limiting shows no 1e-5 violation (got {viol_avg:.2e})"
        ));
    }
    let (min_pnt, max_pnt) = run(BpMode::Off, BpMode::Global)?;
    let viol_pnt = (-min_pnt).max(max_pnt - 1.0);
    if viol_pnt < 1e-5 {
        return Err(format!(
            "point-only limiting shows no 1e-5 violation (got {viol_pnt:.2e})"
        ));
    }
    Ok(format!(
        "both [{min_both:.1e}, 1+{:.1e}]; avg-only violation {viol_avg:.1e}; point-only violation {viol_pnt:.1e}",
        max_both - 1.0
    ))
}

/// Criterion 3: the JS scheme without limiting grows the transonic spike
/// past 2.2; LLF-FVS with local MP limiting stays inside [-1, 2].
fn criterion_burgers_spike() -> Result<String, String> {
    let spec = problems::burgers_square();
    let cfl = spec.default_cfl(SplittingKind::Js);
    let (_, diag_js, _) = run_problem(&spec, 200, cfl, SplittingKind::Js, LimiterConfig::none())
        .map_err(|e| format!("js run: {e}"))?;
    if diag_js.comp_max[0] < 2.2 {
        return Err(format!("JS spike max {:.3} below 2.2", diag_js.comp_max[0]));
    }
    let (_, diag_llf, _) = run_problem(
        &spec,
        200,
        cfl,
        SplittingKind::LlfFvs,
        LimiterConfig::bp_local(),
    )
    .map_err(|e| format!("llf run: {e}"))?;
    if diag_llf.comp_max[0] > 2.0 + 1e-12 || diag_llf.comp_min[0] < -1.0 - 1e-12 {
        return Err(format!(
            "limited LLF range [{:.15}, {:.15}] leaves [-1, 2]",
            diag_llf.comp_min[0], diag_llf.comp_max[0]
        ));
    }
    Ok(format!(
        "JS spike max {:.2}; limited LLF range [{:.3}, {:.3}]",
        diag_js.comp_max[0], diag_llf.comp_min[0], diag_llf.comp_max[0]
    ))
}

/// Criterion 4: the vacuum-forming double rarefaction completes with
/// positive density and pressure under BP limiting, and aborts with a
/// negativity diagnostic without it.
fn criterion_double_rarefaction() -> Result<String, String> {
    let spec = problems::double_rarefaction();
    let (_, diag, _) = run_problem(
        &spec,
        400,
        0.4,
        SplittingKind::LlfFvs,
        LimiterConfig::bp_global(),
    )
    .map_err(|e| format!("BP run failed: {e}"))?;
    if !(diag.min_density > 0.0 && diag.min_pressure > 0.0) {
        return Err(format!(
            "positivity violated: min rho {:.3e}, min p {:.3e}",
            diag.min_density, diag.min_pressure
        ));
    }
    match run_problem(
        &spec,
        400,
        0.4,
        SplittingKind::LlfFvs,
        LimiterConfig::none(),
    ) {
        Ok(_) => Err("run without limiting unexpectedly succeeded".into()),
        Err(Error::Abort { detail, .. }) => {
            if detail.contains("pressure") || detail.contains("density") {
                Ok(format!(
                    "min rho {:.2e}, min p {:.2e}; unlimited abort: {detail}",
                    diag.min_density, diag.min_pressure
                ))
            } else {
                Err(format!("abort without negativity diagnostic: {detail}"))
            }
        }
        Err(e) => Err(format!("unexpected error kind: {e}")),
    }
}

/// Criterion 5: LeBlanc completes positively; the density at x = 0.9 on 400
/// cells is within a factor two of the exact Riemann solution, and the
/// shock-front location error decreases monotonically under refinement.
fn criterion_leblanc() -> Result<String, String> {
    let spec = problems::leblanc();
    let gamma = 1.4;
    let left = active_flux::EulerPrimitive::new(2.0, 0.0, 1e9);
    let right = active_flux::EulerPrimitive::new(1e-3, 0.0, 1.0);
    let sol = riemann::solve(gamma, left, right).map_err(|e| e.to_string())?;
    // right shock speed from the star pressure
    let a_r = right.sound_speed(gamma);
    let shock_speed = right.v
        + a_r
            * ((gamma + 1.0) / (2.0 * gamma) * sol.p_star / right.p
                + (gamma - 1.0) / (2.0 * gamma))
                .sqrt();
    let front_exact = 0.5 + shock_speed * spec.t_final;
    let rho_exact_09 = sol.sample((0.9 - 0.5) / spec.t_final).rho;
    // front threshold: geometric midpoint of post- and pre-shock densities
    let rho_star = sol.sample(shock_speed - 1.0).rho;
    let threshold = (rho_star * right.rho).sqrt();

    let mut detail = format!("front exact {front_exact:.4}; ");
    let mut last_err = f64::INFINITY;
    let mut rho_09_coarse = 0.0;
    for n in [400usize, 1600, 6000] {
        let (out, diag, _) = run_problem(
            &spec,
            n,
            0.4,
            SplittingKind::LlfFvs,
            LimiterConfig::bp_global(),
        )
        .map_err(|e| format!("n={n}: {e}"))?;
        if !(diag.min_density > 0.0 && diag.min_pressure > 0.0) {
            return Err(format!(
                "n={n}: positivity violated (min rho {:.2e}, min p {:.2e})",
                diag.min_density, diag.min_pressure
            ));
        }
        let grid = active_flux::Grid1d::new(spec.x_min, spec.x_max, n).unwrap();
        let front = (0..n)
            .filter(|&i| out.averages[i].density() > threshold)
            .map(|i| grid.cell_center(i))
            .fold(f64::NEG_INFINITY, f64::max);
        let err = (front - front_exact).abs();
        detail.push_str(&format!("n={n}: front err {err:.4}; "));
        if err >= last_err {
            return Err(format!(
                "front error not monotone: {err:.5} after {last_err:.5}; {detail}"
            ));
        }
        last_err = err;
        if n == 400 {
            let i = (0..n)
                .min_by(|&a, &b| {
                    (grid.cell_center(a) - 0.9)
                        .abs()
                        .total_cmp(&(grid.cell_center(b) - 0.9).abs())
                })
                .unwrap();
            rho_09_coarse = out.averages[i].density();
        }
    }
    let factor = (rho_09_coarse / rho_exact_09).max(rho_exact_09 / rho_09_coarse);
    if factor > 2.0 {
        return Err(format!(
            "density at x=0.9 off by factor {factor:.2} (num {rho_09_coarse:.3e}, exact {rho_exact_09:.3e})"
        ));
    }
    detail.push_str(&format!("rho(0.9) factor {factor:.2}"));
    Ok(detail)
}

/// Criterion 6: Sedov completes positively with the density peak symmetric
/// about the center to one cell.
fn criterion_sedov() -> Result<String, String> {
    let spec = problems::sedov();
    let n = 801;
    let (out, diag, _) = run_problem(
        &spec,
        n,
        0.4,
        SplittingKind::LlfFvs,
        LimiterConfig::bp_global(),
    )
    .map_err(|e| e.to_string())?;
    if !(diag.min_density > 0.0 && diag.min_pressure > 0.0) {
        return Err(format!(
            "positivity violated: min rho {:.2e}, min p {:.2e}",
            diag.min_density, diag.min_pressure
        ));
    }
    let grid = active_flux::Grid1d::new(spec.x_min, spec.x_max, n).unwrap();
    let peak = |range: std::ops::Range<usize>| -> f64 {
        range
            .max_by(|&a, &b| {
                out.averages[a]
                    .density()
                    .total_cmp(&out.averages[b].density())
            })
            .map(|i| grid.cell_center(i))
            .unwrap()
    };
    let center = n / 2;
    let left_peak = peak(0..center);
    let right_peak = peak(center + 1..n);
    let asymmetry = (left_peak + right_peak).abs();
    if asymmetry > grid.dx {
        return Err(format!(
            "peaks at {left_peak:.4} and {right_peak:.4}: asymmetry {asymmetry:.2e} exceeds one cell"
        ));
    }
    Ok(format!(
        "peaks at -+{right_peak:.4}, asymmetry {asymmetry:.1e}, min rho {:.1e}, min p {:.1e}",
        diag.min_density, diag.min_pressure
    ))
}

/// Criterion 7: blast-wave interaction completes positively with the final
/// density maximum in the qualitative range [4, 8].
fn criterion_blast_wave() -> Result<String, String> {
    let spec = problems::blast_wave();
    let (out, diag, _) = run_problem(
        &spec,
        800,
        0.4,
        SplittingKind::LlfFvs,
        LimiterConfig::bp_global(),
    )
    .map_err(|e| e.to_string())?;
    if !(diag.min_density > 0.0 && diag.min_pressure > 0.0) {
        return Err(format!(
            "positivity violated: min rho {:.2e}, min p {:.2e}",
            diag.min_density, diag.min_pressure
        ));
    }
    let rho_max = out
        .averages
        .iter()
        .map(|u| u.density())
        .fold(f64::NEG_INFINITY, f64::max);
    if !(4.0..=8.0).contains(&rho_max) {
        return Err(format!("final density max {rho_max:.3} outside [4, 8]"));
    }
    Ok(format!(
        "final density max {rho_max:.2}, min rho {:.1e}, min p {:.1e}",
        diag.min_density, diag.min_pressure
    ))
}

/// Criterion 8: all randomized property suites pass at 1e4 cases each.
fn criterion_property_suites() -> Result<String, String> {
    let reports = active_flux::verify::run_all(20240711, 10_000);
    let mut detail = String::new();
    for r in &reports {
        detail.push_str(&format!("{} ", r.name));
        if !r.passed() {
            return Err(format!(
                "suite {} failed {} of {} cases: {:?}",
                r.name, r.failures, r.cases, r.messages
            ));
        }
    }
    Ok(format!("all pass: {detail}"))
}
