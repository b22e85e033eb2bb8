use num_complex::Complex64;
use poisson_mech::integrate::{StepControl, Trajectory};
use poisson_mech::poisson::{hamiltonian_vector_field, pushforward};
use poisson_mech::sampling::Sampler;
use poisson_mech::su2::*;

use super::{jacobi_check, Check, ScenarioOutput};
use crate::config::{HamiltonianChoice, OutputKind, ScenarioConfig};
use crate::table::{Cell, Table};

fn hamiltonian(cfg: &ScenarioConfig) -> Su2Hamiltonian {
    match cfg.hamiltonian.unwrap_or_default() {
        HamiltonianChoice::Free => Su2Hamiltonian::Free,
        HamiltonianChoice::Prime => Su2Hamiltonian::Prime,
        HamiltonianChoice::DoublePrime => Su2Hamiltonian::DoublePrime,
    }
}

/// `dF/dH` for the selected `F(H)`; the flow of `F` is that of `H` with
/// time scaled by this constant.
fn time_scale(kind: Su2Hamiltonian, eps: f64, big_h: f64) -> f64 {
    match kind {
        Su2Hamiltonian::Free => 1.0,
        Su2Hamiltonian::DoublePrime => 1.0 / (4.0 * eps * eps),
        Su2Hamiltonian::Prime => {
            let k2 = 1.0 / (4.0 * eps * eps);
            let s = (big_h * big_h - 1.0).max(0.0).sqrt();
            if s < 1e-8 {
                k2
            } else {
                k2 * big_h.acosh() / s
            }
        }
    }
}

/// Initial state `A0 = u0 B0`, with `B0` the image of the linear momentum
/// `(mom_x, mom_y, mom_z)` under the momentum isomorphism.
fn initial_state(cfg: &ScenarioConfig, eps: f64) -> anyhow::Result<(SL2CElement, LinearMomentum)> {
    let q = [cfg.param("u_alpha_re"), cfg.param("u_alpha_im"), cfg.param("u_gamma_re"), cfg.param("u_gamma_im")];
    let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let u = SU2Element::new(Complex64::new(q[0], q[1]) / norm, Complex64::new(q[2], q[3]) / norm)?;
    let mom = LinearMomentum::new(cfg.param("mom_x"), cfg.param("mom_y"), cfg.param("mom_z"));
    let (zeta, w) = momentum_isomorphism(&mom, eps)?;
    let b = SB2Element::from_zeta_w(zeta, w, eps)?;
    Ok((SL2CElement::new(compose(&u, &b))?, mom))
}

fn factor(x: &[f64]) -> anyhow::Result<(SU2Element, SB2Element)> {
    Ok(iwasawa(&SL2CElement::from_real(x)?))
}

pub fn execute(cfg: &ScenarioConfig) -> anyhow::Result<ScenarioOutput> {
    let eps = cfg.param("epsilon");
    let kind = hamiltonian(cfg);
    let (a0, mom) = initial_state(cfg, eps)?;
    let mut out = ScenarioOutput::default();

    let big_h = free_hamiltonian(a0.matrix());
    out.summary("hamiltonian", big_h);
    out.summary("h", mom.usual_hamiltonian());
    out.summary("classical_limit_deviation", classical_limit_deviation(&mom, eps)?);

    let needs_flow = [OutputKind::Trajectory, OutputKind::Projection, OutputKind::Certificate]
        .iter()
        .any(|o| cfg.wants(*o));
    if !needs_flow {
        return Ok(out);
    }
    let step = StepControl { h: cfg.param("step"), tol: cfg.param("tol") };
    let t_end = cfg.param("t_end");
    let traj = free_flow(&a0, eps, kind, t_end, step)?;
    let b_drift = momentum_drift(&traj)?;
    out.summary("det_defect_max", traj.stats.constraint_defect.unwrap_or(f64::NAN));
    out.summary("det_residual_max", max_det_residual(&traj));
    out.summary("momentum_drift_max", b_drift.iter().copied().fold(0.0, f64::max));
    out.summary("renormalizations", Cell::Int(traj.stats.corrections.len() as i64));
    out.summary("accepted_steps", Cell::Int(traj.stats.accepted_steps as i64));
    out.summary("hamiltonian_drift", traj.stats.hamiltonian_drift.unwrap_or(f64::NAN));

    let scale = time_scale(kind, eps, big_h);
    if cfg.wants(OutputKind::Trajectory) {
        let mut t = Table::new(REAL_NAMES.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        t.columns.insert(0, "t".into());
        t.columns.extend(["rho", "n_re", "n_im", "H", "det_residual"].map(String::from));
        for (time, x) in traj.times.iter().zip(&traj.points) {
            let m = Mat2::from_real(x);
            let (_, b) = factor(x)?;
            let mut row = vec![*time];
            row.extend(x);
            row.extend([b.rho, b.n.re, b.n.im, free_hamiltonian(&m), (m.det() - 1.0).norm()]);
            t.push_nums(row);
        }
        out.artifacts.push((OutputKind::Trajectory, t));
    }
    if cfg.wants(OutputKind::Projection) {
        let names = ["alpha_re", "alpha_im", "gamma_re", "gamma_im"];
        let mut cols = vec!["t".to_string()];
        cols.extend(names.iter().map(|s| format!("u_{s}")));
        cols.extend(names.iter().map(|s| format!("geodesic_{s}")));
        cols.push("deviation".into());
        let mut t = Table::new(cols);
        let mut worst: f64 = 0.0;
        for (time, x) in traj.times.iter().zip(&traj.points) {
            let (u, _) = factor(x)?;
            let g = configurational_geodesic(&a0, eps, scale * time);
            let dev = u.matrix().dist(&g);
            worst = worst.max(dev);
            t.push_nums([*time, u.alpha.re, u.alpha.im, u.gamma.re, u.gamma.im, g.a.re, g.a.im, g.c.re, g.c.im, dev]);
        }
        out.summary("geodesic_deviation_max", worst);
        out.artifacts.push((OutputKind::Projection, t));
    }
    if cfg.wants(OutputKind::Certificate) {
        out.checks = certificates(cfg, eps, kind, &a0, &traj, scale, b_drift)?;
    }
    Ok(out)
}

fn certificates(
    cfg: &ScenarioConfig,
    eps: f64,
    kind: Su2Hamiltonian,
    a0: &SL2CElement,
    traj: &Trajectory,
    scale: f64,
    b_drift: [f64; 3],
) -> anyhow::Result<Vec<Check>> {
    let mut s = Sampler::new(cfg.seed);
    let points = cfg.count("points");
    let mut checks = vec![
        jacobi_check("jacobi_sl2c", &sl2c_bivector(eps), &mut s, points)?,
        jacobi_check("jacobi_momentum", &momentum_bivector(eps), &mut s, points)?,
        jacobi_check("jacobi_linear", &linear_bivector(), &mut s, points)?,
    ];

    let random_sl2c = |s: &mut Sampler| -> anyhow::Result<Mat2> {
        let (al, ga) = s.unit_quaternion();
        let b = SB2Element::new(s.uniform(0.5, 2.0), s.complex_in_box())?;
        Ok(compose(&SU2Element::new(al, ga)?, &b))
    };
    let biv = sl2c_bivector(eps);
    let free = Su2Hamiltonian::Free.field(eps)?;
    let mut dual: f64 = 0.0;
    for _ in 0..points {
        let a = random_sl2c(&mut s)?;
        let hvf = hamiltonian_vector_field(&biv, &free, &a.to_real())?;
        dual = dual.max(Mat2::from_real(&hvf).dist(&flow_rhs(&a, eps)));
    }
    checks.push(Check::below("dual_path_agreement", dual, 1e-6));

    let mut equilibrium: f64 = 0.0;
    for _ in 0..points {
        let (al, ga) = s.unit_quaternion();
        equilibrium = equilibrium.max(flow_rhs(&SU2Element::new(al, ga)?.matrix(), eps).max_abs());
    }
    checks.push(Check::below("su2_equilibria", equilibrium, 1e-12));

    let (mut push, mut casimir): (f64, f64) = (0.0, 0.0);
    let target = momentum_bivector(eps);
    let mut done = 0;
    while done < points {
        let v = s.unit_box(3);
        if v[0].hypot(v[1]) < 1e-3 {
            continue;
        }
        let map = |v: &[f64]| {
            let (z, w) = momentum_isomorphism(&LinearMomentum::new(v[0], v[1], v[2]), eps).expect("r >= |z|");
            vec![z, w.re, w.im]
        };
        let pushed = pushforward(&linear_bivector(), &map, 3, &v)?;
        let image = map(&v);
        let want = target.matrix(&image)?;
        for i in 0..3 {
            for j in 0..3 {
                push = push.max((pushed.get(i, j) - want.get(i, j)).abs());
            }
        }
        let r = LinearMomentum::new(v[0], v[1], v[2]).radius();
        let big_r = casimir_r_squared(image[0], Complex64::new(image[1], image[2]), eps).sqrt();
        casimir = casimir.max((eps * big_r - (eps * r).sinh()).abs());
        done += 1;
    }
    checks.push(Check::below("isomorphism_pushforward", push, 1e-5));
    checks.push(Check::below("casimir_correspondence", casimir, 1e-12));

    if eps != 0.0 {
        let mut round: f64 = 0.0;
        for _ in 0..points {
            let h = s.uniform(0.0, 5.0);
            let a = hamiltonian_relations(RelationInput::Small(h), eps)?;
            let b = hamiltonian_relations(RelationInput::Big(a.big_h), eps)?;
            let c = hamiltonian_relations(RelationInput::RSquared(b.r_squared), eps)?;
            for (x, y) in [(a.small_h, c.small_h), (a.big_h, c.big_h), (a.r_squared, c.r_squared), (a.h_double_prime, c.h_double_prime)] {
                round = round.max((x - y).abs() / x.abs().max(1.0));
            }
        }
        checks.push(Check::below("relations_round_trip", round, 1e-12));
    } else {
        checks.push(Check::skipped("relations_round_trip", 1e-12, "H is identically 1 at epsilon = 0"));
    }

    checks.push(Check::below("det_drift", traj.stats.constraint_defect.unwrap_or(f64::NAN), 1e-8));
    checks.push(Check::below("momentum_drift", b_drift.iter().copied().fold(0.0, f64::max), 1e-6));

    let (_, b0) = iwasawa(a0);
    let omega = legendre_velocity(&b0, eps, free_hamiltonian(a0.matrix())).scale(Complex64::new(scale, 0.0));
    let mut body: f64 = 0.0;
    for k in 1..traj.len().saturating_sub(1) {
        let (t0, t1, t2) = (traj.times[k - 1], traj.times[k], traj.times[k + 1]);
        if ((t2 - t1) - (t1 - t0)).abs() > 1e-12 * t1.max(1.0) {
            continue;
        }
        let du = (factor(&traj.points[k + 1])?.0.matrix() - factor(&traj.points[k - 1])?.0.matrix()).scale(Complex64::new(1.0 / (t2 - t0), 0.0));
        let v = factor(&traj.points[k])?.0.matrix().adjoint() * du;
        body = body.max(v.dist(&omega));
    }
    checks.push(Check::below("body_velocity", body, 1e-5));

    let step = StepControl { h: cfg.param("step"), tol: cfg.param("tol") };
    let unit = free_flow(a0, eps, kind, 1.0, step)?;
    let (_, x1) = unit.last().expect("non-empty flow");
    let exact = closed_form_solution(a0, eps, scale);
    let endpoint = Mat2::from_real(x1).dist(&exact).max(factor(x1)?.0.matrix().dist(&configurational_geodesic(a0, eps, scale)));
    checks.push(Check::below("endpoint_t1", endpoint, 1e-7));

    if eps != 0.0 {
        let mut pipeline: f64 = 0.0;
        for x in &traj.points {
            let big_h = free_hamiltonian(&Mat2::from_real(x));
            let (zeta, w) = factor(x)?.1.zeta_w(eps)?;
            let h = inverse_momentum_isomorphism(zeta, w, eps)?.usual_hamiltonian();
            pipeline = pipeline.max((big_h - (2.0 * eps * (2.0 * h).sqrt()).cosh()).abs());
        }
        checks.push(Check::below("relations_along_flow", pipeline, 1e-6));
    } else {
        checks.push(Check::skipped("relations_along_flow", 1e-6, "momentum coordinates need epsilon != 0"));
    }
    Ok(checks)
}
