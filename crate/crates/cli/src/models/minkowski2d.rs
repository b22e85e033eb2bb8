use poisson_mech::groupoid::{canonical_bivector, groupoid_projection, split_phase_point, Side};
use poisson_mech::integrate::{integrate_flow, StepControl};
use poisson_mech::poisson::{pushforward, ScalarField};
use poisson_mech::sampling::Sampler;
use poisson_mech::spacetime::*;

use super::{jacobi_check, linspace, Check, ScenarioOutput};
use crate::config::{OutputKind, ScenarioConfig};
use crate::table::{Cell, Table};

pub fn execute(cfg: &ScenarioConfig) -> anyhow::Result<ScenarioOutput> {
    let spec = Minkowski2DSpec::new(cfg.param("epsilon"), cfg.param("mass"))?;
    let curve = ScatteringCurveSpec { alpha: cfg.param("alpha"), beta: cfg.param("beta") };
    let p_grid = linspace(cfg.param("p_min"), cfg.param("p_max"), cfg.count("samples"));
    let mut out = ScenarioOutput::default();

    let (v_in, v_out) = scattering_data(&spec, &curve, VelocityMap::Tanh);
    out.summary("v_in", v_in);
    out.summary("v_out", v_out);
    out.summary("classical_limit_deviation", classical_limit_deviation_2d(&spec, &curve, &p_grid)?);

    if cfg.wants(OutputKind::Trajectory) {
        let mut t = Table::new(["p", "q_plus", "q_minus", "q0", "q1"]);
        for pt in parametric_trajectory_2d(&spec, &curve, &p_grid)? {
            t.push_nums([pt.p, pt.q_plus, pt.q_minus, pt.q0(), pt.q1()]);
        }
        out.artifacts.push((OutputKind::Trajectory, t));
    }
    if cfg.wants(OutputKind::Projection) {
        let table = projection_table(cfg, &spec, &mut out)?;
        out.artifacts.push((OutputKind::Projection, table));
    }
    if cfg.wants(OutputKind::Hyperbola) {
        let (table, worst) = hyperbola_table(cfg, &spec)?;
        out.summary("hyperbola_max_residual", worst);
        out.artifacts.push((OutputKind::Hyperbola, table));
    }
    if cfg.wants(OutputKind::Scattering) {
        let (table, worst) = scattering_table(cfg, &spec)?;
        out.summary("scattering_max_error", worst);
        out.artifacts.push((OutputKind::Scattering, table));
    }
    if cfg.wants(OutputKind::Certificate) {
        out.checks = certificates(cfg, &spec)?;
    }
    Ok(out)
}

/// Free flow of `H = p+ p-` and its two groupoid projections.
fn projection_table(cfg: &ScenarioConfig, spec: &Minkowski2DSpec, out: &mut ScenarioOutput) -> anyhow::Result<Table> {
    let r = minkowski2d_r(spec);
    let biv = canonical_bivector(&LIGHT_CONE_NAMES.map(String::from))?;
    let h = ScalarField::with_gradient(|z| z[2] * z[3], |z| vec![0.0, 0.0, z[3], z[2]]);
    let z0 = [cfg.param("x_plus"), cfg.param("x_minus"), cfg.param("p_plus"), cfg.param("p_minus")];
    let step = StepControl { h: cfg.param("step"), tol: 1e-10 };
    let traj = integrate_flow(&biv, &h, &z0, cfg.param("t_end"), step)?;
    let mut t = Table::new([
        "t", "x_plus", "x_minus", "p_plus", "p_minus", "left_x_plus", "left_x_minus", "right_x_plus", "right_x_minus",
    ]);
    for (time, z) in traj.times.iter().zip(&traj.points) {
        let (x, p) = split_phase_point(z)?;
        let l = groupoid_projection(&r, x, p, Side::Left)?;
        let rr = groupoid_projection(&r, x, p, Side::Right)?;
        t.push_nums([*time, z[0], z[1], z[2], z[3], l[0], l[1], rr[0], rr[1]]);
    }
    out.summary("hamiltonian_drift", traj.stats.hamiltonian_drift.unwrap_or(f64::NAN));
    out.summary("accepted_steps", Cell::Int(traj.stats.accepted_steps as i64));
    Ok(t)
}

fn hyperbola_table(cfg: &ScenarioConfig, spec: &Minkowski2DSpec) -> anyhow::Result<(Table, f64)> {
    let (cp, cm) = (cfg.param("c_plus"), cfg.param("c_minus"));
    let xs: Vec<f64> = linspace(cfg.param("x_min"), cfg.param("x_max"), cfg.count("samples"))
        .into_iter()
        .filter(|x| x != &cp)
        .collect();
    let mut t = Table::new(["x_plus", "x_minus", "residual"]);
    let mut worst: f64 = 0.0;
    for pt in hyperbola_curve(spec, cp, cm, &xs)? {
        let res = hyperbola_residual(spec, cp, cm, pt);
        worst = worst.max(res);
        t.push_nums([pt[0], pt[1], res]);
    }
    Ok((t, worst))
}

fn scattering_grid(cfg: &ScenarioConfig) -> Vec<ScatteringCurveSpec> {
    let n = cfg.count("grid");
    let (a, b) = (cfg.param("alpha_span"), cfg.param("beta_span"));
    let mut grid = Vec::with_capacity(n * n);
    for alpha in linspace(-a, a, n) {
        for beta in linspace(-b, b, n) {
            grid.push(ScatteringCurveSpec { alpha, beta });
        }
    }
    grid
}

fn scattering_table(cfg: &ScenarioConfig, spec: &Minkowski2DSpec) -> anyhow::Result<(Table, f64)> {
    let mut t = Table::new([
        "alpha", "beta", "v_in", "v_out", "v_in_limit", "v_out_limit", "v_in_tan", "v_out_tan",
    ]);
    let mut worst: f64 = 0.0;
    for c in scattering_grid(cfg) {
        let (vi, vo) = scattering_data(spec, &c, VelocityMap::Tanh);
        let (ni, no) = scattering_limit_numeric(spec, &c)?;
        let (ti, to) = scattering_data(spec, &c, VelocityMap::Tan);
        worst = worst.max((vi - ni).abs()).max((vo - no).abs());
        t.push(vec![c.alpha, c.beta, vi, vo, ni, no, ti, to].into_iter().map(Cell::Num).collect());
    }
    Ok((t, worst))
}

fn certificates(cfg: &ScenarioConfig, spec: &Minkowski2DSpec) -> anyhow::Result<Vec<Check>> {
    let mut s = Sampler::new(cfg.seed);
    let points = cfg.count("points");
    let biv = minkowski2d_bivector(spec);
    let mut checks = vec![jacobi_check("jacobi", &biv, &mut s, points)?];

    // both projections push the canonical bracket to +/- the model bracket
    let r = minkowski2d_r(spec);
    let canonical = canonical_bivector(&LIGHT_CONE_NAMES.map(String::from))?;
    let (mut left_err, mut right_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..points {
        let z = s.unit_box(4);
        for (side, sign, err) in [(Side::Left, 1.0, &mut left_err), (Side::Right, -1.0, &mut right_err)] {
            let map = |z: &[f64]| groupoid_projection(&r, &z[..2], &z[2..], side).expect("finite input");
            let pushed = pushforward(&canonical, &map, 2, &z)?;
            let want = sign * biv.component(0, 1, &map(&z))?;
            *err = err.max((pushed.get(0, 1) - want).abs());
        }
    }
    checks.push(Check::below("left_projection_pushforward", left_err, 1e-5));
    checks.push(Check::below("right_projection_pushforward", right_err, 1e-5));

    if spec.epsilon != 0.0 {
        let (cp, cm) = (cfg.param("c_plus"), cfg.param("c_minus"));
        let xs: Vec<f64> = linspace(cfg.param("x_min"), cfg.param("x_max"), cfg.count("samples"))
            .into_iter()
            .filter(|x| x != &cp)
            .collect();
        let worst = hyperbola_curve(spec, cp, cm, &xs)?
            .into_iter()
            .map(|pt| hyperbola_residual(spec, cp, cm, pt))
            .fold(0.0, f64::max);
        checks.push(Check::below("hyperbola_relation", worst, 1e-12));
    } else {
        checks.push(Check::skipped("hyperbola_relation", 1e-12, "the hyperbola degenerates at epsilon = 0"));
    }

    let (mut limit_err, mut odd_err): (f64, f64) = (0.0, 0.0);
    for c in scattering_grid(cfg) {
        let (vi, vo) = scattering_data(spec, &c, VelocityMap::Tanh);
        let (ni, no) = scattering_limit_numeric(spec, &c)?;
        limit_err = limit_err.max((vi - ni).abs()).max((vo - no).abs());
        let (fi, fo) = scattering_data(spec, &ScatteringCurveSpec { beta: -c.beta, ..c }, VelocityMap::Tanh);
        odd_err = odd_err.max(((vo - vi) + (fo - fi)).abs());
    }
    checks.push(Check::below("scattering_limits", limit_err, 1e-6));
    checks.push(Check::below("scattering_odd_in_beta", odd_err, 1e-12));
    Ok(checks)
}
