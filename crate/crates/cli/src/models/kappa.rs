use poisson_mech::groupoid::{canonical_bivector, groupoid_projection, Side};
use poisson_mech::poisson::pushforward;
use poisson_mech::sampling::Sampler;
use poisson_mech::spacetime::*;

use super::{jacobi_check, linspace, max_abs_diff, Check, ScenarioOutput};
use crate::config::{OutputKind, ScenarioConfig};
use crate::table::{Cell, Table};

pub fn execute(cfg: &ScenarioConfig) -> anyhow::Result<ScenarioOutput> {
    let spec = KappaSpec::new(cfg.param("epsilon"), cfg.count("spatial_dim"))?;
    let m = cfg.param("mass");
    let grid = linspace(0.0, cfg.param("p_max"), cfg.count("p_samples"));
    let mut out = ScenarioOutput::default();

    let profiles = ProjectionKind::ALL
        .iter()
        .map(|&k| velocity_momentum_profile(&spec, m, k, &grid))
        .collect::<Result<Vec<_>, _>>()?;
    for prof in &profiles {
        out.summary(&format!("monotonic_{}", prof.projection.name()), prof.is_monotonic());
    }
    out.summary("classical_limit_deviation", kappa_classical_limit_deviation(&spec, m, &grid)?);

    if cfg.wants(OutputKind::Trajectory) || cfg.wants(OutputKind::Projection) {
        let n = spec.dim();
        let names = spec.coord_names();
        let x0: Vec<f64> = (0..n).map(|k| if k == 0 { 0.0 } else { 0.25 * k as f64 }).collect();
        let times = linspace(0.0, cfg.param("t_end"), cfg.count("samples"));
        let traj = shell_trajectory(spec.spatial_dim, m, cfg.param("momentum"), &x0, &times);
        if cfg.wants(OutputKind::Trajectory) {
            let cols = std::iter::once("t".to_string())
                .chain(names.iter().cloned())
                .chain(names.iter().map(|s| format!("p_{s}")));
            let mut t = Table::new(cols);
            for (time, (x, p)) in times.iter().zip(&traj) {
                t.push_nums(std::iter::once(*time).chain(x.iter().copied()).chain(p.iter().copied()));
            }
            out.artifacts.push((OutputKind::Trajectory, t));
        }
        if cfg.wants(OutputKind::Projection) {
            let (_, r) = kappa_bivector(&spec);
            let mut cols = vec!["t".to_string()];
            for kind in ProjectionKind::ALL {
                cols.extend(names.iter().map(|s| format!("{}_{s}", kind.name())));
            }
            let mut t = Table::new(cols);
            for (time, (x, p)) in times.iter().zip(&traj) {
                let mut row = vec![*time];
                row.extend(x);
                row.extend(groupoid_projection(&r, x, p, Side::Left)?);
                row.extend(groupoid_projection(&r, x, p, Side::Right)?);
                t.push_nums(row);
            }
            out.artifacts.push((OutputKind::Projection, t));
        }
    }
    if cfg.wants(OutputKind::Profile) {
        let mut cols = vec!["p".to_string()];
        cols.extend(ProjectionKind::ALL.iter().map(|k| format!("v_{}", k.name())));
        cols.extend(ProjectionKind::ALL.iter().map(|k| format!("monotonic_{}", k.name())));
        let mut t = Table::new(cols);
        for (i, p) in grid.iter().enumerate() {
            let mut row = vec![Cell::Num(*p)];
            row.extend(profiles.iter().map(|prof| Cell::Num(prof.rows[i].1)));
            row.extend(profiles.iter().map(|prof| Cell::Flag(prof.is_monotonic())));
            t.push(row);
        }
        out.artifacts.push((OutputKind::Profile, t));
    }
    if cfg.wants(OutputKind::Certificate) {
        out.checks = certificates(cfg, &spec, m, &grid)?;
    }
    Ok(out)
}

fn certificates(cfg: &ScenarioConfig, spec: &KappaSpec, m: f64, grid: &[f64]) -> anyhow::Result<Vec<Check>> {
    let mut s = Sampler::new(cfg.seed);
    let points = cfg.count("points");
    let (biv, r) = kappa_bivector(spec);
    let mut checks = vec![jacobi_check("jacobi", &biv, &mut s, points)?];

    let (_, r_neg) = kappa_bivector(&KappaSpec { epsilon: -spec.epsilon, ..*spec });
    let canonical = canonical_bivector(&spec.coord_names())?;
    let n = spec.dim();
    let (mut mirror, mut push): (f64, f64) = (0.0, 0.0);
    for _ in 0..points {
        let (x, p) = (s.unit_box(n), s.unit_box(n));
        let l = groupoid_projection(&r, &x, &p, Side::Left)?;
        mirror = mirror.max(max_abs_diff(&l, &groupoid_projection(&r_neg, &x, &p, Side::Right)?));
        let z: Vec<f64> = x.iter().chain(&p).copied().collect();
        let map = |z: &[f64]| groupoid_projection(&r, &z[..n], &z[n..], Side::Left).expect("finite input");
        let pushed = pushforward(&canonical, &map, n, &z)?;
        let want = biv.matrix(&l)?;
        for i in 0..n {
            for j in 0..n {
                push = push.max((pushed.get(i, j) - want.get(i, j)).abs());
            }
        }
    }
    checks.push(Check::below("left_equals_mirrored_right", mirror, 1e-12));
    checks.push(Check::below("left_projection_pushforward", push, 1e-5));

    let ordinary = velocity_momentum_profile(spec, m, ProjectionKind::Ordinary, grid)?;
    let shell = ordinary
        .rows
        .iter()
        .map(|(p, v)| (v - p / (p * p + m * m).sqrt()).abs())
        .fold(0.0, f64::max);
    checks.push(Check::below("undeformed_shell_velocity", shell, 1e-9));
    Ok(checks)
}
