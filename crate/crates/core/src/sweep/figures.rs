//! Figure pipelines: parameter maps, dissipative occupations and decay-free
//! entanglement dynamics.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{Fig3Config, Fig4Config, RunConfig};
use super::grid::{pool, run_grid, GridAxis, GridOutcome, PointFailure};
use super::table::{Column, ResultTable};
use crate::dynamics::{
    converged_evolve, uniform_grid, ConvergedTrajectory, EvolutionSpec, InitialState, SpectralPropagator,
};
use crate::entanglement::{min_residual_contangle, project_to_three_qubits, three_tangle_pure};
use crate::error::{Error, Result};
use crate::linalg::operators::basis_state;
use crate::linalg::{ComplexMatrix, SpaceLayout};
use crate::model::{
    build_hamiltonian_squeezed, collapse_operators, derive_params, Constants, DerivedParams, Dissipation, Frame,
    ModelParams, PhysicalParams,
};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Failure {
    pub table: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub total_points: usize,
    pub failures: Vec<Failure>,
    /// Non-fatal notes, e.g. leaked-weight flags.
    pub warnings: Vec<String>,
}

impl RunReport {
    fn new(command: &str) -> Self {
        Self { command: command.into(), ..Default::default() }
    }

    fn absorb(&mut self, table: &str, outcome: &GridOutcome) {
        self.total_points += outcome.total;
        self.failures.extend(outcome.failures.iter().map(|PointFailure { point, error }| Failure {
            table: table.into(),
            point: Some(point.clone()),
            error: error.clone(),
        }));
    }

    /// More than 10% of evaluated points failed.
    pub fn excessive_failures(&self) -> bool {
        self.failures.len() * 10 > self.total_points
    }
}

#[derive(Clone, Debug)]
pub struct FigureOutput {
    pub tables: Vec<ResultTable>,
    pub report: RunReport,
}

/// Physical context shared by the parameter-map pipelines.
pub struct Context {
    pub constants: Constants,
    pub params: PhysicalParams,
    pub workers: usize,
}

impl Context {
    pub fn from_config(cfg: &RunConfig, workers: usize) -> Result<Self> {
        let constants = cfg.constants()?;
        let params = cfg.physical_params(&constants)?;
        Ok(Self { constants, params, workers })
    }

    fn derive_at(&self, overrides: &[(&str, f64)]) -> Result<DerivedParams> {
        let mut p = self.params.clone();
        for (name, v) in overrides {
            p.set(name, *v)?;
        }
        derive_params(&p, &self.constants)
    }

    fn table(&self, name: &str, columns: Vec<Column>) -> ResultTable {
        ResultTable::new(name, &self.constants.hash(), columns).with_run("params", &self.params)
    }
}

fn fill(table: &mut ResultTable, outcome: &GridOutcome, map: impl Fn(&[f64]) -> Vec<f64>) -> Result<()> {
    for row in &outcome.rows {
        table.push(map(row))?;
    }
    Ok(())
}

const TWO_PI: f64 = 2.0 * PI;

/// λ_eff and C maps over YIG radius and squeezing, with 1-D cuts and the
/// threshold contours.
pub fn fig2(ctx: &Context, cfg: &RunConfig) -> Result<FigureOutput> {
    let f = &cfg.fig2;
    let mut report = RunReport::new("fig2");
    let mut tables = Vec::new();
    let r_axis = GridAxis::linear("r", f.r_min, f.r_max, f.r_count);
    let radius_axis = GridAxis::log("yig_radius", f.radius_min, f.radius_max, f.radius_count);
    let meta = |t: ResultTable| t.with_run("fig2", f);

    let out = run_grid(std::slice::from_ref(&r_axis), ctx.workers, |p| {
        let d = ctx.derive_at(&[("r", p[0])])?;
        Ok(vec![d.lambda_eff / d.lambda])
    })?;
    report.absorb("fig2a", &out);
    let mut a = meta(ctx.table("fig2a", vec![Column::new("r", ""), Column::new("lambda_eff_over_lambda", "")]));
    fill(&mut a, &out, |row| row.to_vec())?;
    tables.push(a);

    let radii_b = GridAxisList::new("yig_radius", &f.panel_b_radii)?;
    let out = run_grid_lists(&[radii_b, GridAxisList::from_axis(&r_axis)], ctx.workers, |p| {
        let d = ctx.derive_at(&[("yig_radius", p[0]), ("r", p[1])])?;
        Ok(vec![d.enhancement_over_g0()])
    })?;
    report.absorb("fig2b", &out);
    let mut b = meta(ctx.table(
        "fig2b",
        vec![Column::new("radius_nm", "nm"), Column::new("r", ""), Column::new("lambda_eff_over_g0", "")],
    ));
    fill(&mut b, &out, |row| vec![row[0] * 1e9, row[1], row[2]])?;
    tables.push(b);

    let r_c = GridAxisList::new("r", &f.panel_c_r)?;
    let out = run_grid_lists(&[r_c, GridAxisList::from_axis(&radius_axis)], ctx.workers, |p| {
        let d = ctx.derive_at(&[("r", p[0]), ("yig_radius", p[1])])?;
        Ok(vec![d.enhancement_over_g0()])
    })?;
    report.absorb("fig2c", &out);
    let mut c = meta(ctx.table(
        "fig2c",
        vec![Column::new("r", ""), Column::new("radius_nm", "nm"), Column::new("lambda_eff_over_g0", "")],
    ));
    fill(&mut c, &out, |row| vec![row[0], row[1] * 1e9, row[2]])?;
    tables.push(c);

    let out = run_grid(&[radius_axis.clone(), r_axis.clone()], ctx.workers, |p| {
        let d = ctx.derive_at(&[("yig_radius", p[0]), ("r", p[1])])?;
        Ok(vec![d.lambda_eff / TWO_PI / 1e6, d.cooperativity])
    })?;
    report.absorb("fig2d+e", &out);
    let mut dmap = meta(ctx.table(
        "fig2d",
        vec![Column::new("radius_nm", "nm"), Column::new("r", ""), Column::new("lambda_eff_mhz", "MHz")],
    ))
    .with_run("contour_level_mhz", f.lambda_eff_level_hz / 1e6);
    fill(&mut dmap, &out, |row| vec![row[0] * 1e9, row[1], row[2]])?;
    let mut emap =
        meta(ctx.table(
            "fig2e",
            vec![Column::new("radius_nm", "nm"), Column::new("r", ""), Column::new("cooperativity", "")],
        ))
        .with_run("contour_level", f.cooperativity_level);
    fill(&mut emap, &out, |row| vec![row[0] * 1e9, row[1], row[3]])?;

    let dc = contour(ctx, "fig2d_contour", &dmap, f.lambda_eff_level_hz / 1e6)?;
    let ec = contour(ctx, "fig2e_contour", &emap, f.cooperativity_level)?;
    tables.extend([dmap, emap, meta(dc), meta(ec)]);
    Ok(FigureOutput { tables, report })
}

/// For each radius, the r values where column 2 of `map` crosses `level`,
/// by linear interpolation between neighbouring grid rows.
fn contour(ctx: &Context, name: &str, map: &ResultTable, level: f64) -> Result<ResultTable> {
    let mut t = ctx
        .table(name, vec![Column::new("radius_nm", "nm"), Column::new("r_crossing", "")])
        .with_run("level", level)
        .with_run("source", map.name());
    for w in map.rows.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a[0] != b[0] {
            continue;
        }
        let (fa, fb) = (a[2] - level, b[2] - level);
        if fa == 0.0 {
            t.push(vec![a[0], a[1]])?;
        } else if fa * fb < 0.0 {
            t.push(vec![a[0], a[1] + (b[1] - a[1]) * fa / (fa - fb)])?;
        }
    }
    Ok(t)
}

/// Explicit list of values for one axis.
struct GridAxisList {
    name: String,
    values: Vec<f64>,
}

impl GridAxisList {
    fn new(name: &str, values: &[f64]) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config(format!("`{name}` list must be non-empty and finite")));
        }
        Ok(Self { name: name.into(), values: values.to_vec() })
    }

    fn from_axis(a: &GridAxis) -> Self {
        Self { name: a.name.clone(), values: a.values() }
    }
}

fn run_grid_lists<F>(lists: &[GridAxisList; 2], workers: usize, point_fn: F) -> Result<GridOutcome>
where
    F: Fn(&[f64]) -> Result<Vec<f64>> + Sync,
{
    // index axes over the lists, then map indices back to values
    let axes: Vec<GridAxis> = lists
        .iter()
        .map(|l| GridAxis::linear(&l.name, 0.0, (l.values.len().max(2) - 1) as f64, l.values.len().max(2)))
        .collect();
    let lookup = |p: &[f64]| -> Option<Vec<f64>> {
        p.iter().zip(lists).map(|(i, l)| l.values.get(*i as usize).copied()).collect()
    };
    let mut out = run_grid(&axes, workers, |p| match lookup(p) {
        Some(v) => point_fn(&v),
        None => Ok(Vec::new()),
    })?;
    // drop padding points from single-valued lists
    out.rows.retain(|r| r.len() > 2);
    out.total = lists.iter().map(|l| l.values.len()).product();
    for row in &mut out.rows {
        let vals = lookup(&row[..2]).expect("kept rows index real values");
        row[..2].copy_from_slice(&vals);
    }
    for fail in &mut out.failures {
        if let Some(v) = lookup(&fail.point) {
            fail.point = v;
        }
    }
    Ok(out)
}

/// |e, 0, 0⟩
pub fn excited_vacuum(layout: &SpaceLayout) -> Result<Vec<crate::linalg::C64>> {
    basis_state(layout, &[0, 0, 0])
}

pub const FIG3_PANELS: [(&str, f64, f64); 4] =
    [("fig3a", 0.0, 5.0), ("fig3b", 3.0, 5.0), ("fig3c", 3.0, 50.0), ("fig3d", 4.5, 50.0)];

/// Squeezed-frame parameters in units of λ with Δ_m = scale·e^r.
pub fn scaled_model(r: f64, scale: f64, g0: f64, delta_nv: f64, res: crate::model::Resonance) -> ModelParams {
    ModelParams::squeezed_resonant(r, scale * r.exp(), g0, delta_nv, res)
}

/// Dissipative run from |e,0,0⟩ on `layout`, sampled on `grid`.
pub fn fig3_spec(
    cfg: &Fig3Config,
    r: f64,
    gamma_k: f64,
    layout: &SpaceLayout,
    grid: Vec<f64>,
) -> Result<EvolutionSpec> {
    let p = scaled_model(r, cfg.detuning_scale, cfg.g0, cfg.delta_nv, cfg.resonance);
    let diss = Dissipation { gamma_k, gamma_s: cfg.gamma_s, gamma_m: cfg.gamma_m, gamma_th: 0.0 };
    Ok(EvolutionSpec {
        hamiltonian: build_hamiltonian_squeezed(&p, layout)?,
        collapse_ops: collapse_operators(Frame::Squeezed, &diss, layout)?,
        initial_state: InitialState::Pure(excited_vacuum(layout)?),
        time_grid: grid,
        tolerances: cfg.tolerances(),
        store_states: false,
        layout: layout.clone(),
    })
}

pub fn fig3_panel(cfg: &Fig3Config, r: f64, gamma_k: f64) -> Result<ConvergedTrajectory> {
    let grid = uniform_grid(cfg.t_end, cfg.points);
    converged_evolve(|layout| fig3_spec(cfg, r, gamma_k, layout, grid.clone()), &cfg.policy())
}

pub fn fig3(cfg: &RunConfig, constants_hash: &str, workers: usize) -> Result<FigureOutput> {
    let f = &cfg.fig3;
    let results: Vec<Result<ConvergedTrajectory>> =
        pool(workers)?.install(|| FIG3_PANELS.par_iter().map(|&(_, r, gk)| fig3_panel(f, r, gk)).collect());
    let mut report = RunReport::new("fig3");
    let mut tables = Vec::new();
    for (&(name, r, gk), res) in FIG3_PANELS.iter().zip(results) {
        report.total_points += 1;
        let run = match res {
            Ok(run) => run,
            Err(e) => {
                report.failures.push(Failure { table: name.into(), point: Some(vec![r, gk]), error: e.to_string() });
                continue;
            }
        };
        if !run.converged {
            report.failures.push(Failure {
                table: name.into(),
                point: Some(vec![r, gk]),
                error: format!(
                    "phonon cutoff not converged at N_b = {}: last change {:e}",
                    run.n_phonon, run.last_change
                ),
            });
        }
        let tr = &run.trajectory;
        let mut t = ResultTable::new(
            name,
            constants_hash,
            vec![
                Column::new("time", "1/lambda"),
                Column::new("spin", ""),
                Column::new("magnon", ""),
                Column::new("phonon", ""),
            ],
        )
        .with_run("fig3", f)
        .with_run("r", r)
        .with_run("gamma_k", gk)
        .with_run("squeezed_delta_m", f.detuning_scale * r.exp())
        .with_run("n_phonon", run.n_phonon)
        .with_run("n_magnon", run.n_magnon)
        .with_run("converged", run.converged)
        .with_run("cutoff_change", run.last_change)
        .with_run("error_estimate", tr.error_estimate);
        for i in 0..tr.times.len() {
            t.push(vec![tr.times[i], tr.spin[i], tr.magnon[i], tr.phonon[i]])?;
        }
        tables.push(t);
    }
    Ok(FigureOutput { tables, report })
}

/// Decay-free entanglement time series from |e,0,0⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementRun {
    pub times: Vec<f64>,
    pub contangle: Vec<f64>,
    pub tangle: Vec<f64>,
    pub leaked_weight: Vec<f64>,
    pub phonon: Vec<f64>,
    pub n_phonon: usize,
    pub converged: bool,
    pub last_change: f64,
}

impl EntanglementRun {
    pub fn max_difference(&self, other: &Self) -> f64 {
        let pairs = [(&self.contangle, &other.contangle), (&self.tangle, &other.tangle), (&self.phonon, &other.phonon)];
        pairs.iter().flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs())).fold(0.0, f64::max)
    }
}

/// Entanglement along the spectrally propagated pure state at one cutoff.
pub fn entanglement_series(cfg: &Fig4Config, r: f64, layout: &SpaceLayout, times: &[f64]) -> Result<EntanglementRun> {
    let p = scaled_model(r, cfg.detuning_scale, cfg.g0, cfg.delta_nv, cfg.resonance);
    let h = build_hamiltonian_squeezed(&p, layout)?;
    let states = SpectralPropagator::new(&h)?.propagate(&excited_vacuum(layout)?, times)?;
    let nb: Vec<f64> = (0..layout.total_dim()).map(|i| layout.levels_of(i)[1] as f64).collect();
    let rows: Vec<Result<[f64; 4]>> = states
        .par_iter()
        .map(|psi| {
            let rho = ComplexMatrix::outer(psi);
            let c = min_residual_contangle(&rho, layout)?;
            let q = project_to_three_qubits(psi, layout)?;
            let tau = if q.leaked_weight < 1.0 { three_tangle_pure(&q.amplitudes)? } else { 0.0 };
            let n: f64 = psi.iter().zip(&nb).map(|(z, n)| z.norm_sqr() * n).sum();
            Ok([c, tau, q.leaked_weight, n])
        })
        .collect();
    let mut run = EntanglementRun {
        times: times.to_vec(),
        contangle: Vec::with_capacity(times.len()),
        tangle: Vec::with_capacity(times.len()),
        leaked_weight: Vec::with_capacity(times.len()),
        phonon: Vec::with_capacity(times.len()),
        n_phonon: layout.n_phonon(),
        converged: false,
        last_change: f64::INFINITY,
    };
    for row in rows {
        let [c, tau, leak, n] = row?;
        run.contangle.push(c);
        run.tangle.push(tau);
        run.leaked_weight.push(leak);
        run.phonon.push(n);
    }
    Ok(run)
}

/// Doubles the phonon cutoff until the series change by less than the
/// configured tolerance.
pub fn fig4_run(cfg: &Fig4Config, r: f64) -> Result<EntanglementRun> {
    let times = uniform_grid(cfg.t_end, cfg.points);
    let mut n_b = cfg.n_phonon;
    let mut prev = entanglement_series(cfg, r, &SpaceLayout::hybrid(n_b, cfg.n_magnon)?, &times)?;
    for _ in 0..cfg.max_refinements {
        n_b *= 2;
        let mut next = entanglement_series(cfg, r, &SpaceLayout::hybrid(n_b, cfg.n_magnon)?, &times)?;
        next.last_change = prev.max_difference(&next);
        next.converged = next.last_change < cfg.convergence_tolerance;
        prev = next;
        if prev.converged {
            break;
        }
    }
    Ok(prev)
}

pub fn fig4(cfg: &RunConfig, constants_hash: &str, workers: usize) -> Result<FigureOutput> {
    let f = &cfg.fig4;
    let mut rs = f.r_values.clone();
    if !rs.contains(&f.r_tangle) {
        rs.push(f.r_tangle);
    }
    let results: Vec<Result<EntanglementRun>> =
        pool(workers)?.install(|| rs.par_iter().map(|&r| fig4_run(f, r)).collect());
    let mut report = RunReport::new("fig4");
    let mut a = ResultTable::new(
        "fig4a",
        constants_hash,
        vec![Column::new("r", ""), Column::new("time", "1/lambda"), Column::new("min_residual_contangle", "")],
    )
    .with_run("fig4", f);
    let mut b = None;
    let mut cutoffs = Vec::new();
    for (&r, res) in rs.iter().zip(results) {
        report.total_points += 1;
        let run = match res {
            Ok(run) => run,
            Err(e) => {
                report.failures.push(Failure { table: "fig4".into(), point: Some(vec![r]), error: e.to_string() });
                continue;
            }
        };
        if !run.converged {
            report.failures.push(Failure {
                table: "fig4".into(),
                point: Some(vec![r]),
                error: format!(
                    "phonon cutoff not converged at N_b = {}: last change {:e}",
                    run.n_phonon, run.last_change
                ),
            });
        }
        cutoffs.push(serde_json::json!({"r": r, "n_phonon": run.n_phonon, "n_magnon": f.n_magnon,
            "converged": run.converged, "cutoff_change": run.last_change}));
        if f.r_values.contains(&r) {
            for (t, c) in run.times.iter().zip(&run.contangle) {
                a.push(vec![r, *t, *c])?;
            }
        }
        if r == f.r_tangle {
            let mut t = ResultTable::new(
                "fig4b",
                constants_hash,
                vec![
                    Column::new("time", "1/lambda"),
                    Column::new("min_residual_contangle", ""),
                    Column::new("three_tangle", ""),
                    Column::new("leaked_weight", ""),
                    Column::new("reliable", "bool"),
                ],
            )
            .with_run("fig4", f)
            .with_run("r", r)
            .with_run("n_phonon", run.n_phonon)
            .with_run("n_magnon", f.n_magnon)
            .with_run("converged", run.converged);
            let mut flagged = 0;
            for i in 0..run.times.len() {
                let leak = run.leaked_weight[i];
                let ok = leak <= crate::entanglement::LEAK_LIMIT;
                flagged += usize::from(!ok);
                t.push(vec![run.times[i], run.contangle[i], run.tangle[i], leak, f64::from(u8::from(ok))])?;
            }
            if flagged > 0 {
                report.warnings.push(format!("fig4b: {flagged} points exceed the leaked-weight limit"));
            }
            b = Some(t);
        }
    }
    a.set_run("cutoffs", &cutoffs);
    let mut tables = vec![a];
    tables.extend(b);
    Ok(FigureOutput { tables, report })
}

pub const SWEEP_COLUMNS: [(&str, &str); 8] = [
    ("lambda_hz", "Hz"),
    ("g0_hz", "Hz"),
    ("lambda_eff_hz", "Hz"),
    ("r", ""),
    ("squeezed_delta_m_hz", "Hz"),
    ("gamma_th_hz", "Hz"),
    ("gamma_m_hz", "Hz"),
    ("cooperativity", ""),
];

/// Derived quantities over a custom grid of physical inputs. Frequencies
/// are reported divided by 2π.
pub fn sweep(ctx: &Context, cfg: &RunConfig) -> Result<FigureOutput> {
    let axes = &cfg.sweep.axis;
    if axes.is_empty() {
        return Err(Error::Config("sweep needs at least one [[sweep.axis]]".into()));
    }
    let out = run_grid(axes, ctx.workers, |p| {
        let overrides: Vec<(&str, f64)> = axes.iter().map(|a| a.name.as_str()).zip(p.iter().copied()).collect();
        let d = ctx.derive_at(&overrides)?;
        Ok(vec![
            d.lambda / TWO_PI,
            d.g0 / TWO_PI,
            d.lambda_eff / TWO_PI,
            d.r,
            d.squeezed_delta_m / TWO_PI,
            d.gamma_th / TWO_PI,
            d.gamma_m / TWO_PI,
            d.cooperativity,
        ])
    })?;
    let mut report = RunReport::new("sweep");
    report.absorb("sweep", &out);
    let mut columns: Vec<Column> = axes.iter().map(|a| Column::new(&a.name, "SI")).collect();
    columns.extend(SWEEP_COLUMNS.iter().map(|(n, u)| Column::new(n, u)));
    let mut t = ctx.table("sweep", columns).with_run("axes", axes);
    fill(&mut t, &out, |row| row.to_vec())?;
    Ok(FigureOutput { tables: vec![t], report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(workers: usize) -> Context {
        Context::from_config(&RunConfig::default(), workers).unwrap()
    }

    fn small_fig2() -> RunConfig {
        let mut cfg = RunConfig::default();
        cfg.fig2.r_count = 6;
        cfg.fig2.radius_count = 5;
        cfg
    }

    #[test]
    fn fig2_tables_and_shapes() {
        let out = fig2(&ctx(2), &small_fig2()).unwrap();
        let names: Vec<&str> = out.tables.iter().map(|t| t.name()).collect();
        assert_eq!(names, ["fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2d_contour", "fig2e_contour"]);
        assert_eq!(out.tables[0].rows.len(), 6);
        assert_eq!(out.tables[1].rows.len(), 18);
        assert_eq!(out.tables[2].rows.len(), 15);
        assert_eq!(out.tables[3].rows.len(), 30);
        assert!(out.report.failures.is_empty());
        for row in &out.tables[0].rows {
            assert!((row[1] - row[0].exp()).abs() < 1e-12);
        }
        // panel (b) radii come back in nm, in list order
        assert_eq!(out.tables[1].rows[0][0], 50.0);
        assert_eq!(out.tables[1].rows[17][0], 200.0);
    }

    #[test]
    fn contour_interpolates_crossings() {
        let c = ctx(1);
        let mut map =
            ResultTable::new("m", "h", vec![Column::new("R", ""), Column::new("r", ""), Column::new("v", "")]);
        for row in [[1.0, 0.0, 0.0], [1.0, 1.0, 2.0], [2.0, 0.0, 5.0], [2.0, 1.0, 6.0]] {
            map.push(row.to_vec()).unwrap();
        }
        let t = contour(&c, "m_contour", &map, 1.0).unwrap();
        assert_eq!(t.rows, vec![vec![1.0, 0.5]]);
    }

    #[test]
    fn failing_points_are_isolated() {
        let mut cfg = small_fig2();
        // temperatures -0.01 and 0 are rejected
        cfg.sweep.axis = vec![GridAxis::linear("temperature", -0.01, 0.03, 5), GridAxis::linear("r", 0.0, 1.0, 2)];
        let out = sweep(&ctx(3), &cfg).unwrap();
        assert_eq!(out.report.total_points, 10);
        assert_eq!(out.report.failures.len(), 4);
        assert_eq!(out.report.failures[0].point, Some(vec![-0.01, 0.0]));
        assert!(out.report.excessive_failures());
        assert_eq!(out.tables[0].rows.len(), 6);
        assert_eq!(out.tables[0].meta.columns.len(), 10);
    }

    #[test]
    fn sweep_requires_axes() {
        assert!(matches!(sweep(&ctx(1), &RunConfig::default()), Err(Error::Config(_))));
    }

    #[test]
    fn short_fig4_run_is_consistent() {
        let cfg = Fig4Config { points: 40, max_refinements: 1, ..Default::default() };
        let run = fig4_run(&cfg, 1.5).unwrap();
        assert_eq!(run.times.len(), 41);
        assert_eq!(run.contangle[0], 0.0);
        assert_eq!(run.tangle[0], 0.0);
        assert_eq!(run.n_phonon, 8);
        assert!(run.converged, "{}", run.last_change);
    }
}
