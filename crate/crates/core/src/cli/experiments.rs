use std::collections::BTreeMap;

use num_complex::Complex64;

use super::config::{ExperimentConfig, ModelKind};
use super::report::{ExperimentReport, Relation};
use crate::error::{Error, Result};
use crate::funcgrid::{sample, Grid, TestFunction};
use crate::hardy::{build_delta_element, time_evolution_break_check};
use crate::rhs::{
    completeness_check, decomposition_dependence_demo, decomposition_seminorm,
    delta_star_pullback_equivalence, infimum_seminorm, intersection_relation_check, pair_free,
    reference, s_independence_pathology, sandwich_overlap, KetFunctional, StateVector,
};
use crate::scattering::{
    find_resonance_pole, fit_decay_rate, gamow_background_split, survival_amplitude, FormFactor,
    FriedrichsModel, RationalSMatrix, ScatteringModel,
};
use crate::transforms::{proposition_check, Sign};

pub const COMMANDS: [&str; 10] = [
    "proposition",
    "delta",
    "timeevo",
    "friedrichs-pole",
    "friedrichs-survival",
    "kets-sandwich",
    "kets-relation",
    "kets-pathology",
    "free-ket",
    "seminorm",
];

/// Default thresholds per command; `--tol name=value` overrides them.
fn default_tolerances(command: &str) -> &'static [(&'static str, f64)] {
    match command {
        "proposition" => &[("vanishing_mass", 1e-6), ("surviving_deviation", 1e-6)],
        "delta" => &[("positive_axis", 1e-10), ("gap_relative", 1e-8)],
        "timeevo" => &[("ratio", 1e-2), ("bounded", 1e-6)],
        "friedrichs-pole" => &[("oracle_factor", 0.1), ("scaling_factor", 2.0)],
        "friedrichs-survival" => &[("gamma_fit", 2e-2), ("gamow_ratio", 1e-10), ("reassembly", 1e-12)],
        "kets-sandwich" => &[("sandwich", 1e-10), ("parseval", 1e-10)],
        "kets-relation" => &[("quality_factor", 10.0), ("free_defect", 1e-12), ("pullback", 1e-10)],
        "kets-pathology" => &[
            ("predicted_gap", 1e-10),
            ("min_gap", 1e-3),
            ("free_gap", 1e-10),
            ("s_forgetting", 1e-10),
            ("contrast", 1e-3),
        ],
        "free-ket" => &[("free_gap", 1e-10)],
        "seminorm" => &[("bound_slack", 1e-8)],
        _ => &[],
    }
}

struct Setup {
    full: Grid,
    half: Grid,
    rational: RationalSMatrix,
    rational_alt: RationalSMatrix,
    friedrichs: FriedrichsModel,
    tol: BTreeMap<&'static str, f64>,
}

impl Setup {
    fn new(command: &str, cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let known = default_tolerances(command);
        if let Some(name) = cfg
            .tol_overrides
            .keys()
            .find(|k| !known.iter().any(|(n, _)| n == k))
        {
            return Err(Error::Configuration(format!(
                "`{command}` has no tolerance named `{name}`"
            )));
        }
        let tol = known
            .iter()
            .map(|&(n, d)| (n, cfg.tol_overrides.get(n).copied().unwrap_or(d)))
            .collect();
        let full = Grid::full_line(cfg.grid_n, cfg.grid_span)?;
        let m = &cfg.model;
        let needs = |lists: &[(&str, &Vec<f64>)]| -> Result<()> {
            for (name, l) in lists {
                if l.is_empty() {
                    return Err(Error::Configuration(format!("`{command}` needs a nonempty {name} list")));
                }
            }
            Ok(())
        };
        match command {
            "timeevo" => needs(&[("t", &cfg.t_list), ("alpha", &cfg.alpha_list)])?,
            "seminorm" => needs(&[("s_grid", &cfg.s_grid)])?,
            "friedrichs-pole" | "friedrichs-survival" if m.lambda == 0.0 => {
                return Err(Error::Configuration("a resonance needs lambda != 0".into()))
            }
            _ => {}
        }
        Ok(Self {
            half: full.positive_half()?,
            full,
            rational: RationalSMatrix::breit_wigner(m.e_r, m.gamma)?,
            rational_alt: RationalSMatrix::breit_wigner(m.e_r, m.gamma_alt)?,
            friedrichs: FriedrichsModel::new(m.omega0, m.lambda, FormFactor::SqrtRational)?,
            tol,
        })
    }

    fn tol(&self, name: &str) -> f64 {
        self.tol[name]
    }
}

/// Runs `command`. Returns `Err` only for usage and validation problems;
/// numerical failures inside the experiment become a failing `completed`
/// verdict.
pub fn run(command: &str, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if !COMMANDS.contains(&command) {
        return Err(Error::Configuration(format!("unknown command `{command}`")));
    }
    let setup = Setup::new(command, cfg)?;
    let mut report = ExperimentReport::new(command, cfg);
    let outcome = match command {
        "proposition" => proposition(&setup, &mut report),
        "delta" => delta(&setup, &mut report),
        "timeevo" => timeevo(&setup, cfg, &mut report),
        "friedrichs-pole" => friedrichs_pole(&setup, &mut report),
        "friedrichs-survival" => friedrichs_survival(&setup, &mut report),
        "kets-sandwich" => kets_sandwich(&setup, cfg, &mut report),
        "kets-relation" => kets_relation(&setup, cfg, &mut report),
        "kets-pathology" => kets_pathology(&setup, cfg, &mut report),
        "free-ket" => free_ket(&setup, cfg, &mut report),
        "seminorm" => seminorm(&setup, cfg, &mut report),
        _ => unreachable!("command list checked above"),
    };
    let completed = match outcome {
        Ok(()) => 1.0,
        Err(e) => {
            eprintln!("{command}: {e}");
            0.0
        }
    };
    report.check("completed", completed, Relation::AtLeast, 1.0);
    Ok(report)
}

fn proposition(s: &Setup, r: &mut ExperimentReport) -> Result<()> {
    for k in 0..3 {
        let f = sample(&TestFunction::negative_support(k), &s.full)?;
        let mut halves = Vec::new();
        for (sign, tag) in [(Sign::Plus, "plus"), (Sign::Minus, "minus")] {
            let p = proposition_check(&f, sign)?;
            halves.push(p.vanishing);
            r.check(format!("vanishing_mass[k={k},{tag}]"), p.vanishing_mass_ratio, Relation::Below, s.tol("vanishing_mass"));
            r.check(format!("surviving_deviation[k={k},{tag}]"), p.surviving_deviation, Relation::Below, s.tol("surviving_deviation"));
        }
        let swapped = halves[0] != halves[1];
        r.check(format!("sign_swaps_half[k={k}]"), f64::from(u8::from(swapped)), Relation::AtLeast, 1.0);
    }
    Ok(())
}

fn delta(s: &Setup, r: &mut ExperimentReport) -> Result<()> {
    for k in 0..3 {
        let f = sample(&TestFunction::negative_support(k), &s.full)?;
        let d = build_delta_element(&f)?;
        r.check(format!("positive_axis_disagreement[k={k}]"), d.positive_axis_disagreement(), Relation::AtMost, s.tol("positive_axis"));
        let rel = (d.negative_axis_gap() / (2.0 * f.norm()) - 1.0).abs();
        r.check(format!("negative_gap_relative_error[k={k}]"), rel, Relation::AtMost, s.tol("gap_relative"));
        r.metric(format!("negative_axis_gap[k={k}]"), d.negative_axis_gap());
    }
    Ok(())
}

fn timeevo(s: &Setup, cfg: &ExperimentConfig, r: &mut ExperimentReport) -> Result<()> {
    let d = build_delta_element(&sample(&TestFunction::negative_support(0), &s.full)?)?;
    for &t in &cfg.t_list {
        let b = time_evolution_break_check(&d, t, &cfg.alpha_list)?;
        for ((a, ratio), expected) in b.alphas.iter().zip(&b.ratios).zip(&b.expected) {
            r.metric(format!("ratio[t={t},alpha={a}]"), *ratio);
            r.check(format!("ratio_relative_error[t={t},alpha={a}]"), (ratio / expected - 1.0).abs(), Relation::AtMost, s.tol("ratio"));
        }
        let top = b.upper_damped.iter().copied().fold(0.0, f64::max);
        r.check(format!("bounded_excess[t={t}]"), top / b.upper_reference - 1.0, Relation::AtMost, s.tol("bounded"));
    }
    Ok(())
}

fn pole_error(m: &FriedrichsModel) -> Result<(Complex64, f64)> {
    let oracle = m.perturbative_pole()?;
    let found = find_resonance_pole(m, oracle)?;
    Ok((found.z_r, (found.z_r - oracle).norm()))
}

fn friedrichs_pole(s: &Setup, r: &mut ExperimentReport) -> Result<()> {
    let m = &s.friedrichs;
    let oracle = m.perturbative_pole()?;
    let found = find_resonance_pole(m, oracle)?;
    let lam2 = m.lambda() * m.lambda();
    r.metric("z_r_re", found.z_r.re);
    r.metric("z_r_im", found.z_r.im);
    r.metric("oracle_re", oracle.re);
    r.metric("oracle_im", oracle.im);
    r.metric("iterations", found.iterations as f64);
    r.check("residual_over_limit", found.residual / (1e-10 * (1.0 + found.z_r.norm())), Relation::Below, 1.0);
    r.check("oracle_deviation", (found.z_r - oracle).norm(), Relation::AtMost, s.tol("oracle_factor") * lam2);
    let half = FriedrichsModel::new(m.omega0(), 0.5 * m.lambda(), m.form_factor())?;
    let (_, e_full) = pole_error(m)?;
    let (_, e_half) = pole_error(&half)?;
    let ratio = e_full / e_half;
    let f = s.tol("scaling_factor");
    r.check("scaling_ratio_low", ratio, Relation::AtLeast, 16.0 / f);
    r.check("scaling_ratio_high", ratio, Relation::AtMost, 16.0 * f);
    Ok(())
}

fn friedrichs_survival(s: &Setup, r: &mut ExperimentReport) -> Result<()> {
    let m = &s.friedrichs;
    let pole = find_resonance_pole(m, m.perturbative_pole()?)?;
    let gamma = pole.gamma;
    let samples = (0..16)
        .map(|i| {
            let t = (1.0 + 3.0 * f64::from(i) / 15.0) / gamma;
            Ok((t, survival_amplitude(m, t)?.norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_decay_rate(&samples)?;
    r.metric("gamma_pole", gamma);
    r.metric("gamma_fit", fit);
    r.check("gamma_fit_relative_error", (fit / gamma - 1.0).abs(), Relation::AtMost, s.tol("gamma_fit"));
    let s0 = gamow_background_split(m, &pole, 0.0)?;
    let s1 = gamow_background_split(m, &pole, 1.0 / gamma)?;
    let s3 = gamow_background_split(m, &pole, 3.0 / gamma)?;
    let ratio = s1.gamow.norm() / s0.gamow.norm();
    r.metric("gamow_modulus_ratio", ratio);
    r.check("gamow_ratio_error", (ratio - (-0.5f64).exp()).abs(), Relation::AtMost, s.tol("gamow_ratio"));
    let reassembly = [s0, s1, s3]
        .iter()
        .map(|x| (x.gamow + x.background - x.amplitude).norm())
        .fold(0.0, f64::max);
    r.check("reassembly_error", reassembly, Relation::AtMost, s.tol("reassembly"));
    r.metric("background_over_gamow[t=3/gamma]", s3.background.norm() / s3.gamow.norm());
    Ok(())
}

fn models(s: &Setup) -> [(&'static str, ScatteringModel); 2] {
    [
        ("rational", s.rational.clone().into()),
        ("friedrichs", s.friedrichs.clone().into()),
    ]
}

fn selected_model(s: &Setup, cfg: &ExperimentConfig) -> ScatteringModel {
    match cfg.model.kind {
        ModelKind::Rational => s.rational.clone().into(),
        ModelKind::Friedrichs => s.friedrichs.clone().into(),
    }
}

fn kets_sandwich(s: &Setup, _cfg: &ExperimentConfig, r: &mut ExperimentReport) -> Result<()> {
    for (name, model) in models(s) {
        let states = reference::reference_states(&s.full, &model)?;
        let mut worst: f64 = 0.0;
        for psi in &states {
            for phi in &states {
                worst = worst.max(sandwich_overlap(psi, phi)?.defect);
            }
        }
        let parseval = states
            .iter()
            .map(completeness_check)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        r.check(format!("sandwich_defect[{name}]"), worst, Relation::Below, s.tol("sandwich"));
        r.check(format!("parseval_defect[{name}]"), parseval, Relation::Below, s.tol("parseval"));
    }
    Ok(())
}

/// Five grid energies spread over `(0, 4]`.
fn probe_energies(half: &Grid) -> Vec<f64> {
    let n = half.len();
    [n / 400, n / 100, n / 50, n / 25, n / 12]
        .iter()
        .map(|&i| half.point(i.min(n - 1)))
        .collect()
}

fn kets_relation(s: &Setup, cfg: &ExperimentConfig, r: &mut ExperimentReport) -> Result<()> {
    let model: ScatteringModel = s.rational.clone().into();
    let mut members = vec![("pole".to_string(), reference::reference_xi(&s.full, &s.rational)?)];
    for k in 0..2 {
        let d = build_delta_element(&sample(&TestFunction::negative_support(k), &s.full)?)?;
        members.push((format!("delta{k}"), StateVector::xi_from_delta(&d, model.clone())?));
    }
    for (name, xi) in &members {
        let defect = intersection_relation_check(xi)?;
        r.metric(format!("relation_defect[{name}]"), defect);
        r.metric(format!("quality[{name}]"), xi.quality());
        r.check(format!("defect_minus_bound[{name}]"), defect - s.tol("quality_factor") * xi.quality(), Relation::AtMost, 0.0);
    }
    let d = build_delta_element(&sample(&TestFunction::negative_support(0), &s.full)?)?;
    let free = StateVector::xi_from_delta(&d, ScatteringModel::free())?;
    r.check("relation_defect[free]", intersection_relation_check(&free)?, Relation::Below, s.tol("free_defect"));
    let states = reference::reference_states(&s.full, &selected_model(s, cfg))?;
    let mut worst: f64 = 0.0;
    for st in &states {
        for e0 in probe_energies(&s.half) {
            worst = worst.max(delta_star_pullback_equivalence(e0, st)?);
        }
    }
    r.check("pullback_difference", worst, Relation::Below, s.tol("pullback"));
    Ok(())
}

fn kets_pathology(s: &Setup, cfg: &ExperimentConfig, r: &mut ExperimentReport) -> Result<()> {
    let v = reference::seeded_decomposed(&s.full, &s.rational, cfg.seed)?;
    let z = s.rational.poles()[0];
    let demo = decomposition_dependence_demo(&v, KetFunctional::Gamow(z), 1.0)?;
    r.metric("gamow_gap", demo.gap);
    r.metric("gamow_predicted_gap", demo.predicted_gap);
    r.check("gamow_gap_vs_prediction", (demo.gap - demo.predicted_gap).abs(), Relation::Below, s.tol("predicted_gap"));
    r.check("gamow_gap_size", demo.gap, Relation::Above, s.tol("min_gap"));
    let e0 = s.half.point(s.half.len() / 24);
    let (value, gap) = pair_free(&v, e0)?;
    r.metric("free_value_abs", value.norm());
    r.check("free_gap", gap, Relation::Below, s.tol("free_gap"));
    let states = reference::reference_states(&s.full, &ScatteringModel::free())?;
    let p = s_independence_pathology(
        states[0].in_rep(),
        states[2].in_rep(),
        &s.rational.clone().into(),
        &s.rational_alt.clone().into(),
    )?;
    r.check("s_forgetting_gap", p.gap, Relation::Below, s.tol("s_forgetting"));
    r.check("fixed_out_contrast", p.contrast, Relation::Above, s.tol("contrast"));
    Ok(())
}

fn free_ket(s: &Setup, cfg: &ExperimentConfig, r: &mut ExperimentReport) -> Result<()> {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let v = reference::seeded_decomposed(&s.full, &s.rational, cfg.seed.wrapping_add(i))?;
        for e0 in probe_energies(&s.half) {
            worst = worst.max(pair_free(&v, e0)?.1);
        }
    }
    r.check("free_gap[rational]", worst, Relation::Below, s.tol("free_gap"));
    let v = reference::seeded_decomposed_free(&s.full, cfg.seed)?;
    let mut worst: f64 = 0.0;
    for e0 in probe_energies(&s.half) {
        worst = worst.max(decomposition_dependence_demo(&v, KetFunctional::EPlus(e0), 1.0)?.gap);
        worst = worst.max(pair_free(&v, e0)?.1);
    }
    r.check("free_gap[free_model]", worst, Relation::Below, s.tol("free_gap"));
    Ok(())
}

fn seminorm(s: &Setup, cfg: &ExperimentConfig, r: &mut ExperimentReport) -> Result<()> {
    let mut sorted = cfg.s_grid.clone();
    sorted.sort_by(f64::total_cmp);
    let step = sorted.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let (lo0, hi0) = (sorted[0], sorted[sorted.len() - 1]);
    let mut worst_bound = f64::NEG_INFINITY;
    let mut worst_arg: f64 = 0.0;
    for i in 0..10 {
        let v = reference::seeded_decomposed(&s.full, &s.rational, cfg.seed.wrapping_add(i))?;
        let (p_inf, arg) = infimum_seminorm(&v, &cfg.s_grid)?;
        let sum = v.plus_part().in_rep().add(v.minus_part().in_rep())?;
        let peak = (0..sum.values().len())
            .max_by(|&a, &b| sum.values()[a].norm().total_cmp(&sum.values()[b].norm()))
            .unwrap_or(0);
        let e0 = s.half.point(peak);
        worst_bound = worst_bound.max(pair_free(&v, e0)?.0.norm() - p_inf);
        let (mut lo, mut hi) = (lo0, hi0);
        for _ in 0..200 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if decomposition_seminorm(&v, 0, m1)? <= decomposition_seminorm(&v, 0, m2)? {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        worst_arg = worst_arg.max((0.5 * (lo + hi) - arg).abs());
    }
    r.check("bound_margin", worst_bound, Relation::AtMost, s.tol("bound_slack"));
    r.metric("grid_step", step);
    r.check("argmin_offset", worst_arg, Relation::AtMost, step + 1e-9);
    Ok(())
}
