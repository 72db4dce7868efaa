//! Reference checks reproducing the published eigenvalues, bands and invariants.
//!
//! Each criterion returns a [`CriterionReport`]; a numerical error inside a
//! criterion is kept in `error` instead of being turned into a plain failure.

use std::fmt;

use rand::{Rng, SeedableRng};

use crate::basis::{BasisSet, BasisSpec, OrthoMethod, Parity};
use crate::error::{Error, Result};
use crate::feshbach::{partition, solve_selfconsistent, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use crate::grid::Axis;
use crate::hermite::hermite_functions;
use crate::kernels::{
    christoffel_darboux, crest_ratio, cut_weight_curve, identity_direct, r2_kernel_compact_raw,
    r2_kernel_direct, render_dual_identity, render_kernel,
};
use crate::operators::{
    default_rule, gauss_hermite_rule, hamiltonian_matrix, kinetic_matrix, local_potential_matrix,
    oscillator_matrix, position_squared_matrix, OperatorMatrix, PotentialSpec,
};
use crate::oracle::{fd_ground_state, OraclePotential, DEFAULT_HALF_WIDTH, DEFAULT_NPOINTS};
use crate::spectral::{eigen_symmetric, peak_metrics, synthesize};

pub const CRITERIA: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub oracle_half_width: f64,
    pub oracle_npoints: usize,
    /// Added to every diagonal entry of the r² matrix; zero for the reference run.
    pub r2_perturbation: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            oracle_half_width: DEFAULT_HALF_WIDTH,
            oracle_npoints: DEFAULT_NPOINTS,
            r2_perturbation: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub measured: String,
    pub tolerance: String,
    pub pass: bool,
    pub error: Option<Error>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => write!(f, "[{verdict}] {:>2} {}: error: {e}", self.id, self.title),
            None => write!(
                f,
                "[{verdict}] {:>2} {}: {} (required {})",
                self.id, self.title, self.measured, self.tolerance
            ),
        }
    }
}

struct Outcome {
    measured: String,
    tolerance: String,
    pass: bool,
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn inside(x: f64, lo: f64, hi: f64) -> bool {
    x >= lo && x <= hi
}

const TOY: [(f64, f64); 2] = [(1.0, 9.0), (-1.0, 1.0)];
const DEEP: [(f64, f64); 2] = [(10.0, 9.0), (-5.0, 1.0)];

fn toy() -> PotentialSpec {
    PotentialSpec::new(TOY.to_vec()).expect("valid potential")
}

fn deep() -> PotentialSpec {
    PotentialSpec::new(DEEP.to_vec()).expect("valid potential")
}

fn ho(n: usize) -> Result<BasisSet> {
    BasisSpec::harmonic_oscillator(n).realize()
}

fn ho_even(n: usize) -> Result<BasisSet> {
    BasisSpec::harmonic_oscillator(n).with_parity(Parity::Even).realize()
}

fn ground(h: &OperatorMatrix) -> Result<f64> {
    Ok(eigen_symmetric(h)?.ground())
}

fn oracle_energy(v: &PotentialSpec, settings: &Settings) -> Result<f64> {
    Ok(fd_ground_state(&OraclePotential::from(v), settings.oracle_half_width, settings.oracle_npoints)?.eigenvalue)
}

fn r2_matrix(basis: &BasisSet, settings: &Settings) -> OperatorMatrix {
    let mut r2 = position_squared_matrix(basis);
    for i in 0..r2.len() {
        r2.entries[(i, i)] += settings.r2_perturbation;
    }
    r2
}

fn c1_oracle(settings: &Settings) -> Result<Outcome> {
    let a = oracle_energy(&toy(), settings)?;
    let b = oracle_energy(&deep(), settings)?;
    Ok(Outcome {
        measured: format!("toy {a:.8}, deep {b:.8}"),
        tolerance: "-0.1720763 and -0.7342256, each ±1e-6".into(),
        pass: within(a, -0.172_076_3, 1e-6) && within(b, -0.734_225_6, 1e-6),
    })
}

fn c2_galerkin(_: &Settings) -> Result<Outcome> {
    let v = toy();
    let e50 = ground(&hamiltonian_matrix(&ho_even(50)?, &v)?)?;
    let e100 = ground(&hamiltonian_matrix(&ho_even(100)?, &v)?)?;
    Ok(Outcome {
        measured: format!("e50 {e50:.8}, e100 {e100:.8}"),
        tolerance: "-0.171874 and -0.172071, each ±5e-6".into(),
        pass: within(e50, -0.171_874, 5e-6) && within(e100, -0.172_071, 5e-6),
    })
}

fn feshbach_setup() -> Result<crate::feshbach::FeshbachPartition> {
    // 26 even states: degrees 0, 2, …, 50
    let h = hamiltonian_matrix(&ho_even(51)?, &deep())?;
    partition(&h, 5, 26)
}

fn c3_feshbach(_: &Settings) -> Result<Outcome> {
    let part = feshbach_setup()?;
    let (full, _) = part.full_ground()?;
    let php = part.php_ground()?;
    let sc = solve_selfconsistent(&part, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?;
    let gap = (sc.energy - full).abs();
    Ok(Outcome {
        measured: format!(
            "P+Q {full:.7}, PhP {php:.7}, self-consistent gap {gap:.2e} after {} iterations",
            sc.iterations
        ),
        tolerance: "-0.7342 ±1e-4, -0.6897 ±1e-4, gap < 1e-8".into(),
        pass: within(full, -0.7342, 1e-4) && within(php, -0.6897, 1e-4) && gap < 1e-8,
    })
}

fn c4_compact(_: &Settings) -> Result<Outcome> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20_241_018);
    let mut worst_cd = 0.0f64;
    for k in 0..1000 {
        let n = rng.random_range(1..=200usize);
        let half = 1.5 * (n as f64).sqrt() + 2.0;
        let r = rng.random_range(-half..half);
        let s = if k % 4 == 0 {
            r + rng.random_range(-1e-6..1e-6)
        } else {
            rng.random_range(-half..half)
        };
        let d = (christoffel_darboux(n, r, s)? - identity_direct(n, r, s)).abs();
        worst_cd = worst_cd.max(d);
    }
    let mut worst_r2 = 0.0f64;
    for k in 0..300 {
        let n = [5, 50, 200][k % 3];
        let half = 1.5 * (n as f64).sqrt() + 2.0;
        let r = rng.random_range(-half..half);
        let s = rng.random_range(-half..half);
        let hr = hermite_functions(r, n + 2);
        let hs = hermite_functions(s, n + 2);
        let nf = n as f64;
        let corr = hr[n] * (nf * (nf - 1.0)).sqrt() / 2.0 * hs[n - 2]
            + hr[n + 1] * (nf * (nf + 1.0)).sqrt() / 2.0 * hs[n - 1];
        let resid = r * r * identity_direct(n, r, s) - (r2_kernel_direct(n, r, s) + corr);
        let compact = r2_kernel_compact_raw(n, r, s)? - r2_kernel_direct(n, r, s);
        worst_r2 = worst_r2.max(resid.abs()).max(compact.abs());
    }
    Ok(Outcome {
        measured: format!("identity residual {worst_cd:.2e}, r² residual {worst_r2:.2e}"),
        tolerance: "both < 1e-9".into(),
        pass: worst_cd < 1e-9 && worst_r2 < 1e-9,
    })
}

fn c5_cut_weight(_: &Settings) -> Result<Outcome> {
    let a = cut_weight_curve(&ho(50)?, None, Axis::symmetric(5.0, 0.02)?).band();
    let b = cut_weight_curve(&ho(200)?, None, Axis::symmetric(10.0, 0.02)?).band();
    let (a_lo, a_hi) = (1.0 - a.0, a.1 - 1.0);
    let (b_lo, b_hi) = (1.0 - b.0, b.1 - 1.0);
    Ok(Outcome {
        measured: format!(
            "N=50 [{:.5}, {:.5}], N=200 [{:.5}, {:.5}]",
            a.0, a.1, b.0, b.1
        ),
        tolerance: "N=50 deviations in [0.05, 0.10], N=200 in [0.02, 0.05], N=200 narrower".into(),
        pass: inside(a_lo, 0.05, 0.10)
            && inside(a_hi, 0.05, 0.10)
            && inside(b_lo, 0.02, 0.05)
            && inside(b_hi, 0.02, 0.05)
            && (b.1 - b.0) < (a.1 - a.0),
    })
}

fn c6_kinetic_weight(_: &Settings) -> Result<Outcome> {
    let b50 = ho(50)?;
    let b200 = ho(200)?;
    let a = cut_weight_curve(&b50, Some(&kinetic_matrix(&b50)), Axis::symmetric(5.0, 0.02)?).half_amplitude();
    let b = cut_weight_curve(&b200, Some(&kinetic_matrix(&b200)), Axis::symmetric(10.0, 0.02)?)
        .half_amplitude();
    Ok(Outcome {
        measured: format!("N=50 {a:.4}, N=200 {b:.4}"),
        tolerance: "N=50 in [3, 5], N=200 in [6, 10], growing".into(),
        pass: inside(a, 3.0, 5.0) && inside(b, 6.0, 10.0) && b > a,
    })
}

fn c7_r2(settings: &Settings) -> Result<Outcome> {
    let mut worst_origin = 0.0f64;
    for n in [10, 50, 200] {
        let b = ho(n)?;
        let cr = crest_ratio(&b, &r2_matrix(&b, settings), 0.0)?;
        worst_origin = worst_origin.max((cr - 0.5).abs());
    }
    let mut sums = [0.0; 3];
    let count = 51;
    for n in 150..=200 {
        let b = ho(n)?;
        let r2 = r2_matrix(&b, settings);
        for (k, r) in [1.0, 2.0, 3.0].into_iter().enumerate() {
            sums[k] += crest_ratio(&b, &r2, r)?;
        }
    }
    let mut worst_avg = 0.0f64;
    for (k, r) in [1.0f64, 2.0, 3.0].into_iter().enumerate() {
        let target = r * r + 0.5;
        worst_avg = worst_avg.max(((sums[k] / count as f64) - target).abs() / target);
    }
    let b50 = ho(50)?;
    let b200 = ho(200)?;
    let l50 = eigen_symmetric(&r2_matrix(&b50, settings))?.ground();
    let l200 = eigen_symmetric(&r2_matrix(&b200, settings))?.ground();
    Ok(Outcome {
        measured: format!(
            "|CR(0) − 0.5| {worst_origin:.2e}, averaged CR relative error {:.3}%, λ50 {l50:.5}, λ200 {l200:.5}",
            100.0 * worst_avg
        ),
        tolerance: "CR(0) ±1e-9, average within 5%, 0.0244 ±5e-4, 0.0062 ±2e-4".into(),
        pass: worst_origin < 1e-9
            && worst_avg < 0.05
            && within(l50, 0.0244, 5e-4)
            && within(l200, 0.0062, 2e-4),
    })
}

/// max |CR(r) − v(r)| / max |v| on |r| ≤ 3.
pub fn crest_ratio_error(n: usize, v: &PotentialSpec) -> Result<f64> {
    let b = ho(n)?;
    let m = local_potential_matrix(&b, v, &default_rule(&b)?)?;
    let pts = Axis::symmetric(3.0, 0.01)?.points();
    let mut worst = 0.0f64;
    for &r in &pts {
        worst = worst.max((crest_ratio(&b, &m, r)? - v.eval(r)).abs());
    }
    Ok(worst / v.max_abs_on(&pts))
}

fn c8_potential_cr(_: &Settings) -> Result<Outcome> {
    let attractive = PotentialSpec::gaussian(-1.0, 1.0)?;
    let core = PotentialSpec::gaussian(1.0, 9.0)?;
    let a50 = crest_ratio_error(50, &attractive)?;
    let a200 = crest_ratio_error(200, &attractive)?;
    let c50 = crest_ratio_error(50, &core)?;
    let c200 = crest_ratio_error(200, &core)?;
    Ok(Outcome {
        measured: format!("-e^(-r²): {a50:.4} / {a200:.4}; e^(-9r²): {c50:.4} / {c200:.4}"),
        tolerance: "[0.03,0.09] / [0.015,0.05] decreasing; [0.10,0.25] / [0.04,0.12]".into(),
        pass: inside(a50, 0.03, 0.09)
            && inside(a200, 0.015, 0.05)
            && a200 < a50
            && inside(c50, 0.10, 0.25)
            && inside(c200, 0.04, 0.12),
    })
}

fn c9_shifted(_: &Settings) -> Result<Outcome> {
    let b = BasisSpec::shifted_gaussians(50, 1.0, 1.0).realize()?;
    let s = eigen_symmetric(&oscillator_matrix(&b))?;
    let tight = [1.00043, 3.00005, 5.05263, 7.0184];
    let loose = [9.6656, 11.3889, 15.7908];
    let mut worst_tight = 0.0f64;
    let mut worst_loose = 0.0f64;
    for (k, e) in tight.iter().enumerate() {
        worst_tight = worst_tight.max(((s.eigenvalues[k] - e) / e).abs());
    }
    for (k, e) in loose.iter().enumerate() {
        worst_loose = worst_loose.max(((s.eigenvalues[k + 4] - e) / e).abs());
    }
    let shown: Vec<String> = s.eigenvalues[..7].iter().map(|x| format!("{x:.6}")).collect();
    Ok(Outcome {
        measured: format!(
            "{{{}}}, relative errors {worst_tight:.1e} / {worst_loose:.1e}",
            shown.join(", ")
        ),
        tolerance: "first four within 1e-3, next three within 5e-2 (relative)".into(),
        pass: worst_tight < 1e-3 && worst_loose < 5e-2,
    })
}

fn c10_pairs(settings: &Settings) -> Result<Outcome> {
    let b = BasisSpec::symmetric_pairs(25, 0.5, 0.5).realize()?;
    let e25 = ground(&hamiltonian_matrix(&b, &toy())?)?;
    let e50 = ground(&hamiltonian_matrix(&ho_even(50)?, &toy())?)?;
    let exact = oracle_energy(&toy(), settings)?;
    let (lo, hi) = cut_weight_curve(&b, None, Axis::symmetric(8.0, 0.02)?).band();
    Ok(Outcome {
        measured: format!(
            "ground {e25:.7} (oscillator {e50:.7}, exact {exact:.7}), weight [{lo:.4}, {hi:.4}]"
        ),
        tolerance: "-0.17194 ±5e-5, closer than oscillator, weight within [0.955, 1.045]".into(),
        pass: within(e25, -0.17194, 5e-5)
            && (e25 - exact).abs() < (e50 - exact).abs()
            && lo >= 0.955
            && hi <= 1.045,
    })
}

/// Height of the lowest kinetic eigenfunction on the default axis.
pub fn flat_wave_height(n: usize) -> Result<f64> {
    let b = ho(n)?;
    let s = eigen_symmetric(&kinetic_matrix(&b))?;
    let half = Axis::trust_region(n).max;
    let wave = synthesize(&b, &s.vector(0), &Axis::symmetric(half, 0.01)?)?;
    Ok(peak_metrics(&wave)?.max_abs)
}

fn c11_flat_wave(_: &Settings) -> Result<Outcome> {
    let a = flat_wave_height(50)?;
    let b = flat_wave_height(200)?;
    let ratio = b / a;
    Ok(Outcome {
        measured: format!("N=50 {a:.4}, N=200 {b:.4}, ratio {ratio:.3}"),
        tolerance: "[0.30, 0.34], [0.20, 0.24], ratio [0.64, 0.74]".into(),
        pass: inside(a, 0.30, 0.34) && inside(b, 0.20, 0.24) && inside(ratio, 0.64, 0.74),
    })
}

fn c12_diagonal(_: &Settings) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for n in [10, 50, 200] {
        let s = eigen_symmetric(&oscillator_matrix(&ho(n)?))?;
        for (i, e) in s.eigenvalues.iter().enumerate() {
            worst = worst.max((e - (2 * i + 1) as f64).abs());
        }
    }
    Ok(Outcome {
        measured: format!("max deviation {worst:.2e}"),
        tolerance: "< 1e-10".into(),
        pass: worst < 1e-10,
    })
}

fn c13_properties(settings: &Settings) -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut record = |name: &str, value: f64, limit: f64| {
        notes.push(format!("{name} {value:.1e}"));
        pass &= value < limit;
    };

    // exchange and point-reflection symmetry
    let mut sym = 0.0f64;
    for (b, axis) in [
        (ho(50)?, Axis::symmetric(6.0, 0.1)?),
        (BasisSpec::symmetric_pairs(10, 0.5, 0.5).realize()?, Axis::symmetric(5.0, 0.1)?),
    ] {
        for m in [None, Some(kinetic_matrix(&b)), Some(position_squared_matrix(&b))] {
            let k = render_kernel(&b, m.as_ref(), axis, axis)?;
            sym = sym.max(k.exchange_asymmetry()).max(k.reflection_asymmetry());
        }
    }
    record("symmetry", sym, 1e-10);

    // idempotency and reproducing property
    let mut idem = 0.0f64;
    let mut repro = 0.0f64;
    for n in [5, 50] {
        let b = ho(n)?;
        let rule = gauss_hermite_rule(2 * n + 20)?;
        let chi_t = b.values_on(&rule.nodes);
        for &(r, s) in &[(0.3, -1.1), (2.0, 2.0), (-3.5, 0.7)] {
            let cr = b.values_at(r);
            let cs = b.values_at(s);
            let mut acc = 0.0;
            for (k, w) in rule.plain_weights.iter().enumerate() {
                let col = chi_t.column(k);
                acc += w * cr.dot(&col) * col.dot(&cs);
            }
            idem = idem.max((acc - cr.dot(&cs)).abs());
            for k in 0..n {
                let mut acc = 0.0;
                for (j, w) in rule.plain_weights.iter().enumerate() {
                    let col = chi_t.column(j);
                    acc += w * cr.dot(&col) * col[k];
                }
                repro = repro.max((acc - cr[k]).abs());
            }
        }
    }
    record("idempotency", idem, 1e-8);
    record("reproducing", repro, 1e-8);

    // dual pairs versus orthonormal functions
    let mut dual = 0.0f64;
    let axis = Axis::symmetric(10.0, 0.5)?;
    for spec in [
        BasisSpec::shifted_gaussians(50, 1.0, 1.0),
        BasisSpec::symmetric_pairs(25, 0.5, 0.5),
    ] {
        let b = spec.realize()?;
        let a = render_kernel(&b, None, axis, axis)?;
        let d = render_dual_identity(&b, axis, axis)?;
        dual = dual.max((a.values - d.values).amax());
    }
    record("dual", dual, 1e-8);

    // orthonormalization invariance
    let spec = BasisSpec::shifted_gaussians(50, 1.0, 1.0);
    let l = eigen_symmetric(&oscillator_matrix(&spec.realize()?))?;
    let g = eigen_symmetric(&oscillator_matrix(&spec.with_ortho(OrthoMethod::GramSchmidt).realize()?))?;
    let invariance = l
        .eigenvalues
        .iter()
        .zip(&g.eigenvalues)
        .map(|(a, b)| (a - b).abs() / a.abs().max(1.0))
        .fold(0.0, f64::max);
    record("ortho-invariance", invariance, 1e-9);

    // trace preservation
    let h = hamiltonian_matrix(&ho_even(100)?, &toy())?;
    let s = eigen_symmetric(&h)?;
    let trace = (s.eigenvalues.iter().sum::<f64>() - h.entries.trace()).abs();
    record("trace", trace, 1e-10);

    // variational ordering
    let part = feshbach_setup()?;
    let php = part.php_ground()?;
    let (full, _) = part.full_ground()?;
    let exact = oracle_energy(&deep(), settings)?;
    let ordered = php > full && full > exact;
    notes.push(format!("ordering {php:.5} > {full:.5} > {exact:.5}"));
    pass &= ordered;

    Ok(Outcome {
        measured: notes.join(", "),
        tolerance: "symmetry/trace 1e-10, idempotency/reproducing/dual 1e-8, invariance 1e-9, strict ordering"
            .into(),
        pass,
    })
}

const TITLES: [&str; CRITERIA] = [
    "oracle ground states",
    "oscillator Galerkin eigenvalues",
    "Feshbach reduction",
    "compact kernel identities",
    "identity cut-weight bands",
    "kinetic weight amplitude",
    "r² crest ratio and localization",
    "potential crest-ratio errors",
    "shifted-Gaussian spectrum",
    "symmetric-pair basis",
    "flat lowest kinetic wave",
    "exact oscillator diagonality",
    "property suites",
];

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, settings: &Settings) -> CriterionReport {
    let f: fn(&Settings) -> Result<Outcome> = match id {
        1 => c1_oracle,
        2 => c2_galerkin,
        3 => c3_feshbach,
        4 => c4_compact,
        5 => c5_cut_weight,
        6 => c6_kinetic_weight,
        7 => c7_r2,
        8 => c8_potential_cr,
        9 => c9_shifted,
        10 => c10_pairs,
        11 => c11_flat_wave,
        12 => c12_diagonal,
        13 => c13_properties,
        _ => panic!("criterion {id} does not exist"),
    };
    let title = TITLES[id - 1];
    match f(settings) {
        Ok(o) => CriterionReport {
            id,
            title,
            measured: o.measured,
            tolerance: o.tolerance,
            pass: o.pass,
            error: None,
        },
        Err(e) => CriterionReport {
            id,
            title,
            measured: String::new(),
            tolerance: String::new(),
            pass: false,
            error: Some(e),
        },
    }
}

pub fn run_all(settings: &Settings) -> Vec<CriterionReport> {
    (1..=CRITERIA).map(|id| run_criterion(id, settings)).collect()
}
