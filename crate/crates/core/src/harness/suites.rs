//! Named verification suites. Each suite turns a [`Config`] into an ordered
//! list of checks; the same config and seed always give the same report.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bargmann::bounds::{coeff_bound_exponential_check, coeff_bound_gaussian_check, BoundStatus, Regime};
use crate::bargmann::cauchy::{default_radii, taylor_coeffs_cauchy};
use crate::bargmann::decay::{fit_decay_hypothesis, DecayKind, Side};
use crate::bargmann::hardy::{case_i_probe, hardy_classify, HardyCase, DEFAULT_BAND};
use crate::bargmann::transform::{bargmann_transform, taylor_from_hermite};
use crate::error::{Error, Result};
use crate::factorization::{
    algebra_closure_check, algebra_closure_check_entire, certify_phase, factorize_analytic, factorize_entire, fit_phase_t,
    heat_semigroup_law_error, random_coefficients, random_hermite_function, schwartz_mapping_check, tensor_estimate_check,
    weyl_maps_into_es_check, weyl_maps_into_ms_check,
};
use crate::numerics::fourier::fourier_transform;
use crate::numerics::function::{inner_product, reflect, PhaseSpaceFunction, SampledFunction};
use crate::numerics::grid::GridSpec;
use crate::semigroups::bergman::{bergman_norm_ratio_check, hermite_bergman_isometry_check};
use crate::semigroups::gutzmer::gutzmer_check_1d;
use crate::semigroups::heat::{calibrate_heat_constant, special_hermite_heat_kernel};
use crate::semigroups::membership::{poisson_membership, Verdict};
use crate::semigroups::multipliers::{hermite_semigroup, poisson_hermite_semigroup};
use crate::special::coeffs::{hermite_coeffs, synthesize_on_grid, HermiteCoefficients};
use crate::special::hermite::{hermite_eval, multi_indices, MultiIndex};
use crate::special::laguerre::laguerre_function;
use crate::wigner::radial::weyl_radial_laguerre;
use crate::wigner::twisted::twisted_convolution;
use crate::wigner::weyl::{weyl_apply_kernel, weyl_matrix_kernel, weyl_matrix_spectral, WeylOperatorMatrix};
use crate::wigner::wigner::{special_hermite, wigner_transform};
use crate::C64;

use super::config::Config;
use super::report::{refs, CheckResult, VerificationReport};

pub const SUITES: &[&str] = &[
    "moyal",
    "weyl",
    "twisted-algebra",
    "semigroups",
    "bergman",
    "gutzmer",
    "bounds-3.9",
    "bounds-4.7",
    "hardy",
    "factorize-analytic",
    "factorize-entire",
    "closure",
    "schwartz",
];

/// Descriptive alternatives for the numbered bound suites.
pub const ALIASES: &[(&str, &str)] = &[("bounds-exponential", "bounds-3.9"), ("bounds-gaussian", "bounds-4.7")];

/// Suites whose checks only exist on the line.
pub const LINE_ONLY: &[&str] = &["twisted-algebra", "gutzmer", "bounds-3.9", "hardy", "closure"];

/// Gauss-Hermite nodes per axis on `R^2`; phase space then has `m^4` points.
const PLANE_NODES: usize = 36;
/// Nodes per axis for phase grids that feed twisted convolution.
const TWISTED_NODES: usize = 48;

pub fn canonical_suite(name: &str) -> Result<&'static str> {
    if name == "all" {
        return Ok("all");
    }
    if let Some(s) = SUITES.iter().find(|s| **s == name) {
        return Ok(s);
    }
    if let Some((_, s)) = ALIASES.iter().find(|(a, _)| *a == name) {
        return Ok(s);
    }
    Err(Error::InvalidConfig(format!("unknown suite `{name}`; expected one of {} or all", SUITES.join(", "))))
}

/// The suites `all` runs in dimension `n`.
pub fn suites_for(n: usize) -> Vec<&'static str> {
    SUITES.iter().copied().filter(|s| n == 1 || !LINE_ONLY.contains(s)).collect()
}

pub fn run_suite(name: &str, cfg: &Config) -> Result<VerificationReport> {
    cfg.validate()?;
    let name = canonical_suite(name)?;
    if name == "all" {
        let mut report = VerificationReport::new("all", cfg);
        for s in suites_for(cfg.n) {
            report.extend(run_one(s, cfg)?);
        }
        return Ok(report);
    }
    if cfg.n != 1 && LINE_ONLY.contains(&name) {
        return Err(Error::InvalidConfig(format!("suite `{name}` is implemented for n = 1 only")));
    }
    run_one(name, cfg)
}

fn run_one(name: &'static str, cfg: &Config) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(name, cfg);
    let s = Suite { cfg, report: &mut r };
    match name {
        "moyal" => s.moyal()?,
        "weyl" => s.weyl()?,
        "twisted-algebra" => s.twisted_algebra()?,
        "semigroups" => s.semigroups()?,
        "bergman" => s.bergman()?,
        "gutzmer" => s.gutzmer()?,
        "bounds-3.9" => s.exponential_bounds()?,
        "bounds-4.7" => s.gaussian_bounds()?,
        "hardy" => s.hardy()?,
        "factorize-analytic" => s.factorize_analytic()?,
        "factorize-entire" => s.factorize_entire()?,
        "closure" => s.closure()?,
        "schwartz" => s.schwartz()?,
        _ => unreachable!("names are canonical"),
    }
    Ok(r)
}

struct Suite<'a> {
    cfg: &'a Config,
    report: &'a mut VerificationReport,
}

fn relative_l2(a: &SampledFunction, b: &SampledFunction) -> Result<f64> {
    Ok(a.sub(b)?.norm() / b.norm().max(f64::MIN_POSITIVE))
}

impl Suite<'_> {
    fn n(&self) -> usize {
        self.cfg.n
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
    }

    fn line_grid(&self) -> Result<GridSpec> {
        let m = if self.n() == 1 { self.cfg.nodes } else { self.cfg.nodes.min(PLANE_NODES) };
        GridSpec::gauss_hermite(self.n(), m, 1.0)
    }

    fn phase_grid(&self) -> Result<GridSpec> {
        let g = self.line_grid()?;
        Ok(g.concat(&g))
    }

    /// Operator truncation used by matrix checks.
    fn matrix_trunc(&self) -> usize {
        if self.n() == 1 {
            8
        } else {
            self.cfg.trunc.min(4)
        }
    }

    fn push(&mut self, c: CheckResult) {
        self.report.push(c);
    }

    fn hermite(&self, alpha: &[usize], grid: &GridSpec) -> SampledFunction {
        SampledFunction::from_real_fn(grid, |x| hermite_eval(alpha, x))
    }

    /// Random combination of special Hermite functions with indices of level
    /// at most `level`.
    fn band_limited(&self, rng: &mut ChaCha8Rng, phase: &GridSpec, level: usize, terms: usize) -> Result<PhaseSpaceFunction> {
        let idx = multi_indices(self.n(), level);
        let mut f = PhaseSpaceFunction::zeros(phase);
        for _ in 0..terms {
            let a: &MultiIndex = &idx[rng.random_range(0..idx.len())];
            let b: &MultiIndex = &idx[rng.random_range(0..idx.len())];
            let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            f = f.add(&special_hermite(a, b, phase)?.scaled(c))?;
        }
        Ok(f)
    }

    fn moyal(mut self) -> Result<()> {
        let g = self.line_grid()?;
        if self.n() == 1 {
            let fs: Vec<SampledFunction> = (0..=4).map(|k| self.hermite(&[k], &g)).collect();
            let mut vs = Vec::new();
            for a in &fs {
                for b in &fs {
                    vs.push(wigner_transform(a, b)?);
                }
            }
            let mut worst: f64 = 0.0;
            for (p, vp) in vs.iter().enumerate() {
                for (q, vq) in vs.iter().enumerate() {
                    let expect = if p == q { 1.0 } else { 0.0 };
                    worst = worst.max((inner_product(vp, vq)? - expect).norm());
                }
            }
            self.push(CheckResult::measured("moyal/hermite-quadruples", refs::ORTHONORMAL_BASIS, worst, 0.0, worst, 1e-8));
        }
        let mut rng = self.rng(1);
        let degree = if self.n() == 1 { 4 } else { self.cfg.trunc.min(4) };
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let f: Vec<SampledFunction> = (0..4).map(|_| random_hermite_function(&mut rng, &g, degree)).collect();
            let lhs = inner_product(&wigner_transform(&f[0], &f[1])?, &wigner_transform(&f[2], &f[3])?)?;
            let rhs = inner_product(&f[0], &f[2])? * inner_product(&f[1], &f[3])?.conj();
            worst = worst.max((lhs - rhs).norm());
        }
        self.push(CheckResult::measured("moyal/random-quadruples", refs::MOYAL, worst, 0.0, worst, 1e-8));
        let one = self.hermite(&vec![0; self.n()], &g);
        let v = wigner_transform(&one, &one)?;
        self.push(CheckResult::compare("moyal/ground-norm", refs::MOYAL, v.norm(), 1.0, 1e-8, false));
        Ok(())
    }

    fn weyl(mut self) -> Result<()> {
        let g = self.line_grid()?;
        let phase = g.concat(&g);
        let trunc = self.matrix_trunc();
        let tol = self.cfg.tolerance;
        let mut rng = self.rng(2);
        let level = if self.n() == 1 { 4 } else { 2 };
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let f = self.band_limited(&mut rng, &phase, level, 3)?;
            let ms = weyl_matrix_spectral(&f, trunc);
            let mk = weyl_matrix_kernel(&f, &g, trunc)?;
            worst = worst.max(ms.max_diff(&mk)?);
        }
        self.push(CheckResult::measured("weyl/kernel-vs-spectral", refs::RANK_ONE, worst, 0.0, worst, tol));

        let degree = if self.n() == 1 { 3 } else { 2 };
        let p = (0..3).map(|_| random_hermite_function(&mut rng, &g, degree)).collect::<Vec<_>>();
        let lhs = weyl_apply_kernel(&wigner_transform(&p[0], &p[1])?, &p[2])?;
        let pair = inner_product(&p[2], &reflect(&p[1])?)?;
        let rhs = reflect(&p[0])?.scaled(pair * (2.0 * PI).powf(self.n() as f64 / 2.0));
        let err = relative_l2(&lhs, &rhs)?;
        self.push(CheckResult::measured("weyl/rank-one", refs::RANK_ONE, lhs.norm(), rhs.norm(), err, tol));

        let n = self.n();
        let full = (2.0 * PI).powi(n as i32);
        let mut on: f64 = 0.0;
        let mut off: f64 = 0.0;
        for j in 0..=10 {
            let r = weyl_radial_laguerre(|s| laguerre_function(j, n - 1, s), n, 12)?;
            for (k, v) in r.levels.iter().enumerate() {
                if k == j {
                    on = on.max((v - full).abs() / full);
                } else {
                    off = off.max(v.abs());
                }
            }
        }
        self.push(CheckResult::measured("weyl/projection-diagonal", refs::RADIAL, on, 0.0, on, 1e-8));
        self.push(CheckResult::measured("weyl/projection-off-target", refs::RADIAL, off, 0.0, off, 1e-8));

        if n == 1 {
            let prof = |s: f64| (-s * s / 3.0).exp() * (1.0 + 0.2 * s * s);
            let f = PhaseSpaceFunction::from_fn(&phase, |x, u| C64::new(prof((x[0] * x[0] + u[0] * u[0]).sqrt()), 0.0));
            let d = weyl_matrix_spectral(&f, trunc).max_diff(&weyl_radial_laguerre(prof, 1, trunc)?.to_matrix())?;
            self.push(CheckResult::measured("weyl/radial-vs-full", refs::RADIAL, d, 0.0, d, tol));
        }
        Ok(())
    }

    fn twisted_algebra(mut self) -> Result<()> {
        let phase = GridSpec::gauss_hermite(2, TWISTED_NODES, 1.0)?;
        let tol = self.cfg.tolerance;
        let mut rng = self.rng(3);
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let f = self.band_limited(&mut rng, &phase, 3, 2)?;
            let h = self.band_limited(&mut rng, &phase, 3, 2)?;
            let lhs = weyl_matrix_spectral(&twisted_convolution(&f, &h, 1.0)?, 8);
            let rhs = weyl_matrix_spectral(&f, 8).compose(&weyl_matrix_spectral(&h, 8))?;
            worst = worst.max(lhs.max_diff(&rhs)?);
        }
        self.push(CheckResult::measured("twisted/homomorphism", refs::HOMOMORPHISM, worst, 0.0, worst, tol));
        let prod = twisted_convolution(&special_hermite(&[1], &[2], &phase)?, &special_hermite(&[2], &[0], &phase)?, 1.0)?;
        let expect = special_hermite(&[1], &[0], &phase)?.scaled(C64::new((2.0 * PI).sqrt(), 0.0));
        let d = prod.max_diff(&expect)?;
        self.push(CheckResult::measured("twisted/special-hermite-product", refs::HOMOMORPHISM, d, 0.0, d, tol));
        let zero = twisted_convolution(&special_hermite(&[1], &[2], &phase)?, &special_hermite(&[3], &[0], &phase)?, 1.0)?;
        self.push(CheckResult::measured("twisted/mismatched-product", refs::HOMOMORPHISM, zero.max_abs(), 0.0, zero.max_abs(), tol));
        Ok(())
    }

    fn semigroups(mut self) -> Result<()> {
        let n = self.n();
        let tol = self.cfg.tolerance;
        let phase = self.phase_grid()?;
        let levels = if n == 1 { 10 } else { self.cfg.trunc.min(4) };
        for t in [0.5, 0.8] {
            let p = special_hermite_heat_kernel(t, &phase)?;
            let m = weyl_matrix_spectral(&p, levels);
            let expect = WeylOperatorMatrix::from_levels(n, levels, |k| C64::new((-((2 * k + n) as f64) * t).exp(), 0.0));
            let d = m.max_diff(&expect)?;
            self.push(CheckResult::measured(format!("semigroups/heat-kernel-t{t}"), refs::HEAT_KERNEL, d, 0.0, d, tol));
        }
        let a = calibrate_heat_constant(n, 0.5)?;
        let b = calibrate_heat_constant(n, 0.8)?;
        self.push(CheckResult::compare("semigroups/calibration-consistency", refs::HEAT_KERNEL, b, a, 1e-5, true));
        if n == 1 {
            let twisted = GridSpec::gauss_hermite(2, TWISTED_NODES, 1.0)?;
            let e = heat_semigroup_law_error(0.5, 0.7, &twisted)?;
            self.push(CheckResult::measured("semigroups/heat-semigroup-law", refs::HEAT_SEMIGROUP, e, 0.0, e, tol));
        }
        // membership: the Poisson image at t sits in the analytic space at t but not beyond
        let mut rng = self.rng(4);
        let c = random_coefficients(&mut rng, n, 40.min(self.cfg.trunc + 10));
        let full = HermiteCoefficients::from_fn(n, c.trunc, |_| C64::new(1.0, 0.0));
        let image = poisson_hermite_semigroup(&full, 0.5)?;
        let inside = poisson_membership(&image, 0.25).verdict;
        let outside = poisson_membership(&image, 0.7).verdict;
        self.push(CheckResult::flag("semigroups/poisson-image-inside", refs::STRIP_NORM, inside == Verdict::Converged, 0.25, 0.5));
        self.push(CheckResult::flag("semigroups/poisson-image-outside", refs::STRIP_NORM, outside == Verdict::Growing, 0.7, 0.5));
        let heat = hermite_semigroup(&c, 0.5)?;
        let back = heat.map_levels(|k| ((2 * k + n) as f64 * 0.5).exp());
        let d = back.sub(&c).max_abs();
        self.push(CheckResult::measured("semigroups/multiplier-inverse", refs::HEAT_KERNEL, d, 0.0, d, 1e-10));
        Ok(())
    }

    fn bergman(mut self) -> Result<()> {
        let n = self.n();
        let mut rng = self.rng(5);
        let degree = if n == 1 { 6 } else { 3 };
        for t in [0.3, 0.5, 0.7] {
            let mut worst: f64 = 0.0;
            for _ in 0..3 {
                let c = random_coefficients(&mut rng, n, degree);
                let r = hermite_bergman_isometry_check(&c, t, 1e-4)?;
                worst = worst.max(if r.inconclusive { f64::INFINITY } else { r.rel_error });
            }
            self.push(CheckResult::measured(format!("bergman/isometry-t{t}"), refs::BERGMAN_ISOMETRY, worst, 0.0, worst, 1e-4));
        }
        if n == 1 {
            let t = 0.4;
            let r = bergman_norm_ratio_check(&strip_family(), t)?;
            self.push(CheckResult::measured("bergman/strip-ratio-spread", refs::STRIP_NORM, r.mean, t * t * (PI / 2.0).sqrt(), r.spread, 1e-3));
        }
        Ok(())
    }

    fn gutzmer(mut self) -> Result<()> {
        for k in 0..3 {
            for (y, v) in [(0.3, 0.0), (0.2, 0.2)] {
                let r = gutzmer_check_1d(&HermiteCoefficients::unit(1, 3, &[k]), y, v)?;
                self.push(CheckResult::measured(format!("gutzmer/phi{k}-({y},{v})"), refs::GUTZMER, r.lhs, r.rhs, r.rel_error, 1e-4));
            }
        }
        Ok(())
    }

    fn exponential_bounds(mut self) -> Result<()> {
        let wide = GridSpec::uniform(1, -40.0, 40.0, 1601)?;
        let beta = (PI / 2.0).sqrt();
        let sech = SampledFunction::from_real_fn(&wide, |x| 1.0 / (beta * x[0]).cosh());
        let rate = fit_decay_hypothesis(&sech, DecayKind::Exponential, Side::Function)?.rate;
        let r = coeff_bound_exponential_check(&sech, 0.9 * rate, 60, 1e3)?;
        self.push(CheckResult::flag("bounds/sech-holds", refs::EXPONENTIAL_BOUND, r.status == BoundStatus::Holds, r.c_min.unwrap_or(f64::NAN), r.budget));
        let slow = SampledFunction::from_real_fn(&wide, |x| 1.0 / (1.0 + x[0] * x[0]));
        let r = coeff_bound_exponential_check(&slow, 0.5, 60, 1e3)?;
        self.push(CheckResult::flag("bounds/polynomial-refused", refs::EXPONENTIAL_BOUND, r.status == BoundStatus::PreconditionFailed, 0.0, 0.0));

        // Bargmann link on a random combination of Hermite functions up to degree 10
        let g = GridSpec::gauss_hermite(1, self.cfg.nodes, 1.0)?;
        let mut rng = self.rng(6);
        let c = random_coefficients(&mut rng, 1, 10);
        let f = synthesize_on_grid(&c, &g);
        let taylor = taylor_from_hermite(&hermite_coeffs(&f, 10));
        let bf = |z: &[C64]| bargmann_transform(&f, z).map(|v| v.value()).unwrap_or_default();
        let mut worst: f64 = 0.0;
        for k in 0..=10 {
            let cc = taylor_coeffs_cauchy(&bf, &[k], &default_radii(&[k], 1.0));
            worst = worst.max((cc.value - taylor.get(&[k])).norm());
        }
        self.push(CheckResult::measured("bounds/bargmann-coefficients", refs::BARGMANN_LINK, worst, 0.0, worst, 1e-8));
        let fh = fourier_transform(&f);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let z = C64::from_polar(rng.random_range(0.0..3.0), rng.random_range(0.0..2.0 * PI));
            let lhs = bargmann_transform(&f, &[C64::new(0.0, -1.0) * z])?.value();
            let rhs = bargmann_transform(&fh, &[z])?.value();
            worst = worst.max((lhs - rhs).norm());
        }
        self.push(CheckResult::measured("bounds/bargmann-fourier", refs::BARGMANN_LINK, worst, 0.0, worst, 1e-8));
        Ok(())
    }

    fn gaussian_bounds(mut self) -> Result<()> {
        let a = 0.5f64.tanh();
        // the Gaussian regime certifies at tanh(2t)
        let t = 0.25;
        if self.n() == 1 {
            let g = GridSpec::uniform(1, -20.0, 20.0, 801)?;
            let psi = SampledFunction::from_real_fn(&g, |x| (-0.5 * a * x[0] * x[0]).exp());
            let r = coeff_bound_gaussian_check(&psi, t, 60, 1e3)?;
            self.push(CheckResult::flag("bounds/gaussian-holds", refs::GAUSSIAN_BOUND, r.status == BoundStatus::Holds, r.c_min.unwrap_or(f64::NAN), r.budget));
            let expect = (1.0 - a) / (1.0 + a);
            let ratio = r.decay_ratio.unwrap_or(f64::NAN);
            self.push(CheckResult::compare("bounds/gaussian-decay-ratio", refs::GAUSSIAN_BOUND, ratio, expect, 0.01, true));
        } else {
            let g = GridSpec::uniform(2, -12.0, 12.0, 241)?;
            let psi = SampledFunction::from_real_fn(&g, |x| (-0.5 * a * (x[0] * x[0] + x[1] * x[1])).exp());
            let r = coeff_bound_gaussian_check(&psi, t, 20, 1e3)?;
            self.push(CheckResult::flag("bounds/gaussian-holds", refs::GAUSSIAN_BOUND, r.status == BoundStatus::Holds, r.c_min.unwrap_or(f64::NAN), r.budget));
        }
        Ok(())
    }

    fn hardy(mut self) -> Result<()> {
        let g = GridSpec::uniform(1, -20.0, 20.0, 801)?;
        let a = 0.5f64.tanh();
        let cases = [
            ("hardy/gaussian", SampledFunction::from_real_fn(&g, |x| (-0.5 * x[0] * x[0]).exp()), HardyCase::Gaussian),
            ("hardy/hermite-5", self.hermite(&[5], &g), HardyCase::GaussianTimesMinimalType),
            (
                "hardy/self-reciprocal-pair",
                SampledFunction::from_real_fn(&g, |x| (-0.5 * a * x[0] * x[0]).exp() + a.powf(-0.5) * (-0.5 * x[0] * x[0] / a).exp()),
                HardyCase::NontrivialClass,
            ),
        ];
        for (name, f, expect) in cases {
            let r = hardy_classify(&f, None, DEFAULT_BAND)?;
            let again = hardy_classify(&f, None, DEFAULT_BAND)?;
            let same = serde_json::to_string(&r)? == serde_json::to_string(&again)?;
            self.push(CheckResult::flag(name, refs::HARDY, r.verdict == expect && same, r.a, r.b));
        }
        let probe = case_i_probe(1.1, 1.0);
        self.push(CheckResult::flag("hardy/forced-zero", refs::HARDY, probe.forced_zero, 1.1, 1.0));
        Ok(())
    }

    fn factorize_analytic(mut self) -> Result<()> {
        let n = self.n();
        let g = self.line_grid()?;
        let tol = self.cfg.tolerance;
        let zero = vec![0; n];
        let image = poisson_hermite_semigroup(&HermiteCoefficients::unit(n, 4, &zero), 0.5)?;
        let (_, r) = factorize_analytic(&synthesize_on_grid(&image, &g), &self.hermite(&zero, &g), 0.5)?;
        self.push(CheckResult::measured("factorize/poisson-ground-state", refs::ANALYTIC_FACTORIZATION, r.reconstruction_error, 0.0, r.reconstruction_error, tol));
        self.push(CheckResult::flag("factorize/kernel-certificate", refs::ANALYTIC_FACTORIZATION, r.certificate.certified, r.certificate.first.ratio(), r.certificate.second.ratio()));

        let mut rng = self.rng(7);
        let degree = if n == 1 { 4 } else { 2 };
        let (mut worst, mut pairs) = (0.0f64, 0);
        while pairs < 10 {
            let c = random_coefficients(&mut rng, n, degree);
            let phi = synthesize_on_grid(&poisson_hermite_semigroup(&c, 0.5)?, &g);
            let f = random_hermite_function(&mut rng, &g, degree);
            if inner_product(&f, &phi)?.norm() <= 0.1 {
                continue;
            }
            let (_, r) = factorize_analytic(&phi, &f, 0.5)?;
            worst = worst.max(r.reconstruction_error);
            pairs += 1;
        }
        self.push(CheckResult::measured("factorize/random-pairs", refs::ANALYTIC_FACTORIZATION, worst, 0.0, worst, tol));
        let mut one = zero.clone();
        one[0] = 1;
        let refused = matches!(factorize_analytic(&self.hermite(&zero, &g), &self.hermite(&one, &g), 0.5), Err(Error::DegeneratePairing(_)));
        self.push(CheckResult::flag("factorize/orthogonal-pair-refused", refs::ANALYTIC_FACTORIZATION, refused, 0.0, 0.0));

        let phase = g.concat(&g);
        let f = special_hermite(&zero, &zero, &phase)?;
        let t = fit_phase_t(&f, Regime::Exponential).unwrap_or(0.0);
        if t > 0.0 {
            let s = 0.9 * t / (2.0 * (2.0 * n as f64).sqrt());
            let m = weyl_maps_into_ms_check(&f, t, s, self.mapping_trials(), self.cfg.seed)?;
            self.push(CheckResult::flag("factorize/maps-into-analytic", refs::ANALYTIC_MAPPING, m.passed, m.trials.iter().map(|t| t.norm).fold(0.0, f64::max), m.norm_bound));
        } else {
            self.push(CheckResult::flag("factorize/maps-into-analytic", refs::ANALYTIC_MAPPING, false, 0.0, 0.0));
        }

        let mut ok = true;
        let mut worst: f64 = 0.0;
        for _ in 0..3 {
            let a = random_hermite_function(&mut rng, &g, degree);
            let b = random_hermite_function(&mut rng, &g, degree);
            let r = tensor_estimate_check(&a, &b, 0.4, if n == 1 { 8 } else { 4 })?;
            ok &= r.holds;
            worst = worst.max(r.expansion_error);
        }
        self.push(CheckResult::flag("factorize/tensor-estimate", refs::TENSOR_ESTIMATE, ok, worst, 0.0));
        self.push(CheckResult::measured("factorize/tensor-expansion", refs::TENSOR_ESTIMATE, worst, 0.0, worst, 1e-8));
        Ok(())
    }

    fn mapping_trials(&self) -> usize {
        if self.n() == 1 {
            self.cfg.trials
        } else {
            self.cfg.trials.min(5)
        }
    }

    fn factorize_entire(mut self) -> Result<()> {
        let n = self.n();
        let g = self.line_grid()?;
        let tol = self.cfg.tolerance;
        let zero = vec![0; n];
        let mut rng = self.rng(8);
        let (mut route_a, mut route_b) = (0.0f64, 0.0f64);
        let mut certified = true;
        for k in 0..4 {
            let phi0 = if k == 0 { self.hermite(&zero, &g) } else { random_hermite_function(&mut rng, &g, if n == 1 { 4 } else { 2 }) };
            let f = self.hermite(&zero, &g).add(&phi0)?;
            let (_, r) = factorize_entire(&phi0, 0.5, &f)?;
            route_a = route_a.max(r.reconstruction_error);
            route_b = route_b.max(r.kernel_route_error.unwrap_or(f64::INFINITY));
            certified &= k > 0 || r.certificate.certified;
        }
        self.push(CheckResult::measured("factorize/entire-reconstruction", refs::ENTIRE_FACTORIZATION, route_a, 0.0, route_a, tol));
        self.push(CheckResult::measured("factorize/entire-kernel-route", refs::ENTIRE_FACTORIZATION, route_b, 0.0, route_b, tol));
        self.push(CheckResult::flag("factorize/entire-certificate", refs::ENTIRE_FACTORIZATION, certified, 0.0, 0.0));
        let z = SampledFunction::zeros(&g);
        let refused = matches!(factorize_entire(&z, 0.5, &self.hermite(&zero, &g)), Err(Error::DegeneratePairing(_)));
        self.push(CheckResult::flag("factorize/entire-zero-refused", refs::ENTIRE_FACTORIZATION, refused, 0.0, 0.0));

        let phase = g.concat(&g);
        let p = special_hermite_heat_kernel(0.5, &phase)?;
        let damped = synthesize_on_grid(&hermite_semigroup(&HermiteCoefficients::unit(n, 2, &zero), 0.4)?, &g);
        let v = wigner_transform(&damped, &damped)?;
        for (name, f) in [("heat-kernel", p), ("damped-wigner", v)] {
            let t = fit_phase_t(&f, Regime::Gaussian).unwrap_or(0.0);
            let ok = if t > 0.0 {
                let m = weyl_maps_into_es_check(&f, t, 0.9 * t / (2.0 * n as f64), self.mapping_trials(), self.cfg.seed)?;
                m.passed
            } else {
                false
            };
            self.push(CheckResult::flag(format!("factorize/maps-into-entire-{name}"), refs::ENTIRE_MAPPING, ok, t, 0.0));
        }
        Ok(())
    }

    fn closure(mut self) -> Result<()> {
        let phase = GridSpec::gauss_hermite(2, TWISTED_NODES, 1.0)?;
        let tol = self.cfg.tolerance;
        let sh = |a: usize, b: usize| special_hermite(&[a], &[b], &phase);
        let heat = |t: f64| special_hermite_heat_kernel(t, &phase);
        let pairs = [(sh(0, 0)?, sh(0, 0)?), (sh(0, 1)?, sh(1, 1)?), (sh(1, 0)?, sh(0, 1)?), (heat(0.5)?, sh(0, 0)?), (heat(0.5)?, heat(0.3)?)];
        let mut passed = 0;
        let mut identity: f64 = 0.0;
        for (g, h) in &pairs {
            let t = match (fit_phase_t(g, Regime::Exponential), fit_phase_t(h, Regime::Exponential)) {
                (Some(a), Some(b)) => a.min(b),
                _ => continue,
            };
            let (_, r) = algebra_closure_check(g, h, t)?;
            passed += r.passed as usize;
            identity = identity.max((r.identity.constant - (2.0 * PI).sqrt()).abs().max(r.identity.residual));
        }
        self.push(CheckResult::compare("closure/exponential-pairs", refs::CLOSURE, passed as f64, pairs.len() as f64, 0.0, false));
        self.push(CheckResult::measured("closure/partial-fourier-product", refs::CLOSURE, identity, 0.0, identity, tol));
        let e = heat_semigroup_law_error(0.5, 0.5, &phase)?;
        self.push(CheckResult::measured("closure/heat-semigroup-law", refs::CLOSURE, e, 0.0, e, tol));
        let p = heat(0.5)?;
        let (prod, r) = algebra_closure_check_entire(&p, &p, 0.5)?;
        let product_rate = certify_phase(&prod, Regime::Gaussian, 1f64.tanh()).certified;
        self.push(CheckResult::flag("closure/gaussian-pair", refs::CLOSURE, r.passed && product_rate, 0.5, 1.0));
        Ok(())
    }

    fn schwartz(mut self) -> Result<()> {
        let n = self.n();
        let zero = vec![0; n];
        let phase = self.phase_grid()?;
        let f = special_hermite(&zero, &zero, &phase)?;
        let rough_grid = if n == 1 { GridSpec::uniform(1, -12.0, 12.0, 241)? } else { GridSpec::uniform(2, -8.0, 8.0, 41)? };
        let rough = SampledFunction::from_real_fn(&rough_grid, |x| x.iter().map(|v| v.signum() / (1.0 + v * v)).product());
        let m_max = if n == 1 { 6 } else { 3 };
        let r = schwartz_mapping_check(&f, &rough, m_max)?;
        self.push(CheckResult::flag("schwartz/rough-input", refs::SCHWARTZ, r.passed, m_max as f64, 0.0));
        let slow = PhaseSpaceFunction::from_fn(&phase, |x, u| C64::new(1.0 / (1.0 + x.iter().chain(u).map(|v| v * v).sum::<f64>()), 0.0));
        let r = schwartz_mapping_check(&slow, &self.hermite(&zero, &self.line_grid()?), m_max)?;
        self.push(CheckResult::flag("schwartz/slow-symbol-refused", refs::SCHWARTZ, r.refused_at == Some(2), r.refused_at.unwrap_or(0) as f64, 2.0));
        Ok(())
    }
}

/// `Phi_0, Phi_1, Phi_0 + Phi_2, Phi_0 - i Phi_1, Phi_3`.
pub fn strip_family() -> Vec<HermiteCoefficients> {
    let mut mix = HermiteCoefficients::unit(1, 3, &[0]);
    mix.values[2] = C64::new(1.0, 0.0);
    let mut rot = HermiteCoefficients::unit(1, 3, &[0]);
    rot.values[1] = C64::new(0.0, -1.0);
    vec![HermiteCoefficients::unit(1, 3, &[0]), HermiteCoefficients::unit(1, 3, &[1]), mix, rot, HermiteCoefficients::unit(1, 3, &[3])]
}
