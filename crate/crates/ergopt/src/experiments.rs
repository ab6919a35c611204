//! Executable verification of the structural laws, plus the line-sampling
//! experiment.
//!
//! Each verifier turns one exact law about `t -> max ergodic average of
//! (f + t*g)` into a list of rational-arithmetic checks with full witnesses,
//! so a failure is a reproducible counterexample rather than a boolean. The
//! laws, keyed by their CLI claim ids:
//!
//! * `1` — the curve is Lipschitz with constant `sup_norm(g)` and midpoint
//!   convex;
//! * `2` — for every `tau > 0` the difference quotient is sandwiched between
//!   the supremum of `g`-averages over maximising measures at the base and
//!   at the perturbed potential;
//! * `3` — just right of the base the supremum of `g`-averages is constant
//!   and bounded by its value at the base (upper semicontinuity from the
//!   right);
//! * `4` — the curve is differentiable at `t` iff all maximising measures of
//!   `f + t*g` share one `g`-average, and then the derivative equals it;
//! * `diam` — the diameter of the `g`-average set vanishes off breakpoints
//!   and is strictly positive at them.
//!
//! The prevalence experiment samples `t` uniformly from the rational grid
//! `{j / D : 0 <= j <= D}` on `[0, 1]` (seeded, deterministic, exact) and
//! records differentiability and uniqueness per sample and per direction,
//! with the breakpoint set as the exact exceptional set.
//!
//! Everything here is deterministic given the seed; reports serialized twice
//! are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::critical::critical_structure;
use crate::curve::{compute_curve, BetaCurve};
use crate::error::{Error, Result};
use crate::graph::TransitionGraph;
use crate::io::SystemDocument;
use crate::maxmean::beta;
use crate::symbolic::{Potential, SftSystem};
use crate::weight::format_rational;
use crate::Rational;

fn qr(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// One exact assertion with its witness values.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub witness: String,
    pub pass: bool,
}

impl CheckRecord {
    fn new(name: impl Into<String>, witness: String, pass: bool) -> Self {
        Self { name: name.into(), witness, pass }
    }
}

/// Outcome of one verifier on one instance.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClaimReport {
    /// CLI claim id: `1`..`4`, `diam`, `expect` or `prevalence`.
    pub id: String,
    /// What the claim asserts, in words.
    pub name: String,
    pub system: String,
    pub base: String,
    pub direction: String,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub overall_pass: bool,
}

impl ClaimReport {
    fn assemble(
        id: &str,
        name: &str,
        setup: &ClaimSetup<'_>,
        direction: &str,
        params: BTreeMap<String, String>,
        checks: Vec<CheckRecord>,
    ) -> Self {
        let overall_pass = checks_pass(&checks);
        ClaimReport {
            id: id.into(),
            name: name.into(),
            system: setup.system_name.clone(),
            base: setup.base_name.clone(),
            direction: direction.into(),
            seed: setup.params.seed,
            params,
            checks,
            overall_pass,
        }
    }
}

fn checks_pass(checks: &[CheckRecord]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Sampling and interval parameters shared by the verifiers.
#[derive(Debug, Clone)]
pub struct VerifyParams {
    pub seed: u64,
    /// sample count per check family
    pub samples: usize,
    /// grid denominator D: parameters are drawn from {j / D}
    pub grid_denominator: u64,
    pub t_lo: Rational,
    pub t_hi: Rational,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 1000,
            grid_denominator: 10007,
            t_lo: qr(0, 1),
            t_hi: qr(1, 1),
        }
    }
}

impl VerifyParams {
    fn validate(&self) -> Result<()> {
        if self.grid_denominator == 0 {
            return Err(Error::InvalidGrid("grid denominator must be positive".into()));
        }
        if self.t_lo >= self.t_hi {
            return Err(Error::InvalidInterval(format!(
                "[{}, {}] is empty or reversed",
                self.t_lo, self.t_hi
            )));
        }
        Ok(())
    }

    fn describe(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("samples".into(), self.samples.to_string()),
            ("grid_denominator".into(), self.grid_denominator.to_string()),
            ("t_lo".into(), format_rational(&self.t_lo)),
            ("t_hi".into(), format_rational(&self.t_hi)),
        ])
    }
}

/// Draws uniformly from `{lo, ..., hi}` by rejection on raw 64-bit output,
/// so the stream depends only on the ChaCha algorithm (byte-identical
/// replays across platforms and releases).
fn uniform_i64(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo) as u64 + 1;
    let limit = u64::MAX - u64::MAX % span;
    loop {
        let raw = rng.next_u64();
        if raw < limit {
            return lo + (raw % span) as i64;
        }
    }
}

/// Grid bounds `j` with `lo <= j/d <= hi`.
fn grid_range(lo: &Rational, hi: &Rational, d: u64) -> (i64, i64) {
    let d_big = Rational::from_integer(d.into());
    let j_lo = (lo * &d_big).ceil().to_integer();
    let j_hi = (hi * &d_big).floor().to_integer();
    (
        i64::try_from(j_lo).expect("grid index fits i64"),
        i64::try_from(j_hi).expect("grid index fits i64"),
    )
}

fn grid_point(j: i64, d: u64) -> Rational {
    Rational::new(j.into(), d.into())
}

/// One (system, base potential, direction potential) instance under fixed
/// parameters; the unit all claim verifiers operate on.
pub struct ClaimSetup<'a> {
    pub system: &'a SftSystem,
    pub system_name: String,
    pub base_name: String,
    pub base: &'a Potential,
    pub direction_name: String,
    pub direction: &'a Potential,
    pub params: VerifyParams,
}

impl<'a> ClaimSetup<'a> {
    pub fn new(
        system: &'a SftSystem,
        system_name: impl Into<String>,
        (base_name, base): (&str, &'a Potential),
        (direction_name, direction): (&str, &'a Potential),
        params: VerifyParams,
    ) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            system,
            system_name: system_name.into(),
            base_name: base_name.into(),
            base,
            direction_name: direction_name.into(),
            direction,
            params,
        })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.params.seed)
    }

    fn lifted(&self) -> Result<(TransitionGraph<Rational>, TransitionGraph<Rational>)> {
        self.system.lift_pair(self.base, self.direction)
    }

    /// Fresh maximum at parameter `t` through the symbolic pipeline —
    /// deliberately not using the envelope, so envelope and pointwise
    /// computations stay independent cross-checks.
    fn beta_at(&self, t: &Rational) -> Result<Rational> {
        let combined = self.base.combine(self.direction, t, self.system)?;
        beta(&self.system.lift(&combined)?)
    }

    /// `[inf, sup]` of direction-averages over maximising measures at `t`,
    /// plus the maximum itself.
    fn interval_at(&self, t: &Rational) -> Result<(Rational, Rational, Rational)> {
        let (lifted_base, lifted_dir) = self.lifted()?;
        let combined = lifted_base.combine(&lifted_dir, t)?;
        let cs = critical_structure(&combined)?;
        let interval = cs.directional_interval(&lifted_dir)?;
        Ok((cs.lambda().clone(), interval.lower, interval.upper))
    }

    fn curve(&self) -> Result<BetaCurve<Rational>> {
        let (lifted_base, lifted_dir) = self.lifted()?;
        compute_curve(&lifted_base, &lifted_dir, &self.params.t_lo, &self.params.t_hi)
    }

    /// Seeded parameters strictly inside the interval.
    fn sample_open_ts(&self, count: usize) -> Vec<Rational> {
        let d = self.params.grid_denominator;
        let (mut j_lo, mut j_hi) = grid_range(&self.params.t_lo, &self.params.t_hi, d);
        if grid_point(j_lo, d) == self.params.t_lo {
            j_lo += 1;
        }
        if grid_point(j_hi, d) == self.params.t_hi {
            j_hi -= 1;
        }
        let mut rng = self.rng();
        (0..count)
            .map(|_| grid_point(uniform_i64(&mut rng, j_lo, j_hi), d))
            .collect()
    }

    /// Lipschitz bound and midpoint convexity over seeded parameter pairs.
    pub fn verify_claim1(&self) -> Result<ClaimReport> {
        let sup = self.direction.sup_norm();
        let (j_lo, j_hi) = grid_range(&self.params.t_lo, &self.params.t_hi, self.params.grid_denominator);
        let mut rng = self.rng();
        let mut checks = Vec::new();
        for i in 0..self.params.samples {
            let t1 = grid_point(uniform_i64(&mut rng, j_lo, j_hi), self.params.grid_denominator);
            let t2 = grid_point(uniform_i64(&mut rng, j_lo, j_hi), self.params.grid_denominator);
            let b1 = self.beta_at(&t1)?;
            let b2 = self.beta_at(&t2)?;
            let diff = if b1 >= b2 { b1.clone() - b2.clone() } else { b2.clone() - b1.clone() };
            let gap = if t1 >= t2 { t1.clone() - t2.clone() } else { t2.clone() - t1.clone() };
            let bound = sup.clone() * gap;
            let mut witness = String::new();
            let _ = write!(
                witness,
                "t1={} t2={} |dbeta|={} bound={}",
                format_rational(&t1),
                format_rational(&t2),
                format_rational(&diff),
                format_rational(&bound)
            );
            checks.push(CheckRecord::new(format!("lipschitz[{i}]"), witness, diff <= bound));

            let mid = (t1.clone() + t2.clone()) / qr(2, 1);
            let b_mid = self.beta_at(&mid)?;
            let avg = (b1 + b2) / qr(2, 1);
            let mut witness = String::new();
            let _ = write!(
                witness,
                "mid={} beta(mid)={} avg={}",
                format_rational(&mid),
                format_rational(&b_mid),
                format_rational(&avg)
            );
            checks.push(CheckRecord::new(format!("midpoint_convexity[{i}]"), witness, b_mid <= avg));
        }
        let mut params = self.params.describe();
        params.insert("sup_norm".into(), format_rational(&sup));
        Ok(ClaimReport::assemble(
            "1",
            "lipschitz bound and midpoint convexity of the maximum",
            self,
            &self.direction_name,
            params,
            checks,
        ))
    }

    /// Difference-quotient sandwich for every supplied positive step.
    pub fn verify_claim2(&self, taus: &[Rational]) -> Result<ClaimReport> {
        let zero = qr(0, 1);
        let beta_base = self.beta_at(&zero)?;
        let (_, _, upper_base) = self.interval_at(&zero)?;
        let mut checks = Vec::new();
        for (i, tau) in taus.iter().enumerate() {
            if *tau <= zero {
                return Err(Error::InvalidInterval(format!(
                    "difference-quotient step must be positive, got {tau}"
                )));
            }
            let quotient = (self.beta_at(tau)? - beta_base.clone()) / tau.clone();
            let (_, _, upper_shifted) = self.interval_at(tau)?;
            let mut witness = String::new();
            let _ = write!(
                witness,
                "tau={} sup0={} quotient={} sup_tau={}",
                format_rational(tau),
                format_rational(&upper_base),
                format_rational(&quotient),
                format_rational(&upper_shifted)
            );
            checks.push(CheckRecord::new(
                format!("quotient_lower_bound[{i}]"),
                witness.clone(),
                upper_base <= quotient,
            ));
            checks.push(CheckRecord::new(
                format!("quotient_upper_bound[{i}]"),
                witness,
                quotient <= upper_shifted,
            ));
        }
        let mut params = self.params.describe();
        params.insert("taus".into(), taus.iter().map(format_rational).collect::<Vec<_>>().join(","));
        Ok(ClaimReport::assemble(
            "2",
            "difference quotients sandwiched by maximising averages",
            self,
            &self.direction_name,
            params,
            checks,
        ))
    }

    /// Default steps for the sandwich: seeded positive grid points up to the
    /// interval's upper end.
    pub fn default_taus(&self) -> Vec<Rational> {
        let d = self.params.grid_denominator;
        let (_, j_hi) = grid_range(&qr(0, 1), &self.params.t_hi, d);
        let mut rng = self.rng();
        (0..self.params.samples)
            .map(|_| grid_point(uniform_i64(&mut rng, 1, j_hi.max(1)), d))
            .collect()
    }

    /// Right of the base, the supremum of direction-averages is constant up
    /// to the first breakpoint and bounded by its value at the base.
    pub fn verify_claim3(&self) -> Result<ClaimReport> {
        let zero = qr(0, 1);
        if self.params.t_hi <= zero {
            return Err(Error::InvalidInterval(
                "claim 3 looks right of 0; interval must extend past it".into(),
            ));
        }
        let (lifted_base, lifted_dir) = self.lifted()?;
        let curve = compute_curve(&lifted_base, &lifted_dir, &zero, &self.params.t_hi)?;
        let first_slope = curve.segments()[0].slope.clone();
        let tau_star = curve
            .breakpoints()
            .first()
            .cloned()
            .unwrap_or_else(|| self.params.t_hi.clone());
        let (_, _, upper_base) = self.interval_at(&zero)?;
        let mut checks = Vec::new();
        for (i, frac) in [qr(1, 4), qr(1, 2), qr(3, 4)].into_iter().enumerate() {
            let tau = tau_star.clone() * frac;
            let (_, _, upper_shifted) = self.interval_at(&tau)?;
            let mut witness = String::new();
            let _ = write!(
                witness,
                "tau={} sup_tau={} first_slope={}",
                format_rational(&tau),
                format_rational(&upper_shifted),
                format_rational(&first_slope)
            );
            checks.push(CheckRecord::new(
                format!("constant_before_first_breakpoint[{i}]"),
                witness,
                upper_shifted == first_slope,
            ));
        }
        let witness = format!(
            "limit_from_right={} sup0={}",
            format_rational(&first_slope),
            format_rational(&upper_base)
        );
        checks.push(CheckRecord::new(
            "limit_bounded_by_base_supremum",
            witness,
            first_slope <= upper_base,
        ));
        let mut params = self.params.describe();
        params.insert("first_breakpoint".into(), format_rational(&tau_star));
        Ok(ClaimReport::assemble(
            "3",
            "supremum of direction-averages upper semicontinuous from the right",
            self,
            &self.direction_name,
            params,
            checks,
        ))
    }

    /// Differentiability at `t` iff the direction-average interval is
    /// degenerate, with matching derivative value.
    pub fn verify_claim4(&self, ts: &[Rational]) -> Result<ClaimReport> {
        let curve = self.curve()?;
        let mut checks = Vec::new();
        for (i, t) in ts.iter().enumerate() {
            let differentiable = curve.is_differentiable_at(t)?;
            let (left, right) = curve.one_sided_derivatives(t)?;
            let (_, int_lo, int_hi) = self.interval_at(t)?;
            let degenerate = int_lo == int_hi;
            let mut witness = String::new();
            let _ = write!(
                witness,
                "t={} dleft={} dright={} interval=[{},{}]",
                format_rational(t),
                format_rational(&left),
                format_rational(&right),
                format_rational(&int_lo),
                format_rational(&int_hi)
            );
            checks.push(CheckRecord::new(
                format!("differentiable_iff_degenerate[{i}]"),
                witness.clone(),
                differentiable == degenerate,
            ));
            if differentiable {
                checks.push(CheckRecord::new(
                    format!("derivative_equals_average[{i}]"),
                    witness,
                    left == int_lo && right == int_hi,
                ));
            }
        }
        let params = self.params.describe();
        Ok(ClaimReport::assemble(
            "4",
            "differentiability iff one shared direction-average, with equal value",
            self,
            &self.direction_name,
            params,
            checks,
        ))
    }

    /// Sampled interior parameters plus every breakpoint — the default
    /// probe set for pointwise claims.
    pub fn default_ts(&self) -> Result<Vec<Rational>> {
        let curve = self.curve()?;
        let mut ts = self.sample_open_ts(self.params.samples);
        ts.extend(curve.breakpoints().iter().cloned());
        ts.sort();
        ts.dedup();
        Ok(ts)
    }

    /// The diameter of the direction-average set vanishes exactly off the
    /// breakpoints and equals the derivative jump everywhere.
    pub fn verify_diameter(&self, ts: &[Rational]) -> Result<ClaimReport> {
        let curve = self.curve()?;
        let mut checks = Vec::new();
        for (i, t) in ts.iter().enumerate() {
            let (left, right) = curve.one_sided_derivatives(t)?;
            let (_, int_lo, int_hi) = self.interval_at(t)?;
            let diameter = int_hi.clone() - int_lo.clone();
            let jump = right.clone() - left.clone();
            let at_breakpoint = curve.breakpoints().contains(t);
            let mut witness = String::new();
            let _ = write!(
                witness,
                "t={} diameter={} slope_jump={} at_breakpoint={}",
                format_rational(t),
                format_rational(&diameter),
                format_rational(&jump),
                at_breakpoint
            );
            checks.push(CheckRecord::new(
                format!("diameter_equals_slope_jump[{i}]"),
                witness.clone(),
                diameter == jump,
            ));
            let positivity = if at_breakpoint {
                diameter > qr(0, 1)
            } else {
                diameter == qr(0, 1)
            };
            checks.push(CheckRecord::new(
                format!("positive_exactly_at_breakpoints[{i}]"),
                witness,
                positivity,
            ));
        }
        let mut params = self.params.describe();
        params.insert(
            "breakpoints".into(),
            curve.breakpoints().iter().map(format_rational).collect::<Vec<_>>().join(","),
        );
        Ok(ClaimReport::assemble(
            "diam",
            "direction-average diameter vanishes off breakpoints, jumps at them",
            self,
            &self.direction_name,
            params,
            checks,
        ))
    }
}

/// Which claims `verify` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimSelector {
    All,
    One(u8),
    Diameter,
}

impl std::str::FromStr for ClaimSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ClaimSelector::All),
            "1" => Ok(ClaimSelector::One(1)),
            "2" => Ok(ClaimSelector::One(2)),
            "3" => Ok(ClaimSelector::One(3)),
            "4" => Ok(ClaimSelector::One(4)),
            "diam" => Ok(ClaimSelector::Diameter),
            other => Err(Error::Format(format!(
                "unknown claim {other:?}: expected all, 1, 2, 3, 4 or diam"
            ))),
        }
    }
}

/// Verification run over a whole document: selected claims for the base
/// potential against each direction, plus any declared expectations.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyDocument {
    pub system: String,
    pub base: String,
    pub directions: Vec<String>,
    pub reports: Vec<ClaimReport>,
    pub overall_pass: bool,
}

/// Resolves the direction list: explicit names, or every potential other
/// than the base (name order).
pub fn resolve_directions(
    doc: &SystemDocument,
    base_name: &str,
    explicit: &[String],
) -> Result<Vec<String>> {
    doc.potential(base_name)?;
    if explicit.is_empty() {
        let all: Vec<String> =
            doc.potentials.keys().filter(|n| n.as_str() != base_name).cloned().collect();
        if all.is_empty() {
            return Err(Error::Format(format!(
                "document has no direction potentials besides {base_name:?}"
            )));
        }
        Ok(all)
    } else {
        for name in explicit {
            doc.potential(name)?;
        }
        Ok(explicit.to_vec())
    }
}

/// Runs the selected claims on `doc` for one base against each direction.
pub fn verify_document(
    doc: &SystemDocument,
    system_name: &str,
    base_name: &str,
    direction_names: &[String],
    selector: ClaimSelector,
    params: &VerifyParams,
) -> Result<VerifyDocument> {
    let directions = resolve_directions(doc, base_name, direction_names)?;
    let base = doc.potential(base_name)?;
    let mut reports = Vec::new();
    if !doc.expected_beta.is_empty() {
        reports.push(check_expectations(doc, system_name, base_name, params)?);
    }
    for direction_name in &directions {
        let direction = doc.potential(direction_name)?;
        let setup = ClaimSetup::new(
            &doc.system,
            system_name,
            (base_name, base),
            (direction_name, direction),
            params.clone(),
        )?;
        let run_one = |id: u8| -> Result<ClaimReport> {
            match id {
                1 => setup.verify_claim1(),
                2 => setup.verify_claim2(&setup.default_taus()),
                3 => setup.verify_claim3(),
                4 => setup.verify_claim4(&setup.default_ts()?),
                _ => unreachable!("selector is validated"),
            }
        };
        match selector {
            ClaimSelector::All => {
                for id in 1..=4 {
                    reports.push(run_one(id)?);
                }
                reports.push(setup.verify_diameter(&setup.default_ts()?)?);
            }
            ClaimSelector::One(id) => reports.push(run_one(id)?),
            ClaimSelector::Diameter => {
                reports.push(setup.verify_diameter(&setup.default_ts()?)?)
            }
        }
    }
    let overall_pass = reports.iter().all(|r| r.overall_pass);
    Ok(VerifyDocument {
        system: system_name.into(),
        base: base_name.into(),
        directions,
        reports,
        overall_pass,
    })
}

/// Re-checks the document's declared exact maxima. A tampered declaration
/// yields a failing check with the computed value as witness.
fn check_expectations(
    doc: &SystemDocument,
    system_name: &str,
    base_name: &str,
    params: &VerifyParams,
) -> Result<ClaimReport> {
    let mut checks = Vec::new();
    for (name, declared) in &doc.expected_beta {
        let computed = beta(&doc.system.lift(doc.potential(name)?)?)?;
        let witness = format!(
            "declared={} computed={}",
            format_rational(declared),
            format_rational(&computed)
        );
        checks.push(CheckRecord::new(format!("beta[{name}]"), witness, computed == *declared));
    }
    Ok(ClaimReport {
        id: "expect".into(),
        name: "declared maxima match computed maxima".into(),
        system: system_name.into(),
        base: base_name.into(),
        direction: "-".into(),
        seed: params.seed,
        params: BTreeMap::new(),
        checks: checks.clone(),
        overall_pass: checks_pass(&checks),
    })
}

/// One sampled parameter on a line through function space.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SamplePoint {
    /// exact grid point `j / D`
    pub t: String,
    /// two-sided differentiability of the curve at `t`, decided at the
    /// measure level (degenerate direction-average interval)
    pub differentiable: bool,
    /// the maximising measure of the sampled potential is unique
    pub unique: bool,
}

/// Sampling record for one direction.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LineSample {
    pub direction: String,
    pub interval: [String; 2],
    pub samples: usize,
    pub seed: u64,
    /// non-differentiability parameters inside the sampling interval
    pub breakpoints: Vec<String>,
    pub points: Vec<SamplePoint>,
    pub breakpoint_hits: usize,
    pub differentiable_fraction: Option<String>,
    pub unique_fraction: Option<String>,
}

/// Full line-sampling report: per-direction records plus the intersection
/// summary and the exact consistency checks.
#[derive(Debug, Clone, Serialize)]
pub struct PrevalenceReport {
    pub system: String,
    pub base: String,
    pub grid_denominator: u64,
    pub seed: u64,
    pub samples: usize,
    pub lines: Vec<LineSample>,
    /// fraction of sample indices where every direction reports a unique
    /// maximising measure
    pub intersection_unique_fraction: Option<String>,
    pub consistency: ClaimReport,
    pub overall_pass: bool,
}

fn fraction(numerator: usize, denominator: usize) -> Option<String> {
    (denominator > 0).then(|| {
        format_rational(&Rational::new((numerator as i64).into(), (denominator as i64).into()))
    })
}

/// Samples the unit interval on the grid `{j / D}` (one shared sequence of
/// N draws for all directions) and records, for each direction `g` and each
/// sampled `t`, whether the maximum is differentiable at `f + t*g` in the
/// direction `g` and whether the maximising measure there is unique.
pub fn prevalence_line_experiment(
    doc: &SystemDocument,
    system_name: &str,
    base_name: &str,
    direction_names: &[String],
    samples: usize,
    grid_denominator: u64,
    seed: u64,
) -> Result<PrevalenceReport> {
    if grid_denominator == 0 {
        return Err(Error::InvalidGrid("grid denominator must be positive".into()));
    }
    let directions = resolve_directions(doc, base_name, direction_names)?;
    let base = doc.potential(base_name)?;
    let one = qr(1, 1);
    let zero = qr(0, 1);

    // one shared draw sequence: the intersection over directions is taken
    // per sample index
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<Rational> = (0..samples)
        .map(|_| grid_point(uniform_i64(&mut rng, 0, grid_denominator as i64), grid_denominator))
        .collect();

    let mut lines = Vec::new();
    let mut all_unique = vec![true; samples];
    let mut consistency_checks = Vec::new();
    for direction_name in &directions {
        let direction = doc.potential(direction_name)?;
        let (lifted_base, lifted_dir) = doc.system.lift_pair(base, direction)?;
        // widen the curve domain so kinks at 0 or 1 are interior and land in
        // the breakpoint list
        let curve = compute_curve(&lifted_base, &lifted_dir, &qr(-1, 1), &qr(2, 1))?;
        let breakpoints: Vec<Rational> = curve
            .breakpoints()
            .iter()
            .filter(|b| zero <= **b && **b <= one)
            .cloned()
            .collect();
        let mut points = Vec::new();
        let mut hits = 0usize;
        let mut differentiable_count = 0usize;
        let mut unique_count = 0usize;
        let mut mismatch: Option<String> = None;
        let mut unique_without_diff: Option<String> = None;
        for (idx, t) in ts.iter().enumerate() {
            let combined = lifted_base.combine(&lifted_dir, t)?;
            let cs = critical_structure(&combined)?;
            let interval = cs.directional_interval(&lifted_dir)?;
            let differentiable = interval.is_degenerate();
            let unique = cs.is_unique_maximising().is_unique();
            let on_breakpoint = breakpoints.contains(t);
            if on_breakpoint {
                hits += 1;
            }
            if differentiable {
                differentiable_count += 1;
            }
            if unique {
                unique_count += 1;
            } else {
                all_unique[idx] = false;
            }
            if differentiable == on_breakpoint && mismatch.is_none() {
                mismatch = Some(format!("t={}", format_rational(t)));
            }
            if unique && !differentiable && unique_without_diff.is_none() {
                unique_without_diff = Some(format!("t={}", format_rational(t)));
            }
            points.push(SamplePoint {
                t: format_rational(t),
                differentiable,
                unique,
            });
        }
        consistency_checks.push(CheckRecord::new(
            format!("differentiable_iff_off_breakpoints[{direction_name}]"),
            mismatch.clone().unwrap_or_else(|| format!("{samples} samples consistent")),
            mismatch.is_none(),
        ));
        consistency_checks.push(CheckRecord::new(
            format!("uniqueness_implies_differentiability[{direction_name}]"),
            unique_without_diff
                .clone()
                .unwrap_or_else(|| format!("{samples} samples consistent")),
            unique_without_diff.is_none(),
        ));
        lines.push(LineSample {
            direction: direction_name.clone(),
            interval: [format_rational(&zero), format_rational(&one)],
            samples,
            seed,
            breakpoints: breakpoints.iter().map(format_rational).collect(),
            points,
            breakpoint_hits: hits,
            differentiable_fraction: fraction(differentiable_count, samples),
            unique_fraction: fraction(unique_count, samples),
        });
    }

    let intersection = all_unique.iter().filter(|&&u| u).count();
    let consistency = ClaimReport {
        id: "prevalence".into(),
        name: "line sampling consistent across measure and curve levels".into(),
        system: system_name.into(),
        base: base_name.into(),
        direction: directions.join(","),
        seed,
        params: BTreeMap::from([
            ("samples".into(), samples.to_string()),
            ("grid_denominator".into(), grid_denominator.to_string()),
        ]),
        checks: consistency_checks.clone(),
        overall_pass: checks_pass(&consistency_checks),
    };
    let overall_pass = consistency.overall_pass;
    Ok(PrevalenceReport {
        system: system_name.into(),
        base: base_name.into(),
        grid_denominator,
        seed,
        samples,
        lines,
        intersection_unique_fraction: fraction(intersection, samples),
        consistency,
        overall_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_system_json;

    fn worked_doc() -> SystemDocument {
        parse_system_json(
            r#"{
                "alphabet": ["a", "b"],
                "potentials": {
                    "f": {"window": 1, "values": {"a": 1, "b": 2}},
                    "g": {"window": 1, "values": {"a": 1, "b": 0}}
                },
                "expect": {"beta": {"f": "2/1"}}
            }"#,
        )
        .unwrap()
    }

    fn setup<'a>(doc: &'a SystemDocument, params: VerifyParams) -> ClaimSetup<'a> {
        ClaimSetup::new(
            &doc.system,
            "worked",
            ("f", doc.potential("f").unwrap()),
            ("g", doc.potential("g").unwrap()),
            params,
        )
        .unwrap()
    }

    fn wide_params() -> VerifyParams {
        VerifyParams {
            samples: 40,
            t_hi: qr(3, 1),
            ..VerifyParams::default()
        }
    }

    #[test]
    fn claim1_passes_on_worked_example() {
        let doc = worked_doc();
        let report = setup(&doc, wide_params()).verify_claim1().unwrap();
        assert!(report.overall_pass);
        assert_eq!(report.checks.len(), 80);
    }

    #[test]
    fn claim1_attains_lipschitz_bound_with_equality() {
        // direction with sup norm 5 achieved on the critical loop: the
        // difference quotient attains the bound and must still pass
        let doc = parse_system_json(
            r#"{
                "alphabet": ["a", "b"],
                "potentials": {
                    "f": {"window": 1, "values": {"a": 0, "b": 0}},
                    "g": {"window": 1, "values": {"a": 5, "b": -5}}
                }
            }"#,
        )
        .unwrap();
        let s = setup(&doc, VerifyParams { samples: 25, ..VerifyParams::default() });
        assert_eq!(s.direction.sup_norm(), qr(5, 1));
        let report = s.verify_claim1().unwrap();
        assert!(report.overall_pass);
        // beta(f + tg) = 5t on [0,1]: every quotient equals the bound
        assert_eq!(s.beta_at(&qr(1, 1)).unwrap(), qr(5, 1));
    }

    #[test]
    fn claim2_worked_example_values() {
        let doc = worked_doc();
        let s = setup(&doc, wide_params());
        let report = s.verify_claim2(&[qr(2, 1)]).unwrap();
        assert!(report.overall_pass);
        // the frozen sandwich at step 2: 0 <= 1/2 <= 1
        assert!(report.checks[0].witness.contains("sup0=0/1"));
        assert!(report.checks[0].witness.contains("quotient=1/2"));
        assert!(report.checks[0].witness.contains("sup_tau=1/1"));
        // inside the flat first segment everything collapses to equality
        let flat = s.verify_claim2(&[qr(1, 2)]).unwrap();
        assert!(flat.overall_pass);
        assert!(flat.checks[0].witness.contains("quotient=0/1"));
        assert!(flat.checks[0].witness.contains("sup_tau=0/1"));
    }

    #[test]
    fn claim2_rejects_nonpositive_steps() {
        let doc = worked_doc();
        let s = setup(&doc, wide_params());
        assert!(s.verify_claim2(&[qr(-1, 1)]).is_err());
        assert!(s.verify_claim2(&[qr(0, 1)]).is_err());
    }

    #[test]
    fn claim3_at_base_and_at_breakpoint() {
        let doc = worked_doc();
        let s = setup(&doc, wide_params());
        let report = s.verify_claim3().unwrap();
        assert!(report.overall_pass);
        assert_eq!(report.params["first_breakpoint"], "1/1");

        // base placed at the kink: f' = f + 1*g ties both loops
        let shifted = doc
            .potential("f")
            .unwrap()
            .combine(doc.potential("g").unwrap(), &qr(1, 1), &doc.system)
            .unwrap();
        let s2 = ClaimSetup::new(
            &doc.system,
            "worked-at-kink",
            ("f+g", &shifted),
            ("g", doc.potential("g").unwrap()),
            wide_params(),
        )
        .unwrap();
        let report = s2.verify_claim3().unwrap();
        assert!(report.overall_pass, "equality case must pass: {report:?}");
        let last = report.checks.last().unwrap();
        assert!(last.witness.contains("limit_from_right=1/1"));
        assert!(last.witness.contains("sup0=1/1"));
    }

    #[test]
    fn claim4_and_diameter_on_worked_example() {
        let doc = worked_doc();
        let s = setup(&doc, wide_params());
        let ts = s.default_ts().unwrap();
        assert!(ts.contains(&qr(1, 1)), "breakpoint is probed");
        let report = s.verify_claim4(&ts).unwrap();
        assert!(report.overall_pass);
        let diam = s.verify_diameter(&ts).unwrap();
        assert!(diam.overall_pass);
        assert_eq!(diam.params["breakpoints"], "1/1");
    }

    #[test]
    fn zero_direction_everything_trivial() {
        let doc = parse_system_json(
            r#"{
                "alphabet": ["a", "b"],
                "potentials": {
                    "f": {"window": 1, "values": {"a": 1, "b": 2}},
                    "z": {"window": 1, "values": {"a": 0, "b": 0}}
                }
            }"#,
        )
        .unwrap();
        let s = ClaimSetup::new(
            &doc.system,
            "flat",
            ("f", doc.potential("f").unwrap()),
            ("z", doc.potential("z").unwrap()),
            VerifyParams { samples: 10, ..VerifyParams::default() },
        )
        .unwrap();
        assert!(s.verify_claim1().unwrap().overall_pass);
        assert!(s.verify_claim2(&[qr(1, 2), qr(2, 1)]).unwrap().overall_pass);
        assert!(s.verify_claim3().unwrap().overall_pass);
        let ts = s.default_ts().unwrap();
        assert!(s.verify_claim4(&ts).unwrap().overall_pass);
        assert!(s.verify_diameter(&ts).unwrap().overall_pass);
    }

    #[test]
    fn verify_document_runs_all_claims_and_expectations() {
        let doc = worked_doc();
        let result = verify_document(
            &doc,
            "worked",
            "f",
            &[],
            ClaimSelector::All,
            &VerifyParams { samples: 15, t_hi: qr(3, 1), ..VerifyParams::default() },
        )
        .unwrap();
        assert!(result.overall_pass);
        // expect + claims 1-4 + diam for the single direction g
        assert_eq!(result.reports.len(), 6);
        assert_eq!(result.reports[0].id, "expect");
    }

    #[test]
    fn tampered_expectation_fails_with_witness() {
        let mut doc = worked_doc();
        doc.expected_beta.insert("f".into(), qr(5, 2));
        let result = verify_document(
            &doc,
            "tampered",
            "f",
            &[],
            ClaimSelector::One(1),
            &VerifyParams { samples: 3, ..VerifyParams::default() },
        )
        .unwrap();
        assert!(!result.overall_pass);
        let expect = &result.reports[0];
        assert!(!expect.overall_pass);
        assert!(expect.checks[0].witness.contains("declared=5/2"));
        assert!(expect.checks[0].witness.contains("computed=2/1"));
    }

    #[test]
    fn reports_are_deterministic_given_seed() {
        let doc = worked_doc();
        let run = || {
            let result = verify_document(
                &doc,
                "worked",
                "f",
                &[],
                ClaimSelector::All,
                &VerifyParams { samples: 8, t_hi: qr(3, 1), ..VerifyParams::default() },
            )
            .unwrap();
            serde_json::to_string_pretty(&result).unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn prevalence_on_worked_example() {
        let doc = worked_doc();
        let report =
            prevalence_line_experiment(&doc, "worked", "f", &[], 200, 10007, 0).unwrap();
        assert!(report.overall_pass);
        assert_eq!(report.lines.len(), 1);
        let line = &report.lines[0];
        // the only kink on [0,1] sits at t = 1, reachable only as j = D
        assert_eq!(line.breakpoints, vec!["1/1".to_string()]);
        let expected = fraction(report.samples - line.breakpoint_hits, report.samples);
        assert_eq!(line.differentiable_fraction, expected);
        // replay is byte-identical
        let again = prevalence_line_experiment(&doc, "worked", "f", &[], 200, 10007, 0).unwrap();
        assert_eq!(
            serde_json::to_string_pretty(&report).unwrap(),
            serde_json::to_string_pretty(&again).unwrap()
        );
    }

    #[test]
    fn prevalence_with_zero_samples_is_a_valid_report() {
        let doc = worked_doc();
        let report = prevalence_line_experiment(&doc, "worked", "f", &[], 0, 10007, 0).unwrap();
        assert!(report.overall_pass);
        assert!(report.lines[0].points.is_empty());
        assert_eq!(report.lines[0].differentiable_fraction, None);
        assert_eq!(report.intersection_unique_fraction, None);
    }

    #[test]
    fn prevalence_rejects_zero_denominator() {
        let doc = worked_doc();
        assert!(matches!(
            prevalence_line_experiment(&doc, "worked", "f", &[], 10, 0, 0),
            Err(Error::InvalidGrid(_))
        ));
    }
}
