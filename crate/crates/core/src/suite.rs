//! Seeded property suites over random families.
//!
//! Trial `i` is seeded with the `i`-th output of a generator seeded by the
//! configuration seed. Each trial splits three streams, one for the convex
//! family, one for the coconvex family and one for sample points, and every
//! stream is consumed the same way whichever properties are selected.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::corollary::{
    first_reversed_minkowski, generalized_brunn_minkowski, reversed_brunn_minkowski,
    second_reversed_minkowski,
};
use crate::error::{Error, Result};
use crate::family::{
    af_form, co_af_form, minkowski_combination, mixed_volume, volume_polynomial, CoconvexFamily,
    ConvexFamily,
};
use crate::form::{cs_check, reversed_cs_check, SymmetricForm};
use crate::generate::{gen_coconvex_family, gen_convex_family, gen_form_pair, gen_positive_pair};
use crate::lift::{lift, verify_identity_q, verify_identity_v, verify_signature_argument};
use crate::polytope::{convex_hull, dd_convert, dd_convert_back};
use crate::rng::SplitMix64;
use crate::scalar::{self, Scalar};
use crate::volume::volume;

pub const MAX_DIM: usize = 4;
pub const MAX_GENERATORS: usize = 4;
pub const FORM_PAIRS: usize = 10;
pub const COROLLARY_PAIRS: usize = 2;
pub const LIFT_SAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "af")]
    Af,
    #[serde(rename = "co_af")]
    CoAf,
    #[serde(rename = "rbm")]
    Rbm,
    #[serde(rename = "grbm")]
    Grbm,
    #[serde(rename = "mink1")]
    Mink1,
    #[serde(rename = "mink2")]
    Mink2,
    #[serde(rename = "lift_V")]
    LiftV,
    #[serde(rename = "lift_Q")]
    LiftQ,
    #[serde(rename = "lift_sig")]
    LiftSig,
    #[serde(rename = "kernel")]
    Kernel,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Af,
        Property::CoAf,
        Property::Rbm,
        Property::Grbm,
        Property::Mink1,
        Property::Mink2,
        Property::LiftV,
        Property::LiftQ,
        Property::LiftSig,
        Property::Kernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Af => "af",
            Property::CoAf => "co_af",
            Property::Rbm => "rbm",
            Property::Grbm => "grbm",
            Property::Mink1 => "mink1",
            Property::Mink2 => "mink2",
            Property::LiftV => "lift_V",
            Property::LiftQ => "lift_Q",
            Property::LiftSig => "lift_sig",
            Property::Kernel => "kernel",
        }
    }

    fn convex(self) -> bool {
        matches!(self, Property::Af | Property::Kernel)
    }
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown property {s:?}")))
    }
}

fn default_bound() -> u32 {
    3
}

fn default_suite() -> Vec<Property> {
    Property::ALL.to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub n_generators: usize,
    pub n_trials: usize,
    pub seed: u64,
    #[serde(default = "default_bound")]
    pub coordinate_bound: u32,
    #[serde(default = "default_suite")]
    pub suite: Vec<Property>,
}

impl ExperimentConfig {
    pub fn new(dim: usize, n_generators: usize, n_trials: usize, seed: u64) -> Self {
        Self {
            dim,
            n_generators,
            n_trials,
            seed,
            coordinate_bound: default_bound(),
            suite: default_suite(),
        }
    }

    pub fn with_suite(mut self, suite: Vec<Property>) -> Self {
        self.suite = suite;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_DIM).contains(&self.dim) {
            return Err(Error::InvalidConfig(format!(
                "dim must be in 2..={MAX_DIM}, got {}",
                self.dim
            )));
        }
        if !(1..=MAX_GENERATORS).contains(&self.n_generators) {
            return Err(Error::InvalidConfig(format!(
                "n_generators must be in 1..={MAX_GENERATORS}, got {}",
                self.n_generators
            )));
        }
        if self.n_trials == 0 {
            return Err(Error::InvalidConfig("n_trials must be at least 1".into()));
        }
        if self.coordinate_bound == 0 {
            return Err(Error::InvalidConfig(
                "coordinate_bound must be positive".into(),
            ));
        }
        if self.suite.is_empty() {
            return Err(Error::InvalidConfig("suite is empty".into()));
        }
        Ok(())
    }

    fn properties(&self) -> Vec<Property> {
        let mut s = self.suite.clone();
        s.sort();
        s.dedup();
        s
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
}

/// A failing instance. `family` deserializes to the generated family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub property: Property,
    pub family: Value,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub config: ExperimentConfig,
    pub version: String,
    pub properties: BTreeMap<String, Counts>,
    pub counterexamples: Vec<Counterexample>,
    pub wall_time_ms: u64,
}

impl TrialReport {
    pub fn all_passed(&self) -> bool {
        self.properties.values().all(|c| c.fail == 0)
    }

    /// Pretty JSON with the wall time zeroed, for reproducibility checks.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_ms = 0;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

/// Hooks for exercising failure paths.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, Default)]
pub struct Tamper {
    /// Negates the first diagonal entry of each coconvex form.
    pub negate_co_form: bool,
}

pub fn run_suite(cfg: &ExperimentConfig) -> Result<TrialReport> {
    run_suite_with(cfg, Tamper::default())
}

#[doc(hidden)]
pub fn run_suite_with(cfg: &ExperimentConfig, tamper: Tamper) -> Result<TrialReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut seeder = SplitMix64::new(cfg.seed);
    let seeds: Vec<u64> = (0..cfg.n_trials).map(|_| seeder.next_u64()).collect();
    let props = cfg.properties();
    let outcomes: Vec<Vec<(Property, Option<Counterexample>)>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &seed)| run_trial(cfg, &props, i, seed, tamper))
        .collect();
    let mut properties: BTreeMap<String, Counts> = props
        .iter()
        .map(|p| (p.name().to_string(), Counts::default()))
        .collect();
    let mut counterexamples = Vec::new();
    for (p, cx) in outcomes.into_iter().flatten() {
        let c = properties.get_mut(p.name()).expect("selected property");
        match cx {
            None => c.pass += 1,
            Some(cx) => {
                c.fail += 1;
                counterexamples.push(cx);
            }
        }
    }
    Ok(TrialReport {
        config: cfg.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        properties,
        counterexamples,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Sample points drawn for every trial.
#[derive(Debug, Clone)]
pub struct TrialSamples {
    pub form_pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    pub co_form_pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    pub positive_pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

impl TrialSamples {
    pub fn draw(rng: &mut SplitMix64, n: usize) -> Self {
        Self {
            form_pairs: (0..FORM_PAIRS).map(|_| gen_form_pair(rng, n)).collect(),
            co_form_pairs: (0..FORM_PAIRS).map(|_| gen_form_pair(rng, n)).collect(),
            positive_pairs: (0..COROLLARY_PAIRS)
                .map(|_| gen_positive_pair(rng, n))
                .collect(),
        }
    }
}

fn run_trial(
    cfg: &ExperimentConfig,
    props: &[Property],
    trial: usize,
    seed: u64,
    tamper: Tamper,
) -> Vec<(Property, Option<Counterexample>)> {
    let mut rng = SplitMix64::new(seed);
    let mut convex_rng = rng.split();
    let mut co_rng = rng.split();
    let mut sample_rng = rng.split();
    let (d, n, bound) = (cfg.dim, cfg.n_generators, cfg.coordinate_bound);
    let samples = TrialSamples::draw(&mut sample_rng, n);

    let need_convex = props.iter().any(|p| p.convex());
    let need_co = props.iter().any(|p| !p.convex());
    let convex = need_convex.then(|| gen_convex_family(&mut convex_rng, d, n, bound));
    let co = need_co.then(|| gen_coconvex_family(&mut co_rng, d, n, bound));
    let co_poly = match &co {
        Some(Ok(f))
            if props.iter().any(|p| {
                matches!(
                    p,
                    Property::Rbm | Property::Grbm | Property::Mink1 | Property::Mink2
                )
            }) =>
        {
            Some(crate::family::co_volume_polynomial(f))
        }
        _ => None,
    };
    let lifted = match &co {
        Some(Ok(f))
            if props
                .iter()
                .any(|p| matches!(p, Property::LiftV | Property::LiftQ | Property::LiftSig)) =>
        {
            Some(lift(f))
        }
        _ => None,
    };

    let mut out = Vec::new();
    for &p in props {
        let (family, result) = if p.convex() {
            let fam = convex.as_ref().expect("generated");
            let family = fam.as_ref().ok().map(to_value).unwrap_or(Value::Null);
            let result = fam
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|f| check_convex(p, f, &samples));
            (family, result)
        } else {
            let fam = co.as_ref().expect("generated");
            let family = fam.as_ref().ok().map(to_value).unwrap_or(Value::Null);
            let result = fam.as_ref().map_err(Clone::clone).and_then(|f| match p {
                Property::CoAf => check_co_af(f, &samples, tamper),
                Property::LiftV | Property::LiftQ | Property::LiftSig => {
                    let lf = lifted
                        .as_ref()
                        .expect("lifted")
                        .as_ref()
                        .map_err(Clone::clone)?;
                    let report = match p {
                        Property::LiftV => {
                            verify_identity_v(lf, &lf.default_samples(LIFT_SAMPLES)?)?
                        }
                        Property::LiftQ => verify_identity_q(lf)?,
                        _ => verify_signature_argument(lf)?,
                    };
                    Ok((!report.passed()).then(|| to_value(&report)))
                }
                _ => {
                    let vol = co_poly
                        .as_ref()
                        .expect("polynomial")
                        .as_ref()
                        .map_err(Clone::clone)?;
                    check_corollary(p, f, vol, &samples)
                }
            });
            (family, result)
        };
        let data = match result {
            Ok(None) => None,
            Ok(Some(data)) => Some(data),
            Err(e) => Some(json!({ "error": e.to_string() })),
        };
        let cx = data.map(|data| Counterexample {
            trial,
            seed,
            property: p,
            family,
            data,
        });
        out.push((p, cx));
    }
    out
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn fmt_vec(v: &[Scalar]) -> Vec<String> {
    v.iter().map(scalar::format).collect()
}

fn pair_value(u: &[Scalar], v: &[Scalar]) -> Value {
    json!({ "u": fmt_vec(u), "v": fmt_vec(v) })
}

fn check_convex(p: Property, fam: &ConvexFamily, samples: &TrialSamples) -> Result<Option<Value>> {
    match p {
        Property::Af => {
            let forms = af_form(fam)?;
            let sig = forms.quadratic.signature();
            if sig.pos != 1 {
                return Ok(Some(
                    json!({ "signature": sig, "quadratic": forms.quadratic }),
                ));
            }
            for (u1, u2) in &samples.form_pairs {
                if !reversed_cs_check(&forms.bilinear, u1, u2)? {
                    return Ok(Some(
                        json!({ "pair": pair_value(u1, u2), "bilinear": forms.bilinear }),
                    ));
                }
            }
            Ok(None)
        }
        Property::Kernel => check_kernel(fam, samples),
        _ => unreachable!("not a convex property"),
    }
}

fn check_kernel(fam: &ConvexFamily, samples: &TrialSamples) -> Result<Option<Value>> {
    for (i, g) in fam.generators().iter().enumerate() {
        let round = dd_convert_back(g.dim(), &dd_convert(g)?)?;
        let hull = convex_hull(g.vertices().to_vec(), Vec::new())?;
        if round != *g || hull != *g {
            return Ok(Some(
                json!({ "check": "representation round trip", "generator": i }),
            ));
        }
        let diag = vec![g.clone(); fam.dim()];
        if mixed_volume(&diag)? != volume(g)? {
            return Ok(Some(
                json!({ "check": "mixed volume diagonal", "generator": i }),
            ));
        }
    }
    let poly = volume_polynomial(fam)?;
    for (u, _) in &samples.positive_pairs {
        let direct = volume(&minkowski_combination(fam.generators(), u)?)?;
        let via = poly.eval(u)?;
        if direct != via {
            return Ok(Some(json!({
                "check": "polynomial evaluation",
                "lambda": fmt_vec(u),
                "direct": scalar::format(&direct),
                "polynomial": scalar::format(&via),
            })));
        }
    }
    Ok(None)
}

fn check_co_af(
    fam: &CoconvexFamily,
    samples: &TrialSamples,
    tamper: Tamper,
) -> Result<Option<Value>> {
    let mut b = co_af_form(fam)?.bilinear;
    if tamper.negate_co_form {
        let mut rows = b.rows().to_vec();
        rows[0][0] = -&rows[0][0];
        b = SymmetricForm::new(rows)?;
    }
    let sig = b.signature();
    if sig.neg != 0 {
        return Ok(Some(json!({ "signature": sig, "bilinear": b })));
    }
    for (u1, u2) in &samples.co_form_pairs {
        if !cs_check(&b, u1, u2)? {
            return Ok(Some(json!({ "pair": pair_value(u1, u2), "bilinear": b })));
        }
    }
    Ok(None)
}

/// Derivative directions for the generalized inequality: the first `k`
/// marked points, padded with the all-ones vector.
pub fn grbm_directions(fam: &CoconvexFamily, k: usize) -> Vec<Vec<Scalar>> {
    let ones = vec![Scalar::from_integer(1.into()); fam.n()];
    (0..k)
        .map(|i| fam.marked().get(i).cloned().unwrap_or_else(|| ones.clone()))
        .collect()
}

/// Orders `k ∈ {1, d − 2}` for the generalized inequality.
pub fn grbm_orders(d: usize) -> Vec<usize> {
    let mut ks = vec![1, d - 2];
    ks.sort();
    ks.dedup();
    ks
}

pub const RBM_LEVELS: [(i64, i64); 5] = [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)];

fn check_corollary(
    p: Property,
    fam: &CoconvexFamily,
    vol: &crate::poly::HomogeneousPolynomial,
    samples: &TrialSamples,
) -> Result<Option<Value>> {
    for (u, v) in &samples.positive_pairs {
        match p {
            Property::Rbm => {
                for (a, b) in RBM_LEVELS {
                    let t = scalar::frac(a, b);
                    if !reversed_brunn_minkowski(vol, u, v, &t)? {
                        return Ok(Some(
                            json!({ "pair": pair_value(u, v), "t": scalar::format(&t) }),
                        ));
                    }
                }
            }
            Property::Grbm => {
                for k in grbm_orders(fam.dim()) {
                    let dirs = grbm_directions(fam, k);
                    if !generalized_brunn_minkowski(vol, &dirs, u, v)? {
                        return Ok(Some(json!({ "pair": pair_value(u, v), "k": k })));
                    }
                }
            }
            Property::Mink1 => {
                if !first_reversed_minkowski(vol, u, v)? {
                    return Ok(Some(json!({ "pair": pair_value(u, v) })));
                }
            }
            Property::Mink2 => {
                if !second_reversed_minkowski(vol, u, v)? {
                    return Ok(Some(json!({ "pair": pair_value(u, v) })));
                }
            }
            _ => unreachable!("not a corollary"),
        }
    }
    if vol.is_zero() || vol.eval(&samples.positive_pairs[0].0)?.is_negative() {
        return Ok(Some(json!({ "check": "volume polynomial positivity" })));
    }
    Ok(None)
}
