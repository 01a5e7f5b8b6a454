//! Point sets that contain a non-zero of every class member whose sup norm
//! exceeds `eps`, one construction per regime, and an empirical check of
//! that property.

use rayon::prelude::*;

use crate::combin::{binomial, lex_subsets};
use crate::error::{domain, usage, Error, Result};
use crate::model::{
    factorial, sample_above, FactorKind, Oracle, Regime, SmoothnessClass, UnivariateFactor,
};
use crate::pointsets::{
    ceil_count, claimed_net, diagonal_set, larcher_size, low_dispersion_set, PointSet,
    PointsetMode, Provenance, MATERIALIZE_MAX,
};

/// `L(g) = min(1/r, (|g|_inf / M)^(1/r))`: every factor has a zero-free
/// interval of this length.
pub fn empty_interval_length(g: &UnivariateFactor, class: &SmoothnessClass) -> f64 {
    let r = class.r() as f64;
    (1.0 / r).min((g.sup_norm() / class.m()).powf(1.0 / r))
}

/// `C_delta = M (1 + 2 delta)^r / (2^r r!)`, the largest sup norm of a factor
/// with `r` zeros in `[1/2 - delta, 1/2 + delta]`.
pub fn c_delta(r: u32, m: f64, delta: f64) -> f64 {
    m * (1.0 + 2.0 * delta).powi(r as i32) / (2f64.powi(r as i32) * factorial(r))
}

/// `delta = min(1/2, (B - 1)/4)` with `B = 2 (r!/M)^(1/r)`.
pub fn choose_delta(r: u32, m: f64) -> Result<f64> {
    let large = 2f64.powi(r as i32) * factorial(r);
    if !(m > 0.0 && m < large) {
        return domain(format!(
            "M = {m} leaves no admissible delta; need M < 2^r r! = {large}"
        ));
    }
    let b = 2.0 * (factorial(r) / m).powf(1.0 / r as f64);
    Ok(0.5f64.min((b - 1.0) / 4.0))
}

/// Largest `k` in `0..=d` with `c^k > eps`.
pub fn pseudo_dimension_of(c: f64, d: usize, eps: f64) -> usize {
    if c >= 1.0 {
        return d;
    }
    let formula = (eps.ln() / c.ln()).ceil() - 1.0;
    let mut k = if formula.is_finite() {
        formula.clamp(0.0, d as f64) as usize
    } else {
        0
    };
    while k < d && c.powi(k as i32 + 1) > eps {
        k += 1;
    }
    while k > 0 && c.powi(k as i32) <= eps {
        k -= 1;
    }
    k
}

/// Pseudo-dimension `d_0` for `C_delta(r, M, delta)`.
pub fn pseudo_dimension(r: u32, m: f64, d: usize, eps: f64, delta: f64) -> usize {
    pseudo_dimension_of(c_delta(r, m, delta), d, eps)
}

/// Number of net points for a set of dispersion `eps^(1/r)/2`, following
/// the bound `ceil(16 d eps^(-1/r) ln(66 eps^(-1/r)))`.
pub fn small_base_size(d: usize, eps: f64, r: u32) -> f64 {
    let inv = eps.powf(-1.0 / r as f64);
    ceil_count(16.0 * d as f64 * inv * (66.0 * inv).ln())
}

/// Regime-specific parameters of a detector.
#[derive(Clone, Debug, PartialEq)]
pub struct DetectorParams {
    pub regime: Regime,
    pub rho: f64,
    pub delta: Option<f64>,
    pub c_delta: Option<f64>,
    pub d0: Option<usize>,
    pub gamma: Option<f64>,
    /// Dispersion asked of the low-dispersion component.
    pub target_dispersion: f64,
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return usage(format!("eps must lie in (0, 1), got {eps}"));
    }
    Ok(())
}

impl DetectorParams {
    /// Parameters of the `regime` construction for `class` at accuracy `eps`.
    /// `delta` overrides the default choice in the moderate construction.
    pub fn new(
        class: &SmoothnessClass,
        eps: f64,
        regime: Regime,
        delta: Option<f64>,
    ) -> Result<Self> {
        check_eps(eps)?;
        let (r, m, d) = (class.r(), class.m(), class.d());
        let root = eps.powf(1.0 / r as f64);
        let mut params = DetectorParams {
            regime,
            rho: class.rho(),
            delta: None,
            c_delta: None,
            d0: None,
            gamma: None,
            target_dispersion: 0.0,
        };
        match regime {
            Regime::Large => params.target_dispersion = root / class.rho_pow(d),
            Regime::Moderate => {
                let delta = match delta {
                    Some(v) if v > 0.0 && v <= 0.5 => v,
                    Some(v) => return usage(format!("delta must lie in (0, 1/2], got {v}")),
                    None => choose_delta(r, m)?,
                };
                let c = c_delta(r, m, delta);
                if c >= 1.0 {
                    return domain(format!("C_delta = {c} is not below 1 for delta = {delta}"));
                }
                let d0 = pseudo_dimension_of(c, d, eps);
                params.delta = Some(delta);
                params.c_delta = Some(c);
                params.d0 = Some(d0);
                params.target_dispersion = root / class.rho_pow(d0);
            }
            Regime::Small => {
                params.gamma = Some((1.0 - 2f64.powf(-1.0 / d as f64)) * root);
                params.target_dispersion = root / 2.0;
            }
        }
        Ok(params)
    }

    /// `key=value` pairs describing the parameters.
    pub fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("rho", self.rho.to_string()),
            ("target", self.target_dispersion.to_string()),
        ];
        if let Some(v) = self.delta {
            out.push(("delta", v.to_string()));
        }
        if let Some(v) = self.c_delta {
            out.push(("c_delta", v.to_string()));
        }
        if let Some(v) = self.d0 {
            out.push(("d0", v.to_string()));
        }
        if let Some(v) = self.gamma {
            out.push(("gamma", v.to_string()));
        }
        out
    }
}

/// Construction switches shared by the three detectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectorOptions {
    pub mode: PointsetMode,
    /// Build a construction outside its own regime.
    pub force: bool,
    /// Drop repeated points from the moderate union.
    pub dedup: bool,
    /// Override of the moderate `delta`.
    pub delta: Option<f64>,
}

impl Default for DetectorOptions {
    fn default() -> Self {
        DetectorOptions {
            mode: PointsetMode::Verified,
            force: false,
            dedup: false,
            delta: None,
        }
    }
}

impl DetectorOptions {
    pub fn with_mode(mode: PointsetMode) -> Self {
        DetectorOptions {
            mode,
            ..Default::default()
        }
    }
}

fn check_regime(class: &SmoothnessClass, want: Regime, opts: &DetectorOptions) -> Result<()> {
    if !opts.force && class.regime() != want {
        return domain(format!(
            "M = {} with r = {} is in the {} regime, not {}",
            class.m(),
            class.r(),
            class.regime(),
            want
        ));
    }
    Ok(())
}

fn provenance(regime: Regime, params: &DetectorParams, opts: &DetectorOptions) -> Provenance {
    let mut p = Provenance::new(format!("detector-{}", regime.as_str().to_ascii_lowercase()))
        .with("mode", opts.mode.as_str());
    for (k, v) in params.pairs() {
        p = p.with(k, v);
    }
    p
}

/// Any set with dispersion at most `rho^(-d) eps^(1/r)`. Valid for every `M`.
pub fn detector_large(
    class: &SmoothnessClass,
    eps: f64,
    opts: &DetectorOptions,
) -> Result<PointSet> {
    let params = DetectorParams::new(class, eps, Regime::Large, None)?;
    let set = low_dispersion_set(params.target_dispersion, class.d(), opts.mode)?;
    Ok(set.with_provenance(provenance(Regime::Large, &params, opts)))
}

/// The union over `d_0`-subsets `J` of the points that follow a
/// low-dispersion set on `J` and a diagonal set around `1/2` elsewhere.
/// Subsets run in lexicographic order; within a subset the low-dispersion
/// points form the outer loop.
pub fn detector_moderate(
    class: &SmoothnessClass,
    eps: f64,
    opts: &DetectorOptions,
) -> Result<PointSet> {
    check_regime(class, Regime::Moderate, opts)?;
    let params = DetectorParams::new(class, eps, Regime::Moderate, opts.delta)?;
    let (r, d) = (class.r() as usize, class.d());
    let d0 = params.d0.unwrap();
    let delta = params.delta.unwrap();

    let p1 = if d0 == 0 {
        None
    } else {
        Some(low_dispersion_set(params.target_dispersion, d0, opts.mode)?)
    };
    let n1 = p1.as_ref().map_or(1, PointSet::len);
    let diagonal: Vec<f64> = if d0 == d {
        vec![0.0]
    } else {
        let p2 = diagonal_set((r - 1) * (d - d0) + 1, 0.5, delta, d - d0)?;
        p2.iter().map(|x| x[0]).collect()
    };
    let total = binomial(d, d0) * n1 as f64 * diagonal.len() as f64;
    if total > MATERIALIZE_MAX as f64 {
        return Err(Error::Resource(format!(
            "moderate detector would hold {total} points; the cap is {MATERIALIZE_MAX}"
        )));
    }

    let mut coords = Vec::with_capacity(total as usize * d);
    let mut point = vec![0.0; d];
    for subset in lex_subsets(d, d0) {
        let mut in_subset = vec![false; d];
        for &j in &subset {
            in_subset[j] = true;
        }
        for a in 0..n1 {
            if let Some(p1) = &p1 {
                for (&j, &x) in subset.iter().zip(p1.point(a)) {
                    point[j] = x;
                }
            }
            for &t in &diagonal {
                for (j, c) in point.iter_mut().enumerate() {
                    if !in_subset[j] {
                        *c = t;
                    }
                }
                coords.extend_from_slice(&point);
            }
        }
    }
    let mut set =
        PointSet::new(d, coords)?.with_provenance(provenance(Regime::Moderate, &params, opts));
    if opts.dedup {
        set = set.deduplicated();
    }
    Ok(set)
}

/// Copies of a low-dispersion set shrunk by `1 - gamma` and shifted along
/// the diagonal by `gamma j / ((r-1) d)`, `j = 0..=(r-1) d`. For `r = 1` only
/// the unshifted copy is used.
pub fn detector_small(
    class: &SmoothnessClass,
    eps: f64,
    opts: &DetectorOptions,
) -> Result<PointSet> {
    check_regime(class, Regime::Small, opts)?;
    let params = DetectorParams::new(class, eps, Regime::Small, None)?;
    let (r, d) = (class.r() as usize, class.d());
    let gamma = params.gamma.unwrap();
    let target = params.target_dispersion;
    let p0 = match opts.mode {
        PointsetMode::Verified => low_dispersion_set(target, d, opts.mode)?,
        PointsetMode::Formula => {
            claimed_net(small_base_size(d, eps, class.r()), d, target, "small-net")?
        }
    };
    let shifts = (r - 1) * d;
    let total = (shifts + 1) as f64 * p0.len() as f64;
    if total > MATERIALIZE_MAX as f64 {
        return Err(Error::Resource(format!(
            "small detector would hold {total} points; the cap is {MATERIALIZE_MAX}"
        )));
    }
    let mut coords = Vec::with_capacity(total as usize * d);
    for x in p0.iter() {
        for j in 0..=shifts {
            let shift = if shifts == 0 {
                0.0
            } else {
                gamma * j as f64 / shifts as f64
            };
            coords.extend(x.iter().map(|&c| ((1.0 - gamma) * c + shift).min(1.0)));
        }
    }
    Ok(PointSet::new(d, coords)?.with_provenance(provenance(Regime::Small, &params, opts)))
}

/// A detector together with what it was built for.
#[derive(Clone, Debug)]
pub struct Detector {
    pub class: SmoothnessClass,
    pub eps: f64,
    pub params: DetectorParams,
    pub mode: PointsetMode,
    pub points: PointSet,
}

impl Detector {
    /// Builds the construction of `regime`, or of the class's own regime.
    /// An explicit regime implies `force`.
    pub fn build(
        class: &SmoothnessClass,
        eps: f64,
        regime: Option<Regime>,
        opts: &DetectorOptions,
    ) -> Result<Detector> {
        let mut opts = *opts;
        let regime = match regime {
            Some(reg) => {
                opts.force = true;
                reg
            }
            None => class.regime(),
        };
        let points = match regime {
            Regime::Large => detector_large(class, eps, &opts)?,
            Regime::Moderate => detector_moderate(class, eps, &opts)?,
            Regime::Small => detector_small(class, eps, &opts)?,
        };
        let delta = if regime == Regime::Moderate {
            opts.delta
        } else {
            None
        };
        Ok(Detector {
            class: *class,
            eps,
            params: DetectorParams::new(class, eps, regime, delta)?,
            mode: opts.mode,
            points,
        })
    }

    /// `regime=.. r=.. M=.. d=.. eps=.. params={k=v, ..}`
    pub fn header(&self) -> String {
        let mut pairs: Vec<String> = self
            .params
            .pairs()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        pairs.push(format!("mode={}", self.mode.as_str()));
        format!(
            "regime={} r={} M={} d={} eps={} params={{{}}}",
            self.params.regime,
            self.class.r(),
            self.class.m(),
            self.class.d(),
            self.eps,
            pairs.join(", ")
        )
    }

    pub fn to_text(&self) -> String {
        self.points.to_text(&[self.header()])
    }
}

/// Cardinality of the formula-mode detector, computed without building it.
pub fn formula_detector_size(
    class: &SmoothnessClass,
    eps: f64,
    regime: Regime,
    delta: Option<f64>,
) -> Result<f64> {
    let params = DetectorParams::new(class, eps, regime, delta)?;
    let (r, d) = (class.r() as usize, class.d());
    Ok(match regime {
        Regime::Large => larcher_size(params.target_dispersion, d),
        Regime::Moderate => {
            let d0 = params.d0.unwrap();
            let n1 = if d0 == 0 {
                1.0
            } else {
                larcher_size(params.target_dispersion, d0)
            };
            binomial(d, d0) * n1 * ((r - 1) * (d - d0) + 1) as f64
        }
        Regime::Small => ((r - 1) * d + 1) as f64 * small_base_size(d, eps, class.r()),
    })
}

/// Result of scanning a point set for a non-zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Search {
    /// Index and value of the first point where `|f| > threshold`.
    pub hit: Option<(usize, f64)>,
    pub evaluations: u64,
}

/// Scans `p` in order and stops at the first point with `f(x) != 0`.
pub fn find_nonzero<O: Oracle + ?Sized>(p: &PointSet, f: &O) -> Result<Search> {
    find_nonzero_above(p, f, 0.0)
}

/// As [`find_nonzero`], with the zero test replaced by `|f(x)| > threshold`.
pub fn find_nonzero_above<O: Oracle + ?Sized>(
    p: &PointSet,
    f: &O,
    threshold: f64,
) -> Result<Search> {
    if p.d() != f.dim() {
        return usage(format!(
            "point set dimension {} does not match oracle dimension {}",
            p.d(),
            f.dim()
        ));
    }
    let mut evaluations = 0;
    for (i, x) in p.iter().enumerate() {
        evaluations += 1;
        let v = f.eval(x);
        if v.abs() > threshold {
            return Ok(Search {
                hit: Some((i, v)),
                evaluations,
            });
        }
    }
    Ok(Search {
        hit: None,
        evaluations,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectorReport {
    pub trials: usize,
    /// Trials that produced a function with norm above `eps`.
    pub tested: usize,
    /// Trial indices whose function the point set missed.
    pub failures: Vec<usize>,
}

impl DetectorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Draws `trials` class members with norm above `eps` (trial `i` uses the
/// stream `(seed, i)`) and records those on which `p` sees only zeros.
pub fn is_detector_empirical(
    p: &PointSet,
    class: &SmoothnessClass,
    eps: f64,
    trials: usize,
    seed: u64,
    kind: FactorKind,
) -> Result<DetectorReport> {
    if trials == 0 {
        return usage("at least one trial is required");
    }
    if p.d() != class.d() {
        return usage("point set and class dimensions differ");
    }
    let outcomes: Vec<Option<bool>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            sample_above(class, eps, kind, seed, &[i as u64]).map(|f| {
                find_nonzero(p, &f)
                    .map(|s| s.hit.is_some())
                    .unwrap_or(false)
            })
        })
        .collect();
    Ok(DetectorReport {
        trials,
        tested: outcomes.iter().filter(|o| o.is_some()).count(),
        failures: outcomes
            .iter()
            .enumerate()
            .filter(|(_, o)| **o == Some(false))
            .map(|(i, _)| i)
            .collect(),
    })
}
