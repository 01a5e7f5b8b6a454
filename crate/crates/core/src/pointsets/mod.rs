//! Finite point sets in the unit cube.
//!
//! Point sets are stored as a flat coordinate buffer. They carry the name of
//! the generator that produced them and, optionally, the dispersion they are
//! claimed to achieve. The on-disk format is plain text:
//!
//! ```text
//! # optional comment lines
//! d n
//! x_1 ... x_d        (n lines, 17 significant digits)
//! ```

mod dispersion;
mod halton;
mod sobol;

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{usage, Error, Result};

pub use dispersion::{dispersion_at_most, dispersion_exact, HARD_MAX_DIM, VERIFY_MAX_DIM};
pub use halton::{first_primes, halton_baseline_size, HaltonSize};
pub use sobol::{digital_net, MAX_NET_DIM};

/// Largest point set the formula mode will materialize.
pub const MATERIALIZE_MAX: u64 = 1 << 22;

/// Largest point set verified mode will grow to.
pub const VERIFY_MAX_POINTS: usize = 1 << 16;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Provenance {
    pub generator: String,
    pub params: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(generator: impl Into<String>) -> Self {
        Provenance {
            generator: generator.into(),
            params: Vec::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    d: usize,
    coords: Vec<f64>,
    provenance: Provenance,
    claimed_dispersion: Option<f64>,
}

impl PointSet {
    pub fn new(d: usize, coords: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return usage("point sets need dimension at least 1");
        }
        if coords.len() % d != 0 {
            return usage(format!(
                "{} coordinates do not split into {d}-tuples",
                coords.len()
            ));
        }
        if let Some(bad) = coords.iter().find(|c| !(0.0..=1.0).contains(*c)) {
            return usage(format!("coordinate {bad} lies outside [0, 1]"));
        }
        Ok(PointSet {
            d,
            coords,
            provenance: Provenance::default(),
            claimed_dispersion: None,
        })
    }

    pub fn empty(d: usize) -> Result<Self> {
        PointSet::new(d, Vec::new())
    }

    pub fn from_points<I, P>(d: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[f64]>,
    {
        let mut coords = Vec::new();
        for p in points {
            let p = p.as_ref();
            if p.len() != d {
                return usage(format!(
                    "point of dimension {} in a {d}-dimensional set",
                    p.len()
                ));
            }
            coords.extend_from_slice(p);
        }
        PointSet::new(d, coords)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.d)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn claimed_dispersion(&self) -> Option<f64> {
        self.claimed_dispersion
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn with_claim(mut self, dispersion: f64) -> Self {
        self.claimed_dispersion = Some(dispersion);
        self
    }

    /// Appends a point; panics if it has the wrong dimension or leaves the cube.
    pub fn push(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.d);
        assert!(p.iter().all(|c| (0.0..=1.0).contains(c)));
        self.coords.extend_from_slice(p);
    }

    /// First `n` points (all of them if `n >= len`).
    pub fn truncated(&self, n: usize) -> PointSet {
        let mut out = self.clone();
        out.coords.truncate(n.min(self.len()) * self.d);
        out.claimed_dispersion = None;
        out
    }

    /// Drops repeated points (bitwise equal), keeping first occurrences.
    pub fn deduplicated(&self) -> PointSet {
        let mut seen = std::collections::HashSet::new();
        let mut coords = Vec::with_capacity(self.coords.len());
        for p in self.iter() {
            let key: Vec<u64> = p.iter().map(|c| c.to_bits()).collect();
            if seen.insert(key) {
                coords.extend_from_slice(p);
            }
        }
        PointSet {
            d: self.d,
            coords,
            provenance: self.provenance.clone(),
            claimed_dispersion: self.claimed_dispersion,
        }
    }

    /// Serializes to the text format, with `header` lines prefixed by `# `.
    pub fn to_text(&self, header: &[String]) -> String {
        let mut out = String::with_capacity(self.coords.len() * 25 + 64);
        for line in header {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{} {}", self.d, self.len());
        for p in self.iter() {
            let row: Vec<String> = p.iter().map(|&c| fmt_sig17(c)).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Parses the text format; returns the set and its comment lines.
    pub fn from_text(text: &str) -> Result<(PointSet, Vec<String>)> {
        let mut comments = Vec::new();
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| {
                let t = l.trim();
                if let Some(c) = t.strip_prefix('#') {
                    comments.push(c.trim().to_string());
                    false
                } else {
                    !t.is_empty()
                }
            })
            .collect::<Vec<_>>()
            .into_iter();
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `d n` header line".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_count = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {}: `{s}` is not a count", ln + 1)))
        };
        if fields.len() != 2 {
            return Err(Error::Parse(format!(
                "line {}: expected `d n`, found `{}`",
                ln + 1,
                header.trim()
            )));
        }
        let d = parse_count(fields[0])?;
        let n = parse_count(fields[1])?;
        if d == 0 {
            return Err(Error::Parse("dimension must be at least 1".into()));
        }
        let mut coords = Vec::with_capacity(n.saturating_mul(d).min(1 << 24));
        for _ in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {n} points, file ends early")))?;
            let before = coords.len();
            for tok in line.split_whitespace() {
                let v: f64 = tok.parse().map_err(|_| {
                    Error::Parse(format!("line {}: `{tok}` is not a number", ln + 1))
                })?;
                coords.push(v);
            }
            if coords.len() - before != d {
                return Err(Error::Parse(format!(
                    "line {}: expected {d} coordinates, found {}",
                    ln + 1,
                    coords.len() - before
                )));
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse(format!(
                "line {}: more than {n} points",
                ln + 1
            )));
        }
        let set = PointSet::new(d, coords).map_err(|e| Error::Parse(e.to_string()))?;
        Ok((set, comments))
    }

    pub fn write_to(&self, path: &Path, header: &[String]) -> Result<()> {
        std::fs::write(path, self.to_text(header))?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<(PointSet, Vec<String>)> {
        PointSet::from_text(&std::fs::read_to_string(path)?)
    }
}

/// A float with 17 significant digits, e.g. `5.0000000000000000e-1`.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `ceil(x)` that treats values within relative `1e-12` of an integer as
/// that integer, so cardinality formulas evaluated in floating point do not
/// round up an exact product.
pub fn ceil_count(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-12 * nearest.abs().max(1.0) {
        nearest
    } else {
        x.ceil()
    }
}

/// `floor(x)` with the same snapping as [`ceil_count`].
pub fn floor_count(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-12 * nearest.abs().max(1.0) {
        nearest
    } else {
        x.floor()
    }
}

/// How a low-dispersion set certifies its dispersion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointsetMode {
    /// Grow a digital net until the exact dispersion meets the target.
    Verified,
    /// Take as many net points as the published cardinality bound asks for.
    Formula,
}

impl PointsetMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PointsetMode::Verified => "verified",
            PointsetMode::Formula => "formula",
        }
    }
}

impl std::str::FromStr for PointsetMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "verified" => Ok(PointsetMode::Verified),
            "formula" => Ok(PointsetMode::Formula),
            other => usage(format!(
                "unknown mode `{other}` (expected verified|formula)"
            )),
        }
    }
}

/// Net size from Larcher's dispersion bound `2^(7d+1) / N`.
pub fn larcher_size(target: f64, d: usize) -> f64 {
    ceil_count(2f64.powi(7 * d as i32 + 1) / target)
}

fn check_target(target: f64) -> Result<()> {
    if !(target > 0.0 && target < 1.0) {
        return usage(format!(
            "target dispersion must lie in (0, 1), got {target}"
        ));
    }
    Ok(())
}

/// A digital-net prefix of size `n` carrying `target` as its claim.
pub fn claimed_net(n: f64, d: usize, target: f64, source: &str) -> Result<PointSet> {
    if n > MATERIALIZE_MAX as f64 {
        return Err(Error::Resource(format!(
            "{source} asks for {n} points in dimension {d}; the cap is {MATERIALIZE_MAX}"
        )));
    }
    let net = digital_net(n as usize, d)?;
    let prov = net
        .provenance()
        .clone()
        .with("mode", "formula")
        .with("source", source);
    Ok(net.with_provenance(prov).with_claim(target))
}

/// A point set in `[0,1]^d` whose dispersion is at most `target`.
///
/// Verified mode doubles a digital-net prefix, starting from `2d` points,
/// until the exact dispersion is at most the target. Formula mode takes the
/// Larcher cardinality and rests on that bound.
pub fn low_dispersion_set(target: f64, d: usize, mode: PointsetMode) -> Result<PointSet> {
    check_target(target)?;
    match mode {
        PointsetMode::Formula => claimed_net(larcher_size(target, d), d, target, "larcher"),
        PointsetMode::Verified => {
            if d > VERIFY_MAX_DIM {
                return Err(Error::Resource(format!(
                    "verified dispersion is limited to d <= {VERIFY_MAX_DIM}, got {d}"
                )));
            }
            let mut n = 2 * d;
            loop {
                let net = digital_net(n, d)?;
                if dispersion_at_most(&net, target)? {
                    let prov = net
                        .provenance()
                        .clone()
                        .with("mode", "verified")
                        .with("target", target);
                    return Ok(net.with_provenance(prov).with_claim(target));
                }
                n *= 2;
                if n > VERIFY_MAX_POINTS {
                    return Err(Error::Resource(format!(
                        "no net prefix up to {VERIFY_MAX_POINTS} points reaches dispersion {target} in d = {d}"
                    )));
                }
            }
        }
    }
}

/// `count` equispaced points on the main diagonal, spanning
/// `[center - halfwidth, center + halfwidth]` in every coordinate; a single
/// point sits at the center.
pub fn diagonal_set(count: usize, center: f64, halfwidth: f64, d: usize) -> Result<PointSet> {
    if count == 0 {
        return usage("a diagonal set needs at least one point");
    }
    if !(halfwidth >= 0.0) || center - halfwidth < 0.0 || center + halfwidth > 1.0 {
        return usage(format!(
            "interval [{}, {}] is not inside [0, 1]",
            center - halfwidth,
            center + halfwidth
        ));
    }
    let mut coords = Vec::with_capacity(count * d);
    for j in 0..count {
        let t = if count == 1 {
            center
        } else {
            center + halfwidth * (2.0 * j as f64 / (count - 1) as f64 - 1.0)
        };
        coords.extend(std::iter::repeat_n(t, d));
    }
    let prov = Provenance::new("diagonal")
        .with("count", count)
        .with("center", center)
        .with("halfwidth", halfwidth);
    Ok(PointSet::new(d, coords)?.with_provenance(prov))
}
