//! Fooling functions behind the lower bounds: families of class members
//! with pairwise disjoint supports, the pigeonhole evasion of a point set,
//! and a witness that runs the recovery algorithm against `f` and `-f`.

use crate::combin::{binomial, colex_rank, colex_unrank};
use crate::detectors::pseudo_dimension_of;
use crate::error::{domain, usage, Error, Result};
use crate::interpolation::Approximant;
use crate::model::{
    factorial, sup_error_estimate, Oracle, PiecewisePoly, RankOneFunction, Regime, SmoothnessClass,
    Tractability, UnivariateFactor,
};
use crate::pointsets::PointSet;
use crate::poly::Poly;
use crate::recover::Recovery;

/// Largest dimension for which family members are indexed by `u64`.
pub const MAX_FAMILY_DIM: usize = 62;

/// `c (x - cut)^r` left of `cut` and zero right of it, or the mirror image.
fn truncated_power(cut: f64, c: f64, r: u32, left: bool) -> Result<UnivariateFactor> {
    let power = |shift: f64| Poly::from_roots(&vec![shift; r as usize]).scaled(c);
    let pieces = if left {
        vec![power(cut), Poly::zero()]
    } else {
        vec![Poly::zero(), power(0.0)]
    };
    UnivariateFactor::new(PiecewisePoly::new(vec![0.0, cut, 1.0], pieces)?, r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoolingFamily {
    regime: Regime,
    d: usize,
    /// Number of coordinates carrying `h` in every member.
    h_count: usize,
    cut: f64,
    g: UnivariateFactor,
    h: UnivariateFactor,
    size: u64,
    guaranteed_norm: f64,
}

impl FoolingFamily {
    /// `2^d` members built from `g = 2^r (x - 1/2)^r` on `[0, 1/2]` and
    /// `h = 2^r (x - 1/2)^r` on `[1/2, 1]`, indexed by the binary digits of
    /// the index (coordinate 1 most significant, `g = 0`, `h = 1`).
    pub fn large(class: &SmoothnessClass) -> Result<Self> {
        if class.regime() != Regime::Large {
            return domain(format!("M = {} is below 2^r r!", class.m()));
        }
        let d = class.d();
        if d > MAX_FAMILY_DIM {
            return usage(format!("family dimension is limited to {MAX_FAMILY_DIM}"));
        }
        let c = 2f64.powi(class.r() as i32);
        Ok(FoolingFamily {
            regime: Regime::Large,
            d,
            h_count: 0,
            cut: 0.5,
            g: truncated_power(0.5, c, class.r(), true)?,
            h: truncated_power(0.5, c, class.r(), false)?,
            size: 1u64 << d,
            guaranteed_norm: 1.0,
        })
    }

    /// `binom(d, k)` members built from `g = M (x - x0)^r / r!` on `[0, x0]`
    /// and `h` the same polynomial on `[x0, 1]`, `x0 = (r!/M)^(1/r)`. Each
    /// member puts `h` on `k` coordinates and `g` on the others, where `k` is
    /// the largest count in `0..=d` with `|h(1)|^k > eps`. Members are indexed
    /// by the colexicographic rank of the `g`-coordinates.
    pub fn moderate(class: &SmoothnessClass, eps: f64) -> Result<Self> {
        if class.regime() != Regime::Moderate {
            return domain(format!(
                "M = {} with r = {} is not in the moderate range",
                class.m(),
                class.r()
            ));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return usage(format!("eps must lie in (0, 1), got {eps}"));
        }
        let d = class.d();
        if d > MAX_FAMILY_DIM {
            return usage(format!("family dimension is limited to {MAX_FAMILY_DIM}"));
        }
        let (r, m) = (class.r(), class.m());
        let x0 = moderate_cut(r, m);
        let h1 = moderate_h1(r, m);
        let k = pseudo_dimension_of(h1, d, eps);
        let c = m / factorial(r);
        Ok(FoolingFamily {
            regime: Regime::Moderate,
            d,
            h_count: k,
            cut: x0,
            g: truncated_power(x0, c, r, true)?,
            h: truncated_power(x0, c, r, false)?,
            size: binomial(d, k) as u64,
            guaranteed_norm: h1.powi(k as i32),
        })
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Exact sup norm shared by all members.
    pub fn guaranteed_norm(&self) -> f64 {
        self.guaranteed_norm
    }

    /// Coordinates per member carrying `h` (moderate family only).
    pub fn h_count(&self) -> usize {
        self.h_count
    }

    /// Where `g` stops and `h` starts.
    pub fn cut(&self) -> f64 {
        self.cut
    }

    /// For each coordinate, whether member `index` uses `h` there.
    pub fn pattern(&self, index: u64) -> Result<Vec<bool>> {
        if index >= self.size {
            return usage(format!("member {index} of a family of {}", self.size));
        }
        Ok(match self.regime {
            Regime::Moderate => {
                let mut uses_h = vec![true; self.d];
                for j in colex_unrank(index, self.d, self.d - self.h_count) {
                    uses_h[j] = false;
                }
                uses_h
            }
            _ => (0..self.d)
                .map(|i| (index >> (self.d - 1 - i)) & 1 == 1)
                .collect(),
        })
    }

    pub fn member(&self, index: u64) -> Result<RankOneFunction> {
        let factors = self
            .pattern(index)?
            .into_iter()
            .map(|h| if h { self.h.clone() } else { self.g.clone() })
            .collect();
        RankOneFunction::new(factors)
    }

    /// The only member that can be non-zero at `x`, if any.
    pub fn member_at(&self, x: &[f64]) -> Option<u64> {
        if x.iter().any(|&c| c == self.cut) {
            return None;
        }
        match self.regime {
            Regime::Moderate => {
                let g_coords: Vec<usize> = (0..self.d).filter(|&i| x[i] < self.cut).collect();
                (g_coords.len() == self.d - self.h_count).then(|| colex_rank(&g_coords) as u64)
            }
            _ => Some(
                x.iter()
                    .fold(0u64, |acc, &c| (acc << 1) | u64::from(c > self.cut)),
            ),
        }
    }

    /// One point in the support of each member, in member order.
    pub fn hitting_set(&self) -> Result<PointSet> {
        let (lo, hi) = (self.cut / 2.0, (1.0 + self.cut) / 2.0);
        let mut coords = Vec::with_capacity(self.size as usize * self.d);
        for index in 0..self.size {
            coords.extend(
                self.pattern(index)?
                    .into_iter()
                    .map(|h| if h { hi } else { lo }),
            );
        }
        PointSet::new(self.d, coords)
    }
}

/// `x0 = (r!/M)^(1/r)`.
pub fn moderate_cut(r: u32, m: f64) -> f64 {
    (factorial(r) / m).powf(1.0 / r as f64)
}

/// `|h(1)| = M (1 - x0)^r / r!`.
pub fn moderate_h1(r: u32, m: f64) -> f64 {
    m * (1.0 - moderate_cut(r, m)).powi(r as i32) / factorial(r)
}

/// `kappa = ceil(ln(1/eps) / ln(1/|h(1)|)) - 1`.
pub fn moderate_kappa(r: u32, m: f64, eps: f64) -> f64 {
    ((1.0 / eps).ln() / (1.0 / moderate_h1(r, m)).ln()).ceil() - 1.0
}

/// Smallest member index whose support misses every point, or `None` when
/// every member is hit.
pub fn evade(points: &PointSet, family: &FoolingFamily) -> Result<Option<u64>> {
    if points.d() != family.d() {
        return usage("point set and family dimensions differ");
    }
    let mut hit: Vec<u64> = points.iter().filter_map(|x| family.member_at(x)).collect();
    hit.sort_unstable();
    hit.dedup();
    let mut candidate = 0u64;
    for h in hit {
        if h != candidate {
            break;
        }
        candidate += 1;
    }
    Ok((candidate < family.size()).then_some(candidate))
}

/// A class member vanishing on a given point set.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallFooling {
    pub function: RankOneFunction,
    pub norm: f64,
    /// Coordinates carrying the non-constant factors.
    pub coordinates: Vec<usize>,
}

/// Largest number of points [`fooling_function_small`] accepts.
pub fn small_fooling_capacity(r: u32, d: usize) -> usize {
    if r >= 2 {
        d
    } else if d >= 2 {
        d.ilog2() as usize
    } else {
        0
    }
}

/// A member of norm 1 (`r >= 2`) or `M^2/4` (`r = 1`) that vanishes on every
/// point. For `r >= 2` the factor on coordinate `i` is a linear function
/// vanishing at the `i`-th coordinate of the `i`-th point. For `r = 1` two
/// coordinates carry `M (x - 1/2)` restricted to a half of `[0, 1]`; the pair
/// and the halves are found by exhaustive search. In one dimension no point
/// is allowed and a single such factor (norm `M/2`) is returned.
pub fn fooling_function_small(class: &SmoothnessClass, points: &PointSet) -> Result<SmallFooling> {
    if class.regime() != Regime::Small {
        return domain(format!(
            "M = {} exceeds r! = {}",
            class.m(),
            factorial(class.r())
        ));
    }
    let (r, d) = (class.r(), class.d());
    if points.d() != d {
        return usage("point set and class dimensions differ");
    }
    let capacity = small_fooling_capacity(r, d);
    if points.len() > capacity {
        return domain(format!(
            "too many points to fool: {} points, at most {capacity} in d = {d} for r = {r}",
            points.len()
        ));
    }
    let one = UnivariateFactor::constant(1.0, r)?;
    let mut factors = vec![one; d];
    if r >= 2 {
        let mut coordinates = Vec::new();
        for (i, x) in points.iter().enumerate() {
            let a = x[i];
            let s = 1.0 / a.max(1.0 - a);
            factors[i] = UnivariateFactor::polynomial(vec![-a * s, s], r)?;
            coordinates.push(i);
        }
        let function = RankOneFunction::new(factors)?;
        return Ok(SmallFooling {
            norm: function.sup_norm(),
            function,
            coordinates,
        });
    }

    if d == 1 {
        // no points to avoid
        let function = RankOneFunction::new(vec![half_linear(class.m(), true)?])?;
        return Ok(SmallFooling {
            norm: function.sup_norm(),
            function,
            coordinates: vec![0],
        });
    }

    // bit t of lower[i] / upper[i]: point t lies below / above 1/2 in coordinate i
    let n = points.len();
    let mut lower = vec![0u64; d];
    let mut upper = vec![0u64; d];
    for (t, x) in points.iter().enumerate() {
        for i in 0..d {
            if x[i] < 0.5 {
                lower[i] |= 1 << t;
            } else if x[i] > 0.5 {
                upper[i] |= 1 << t;
            }
        }
    }
    debug_assert!(n < 64);
    let side = |i: usize, up: bool| if up { upper[i] } else { lower[i] };
    for j in 0..d {
        for l in j + 1..d {
            for (up_j, up_l) in [(false, true), (true, false), (false, false), (true, true)] {
                if side(j, up_j) & side(l, up_l) != 0 {
                    continue;
                }
                let m = class.m();
                factors[j] = half_linear(m, up_j)?;
                factors[l] = half_linear(m, up_l)?;
                let function = RankOneFunction::new(factors)?;
                return Ok(SmallFooling {
                    norm: function.sup_norm(),
                    function,
                    coordinates: vec![j, l],
                });
            }
        }
    }
    Err(Error::Domain(format!(
        "no coordinate pair evades {n} points in d = {d}; the existence argument failed"
    )))
}

/// `M (x - 1/2)` on one half of `[0, 1]`, zero on the other.
fn half_linear(m: f64, upper: bool) -> Result<UnivariateFactor> {
    let pieces = if upper {
        vec![Poly::zero(), Poly::new(vec![0.0, m])]
    } else {
        vec![Poly::new(vec![-0.5 * m, m]), Poly::zero()]
    };
    UnivariateFactor::new(PiecewisePoly::new(vec![0.0, 0.5, 1.0], pieces)?, 1)
}

/// Tractability class of the recovery problem for `(r, M)`.
pub fn classify_tractability(r: u32, m: f64) -> Tractability {
    match Regime::of(r, m) {
        Regime::Large => Tractability::Curse,
        Regime::Moderate => Tractability::QuasiPolynomial,
        Regime::Small => Tractability::Polynomial,
    }
}

/// Outcome of running a recovery on a fooling member and its negation.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub member: u64,
    /// Both runs returned the zero function.
    pub outputs_agree: bool,
    /// `max(|f - A(f)|, |-f - A(-f)|)` from the grid estimator.
    pub error: f64,
}

/// Runs the recovery on `f` and `-f` and measures the larger error. The
/// returned member index is `0`.
pub fn witness_function(
    recovery: &Recovery,
    f: &RankOneFunction,
    estimate_budget: u64,
) -> Result<Witness> {
    let neg = f.negated();
    let (a_plus, _) = recovery.run(f)?;
    let (a_minus, _) = recovery.run(&neg)?;
    let zero = Approximant::zero(f.dim());
    let budget = estimate_budget.max(1 << f.dim());
    let error =
        sup_error_estimate(f, &a_plus, budget)?.max(sup_error_estimate(&neg, &a_minus, budget)?);
    Ok(Witness {
        member: 0,
        outputs_agree: a_plus == zero && a_minus == zero,
        error,
    })
}

/// Finds a member that the recovery's detector cannot see and measures the
/// error the recovery makes on it and on its negation.
pub fn witness(
    recovery: &Recovery,
    family: &FoolingFamily,
    estimate_budget: u64,
) -> Result<Option<Witness>> {
    let Some(member) = evade(recovery.points(), family)? else {
        return Ok(None);
    };
    let w = witness_function(recovery, &family.member(member)?, estimate_budget)?;
    Ok(Some(Witness { member, ..w }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Oracle;

    fn class(r: u32, m: f64, d: usize) -> SmoothnessClass {
        SmoothnessClass::new(r, m, d).unwrap()
    }

    #[test]
    fn large_family_basics() {
        let fam = FoolingFamily::large(&class(1, 2.0, 3)).unwrap();
        assert_eq!(fam.size(), 8);
        let f = fam.member(0).unwrap();
        assert_eq!(f.factors()[0].eval(0.0), -1.0);
        assert_eq!(f.sup_norm(), 1.0);
        let fam = FoolingFamily::large(&class(1, 2.0, 2)).unwrap();
        // index 1 = (g, h)
        let gh = fam.member(1).unwrap();
        assert_eq!(gh.eval(&[0.25, 0.75]), -0.25);
        assert_eq!(fam.member(2).unwrap().eval(&[0.25, 0.75]), 0.0);
        assert_eq!(fam.member_at(&[0.25, 0.75]), Some(1));
        assert_eq!(fam.member_at(&[0.5, 0.75]), None);
    }

    #[test]
    fn moderate_family_basics() {
        assert!((moderate_cut(1, 1.5) - 2.0 / 3.0).abs() < 1e-15);
        assert!((moderate_h1(1, 1.5) - 0.5).abs() < 1e-15);
        assert_eq!(moderate_kappa(1, 1.5, 0.1), 3.0);
        let fam = FoolingFamily::moderate(&class(1, 1.5, 5), 0.1).unwrap();
        assert_eq!(fam.size(), 10);
        assert_eq!(fam.h_count(), 3);
        // eps = 0.3 gives k = 1: one g and one h, member 0 has g first
        let fam = FoolingFamily::moderate(&class(1, 1.5, 2), 0.3).unwrap();
        assert_eq!(fam.h_count(), 1);
        let f = fam.member(0).unwrap();
        assert!((f.eval(&[0.5, 1.0]) + 0.125).abs() < 1e-15);
    }

    #[test]
    fn evade_examples() {
        let fam = FoolingFamily::large(&class(1, 2.0, 2)).unwrap();
        assert_eq!(evade(&PointSet::empty(2).unwrap(), &fam).unwrap(), Some(0));
        let p = PointSet::from_points(2, [[0.25, 0.25], [0.75, 0.75]]).unwrap();
        assert_eq!(evade(&p, &fam).unwrap(), Some(1));
        assert_eq!(evade(&fam.hitting_set().unwrap(), &fam).unwrap(), None);
    }

    #[test]
    fn small_linear_fooling() {
        let c = class(2, 1.0, 3);
        let p = PointSet::from_points(3, [[0.2, 0.3, 0.4]]).unwrap();
        let fool = fooling_function_small(&c, &p).unwrap();
        assert_eq!(fool.norm, 1.0);
        assert_eq!(fool.function.eval(p.point(0)), 0.0);
        assert_eq!(fool.coordinates, vec![0]);
        let c = class(2, 1.0, 1);
        let p = PointSet::from_points(1, [[0.5], [0.7]]).unwrap();
        assert!(matches!(
            fooling_function_small(&c, &p),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn small_pair_fooling() {
        let c = class(1, 1.0, 2);
        let fool = fooling_function_small(&c, &PointSet::empty(2).unwrap()).unwrap();
        assert_eq!(fool.norm, 0.25);
        assert_eq!(fool.coordinates, vec![0, 1]);
        assert_eq!(fool.function.eval(&[0.0, 1.0]), -0.25);
    }

    #[test]
    fn tractability() {
        assert_eq!(classify_tractability(1, 2.0), Tractability::Curse);
        assert_eq!(classify_tractability(1, 1.0), Tractability::Polynomial);
        assert_eq!(classify_tractability(2, 3.0), Tractability::QuasiPolynomial);
    }
}
