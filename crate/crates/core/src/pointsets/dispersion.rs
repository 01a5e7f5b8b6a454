//! Exact dispersion: the largest volume of an open axis-parallel box in the
//! unit cube that contains no point of the set.
//!
//! A largest empty box either spans the full height of the last coordinate,
//! in which case it is a largest empty box of the projected set, or its
//! lower or upper face rests on a point. The second case is handled by a
//! sweep upwards from each point (and from each point of the set mirrored in
//! the last coordinate) that tracks the maximal empty cross-sections
//! containing the pivot's projection.

use super::PointSet;
use crate::error::{Error, Result};

/// Dimensions the exact algorithm accepts.
pub const HARD_MAX_DIM: usize = 6;

/// Dimensions in which verified mode runs the exact algorithm.
pub const VERIFY_MAX_DIM: usize = 4;

const MAX_SECTION: usize = HARD_MAX_DIM - 1;

#[derive(Clone, Copy, Debug)]
struct Section {
    lo: [f64; MAX_SECTION],
    hi: [f64; MAX_SECTION],
}

impl Section {
    fn unit() -> Self {
        Section {
            lo: [0.0; MAX_SECTION],
            hi: [1.0; MAX_SECTION],
        }
    }

    fn area(&self, k: usize) -> f64 {
        (0..k).map(|j| self.hi[j] - self.lo[j]).product()
    }

    fn strictly_contains(&self, q: &[f64]) -> bool {
        q.iter()
            .enumerate()
            .all(|(j, &c)| self.lo[j] < c && c < self.hi[j])
    }

    fn within(&self, other: &Section, k: usize) -> bool {
        (0..k).all(|j| other.lo[j] <= self.lo[j] && self.hi[j] <= other.hi[j])
    }
}

fn check(p: &PointSet) -> Result<()> {
    if p.d() > HARD_MAX_DIM {
        return Err(Error::Resource(format!(
            "exact dispersion is limited to d <= {HARD_MAX_DIM}, got {}",
            p.d()
        )));
    }
    Ok(())
}

/// Exact dispersion of `p`.
pub fn dispersion_exact(p: &PointSet) -> Result<f64> {
    check(p)?;
    Ok(largest_empty(p.coords(), p.d(), f64::INFINITY))
}

/// Whether the dispersion of `p` is at most `target`; stops as soon as an
/// empty box larger than the target turns up.
pub fn dispersion_at_most(p: &PointSet, target: f64) -> Result<bool> {
    check(p)?;
    Ok(largest_empty(p.coords(), p.d(), target) <= target)
}

/// Largest empty-box volume, or any value above `stop` once one is found.
fn largest_empty(coords: &[f64], d: usize, stop: f64) -> f64 {
    if coords.is_empty() {
        return 1.0;
    }
    if d == 1 {
        let mut xs = coords.to_vec();
        xs.sort_by(f64::total_cmp);
        let mut prev = 0.0;
        let mut gap = 0.0f64;
        for x in xs.into_iter().chain(std::iter::once(1.0)) {
            gap = gap.max(x - prev);
            prev = x;
        }
        return gap;
    }
    let k = d - 1;
    let projected: Vec<f64> = coords
        .chunks_exact(d)
        .flat_map(|p| p[..k].iter().copied())
        .collect();
    let mut best = largest_empty(&projected, k, stop);
    for flip in [false, true] {
        if best > stop {
            break;
        }
        sweep(coords, d, flip, &mut best, stop);
    }
    best
}

fn sweep(coords: &[f64], d: usize, flip: bool, best: &mut f64, stop: f64) {
    let k = d - 1;
    let n = coords.len() / d;
    let height = |i: usize| {
        let z = coords[i * d + k];
        if flip {
            1.0 - z
        } else {
            z
        }
    };
    let section = |i: usize| &coords[i * d..i * d + k];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| height(a).total_cmp(&height(b)));

    let mut state: Vec<Section> = Vec::new();
    let mut children: Vec<Section> = Vec::new();
    for (pos, &a) in order.iter().enumerate() {
        let za = height(a);
        let room = 1.0 - za;
        if room <= *best {
            break;
        }
        let pa = section(a);
        if pa.iter().any(|&c| c <= 0.0 || c >= 1.0) {
            continue;
        }
        state.clear();
        state.push(Section::unit());
        let mut j = pos + 1;
        while j < n && height(order[j]) <= za {
            j += 1;
        }
        while j < n && !state.is_empty() {
            let zq = height(order[j]);
            let mut end = j;
            while end < n && height(order[end]) == zq {
                end += 1;
            }
            let group = &order[j..end];
            let reach = zq - za;
            for s in &state {
                if group.iter().any(|&q| s.strictly_contains(section(q))) {
                    *best = best.max(s.area(k) * reach);
                }
            }
            if *best > stop {
                return;
            }
            let min_area = *best / room;
            for &q in group {
                let pq = section(q);
                children.clear();
                state.retain(|s| {
                    if !s.strictly_contains(pq) {
                        return s.area(k) > min_area;
                    }
                    for dim in 0..k {
                        let mut c = *s;
                        if pq[dim] > pa[dim] {
                            c.hi[dim] = pq[dim];
                        } else if pq[dim] < pa[dim] {
                            c.lo[dim] = pq[dim];
                        } else {
                            continue;
                        }
                        if c.area(k) > min_area {
                            children.push(c);
                        }
                    }
                    false
                });
                let kept = state.len();
                for (ci, c) in children.iter().enumerate() {
                    let dominated = state[..kept].iter().any(|s| c.within(s, k))
                        || children.iter().enumerate().any(|(oi, o)| {
                            oi != ci && c.within(o, k) && (!o.within(c, k) || oi < ci)
                        });
                    if !dominated {
                        state.push(*c);
                    }
                }
            }
            j = end;
        }
        for s in &state {
            *best = best.max(s.area(k) * room);
        }
        if *best > stop {
            return;
        }
    }
}
