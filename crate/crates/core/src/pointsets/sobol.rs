use std::sync::OnceLock;

use super::{PointSet, Provenance};
use crate::error::{usage, Result};

/// Dimensions covered by the bundled direction-number table.
pub const MAX_NET_DIM: usize = 32;

const BITS: usize = 32;

static TABLE: &str = include_str!("../../data/new-joe-kuo-6.21201-d32.txt");

fn direction_numbers() -> &'static [[u32; BITS]] {
    static DIRS: OnceLock<Vec<[u32; BITS]>> = OnceLock::new();
    DIRS.get_or_init(|| {
        let mut dirs = Vec::with_capacity(MAX_NET_DIM);
        let mut first = [0u32; BITS];
        for (k, v) in first.iter_mut().enumerate() {
            *v = 1 << (BITS - 1 - k);
        }
        dirs.push(first);
        for line in TABLE.lines().filter(|l| !l.starts_with('#')).skip(1) {
            let nums: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().expect("direction table holds integers"))
                .collect();
            let (s, a, m) = (nums[1] as usize, nums[2], &nums[3..]);
            assert_eq!(m.len(), s);
            let mut v = [0u32; BITS];
            for k in 0..BITS {
                v[k] = if k < s {
                    m[k] << (BITS - 1 - k)
                } else {
                    let mut x = v[k - s] ^ (v[k - s] >> s);
                    for j in 1..s {
                        if (a >> (s - 1 - j)) & 1 == 1 {
                            x ^= v[k - j];
                        }
                    }
                    x
                };
            }
            dirs.push(v);
        }
        assert_eq!(dirs.len(), MAX_NET_DIM);
        dirs
    })
}

/// First `n` points of the base-2 Sobol sequence in `[0,1)^d`, in Gray-code
/// order, from the Joe–Kuo direction numbers.
pub fn digital_net(n: usize, d: usize) -> Result<PointSet> {
    if d == 0 || d > MAX_NET_DIM {
        return usage(format!(
            "digital net dimension must be in 1..={MAX_NET_DIM}, got {d}"
        ));
    }
    if n > (1usize << 31) {
        return usage(format!("digital net prefix of {n} points exceeds 2^31"));
    }
    let dirs = &direction_numbers()[..d];
    let scale = 1.0 / (1u64 << BITS) as f64;
    let mut state = vec![0u32; d];
    let mut coords = Vec::with_capacity(n * d);
    for i in 0..n {
        if i > 0 {
            let c = (i - 1).trailing_ones() as usize;
            for (x, v) in state.iter_mut().zip(dirs) {
                *x ^= v[c];
            }
        }
        coords.extend(state.iter().map(|&x| x as f64 * scale));
    }
    let prov = Provenance::new("sobol-joe-kuo-6.21201").with("n", n);
    Ok(PointSet::new(d, coords)?.with_provenance(prov))
}
