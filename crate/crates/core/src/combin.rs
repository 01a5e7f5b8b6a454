//! Binomial coefficients and subset enumeration.

/// `binom(n, k)` in floating point (exact below 2^53).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn lex_subsets(n: usize, k: usize) -> LexSubsets {
    LexSubsets {
        n,
        current: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct LexSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for LexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().unwrap();
        let k = c.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] < self.n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Rank of a sorted `k`-subset in colexicographic order.
pub fn colex_rank(subset: &[usize]) -> f64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i + 1))
        .sum()
}

/// The `k`-subset of `0..n` with colexicographic rank `rank`.
pub fn colex_unrank(mut rank: u64, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    let mut hi = n;
    for i in (0..k).rev() {
        // largest c < hi with binom(c, i + 1) <= rank
        let mut c = i;
        while c + 1 < hi && binomial(c + 1, i + 1) as u64 <= rank {
            c += 1;
        }
        rank -= binomial(c, i + 1) as u64;
        out[i] = c;
        hi = c;
    }
    out
}
