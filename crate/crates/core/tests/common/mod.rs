//! Brute-force reference implementations. Nothing here calls into the
//! library's algorithms; inputs and outputs are plain integers.

#![allow(dead_code)]

use rand::Rng;

/// Regular iff some nonempty subset of the coefficients sums to zero.
pub fn regular_brute(a: &[i64]) -> bool {
    (1u32..1 << a.len()).any(|mask| {
        a.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c as i128)
            .sum::<i128>()
            == 0
    })
}

/// Every solution in `[1, n]^k`, in lexicographic order.
pub fn box_solutions(a: &[i64], n: u64) -> Vec<Vec<u64>> {
    let k = a.len();
    let mut out = Vec::new();
    let mut x = vec![1u64; k];
    loop {
        let s: i128 = a.iter().zip(&x).map(|(&c, &v)| c as i128 * v as i128).sum();
        if s == 0 {
            out.push(x.clone());
        }
        let mut t = k;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            if x[t] < n {
                x[t] += 1;
                break;
            }
            x[t] = 1;
        }
    }
}

fn value_masks(a: &[i64], n: u64, distinct: bool) -> Vec<u64> {
    let mut masks: Vec<u64> = box_solutions(a, n)
        .into_iter()
        .filter(|s| !distinct || s.iter().enumerate().all(|(i, v)| !s[..i].contains(v)))
        .map(|s| s.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// Whether some 2-coloring of `[1, n]` (`n <= 63`) has no monochromatic
/// solution. Colorings are bitmasks; a solution is monochromatic when its
/// value set lies entirely inside or entirely outside the mask.
pub fn two_coloring_avoids(a: &[i64], n: u64, distinct: bool) -> bool {
    assert!(n <= 24, "2^{n} colorings is too many");
    let masks = value_masks(a, n, distinct);
    (0u64..1 << n).any(|c| masks.iter().all(|&s| c & s != s && c & s != 0))
}

/// Whether some `r`-coloring of `[1, n]` avoids, by enumerating all `r^n`.
pub fn coloring_avoids(a: &[i64], r: u32, n: u64) -> bool {
    let sols = box_solutions(a, n);
    let mut col = vec![0u32; n as usize];
    loop {
        let mono = sols
            .iter()
            .any(|s| s.iter().all(|&v| col[v as usize - 1] == col[s[0] as usize - 1]));
        if !mono {
            return true;
        }
        let mut t = 0;
        loop {
            if t == col.len() {
                return false;
            }
            col[t] += 1;
            if col[t] < r {
                break;
            }
            col[t] = 0;
            t += 1;
        }
    }
}

/// Smallest `N <= max_n` with no avoiding 2-coloring.
pub fn two_color_rado_brute(a: &[i64], max_n: u64) -> Option<u64> {
    (1..=max_n).find(|&n| !two_coloring_avoids(a, n, false))
}

/// Monochromatic progression of `2h + 1` terms in `[1, bound]`, minimizing
/// `(step, center)`. `colors[x - 1]` is the color of `x`.
pub fn ap_brute(colors: &[u32], h: u64, bound: u64) -> Option<(u64, u64)> {
    for d in 1..=bound {
        for a in 1..=bound {
            if a <= h * d || a + h * d > bound {
                continue;
            }
            let c = colors[(a - h * d - 1) as usize];
            if (0..=2 * h).all(|t| colors[(a - h * d + t * d - 1) as usize] == c) {
                return Some((d, a));
            }
        }
    }
    None
}

pub fn random_colors(rng: &mut impl Rng, r: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..r)).collect()
}

/// A coloring `x -> pattern[x mod p]` with a random pattern.
pub fn periodic_colors(rng: &mut impl Rng, r: u32, p: usize, n: usize) -> Vec<u32> {
    let pattern = random_colors(rng, r, p);
    (1..=n).map(|x| pattern[x % p]).collect()
}

/// Random nonzero coefficients in `[-max, max]`.
pub fn random_coeffs(rng: &mut impl Rng, len: usize, max: i64) -> Vec<i64> {
    (0..len)
        .map(|_| loop {
            let c = rng.gen_range(-max..=max);
            if c != 0 {
                break c;
            }
        })
        .collect()
}

pub fn residual(a: &[i64], x: &[u64]) -> i128 {
    a.iter().zip(x).map(|(&c, &v)| c as i128 * v as i128).sum()
}
