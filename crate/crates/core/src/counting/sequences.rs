//! Closed-form and brute-force companions to the walk counts: double
//! factorials, Catalan numbers, tangent numbers and the height-weighted Dyck
//! path sum.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `M_n` for `n = 0..=4`.
pub const GAME_COUNTS: [u64; 5] = [1, 2, 10, 76, 772];

/// Closed walks with interim returns for `n = 2, 3, 4`.
pub const CLOSED_WALK_COUNTS: [(usize, u64); 3] = [(2, 15), (3, 107), (4, 981)];

/// Zig-zag permutations of `{1, ..., 2n+2}` for `n = 0..=4`.
pub const TANGENT_NUMBERS: [u64; 5] = [1, 2, 16, 272, 7936];

pub const CATALAN_NUMBERS: [u64; 5] = [1, 1, 2, 5, 14];

/// `(1/18) * M_18^(1/18)` to five decimals.
pub const RATIO_AT_18: f64 = 1.09206;

/// Geometric equivalence classes of excellent Morse functions on the
/// 2-sphere with `n` saddles, `n = 0..=4`. Stored, not computed.
pub fn geometric_class_reference() -> [(usize, u64); 5] {
    [(0, 1), (1, 2), (2, 19), (3, 428), (4, 17746)]
}

/// `m!!` for odd `m >= -1`, with `(-1)!! = 1`.
///
/// # Panics
///
/// If `m` is even or below `-1`.
pub fn double_factorial(m: i64) -> BigUint {
    assert!(m >= -1 && m % 2 != 0, "double factorial of odd m >= -1, got {m}");
    let mut acc = BigUint::one();
    let mut k = m;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // C(n, i) * (n - i) / (i + 1) = C(n, i + 1), exact at every step
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Dyck paths of semilength `n + 1` touching the axis only at both ends,
/// counted by walking every such path.
pub fn count_proper_dyck_paths(n: usize) -> u64 {
    fn rec(remaining: usize, height: usize) -> u64 {
        if remaining == 0 {
            return (height == 0) as u64;
        }
        if height > remaining {
            return 0;
        }
        let mut total = rec(remaining - 1, height + 1);
        // the only permitted return to zero is the last step
        if height > 1 || (height == 1 && remaining == 1) {
            total += rec(remaining - 1, height - 1);
        }
        total
    }
    let steps = 2 * n + 2;
    // first step is forced up
    rec(steps - 1, 1)
}

/// Euler zig-zag numbers `E_0..=E_max` from the Entringer (boustrophedon) triangle.
pub fn zigzag_numbers(max: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for k in 1..=max {
        // E(k, 0) = 0, E(k, j) = E(k, j-1) + E(k-1, k-j)
        let mut next = Vec::with_capacity(k + 1);
        next.push(BigUint::zero());
        for j in 1..=k {
            let value = &next[j - 1] + &row[k - j];
            next.push(value);
        }
        out.push(next[k].clone());
        row = next;
    }
    out
}

/// `G_n^1`, the tangent number `E_{2n+1}`.
pub fn tangent_numbers(n: usize) -> BigUint {
    zigzag_numbers(2 * n + 1).swap_remove(2 * n + 1)
}

/// Whether `perm` (one-line notation, values `1..=len`) is the permutation of
/// a circle Morse function read from its global minimum: it starts at 1,
/// entries in even positions exceed both neighbours, entries in odd positions
/// are below both (neighbours taken cyclically).
pub fn is_zigzag(perm: &[usize]) -> bool {
    let len = perm.len();
    if len % 2 != 0 || perm.first() != Some(&1) {
        return false;
    }
    (0..len).all(|idx| {
        let left = perm[(idx + len - 1) % len];
        let right = perm[(idx + 1) % len];
        let value = perm[idx];
        // idx is 0-based, so an even idx is an odd (1-based) position
        if idx % 2 == 0 {
            value < left && value < right
        } else {
            value > left && value > right
        }
    })
}

/// Counts zig-zag permutations of `{1, ..., len}` by filtering all of them.
pub fn count_zigzag_permutations(len: usize) -> u64 {
    (1..=len)
        .permutations(len)
        .filter(|perm| is_zigzag(perm))
        .count() as u64
}

/// Up to this semilength the weighted Dyck sum walks every path.
pub const DYCK_BRUTE_FORCE_MAX: usize = 12;

/// Sum over Dyck paths of semilength `v` of the product of `h(s) + 1` over
/// the up-steps `s`, with `h(s)` the height of the step's lower end.
pub fn weighted_dyck_sum(v: usize) -> BigUint {
    if v <= DYCK_BRUTE_FORCE_MAX {
        weighted_dyck_sum_brute(v)
    } else {
        weighted_dyck_sum_dp(v)
    }
}

/// Path-by-path evaluation of [`weighted_dyck_sum`]. Path weights are held
/// in `u128`, which bounds `v` at 30.
pub fn weighted_dyck_sum_brute(v: usize) -> BigUint {
    assert!(v <= 30, "brute-force weighted Dyck sum is limited to v <= 30");
    fn rec(ups: usize, downs: usize, height: u128, weight: u128, total: &mut BigUint) {
        if ups == 0 && downs == 0 {
            *total += weight;
            return;
        }
        if ups > 0 {
            rec(ups - 1, downs, height + 1, weight * (height + 1), total);
        }
        if downs > ups {
            rec(ups, downs - 1, height - 1, weight, total);
        }
    }
    let mut total = BigUint::zero();
    rec(v, v, 0, 1, &mut total);
    total
}

/// [`weighted_dyck_sum`] by DP over (position, height).
pub fn weighted_dyck_sum_dp(v: usize) -> BigUint {
    let mut by_height = vec![BigUint::zero(); v + 2];
    by_height[0] = BigUint::one();
    for pos in 0..2 * v {
        let mut next = vec![BigUint::zero(); v + 2];
        let max_h = pos.min(2 * v - pos);
        for h in 0..=max_h {
            if by_height[h].is_zero() {
                continue;
            }
            if h < v {
                next[h + 1] += &by_height[h] * (h as u64 + 1);
            }
            if h > 0 {
                next[h - 1] += &by_height[h];
            }
        }
        by_height = next;
    }
    by_height.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn double_factorial_recursive(m: i64) -> BigUint {
        if m <= 1 {
            BigUint::one()
        } else {
            double_factorial_recursive(m - 2) * m as u64
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), big(1));
        assert_eq!(double_factorial(1), big(1));
        assert_eq!(double_factorial(5), big(15));
        assert_eq!(double_factorial(15), big(2_027_025));
        let expected = (1..=35u64).step_by(2).fold(BigUint::one(), |acc, k| acc * k);
        assert_eq!(double_factorial(35), expected);
        assert_eq!(double_factorial(35), double_factorial_recursive(35));
    }

    #[test]
    #[should_panic]
    fn double_factorial_rejects_even() {
        double_factorial(4);
    }

    #[test]
    fn catalan_numbers() {
        let first: Vec<BigUint> = (0..5).map(catalan).collect();
        assert_eq!(first, CATALAN_NUMBERS.map(big));
        assert_eq!(catalan(10), big(16796));
        assert_eq!(count_proper_dyck_paths(0), 1);
        for n in 0..=10 {
            assert_eq!(big(count_proper_dyck_paths(n)), catalan(n as u64), "n = {n}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), big(120));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn tangent_and_zigzag() {
        let first: Vec<BigUint> = (0..5).map(tangent_numbers).collect();
        assert_eq!(first, TANGENT_NUMBERS.map(big));
        assert_eq!(
            zigzag_numbers(7),
            [1u64, 1, 1, 2, 5, 16, 61, 272].map(big).to_vec()
        );
        assert_eq!(count_zigzag_permutations(4), 2);
        assert_eq!(count_zigzag_permutations(6), 16);
        for n in 0..=3 {
            assert_eq!(big(count_zigzag_permutations(2 * n + 2)), tangent_numbers(n));
        }
    }

    #[test]
    fn zigzag_test_cases() {
        assert!(is_zigzag(&[1, 2]));
        assert!(is_zigzag(&[1, 3, 2, 4]));
        assert!(is_zigzag(&[1, 4, 2, 3]));
        assert!(!is_zigzag(&[2, 4, 1, 3]));
        assert!(!is_zigzag(&[1, 2, 3, 4]));
        assert!(!is_zigzag(&[1, 3, 2]));
    }

    #[test]
    fn weighted_dyck_small() {
        assert_eq!(weighted_dyck_sum(0), big(1));
        assert_eq!(weighted_dyck_sum(1), big(1));
        // UUDD weighs 1*2, UDUD weighs 1*1
        assert_eq!(weighted_dyck_sum(2), big(3));
        assert_eq!(weighted_dyck_sum_brute(8), big(2_027_025));
    }

    #[test]
    fn weighted_dyck_routes_agree() {
        for v in 0..=DYCK_BRUTE_FORCE_MAX {
            assert_eq!(weighted_dyck_sum_brute(v), weighted_dyck_sum_dp(v), "v = {v}");
            assert_eq!(weighted_dyck_sum_brute(v), double_factorial(2 * v as i64 - 1));
        }
        for v in [13, 50, 200] {
            assert_eq!(weighted_dyck_sum(v), double_factorial(2 * v as i64 - 1));
        }
    }

    #[test]
    fn geometric_table() {
        let table = geometric_class_reference();
        assert_eq!(table[2], (2, 19));
        assert_eq!(table[3], (3, 428));
        assert_eq!(table[4], (4, 17746));
    }
}
