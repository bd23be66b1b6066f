//! Binomial sums used as independent oracles for the recurrences.
//!
//! Binomials with a negative top index follow the usual extension
//! `C(m, k) = (-1)^k C(k - m - 1, k)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(m, k)` for any integer `m` and `k >= 0`; zero for `k < 0`.
pub fn binom(m: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if m < 0 {
        let v = binom(k - m - 1, k);
        return if k % 2 == 0 { v } else { -v };
    }
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

fn pow_i(b: i64, e: i64) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

fn sign(e: i64) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn central(n: i64) -> BigInt {
    binom(2 * n, n)
}

/// Weight-one sequences `t(n)` for the six sporadic triples.
pub mod weight_one {
    use super::*;

    pub fn level5(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n).map(|j| binom(n, j).pow(2) * binom(n + j, j)).sum()
    }

    pub fn level6a(n: u64) -> BigInt {
        let n = n as i64;
        let mut s = BigInt::zero();
        for j in 0..=n {
            let inner: BigInt = (0..=j).map(|l| binom(j, l).pow(3)).sum();
            s += pow_i(-8, n - j) * binom(n, j) * inner;
        }
        s
    }

    pub fn level6b(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n).map(|j| binom(n, j).pow(2) * central(j)).sum()
    }

    pub fn level6c(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n).map(|j| binom(n, j).pow(3)).sum()
    }

    pub fn level8(n: u64) -> BigInt {
        let n = n as i64;
        let s: BigInt = (0..=n).map(|j| binom(n, j) * central(j) * central(n - j)).sum();
        sign(n) * s
    }

    pub fn level9(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n / 3)
            .map(|j| pow_i(-3, n - 3 * j) * binom(n, j) * binom(n - j, j) * binom(n - 2 * j, j))
            .sum()
    }
}

/// Weight-two sequences `s(n)` attached to the six sporadic triples.
pub mod weight_two {
    use super::*;

    pub fn level5(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n)
            .map(|j| sign(j + n) * binom(n, j).pow(3) * binom(4 * n - 5 * j, 3 * n))
            .sum()
    }

    pub fn level6a(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n).map(|j| (binom(n, j) * binom(n + j, j)).pow(2)).sum()
    }

    pub fn level6b(n: u64) -> BigInt {
        let n = n as i64;
        let s: BigInt = (0..=n).map(|j| binom(n, j).pow(2) * central(j) * central(n - j)).sum();
        sign(n) * s
    }

    pub fn level6c(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n / 3)
            .map(|j| {
                pow_i(-3, n - 3 * j)
                    * binom(n + j, j)
                    * binom(n, j)
                    * binom(n - j, j)
                    * binom(n - 2 * j, j)
            })
            .sum()
    }

    pub fn level8(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n).map(|j| (binom(n, j) * binom(2 * j, n)).pow(2)).sum()
    }

    pub fn level9(n: u64) -> BigInt {
        let n = n as i64;
        let mut s = BigInt::zero();
        for j in 0..=n {
            let bj = binom(n, j).pow(2);
            for l in 0..=j {
                s += &bj * binom(n, l) * binom(j, l) * binom(j + l, n);
            }
        }
        s
    }
}

/// Level sequences `T(n)` with a known binomial-sum form.
pub mod level {
    use super::*;

    pub fn level1(n: u64) -> BigInt {
        let n = n as i64;
        binom(6 * n, 3 * n) * binom(3 * n, n) * central(n)
    }

    pub fn level2(n: u64) -> BigInt {
        let n = n as i64;
        binom(4 * n, 2 * n) * central(n).pow(2)
    }

    pub fn level3(n: u64) -> BigInt {
        let n = n as i64;
        binom(3 * n, n) * central(n).pow(2)
    }

    pub fn level4(n: u64) -> BigInt {
        central(n as i64).pow(3)
    }

    /// `C(2n, n) t(n)` for a weight-one sequence `t`.
    pub fn central_times(t: fn(u64) -> BigInt, n: u64) -> BigInt {
        central(n as i64) * t(n)
    }

    pub fn level5(n: u64) -> BigInt {
        central_times(weight_one::level5, n)
    }

    pub fn level6a(n: u64) -> BigInt {
        central_times(weight_one::level6a, n)
    }

    pub fn level6b(n: u64) -> BigInt {
        central_times(weight_one::level6b, n)
    }

    pub fn level6c(n: u64) -> BigInt {
        central_times(weight_one::level6c, n)
    }

    pub fn level8(n: u64) -> BigInt {
        central_times(weight_one::level8, n)
    }

    pub fn level9(n: u64) -> BigInt {
        central_times(weight_one::level9, n)
    }

    pub fn level7(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n)
            .map(|j| binom(n, j).pow(2) * binom(2 * j, n) * binom(n + j, j))
            .sum()
    }

    pub fn level10(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n).map(|j| binom(n, j).pow(4)).sum()
    }

    pub fn level12(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n).map(|j| binom(n, j).pow(2) * central(j) * central(n - j)).sum()
    }

    pub fn level14a(n: u64) -> BigInt {
        let n = n as i64;
        let mut s = BigInt::zero();
        for k in 0..=n / 2 {
            let ck = central(k).pow(2);
            for j in 0..=k.min(n - 2 * k) {
                s += binom(n + j, 2 * j + 2 * k) * binom(2 * j + 2 * k, j + k) * &ck * binom(k, j);
            }
        }
        s
    }

    /// Second form with alternating signs.
    pub fn level14a_alt(n: u64) -> BigInt {
        let n = n as i64;
        let mut s = BigInt::zero();
        for k in 0..=n / 2 {
            for j in 0..=(n - 2 * k) {
                s += sign(n - j)
                    * binom(n + j, 2 * j + 2 * k)
                    * binom(2 * j + 2 * k, j + k)
                    * central(k)
                    * binom(j + 2 * k, k)
                    * binom(j + k, k);
            }
        }
        s
    }

    /// Third form, with powers of `-3`.
    pub fn level14a_alt2(n: u64) -> BigInt {
        let n = n as i64;
        let mut s = BigInt::zero();
        for k in 0..=n {
            for j in 0..=n {
                let e = n - j - 3 * k;
                if e < 0 {
                    continue;
                }
                s += binom(n + j - k, 2 * j + 2 * k)
                    * binom(2 * j + 2 * k, j + k)
                    * binom(j + k, k).pow(2)
                    * binom(2 * j, j + k)
                    * pow_i(-3, e);
            }
        }
        s
    }

    pub fn level18(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n)
            .map(|j| {
                sign(j) * binom(n, j) * central(j) * central(n - j) * binom(2 * n - 3 * j, n)
            })
            .sum()
    }

    pub fn level24(n: u64) -> BigInt {
        let n = n as i64;
        (0..=n / 2)
            .map(|j| binom(n, 2 * j) * central(j).pow(2) * binom(2 * n - 4 * j, n - 2 * j))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_binomial() {
        assert_eq!(binom(-1, 1), BigInt::from(-1));
        assert_eq!(binom(-2, 3), BigInt::from(-4));
        assert_eq!(binom(5, 7), BigInt::zero());
        assert_eq!(binom(10, 3), BigInt::from(120));
    }

    #[test]
    fn spot_values() {
        assert_eq!(weight_two::level6a(2), BigInt::from(73));
        assert_eq!(weight_one::level6c(3), BigInt::from(56));
        assert_eq!(level::level10(2), BigInt::from(18));
        assert_eq!(level::level24(2), BigInt::from(10));
        assert_eq!(weight_two::level5(1), BigInt::from(-5));
    }

    #[test]
    fn level14a_forms_agree() {
        for n in 0..15 {
            let a = level::level14a(n);
            assert_eq!(a, level::level14a_alt(n), "n = {n}");
            assert_eq!(a, level::level14a_alt2(n), "n = {n}");
        }
    }
}
