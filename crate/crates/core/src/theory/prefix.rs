//! b-ary expansions of reals, common-prefix lengths and the uniform-model
//! covariance kernel.

/// Number of digits compared before two expansions are declared equal.
pub const PREFIX_CAP: usize = 256;

/// Length of a common prefix; `Unbounded` stands for `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PrefixLen {
    Finite(usize),
    Unbounded,
}

impl PrefixLen {
    /// `base^{-j}` with `base^{-inf} = 0`.
    pub fn neg_pow(self, base: f64) -> f64 {
        match self {
            Self::Finite(j) => base.powi(-(j as i32)),
            Self::Unbounded => 0.0,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Self::Finite(j) => Some(j),
            Self::Unbounded => None,
        }
    }

    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Self::Finite(j) if j <= k)
    }
}

impl std::fmt::Display for PrefixLen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(j) => write!(f, "{j}"),
            Self::Unbounded => f.write_str("inf"),
        }
    }
}

/// Digits of `t` in base `b`, using the expansion with infinitely many digits
/// below `b - 1` (and all digits `b - 1` for `t = 1`).
///
/// An `f64` is a binary rational `m / 2^k`; when `k` is small enough the digits
/// are produced exactly in integer arithmetic.
#[derive(Debug, Clone)]
pub enum Expansion {
    Ones { top: u8 },
    Exact { rem: u128, shift: u32, b: u128 },
    Float { rem: f64, b: f64 },
}

impl Expansion {
    pub fn new(t: f64, b: usize) -> Self {
        assert!((0.0..=1.0).contains(&t), "t = {t} outside [0, 1]");
        assert!((2..=256).contains(&b), "unsupported base {b}");
        if t == 1.0 {
            return Self::Ones { top: (b - 1) as u8 };
        }
        if t == 0.0 {
            return Self::Exact {
                rem: 0,
                shift: 0,
                b: b as u128,
            };
        }
        let bits = t.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mut mant, mut shift) = if exp == 0 {
            (frac, 1074i32)
        } else {
            (frac | (1u64 << 52), 1075 - exp)
        };
        let tz = mant.trailing_zeros() as i32;
        mant >>= tz;
        shift -= tz;
        if shift <= 120 {
            Self::Exact {
                rem: u128::from(mant),
                shift: shift as u32,
                b: b as u128,
            }
        } else {
            Self::Float {
                rem: t,
                b: b as f64,
            }
        }
    }
}

impl Iterator for Expansion {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(match self {
            Self::Ones { top } => *top,
            Self::Exact { rem, shift, b } => {
                let x = *rem * *b;
                let d = x >> *shift;
                *rem = x & ((1u128 << *shift) - 1);
                d as u8
            }
            Self::Float { rem, b } => {
                let x = *rem * *b;
                let d = x.floor();
                *rem = x - d;
                d as u8
            }
        })
    }
}

/// Length of the longest common prefix of the base-`b` expansions of `s` and
/// `t`, comparing at most `cap` digits.
pub fn lcp(s: f64, t: f64, b: usize, cap: usize) -> PrefixLen {
    Expansion::new(s, b)
        .zip(Expansion::new(t, b))
        .take(cap)
        .position(|(x, y)| x != y)
        .map_or(PrefixLen::Unbounded, PrefixLen::Finite)
}

/// Covariance `b/(b-1)^2 - (b+1)/(b-1)^2 * b^{-j(s,t)}` of the uniform-model
/// limit process.
pub fn cov_uniform(s: f64, t: f64, b: usize) -> f64 {
    let bf = b as f64;
    let j = lcp(s, t, b, PREFIX_CAP);
    (bf - (bf + 1.0) * j.neg_pow(bf)) / ((bf - 1.0) * (bf - 1.0))
}

/// Ultrametric `d_b(s, t) = b^{-j(s,t)}`.
pub fn metric_db(s: f64, t: f64, b: usize) -> f64 {
    lcp(s, t, b, PREFIX_CAP).neg_pow(b as f64)
}

/// Canonical metric `d(s, t) = sqrt(E[(G(t) - G(s))^2])`.
pub fn metric_d(s: f64, t: f64, b: usize) -> f64 {
    let bf = b as f64;
    (2.0 * (bf + 1.0)).sqrt() / (bf - 1.0) * metric_db(s, t, b).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn expansions() {
        let d: Vec<u8> = Expansion::new(0.375, 2).take(5).collect();
        assert_eq!(d, [0, 1, 1, 0, 0]);
        let d: Vec<u8> = Expansion::new(1.0, 3).take(4).collect();
        assert_eq!(d, [2, 2, 2, 2]);
        let d: Vec<u8> = Expansion::new(0.5, 3).take(4).collect();
        assert_eq!(d, [1, 1, 1, 1]);
        // 0.1 in binary: 0.000110011...
        let d: Vec<u8> = Expansion::new(0.1, 2).take(8).collect();
        assert_eq!(d, [0, 0, 0, 1, 1, 0, 0, 1]);
        assert!(matches!(Expansion::new(1e-300, 2), Expansion::Float { .. }));
    }

    #[test]
    fn lcp_examples() {
        assert_eq!(lcp(0.3, 0.3, 2, PREFIX_CAP), PrefixLen::Unbounded);
        assert_eq!(lcp(0.25, 0.375, 2, PREFIX_CAP), PrefixLen::Finite(2));
        assert_eq!(lcp(0.0, 0.5, 2, PREFIX_CAP), PrefixLen::Finite(0));
        assert_eq!(lcp(0.75, 1.0, 2, PREFIX_CAP), PrefixLen::Finite(2));
    }

    #[test]
    fn cov_uniform_examples() {
        assert_eq!(cov_uniform(0.3, 0.3, 2), 2.0);
        assert_eq!(cov_uniform(0.0, 0.5, 2), -1.0);
        assert_eq!(cov_uniform(0.25, 0.375, 2), 1.25);
        assert_eq!(cov_uniform(0.1, 0.1, 3), 3.0 / 4.0);
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric_db(0.4, 0.4, 2), 0.0);
        assert_eq!(metric_db(0.0, 0.5, 2), 1.0);
        assert!((metric_d(0.0, 0.5, 2) - 6f64.sqrt()).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn metric_is_increment_variance(s in 0.0..=1.0f64, t in 0.0..=1.0f64, b in 2usize..6) {
            let d2 = metric_d(s, t, b).powi(2);
            let incr = cov_uniform(s, s, b) + cov_uniform(t, t, b) - 2.0 * cov_uniform(s, t, b);
            prop_assert!((d2 - incr).abs() < 1e-12);
        }

        #[test]
        fn cov_uniform_symmetric_with_exact_diagonal(s in 0.0..=1.0f64, t in 0.0..=1.0f64, b in 2usize..6) {
            prop_assert_eq!(cov_uniform(s, t, b), cov_uniform(t, s, b));
            let bf = b as f64;
            prop_assert_eq!(cov_uniform(s, s, b), bf / ((bf - 1.0) * (bf - 1.0)));
        }

        #[test]
        fn exact_and_float_digits_agree_for_binary(t in 0.0..1.0f64) {
            let exact: Vec<u8> = Expansion::new(t, 2).take(60).collect();
            let float: Vec<u8> = Expansion::Float { rem: t, b: 2.0 }.take(60).collect();
            prop_assert_eq!(exact, float);
        }
    }
}
