//! Multiprecision evaluation of cyclotomic coordinates at complex embeddings.
//!
//! Backed by `astro-float`. Everything here is approximate; exact decisions
//! live elsewhere and only consult this module to certify signs.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const RM: RoundingMode = RoundingMode::ToEven;

/// Binary working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    bits: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            bits: Self::DEFAULT_BITS,
        }
    }
}

impl Precision {
    pub const DEFAULT_BITS: usize = 128;
    pub const MAX_BITS: usize = 1 << 14;
    pub const ENV_VAR: &'static str = "PELWEDGE_PRECISION";

    /// Rounded up to a whole number of 64-bit words, minimum one word.
    pub fn bits(bits: usize) -> Self {
        Precision {
            bits: bits.clamp(64, Self::MAX_BITS).div_ceil(64) * 64,
        }
    }

    /// Enough bits to carry `digits` decimal digits plus a guard word.
    pub fn digits(digits: usize) -> Self {
        Self::bits((digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64)
    }

    /// `PELWEDGE_PRECISION` (in bits) if set and valid, else the default.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&b| b > 0)
            .map(Self::bits)
            .unwrap_or_default()
    }

    pub fn get(self) -> usize {
        self.bits
    }

    pub fn doubled(self) -> Option<Self> {
        (self.bits < Self::MAX_BITS).then(|| Self::bits(self.bits * 2))
    }
}

/// `2^e` exactly.
pub fn pow2(e: i32, p: usize) -> BigFloat {
    let mut r = BigFloat::from_words(&[1 << (Word::BITS - 1)], Sign::Pos, e + 1);
    r.set_precision(p, RM).ok();
    r
}

pub fn bigint_to_bf(n: &BigInt, p: usize) -> BigFloat {
    let wp = p + 64;
    let base = pow2(64, wp);
    let mut acc = BigFloat::from_u64(0, wp);
    for d in n.magnitude().iter_u64_digits().rev() {
        acc = acc
            .mul(&base, wp, RM)
            .add(&BigFloat::from_u64(d, wp), wp, RM);
    }
    if n.is_negative() {
        acc = acc.neg();
    }
    acc
}

pub fn rational_to_bf(r: &BigRational, p: usize) -> BigFloat {
    if r.is_zero() {
        return BigFloat::from_u64(0, p);
    }
    let num = bigint_to_bf(r.numer(), p + 64);
    let den = bigint_to_bf(r.denom(), p + 64);
    num.div(&den, p, RM)
}

/// Nearest-below `f64` of a finite value (zero for NaN).
pub fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return 0.0;
    };
    let top = *words.last().unwrap_or(&0) as f64;
    let v = top * 2f64.powi((e - 64).clamp(-1100, 1100));
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// A complex number as a pair of `BigFloat`s.
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl HpComplex {
    pub fn zero(p: usize) -> Self {
        HpComplex {
            re: BigFloat::from_u64(0, p),
            im: BigFloat::from_u64(0, p),
        }
    }

    pub fn add(&self, other: &Self, p: usize) -> Self {
        HpComplex {
            re: self.re.add(&other.re, p, RM),
            im: self.im.add(&other.im, p, RM),
        }
    }

    pub fn scale(&self, s: &BigFloat, p: usize) -> Self {
        HpComplex {
            re: self.re.mul(s, p, RM),
            im: self.im.mul(s, p, RM),
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(bf_to_f64(&self.re), bf_to_f64(&self.im))
    }

    /// Decimal rendering of both parts with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (decimal(&self.re, digits), decimal(&self.im, digits))
    }
}

/// Scientific decimal string, truncated to `digits` significant digits.
pub fn decimal(x: &BigFloat, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut cc = Consts::new().expect("constants cache");
    let s = x
        .format(astro_float::Radix::Dec, RM, &mut cc)
        .unwrap_or_else(|_| format!("{}", bf_to_f64(x)));
    // astro-float prints "d.ddddde±x"; trim the mantissa
    match s.split_once('e') {
        Some((mant, exp)) => {
            let neg = mant.starts_with('-');
            let body = mant.trim_start_matches('-');
            let keep: String = body.chars().take(digits + 1).collect();
            format!("{}{}e{}", if neg { "-" } else { "" }, keep, exp)
        }
        None => s,
    }
}

/// Powers `zeta^(k t)` for `t < m` at one embedding, in high precision.
#[derive(Clone, Debug)]
pub struct ZetaTable {
    bits: usize,
    powers: Vec<HpComplex>,
}

impl ZetaTable {
    pub fn new(m: u64, k: u64, precision: Precision) -> Self {
        let p = precision.get();
        let wp = p + 64;
        let mut cc = Consts::new().expect("constants cache");
        let two_pi = cc.pi(wp, RM).mul(&BigFloat::from_u64(2, wp), wp, RM);
        let powers = (0..m)
            .map(|t| {
                let r = (k * t) % m;
                let angle = two_pi.mul(&BigFloat::from_u64(r, wp), wp, RM).div(
                    &BigFloat::from_u64(m, wp),
                    wp,
                    RM,
                );
                HpComplex {
                    re: angle.cos(p, RM, &mut cc),
                    im: angle.sin(p, RM, &mut cc),
                }
            })
            .collect();
        ZetaTable { bits: p, powers }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// `sum_t coords[t] * zeta^(k t)`.
    pub fn eval(&self, coords: &[BigRational]) -> HpComplex {
        let p = self.bits;
        coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(HpComplex::zero(p), |acc, (t, c)| {
                acc.add(&self.powers[t].scale(&rational_to_bf(c, p), p), p)
            })
    }

    /// A bound on the absolute error of [`ZetaTable::eval`] for `coords`.
    pub fn error_bound(&self, coords: &[BigRational]) -> BigFloat {
        let p = self.bits;
        let l1 = coords.iter().fold(BigFloat::from_u64(0, p), |acc, c| {
            acc.add(&rational_to_bf(&c.abs(), p), p, RM)
        });
        let slack = BigFloat::from_u64(coords.len() as u64 + 4, p);
        l1.mul(&slack, p, RM).mul(&pow2(16 - p as i32, p), p, RM)
    }
}

/// Double-precision powers of zeta at one embedding, for cheap oracles.
pub fn zeta_f64(m: u64, k: u64, t: u64) -> Complex64 {
    let r = ((k * t) % m) as f64;
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r / m as f64)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
