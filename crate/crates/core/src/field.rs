//! Arithmetic in a prime field GF(p) and seeded uniform sampling.
//!
//! Field elements are plain canonical residues wrapped in [`Fp`]; every
//! operation goes through a [`Prime`] context, which carries the modulus and a
//! precomputed Barrett constant so that reduction avoids a hardware division.

use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// The Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 31) - 1;

/// An element of GF(p), always stored as its canonical residue in `[0, p)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A prime modulus `p < 2^32`, verified at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prime {
    p: u64,
    // floor(2^64 / p)
    barrett: u64,
}

impl Default for Prime {
    fn default() -> Self {
        Prime::new(DEFAULT_PRIME).expect("default modulus is prime")
    }
}

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime {
            p,
            barrett: (u128::from(u64::MAX) / u128::from(p)) as u64,
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Checks the Schwartz–Zippel size requirement `p >= 16 m n` for an
    /// instance with `m` lines in dimension `n`.
    pub fn check_instance_size(&self, n: usize, m: usize) -> Result<()> {
        let need = 16u128 * n as u128 * m as u128;
        if u128::from(self.p) < need {
            return Err(Error::PrimeTooSmall { p: self.p, need });
        }
        Ok(())
    }

    /// Reduces an arbitrary integer.
    #[inline]
    pub fn elem(&self, v: u64) -> Fp {
        Fp(self.reduce(v))
    }

    /// Wraps `v`, rejecting values outside `[0, p)`.
    pub fn checked(&self, v: u64) -> Result<Fp> {
        if v < self.p {
            Ok(Fp(v))
        } else {
            Err(Error::ValueOutOfField { value: v, p: self.p })
        }
    }

    /// Maps a signed integer to its residue.
    pub fn from_i64(&self, v: i64) -> Fp {
        let r = v.rem_euclid(self.p as i64);
        Fp(r as u64)
    }

    #[inline(always)]
    pub(crate) fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.barrett)) >> 64) as u64;
        let r = x.wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline(always)]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline(always)]
    pub fn neg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline(always)]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(self.reduce(a.0 * b.0))
    }

    /// `dst[i] += c * src[i]`. For the default Mersenne modulus the reduction
    /// is shift-and-add, which the compiler vectorizes.
    #[inline]
    pub(crate) fn axpy_slice(&self, dst: &mut [Fp], src: &[Fp], c: Fp) {
        if self.p == DEFAULT_PRIME {
            const P: u64 = DEFAULT_PRIME;
            // operands are below 2^31, so 32-bit widening multiplies suffice
            let c = u64::from(c.0 as u32);
            for (d, s) in dst.iter_mut().zip(src) {
                let x = d.0 + c * u64::from(s.0 as u32);
                let x = (x & P) + (x >> 31);
                let x = (x & P) + (x >> 31);
                d.0 = if x >= P { x - P } else { x };
            }
        } else {
            for (d, s) in dst.iter_mut().zip(src) {
                *d = self.mul_add(*d, c, *s);
            }
        }
    }

    /// `a + b * c`, one reduction.
    #[inline(always)]
    pub fn mul_add(&self, a: Fp, b: Fp, c: Fp) -> Fp {
        Fp(self.reduce(a.0 + b.0 * c.0))
    }

    pub fn inv(&self, a: Fp) -> Result<Fp> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i64(t0))
    }

    pub fn div(&self, a: Fp, b: Fp) -> Result<Fp> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, mut a: Fp, mut e: u64) -> Fp {
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Uniform draw by rejection over `[0, 2^k)`, `k = ceil(log2 p)`.
    pub fn sample(&self, rng: &mut SeededRng) -> Fp {
        let bits = 64 - (self.p - 1).leading_zeros();
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        loop {
            let v = rng.next_u64() & mask;
            if v < self.p {
                return Fp(v);
            }
        }
    }

    /// Uniform draw from the nonzero elements.
    pub fn sample_nonzero(&self, rng: &mut SeededRng) -> Fp {
        loop {
            let v = self.sample(rng);
            if !v.is_zero() {
                return v;
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The deterministic generator behind every random substitution.
pub type SeededRng = ChaCha8Rng;

/// A generator seeded with `seed`.
pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives a child seed from a parent seed and a label: `child = hash(seed, label)`.
///
/// The hash is FNV-1a over the label bytes, folded into the seed with the
/// SplitMix64 finalizer.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    splitmix(seed ^ splitmix(h))
}

/// Child seed indexed by an integer (per-line streams, retry counters).
pub fn derive_seed_indexed(seed: u64, label: &str, index: u64) -> u64 {
    splitmix(derive_seed(seed, label) ^ splitmix(index.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
