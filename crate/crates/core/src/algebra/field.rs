//! GF(2^64) modulo x^64 + x^4 + x^3 + x + 1.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use rand::distributions::{Distribution, Standard};
use rand::Rng;

use crate::error::{Error, Result};

/// Low 64 bits of the modulus; the x^64 term is implicit.
pub const MODULUS_LOW: u64 = 0x1B;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElem(pub u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl Distribution<FieldElem> for Standard {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen())
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn add(self, o: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ o.0)
    }
}

impl AddAssign for FieldElem {
    #[inline]
    fn add_assign(&mut self, o: FieldElem) {
        self.0 ^= o.0;
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn mul(self, o: FieldElem) -> FieldElem {
        ff_mul(self, o)
    }
}

impl MulAssign for FieldElem {
    #[inline]
    fn mul_assign(&mut self, o: FieldElem) {
        *self = ff_mul(*self, o);
    }
}

/// Carry-less 64x64 product as `(hi, lo)`, by shift and XOR.
#[inline]
pub fn clmul_portable(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        lo ^= a << i;
        if i != 0 {
            hi ^= a >> (64 - i);
        }
        b &= b - 1;
    }
    (hi, lo)
}

/// Reduces `hi * x^64 + lo`. Since x^64 = x^4 + x^3 + x + 1, the high word
/// folds in twice: once itself and once for the at most four bits it
/// pushes past x^63.
#[inline]
pub fn reduce(hi: u64, lo: u64) -> u64 {
    let fold = |h: u64| h ^ (h << 1) ^ (h << 3) ^ (h << 4);
    let t = (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
    lo ^ fold(hi) ^ fold(t)
}

/// A multiplication backend. The determinant and the solvers pick one per
/// call so that the inner loops are monomorphized.
pub trait MulImpl: Copy + Send + Sync {
    fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem;
}

#[derive(Clone, Copy, Debug)]
pub struct Portable;

impl MulImpl for Portable {
    #[inline]
    fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (hi, lo) = clmul_portable(a.0, b.0);
        FieldElem(reduce(hi, lo))
    }
}

#[cfg(all(feature = "clmul", target_arch = "x86_64"))]
mod hw {
    use super::{reduce, FieldElem, MulImpl};
    use std::arch::x86_64::*;

    /// Only constructed after runtime detection of PCLMULQDQ.
    #[derive(Clone, Copy, Debug)]
    pub struct Clmul(());

    impl Clmul {
        pub fn detect() -> Option<Clmul> {
            (is_x86_feature_detected!("pclmulqdq") && is_x86_feature_detected!("sse2")).then_some(Clmul(()))
        }
    }

    #[target_feature(enable = "pclmulqdq,sse2")]
    unsafe fn clmul(a: u64, b: u64) -> (u64, u64) {
        let p = _mm_clmulepi64_si128(_mm_cvtsi64_si128(a as i64), _mm_cvtsi64_si128(b as i64), 0);
        let lo = _mm_cvtsi128_si64(p) as u64;
        let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)) as u64;
        (hi, lo)
    }

    impl MulImpl for Clmul {
        #[inline]
        fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
            // SAFETY: a `Clmul` value exists only if the CPU supports the
            // instructions used by `clmul`.
            let (hi, lo) = unsafe { clmul(a.0, b.0) };
            FieldElem(reduce(hi, lo))
        }
    }
}

#[cfg(all(feature = "clmul", target_arch = "x86_64"))]
pub use hw::Clmul;

/// Runs `f` with the fastest available multiplication backend.
#[macro_export]
macro_rules! with_mul_impl {
    (|$m:ident| $body:expr) => {{
        #[cfg(all(feature = "clmul", target_arch = "x86_64"))]
        {
            match $crate::algebra::Clmul::detect() {
                Some($m) => $body,
                None => {
                    let $m = $crate::algebra::Portable;
                    $body
                }
            }
        }
        #[cfg(not(all(feature = "clmul", target_arch = "x86_64")))]
        {
            let $m = $crate::algebra::Portable;
            $body
        }
    }};
}

#[inline]
pub fn ff_mul(a: FieldElem, b: FieldElem) -> FieldElem {
    with_mul_impl!(|m| m.mul(a, b))
}

pub fn ff_pow(a: FieldElem, mut e: u128) -> FieldElem {
    let mut base = a;
    let mut acc = FieldElem::ONE;
    while e != 0 {
        if e & 1 == 1 {
            acc = ff_mul(acc, base);
        }
        base = ff_mul(base, base);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse as `a^(2^64 - 2)`.
pub fn ff_inv(a: FieldElem) -> Result<FieldElem> {
    if a.is_zero() {
        return Err(Error::Domain("zero has no inverse"));
    }
    Ok(inv_with(Portable, a))
}

pub(crate) fn inv_with<M: MulImpl>(m: M, a: FieldElem) -> FieldElem {
    // 2^64 - 2 = 2 + 4 + ... + 2^63
    let mut sq = a;
    let mut acc = FieldElem::ONE;
    for _ in 1..64 {
        sq = m.mul(sq, sq);
        acc = m.mul(acc, sq);
    }
    acc
}
