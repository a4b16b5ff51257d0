//! Fixed-point reals with 256 fractional bits, for re-evaluating closed
//! forms independently of `f64` libm.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const BITS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hp(BigInt);

impl Hp {
    pub fn int(n: i64) -> Hp {
        Hp(BigInt::from(n) << BITS)
    }

    pub fn ratio(n: i64, d: i64) -> Hp {
        Hp((BigInt::from(n) << BITS) / BigInt::from(d))
    }

    /// The exact value of a double.
    pub fn from_f64(x: f64) -> Hp {
        if x == 0.0 {
            return Hp(BigInt::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let mant = if exp == 0 { (bits & ((1 << 52) - 1)) << 1 } else { (bits & ((1 << 52) - 1)) | (1 << 52) };
        let e = exp - 1075 + BITS as i64;
        let m = BigInt::from(mant) * sign;
        Hp(if e >= 0 { m << e as usize } else { m >> (-e) as usize })
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.0.bits().saturating_sub(60) as usize;
        let top = (&self.0 >> shift).to_f64().unwrap();
        top * 2f64.powi(shift as i32 - BITS as i32)
    }

    pub fn abs(&self) -> Hp {
        Hp(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn sqrt(&self) -> Hp {
        Hp((&self.0 << BITS).sqrt())
    }

    /// `atan(1/n)` by its Taylor series.
    fn atan_inv(n: i64) -> Hp {
        let n2 = BigInt::from(n * n);
        let mut term = (BigInt::one() << BITS) / BigInt::from(n);
        let mut sum = term.clone();
        let mut k = 1i64;
        while !term.is_zero() {
            term = -term / &n2;
            sum += &term / BigInt::from(2 * k + 1);
            k += 1;
        }
        Hp(sum)
    }

    /// Machin's formula.
    pub fn pi() -> Hp {
        Hp::int(16) * Hp::atan_inv(5) - Hp::int(4) * Hp::atan_inv(239)
    }

    /// Reduce into `[−π, π)`.
    fn reduce(&self) -> Hp {
        let tau = Hp::int(2) * Hp::pi();
        let shifted = Hp(&self.0 + (&tau.0 >> 1));
        let k = shifted.0.div_floor(&tau.0);
        Hp(&self.0 - k * tau.0)
    }

    pub fn sin(&self) -> Hp {
        let x = self.reduce();
        let x2 = &x * &x;
        let mut term = x.clone();
        let mut sum = x;
        let mut k = 1i64;
        while !term.is_zero() {
            term = -(&term * &x2) / Hp::int((2 * k) * (2 * k + 1));
            sum = sum + term.clone();
            k += 1;
        }
        sum
    }

    pub fn cos(&self) -> Hp {
        (self.clone() + Hp::pi() / Hp::int(2)).sin()
    }

    pub fn tan(&self) -> Hp {
        self.sin() / self.cos()
    }
}

impl Add for Hp {
    type Output = Hp;
    fn add(self, o: Hp) -> Hp {
        Hp(self.0 + o.0)
    }
}

impl Sub for Hp {
    type Output = Hp;
    fn sub(self, o: Hp) -> Hp {
        Hp(self.0 - o.0)
    }
}

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(-self.0)
    }
}

impl Mul for Hp {
    type Output = Hp;
    fn mul(self, o: Hp) -> Hp {
        Hp((self.0 * o.0) >> BITS)
    }
}

impl Mul for &Hp {
    type Output = Hp;
    fn mul(self, o: &Hp) -> Hp {
        Hp((&self.0 * &o.0) >> BITS)
    }
}

impl Div for Hp {
    type Output = Hp;
    fn div(self, o: Hp) -> Hp {
        Hp((self.0 << BITS) / o.0)
    }
}
