//! Angle specifications.
//!
//! An angle is stored through its rotation number `a = angle / 2π`, reduced
//! to `[0, 1)`. Exact forms (rationals and quadratic surds) keep integer
//! data so that continued fractions can be computed without rounding.

use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rotation number given exactly or as decimal radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngleSpec {
    /// `a = p / q` with `gcd(p, q) = 1`, `0 <= p < q`.
    Rational { p: i64, q: i64 },
    /// `a = (p + q√d) / r` with `d > 0` non-square, `r > 0`, `q != 0`.
    Surd { p: i64, q: i64, d: i64, r: i64 },
    /// Angle in radians; `a = radians / 2π mod 1`.
    Decimal(f64),
}

/// floor((p + q√d) / r) for r > 0 and non-square d.
pub(crate) fn surd_floor(p: i128, q: i128, d: i128, r: i128) -> i128 {
    debug_assert!(r > 0);
    let n = q * q * d;
    let s = n.isqrt();
    if q >= 0 {
        Integer::div_floor(&(p + s), &r)
    } else {
        Integer::div_floor(&(p - s - 1), &r)
    }
}

fn is_square(d: i64) -> bool {
    let s = d.isqrt();
    s * s == d
}

impl AngleSpec {
    /// Rational rotation number `p/q`, reduced and brought into `[0, 1)`.
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidAngle("zero denominator".into()));
        }
        let (mut p, mut q) = if q < 0 { (-p, -q) } else { (p, q) };
        p = p.rem_euclid(q);
        let g = p.gcd(&q);
        if g > 1 {
            p /= g;
            q /= g;
        }
        Ok(AngleSpec::Rational { p, q })
    }

    /// Quadratic surd `(p + q√d)/r`, brought into `[0, 1)`.
    pub fn surd(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidAngle("zero denominator".into()));
        }
        if d <= 0 {
            return Err(Error::InvalidAngle(format!("surd radicand {d} must be positive")));
        }
        if q == 0 || is_square(d) {
            let root = if q == 0 { 0 } else { d.isqrt() };
            return Self::rational(p + q * root, r);
        }
        let (p, q, r) = if r < 0 { (-p, -q, -r) } else { (p, q, r) };
        let fl = surd_floor(p as i128, q as i128, d as i128, r as i128);
        let p = i64::try_from(p as i128 - fl * r as i128)
            .map_err(|_| Error::InvalidAngle("surd coefficients overflow".into()))?;
        Ok(AngleSpec::Surd { p, q, d, r })
    }

    /// Angle given in radians.
    pub fn decimal(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(Error::InvalidAngle("non-finite angle".into()));
        }
        Ok(AngleSpec::Decimal(radians))
    }

    /// Rotation number `a ∈ [0, 1)` as a float.
    pub fn turns(&self) -> f64 {
        match *self {
            AngleSpec::Rational { p, q } => p as f64 / q as f64,
            AngleSpec::Surd { p, q, d, r } => {
                let v = (p as f64 + q as f64 * (d as f64).sqrt()) / r as f64;
                v.clamp(0.0, 1.0 - f64::EPSILON / 2.0)
            }
            AngleSpec::Decimal(x) => {
                let t = (x / TAU).rem_euclid(1.0);
                if t >= 1.0 {
                    0.0
                } else {
                    t
                }
            }
        }
    }

    /// Rotation number as an unevaluated sum `hi + lo` carrying about 100
    /// bits for exact specs (`lo = 0` for decimals).
    pub fn turns_split(&self) -> (f64, f64) {
        match *self {
            AngleSpec::Rational { p, q } => {
                let hi = p as f64 / q as f64;
                let rem = (-hi).mul_add(q as f64, p as f64);
                (hi, rem / q as f64)
            }
            AngleSpec::Surd { p, q, d, r } => {
                const BITS: u32 = 120;
                let s = ((BigInt::from(q) * BigInt::from(q) * BigInt::from(d)) << (2 * BITS)).sqrt();
                let s = if q >= 0 { s } else { -s - 1 };
                let n = Integer::div_floor(&((BigInt::from(p) << BITS) + s), &BigInt::from(r));
                let scale = (-(BITS as f64)).exp2();
                let hi_int = n.to_f64().unwrap_or(0.0);
                let rest = n - BigInt::from_f64(hi_int).unwrap_or_default();
                (hi_int * scale, rest.to_f64().unwrap_or(0.0) * scale)
            }
            AngleSpec::Decimal(_) => (self.turns(), 0.0),
        }
    }

    /// Angle in radians, reduced to `[0, 2π)`.
    pub fn radians(&self) -> f64 {
        match *self {
            AngleSpec::Decimal(x) => {
                let r = x.rem_euclid(TAU);
                if r >= TAU {
                    0.0
                } else {
                    r
                }
            }
            _ => TAU * self.turns(),
        }
    }

    /// The opposite angle.
    pub fn negated(&self) -> Self {
        match *self {
            AngleSpec::Rational { p, q } => AngleSpec::rational(-p, q).expect("valid"),
            AngleSpec::Surd { p, q, d, r } => AngleSpec::surd(-p, -q, d, r).expect("valid"),
            AngleSpec::Decimal(x) => AngleSpec::Decimal(-x),
        }
    }

    /// True for the exact forms (rational and surd).
    pub fn is_exact(&self) -> bool {
        !matches!(self, AngleSpec::Decimal(_))
    }

    /// `(p, q)` for a rational rotation number.
    pub fn as_rational(&self) -> Option<(i64, i64)> {
        match *self {
            AngleSpec::Rational { p, q } => Some((p, q)),
            _ => None,
        }
    }

    /// True if `e^{i n α} = 1` holds exactly (rational specs only).
    pub fn is_resonant(&self, n: usize) -> Option<bool> {
        self.as_rational().map(|(p, q)| (p as i128 * n as i128) % q as i128 == 0)
    }
}

impl fmt::Display for AngleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AngleSpec::Rational { p, q } => write!(f, "2pi*{p}/{q}"),
            AngleSpec::Surd { p, q, d, r } => write!(f, "2pi*({p}+{q}*sqrt({d}))/{r}"),
            AngleSpec::Decimal(x) => write!(f, "{x}"),
        }
    }
}

impl std::str::FromStr for AngleSpec {
    type Err = Error;

    /// Accepts `1.25` (radians), `rat:p/q` and `surd:p,q,d,r`, or the JSON
    /// forms `{"rat":[p,q]}` / `{"surd":[p,q,d,r]}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::InvalidAngle(e.to_string()));
        }
        let ints = |body: &str, sep: &[char]| -> Result<Vec<i64>> {
            body.split(sep)
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::InvalidAngle(format!("{s}: {e}")))
                })
                .collect()
        };
        if let Some(body) = s.strip_prefix("rat:") {
            let v = ints(body, &['/', ','])?;
            if v.len() != 2 {
                return Err(Error::InvalidAngle(format!("{s}: expected rat:p/q")));
            }
            return AngleSpec::rational(v[0], v[1]);
        }
        if let Some(body) = s.strip_prefix("surd:") {
            let v = ints(body, &[','])?;
            if v.len() != 4 {
                return Err(Error::InvalidAngle(format!("{s}: expected surd:p,q,d,r")));
            }
            return AngleSpec::surd(v[0], v[1], v[2], v[3]);
        }
        let x: f64 = s
            .parse()
            .map_err(|e| Error::InvalidAngle(format!("{s}: {e}")))?;
        AngleSpec::decimal(x)
    }
}

impl Serialize for AngleSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            AngleSpec::Decimal(x) => serializer.serialize_f64(x),
            AngleSpec::Rational { p, q } => {
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("rat", &[p, q])?;
                m.end()
            }
            AngleSpec::Surd { p, q, d, r } => {
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("surd", &[p, q, d, r])?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for AngleSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SpecVisitor;

        impl<'de> Visitor<'de> for SpecVisitor {
            type Value = AngleSpec;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number of radians, {\"rat\":[p,q]} or {\"surd\":[p,q,d,r]}")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<AngleSpec, E> {
                AngleSpec::decimal(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<AngleSpec, E> {
                self.visit_f64(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<AngleSpec, E> {
                self.visit_f64(v as f64)
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<AngleSpec, A::Error> {
                let key: String = map
                    .next_key()?
                    .ok_or_else(|| de::Error::custom("empty angle object"))?;
                let vals: Vec<i64> = map.next_value()?;
                if map.next_key::<String>()?.is_some() {
                    return Err(de::Error::custom("angle object must have a single key"));
                }
                match (key.as_str(), vals.as_slice()) {
                    ("rat", [p, q]) => AngleSpec::rational(*p, *q).map_err(de::Error::custom),
                    ("surd", [p, q, d, r]) => {
                        AngleSpec::surd(*p, *q, *d, *r).map_err(de::Error::custom)
                    }
                    _ => Err(de::Error::custom(format!("bad angle object key {key:?}"))),
                }
            }
        }

        deserializer.deserialize_any(SpecVisitor)
    }
}
