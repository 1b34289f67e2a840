//! Arbitrary-precision real arithmetic used by the constants bank and the
//! series engine.
//!
//! [`Real`] wraps `astro_float::BigFloat` with a per-value precision in
//! bits; binary operations widen to the larger operand precision. The
//! external contract everywhere in this crate is "correct to the requested
//! number of decimal digits"; the backing library is an internal detail.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Binary precision that guarantees `digits` significant decimal digits,
/// with 64 guard bits on top.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

/// An arbitrary-precision real number.
#[derive(Clone, Debug)]
pub struct Real {
    x: BigFloat,
    bits: usize,
}

fn wrap(x: BigFloat, bits: usize) -> Real {
    assert!(!x.is_nan() && !x.is_inf(), "non-finite high-precision value");
    Real { x, bits }
}

impl Real {
    pub fn zero(bits: usize) -> Self {
        wrap(BigFloat::new(bits), bits)
    }

    pub fn from_u64(v: u64, bits: usize) -> Self {
        wrap(BigFloat::from_u64(v, bits), bits)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        wrap(BigFloat::from_i64(v, bits), bits)
    }

    pub fn from_u128(v: u128, bits: usize) -> Self {
        wrap(BigFloat::from_u128(v, bits), bits)
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        wrap(BigFloat::from_f64(v, bits), bits)
    }

    /// Exact ratio `num / den`.
    pub fn from_ratio(num: i64, den: u64, bits: usize) -> Self {
        let n = BigFloat::from_i64(num, bits);
        let d = BigFloat::from_u64(den, bits);
        wrap(n.div(&d, bits, RM), bits)
    }

    /// Parses a plain decimal string like `-0.57721566490153286` or
    /// `24.00148639` (no exponent part).
    pub fn from_decimal_str(s: &str, bits: usize) -> Option<Self> {
        let neg = s.starts_with('-');
        let t = s.trim_start_matches(['-', '+']);
        let (int_part, frac_part) = match t.split_once('.') {
            Some((a, b)) => (a, b),
            None => (t, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let ten = Real::from_u64(10, bits);
        let mut v = Real::zero(bits);
        for ch in int_part.chars().chain(frac_part.chars()) {
            let d = ch.to_digit(10)?;
            v = v * &ten + Real::from_u64(d as u64, bits);
        }
        v = v / ten.powi(frac_part.len() as i64);
        Some(if neg { -v } else { v })
    }

    pub fn pi(bits: usize) -> Self {
        CONSTS.with(|cc| wrap(cc.borrow_mut().pi(bits, RM), bits))
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative()
    }

    pub fn abs(&self) -> Self {
        let mut y = self.x.clone();
        y.set_sign(Sign::Pos);
        wrap(y, self.bits)
    }

    pub fn ln(&self) -> Self {
        CONSTS.with(|cc| wrap(self.x.ln(self.bits, RM, &mut cc.borrow_mut()), self.bits))
    }

    pub fn exp(&self) -> Self {
        CONSTS.with(|cc| wrap(self.x.exp(self.bits, RM, &mut cc.borrow_mut()), self.bits))
    }

    pub fn sqrt(&self) -> Self {
        wrap(self.x.sqrt(self.bits, RM), self.bits)
    }

    pub fn recip(&self) -> Self {
        wrap(self.x.reciprocal(self.bits, RM), self.bits)
    }

    /// Integer power with negative exponents going through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Real::from_u64(1, self.bits);
        }
        let p = wrap(self.x.powi(n.unsigned_abs() as usize, self.bits, RM), self.bits);
        if n < 0 {
            p.recip()
        } else {
            p
        }
    }

    /// Real power `self^e` for positive base.
    pub fn pow(&self, e: &Real) -> Self {
        let bits = self.bits.max(e.bits);
        CONSTS.with(|cc| wrap(self.x.pow(&e.x, bits, RM, &mut cc.borrow_mut()), bits))
    }

    /// Nearest `f64`, through the decimal representation.
    pub fn to_f64(&self) -> f64 {
        if self.x.is_zero() {
            return 0.0;
        }
        format!("{}", self.x).parse().expect("decimal round trip")
    }

    /// Decimal string with `sig` significant digits. Values with decimal
    /// exponent in a readable range are printed positionally, others in
    /// scientific notation.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.x.is_zero() {
            return "0".into();
        }
        let (sign, digits, exp) = CONSTS.with(|cc| {
            self.x
                .convert_to_radix(Radix::Dec, RM, &mut cc.borrow_mut())
                .expect("radix conversion")
        });
        // value = 0.d[0]d[1]... * 10^exp
        let mut ds: Vec<u8> = digits;
        let mut exp = exp as i64;
        // strip leading zero digits (the exponent already accounts for them)
        while ds.first() == Some(&0) {
            ds.remove(0);
        }
        if ds.is_empty() {
            return "0".into();
        }
        // round to exactly `sig` significant digits, with carry
        if ds.len() > sig {
            let roundup = ds[sig] >= 5;
            ds.truncate(sig);
            if roundup {
                let mut i = sig;
                loop {
                    if i == 0 {
                        ds.insert(0, 1);
                        exp += 1;
                        ds.truncate(sig);
                        break;
                    }
                    i -= 1;
                    if ds[i] == 9 {
                        ds[i] = 0;
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        }
        while ds.len() < sig {
            ds.push(0);
        }
        let body: String = ds.iter().map(|d| (b'0' + d) as char).collect();
        let mut out = String::new();
        if sign == Sign::Neg {
            out.push('-');
        }
        if exp >= 1 && (exp as usize) <= sig + 5 {
            // positional, point inside or right after the digits
            let ip = exp as usize;
            if ip >= body.len() {
                out.push_str(&body);
                out.push_str(&"0".repeat(ip - body.len()));
            } else {
                out.push_str(&body[..ip]);
                out.push('.');
                out.push_str(&body[ip..]);
            }
        } else if exp <= 0 && exp > -5 {
            out.push_str("0.");
            out.push_str(&"0".repeat((-exp) as usize));
            out.push_str(&body);
        } else {
            // scientific: d.ddd...e<k> where value = d.ddd * 10^k
            out.push_str(&body[..1]);
            if body.len() > 1 {
                out.push('.');
                out.push_str(&body[1..]);
            }
            out.push('e');
            out.push_str(&(exp - 1).to_string());
        }
        out
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.x)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.x.cmp(&other.x) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.x.cmp(&other.x).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let bits = self.bits.max(rhs.bits);
                wrap(self.x.$method(&rhs.x, bits, RM), bits)
            }
        }
        impl $trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        wrap(BigFloat::neg(&self.x), self.bits)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}
