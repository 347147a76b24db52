//! Arbitrary-precision reals on top of `astro-float`, with the working
//! precision held per thread.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use arithyp_core::real::Real;
use astro_float::{BigFloat, Consts, Radix, RoundingMode};

const RM: RoundingMode = RoundingMode::ToEven;

struct Ctx {
    bits: usize,
    consts: Consts,
}

thread_local! {
    static CTX: RefCell<Ctx> = RefCell::new(Ctx {
        bits: bits_for_digits(60),
        consts: Consts::new().expect("constant cache"),
    });
}

fn bits_for_digits(digits: u32) -> usize {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + 64
}

/// Set the working precision of this thread to at least `digits` decimal
/// digits (plus guard bits).
pub fn set_precision_digits(digits: u32) {
    CTX.with(|c| c.borrow_mut().bits = bits_for_digits(digits.max(17)));
}

pub fn precision_bits() -> usize {
    CTX.with(|c| c.borrow().bits)
}

fn with<T>(f: impl FnOnce(usize, &mut Consts) -> T) -> T {
    CTX.with(|c| {
        let mut c = c.borrow_mut();
        let bits = c.bits;
        f(bits, &mut c.consts)
    })
}

#[derive(Clone, Debug)]
pub struct Hp(pub BigFloat);

impl Hp {
    pub fn parse(s: &str) -> Hp {
        with(|p, cc| Hp(BigFloat::parse(s, Radix::Dec, p, RM, cc)))
    }

    pub fn log10(&self) -> Hp {
        with(|p, cc| Hp(self.0.log10(p, RM, cc)))
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let s = with(|_, cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        shorten(&s, digits)
    }
}

/// Cut a `d.ddddde±x` string to `digits` significant digits (truncating).
fn shorten(s: &str, digits: usize) -> String {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let mut kept = 0;
    let mut out = String::new();
    for ch in mant.chars() {
        if ch.is_ascii_digit() {
            if kept == digits {
                continue;
            }
            kept += 1;
        }
        out.push(ch);
    }
    out.push_str(exp);
    out
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(usize::MAX))
    }
}

impl PartialEq for Hp {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Hp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Hp {
            type Output = Hp;
            fn $m(self, rhs: Hp) -> Hp {
                with(|p, _| Hp(self.0.$m(&rhs.0, p, RM)))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(self.0.neg())
    }
}

impl Real for Hp {
    fn from_f64(x: f64) -> Self {
        with(|p, _| Hp(BigFloat::from_f64(x, p)))
    }

    fn from_i64(n: i64) -> Self {
        with(|p, _| Hp(BigFloat::from_i64(n, p)))
    }

    fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().unwrap_or(f64::NAN)
    }

    fn sqrt(&self) -> Self {
        with(|p, _| Hp(self.0.sqrt(p, RM)))
    }

    fn ln(&self) -> Self {
        with(|p, cc| Hp(self.0.ln(p, RM, cc)))
    }

    fn exp(&self) -> Self {
        with(|p, cc| Hp(self.0.exp(p, RM, cc)))
    }

    fn acos(&self) -> Self {
        with(|p, cc| Hp(self.0.acos(p, RM, cc)))
    }

    fn pi() -> Self {
        with(|p, cc| Hp(cc.pi(p, RM)))
    }

    fn abs(&self) -> Self {
        Hp(self.0.abs())
    }

    fn sinh(&self) -> Self {
        with(|p, cc| Hp(self.0.sinh(p, RM, cc)))
    }

    fn cosh(&self) -> Self {
        with(|p, cc| Hp(self.0.cosh(p, RM, cc)))
    }

    fn acosh(&self) -> Self {
        with(|p, cc| Hp(self.0.acosh(p, RM, cc)))
    }
}
