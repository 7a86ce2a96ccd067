use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial in the formal symbol u = χ(P¹), dense ascending.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ChiExpr(Vec<BigInt>);

impl ChiExpr {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ChiExpr(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ChiExpr(Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The symbol u itself.
    pub fn u() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// u - c
    pub fn u_minus(c: impl Into<BigInt>) -> Self {
        Self::new(vec![-c.into(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    /// Integer value of a constant expression.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.0.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    /// Specialize u to an integer.
    pub fn eval(&self, u: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * u + c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    /// gcd of the coefficients, sign following the leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Sign-normalized copy (positive leading coefficient).
    pub fn normalized_sign(&self) -> Self {
        if self.leading().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Content-times-primitive rendering, e.g. `2(u - 1)` or `-3`.
    pub fn render_factored(&self) -> String {
        let c = self.content();
        if self.degree().unwrap_or(0) == 0 || c.is_one() {
            return self.to_string();
        }
        let prim = Self::new(self.0.iter().map(|x| x / &c).collect());
        if c == -BigInt::one() {
            format!("-({prim})")
        } else {
            format!("{c}({prim})")
        }
    }
}

impl fmt::Display for ChiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ChiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChiExpr({self})")
    }
}

impl Add for &ChiExpr {
    type Output = ChiExpr;
    fn add(self, rhs: &ChiExpr) -> ChiExpr {
        let n = self.0.len().max(rhs.0.len());
        ChiExpr::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ChiExpr {
    type Output = ChiExpr;
    fn sub(self, rhs: &ChiExpr) -> ChiExpr {
        self + &(-rhs)
    }
}

impl Neg for &ChiExpr {
    type Output = ChiExpr;
    fn neg(self) -> ChiExpr {
        ChiExpr(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &ChiExpr {
    type Output = ChiExpr;
    fn mul(self, rhs: &ChiExpr) -> ChiExpr {
        if self.is_zero() || rhs.is_zero() {
            return ChiExpr::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ChiExpr::new(out)
    }
}
