//! Double-double arithmetic for refining multiple roots.
//!
//! A `k`-fold root of a real polynomial is only as accurate as the evaluation
//! of its `(k-1)`-th derivative near the root, which suffers heavy
//! cancellation in plain `f64`. Carrying an error term through the products
//! and sums restores roughly twice the working precision.

use num_complex::Complex64;

use crate::quat::Quaternion;

/// `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        Self::renorm(s, e + self.lo + o.lo)
    }

    pub fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        let (p, e) = two_prod(self.hi, x);
        Self::renorm(p, e + self.lo * x)
    }

    /// Exact product of two doubles.
    pub fn prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// `Re(a conj(b))`, accumulated without rounding the four products.
fn re_mul_conj(a: Quaternion, b: Quaternion) -> Dd {
    Dd::prod(a.w, b.w)
        .add(Dd::prod(a.x, b.x))
        .add(Dd::prod(a.y, b.y))
        .add(Dd::prod(a.z, b.z))
}

/// Coefficients of `f * f^c` in double-double precision. The product is real,
/// so only real parts are accumulated.
pub fn symmetrize(coeffs: &[Quaternion]) -> Vec<Dd> {
    if coeffs.is_empty() {
        return vec![];
    }
    let mut out = vec![Dd::ZERO; 2 * coeffs.len() - 1];
    for (i, &a) in coeffs.iter().enumerate() {
        for (j, &b) in coeffs.iter().enumerate() {
            out[i + j] = out[i + j].add(re_mul_conj(a, b));
        }
    }
    out
}

/// Real polynomial with double-double coefficients, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct DdPoly(pub Vec<Dd>);

impl DdPoly {
    pub fn from_f64(c: &[f64]) -> Self {
        Self(c.iter().map(|&x| Dd::from_f64(x)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c.mul_f64(n as f64))
                .collect(),
        )
    }

    /// Horner evaluation at a double precision point with a double-double
    /// accumulator, rounded at the end.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (mut re, mut im) = (Dd::ZERO, Dd::ZERO);
        for c in self.0.iter().rev() {
            let nre = re.mul_f64(z.re).add(im.mul_f64(z.im).neg()).add(*c);
            let nim = re.mul_f64(z.im).add(im.mul_f64(z.re));
            re = nre;
            im = nim;
        }
        Complex64::new(re.to_f64(), im.to_f64())
    }

    /// `sum |c_n| r^n`, the scale against which values are compared.
    pub fn abs_scale(&self, r: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * r + c.to_f64().abs())
    }
}
