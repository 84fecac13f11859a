//! Truncated formal power series with exact integer coefficients.

use std::ops::Add;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<i64>,
}

impl PowerSeries {
    /// The zero series kept up to degree `max_degree`.
    pub fn zero(max_degree: usize) -> Self {
        PowerSeries {
            coeffs: vec![0; max_degree + 1],
        }
    }

    /// `tᵈ`, truncated.
    pub fn monomial(degree: usize, max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        if degree <= max_degree {
            s.coeffs[degree] = 1;
        }
        s
    }

    /// A polynomial given by its coefficients, truncated.
    pub fn from_poly(poly: &[i64], max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        for (c, p) in s.coeffs.iter_mut().zip(poly) {
            *c = *p;
        }
        s
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// Multiplication by `t^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        let mut s = Self::zero(self.max_degree());
        for (k, c) in self.coeffs.iter().enumerate() {
            if k + shift <= self.max_degree() {
                s.coeffs[k + shift] = *c;
            }
        }
        s
    }

    pub fn mul(&self, other: &PowerSeries) -> Self {
        let d = self.max_degree().min(other.max_degree());
        let mut s = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                s.coeffs[i + j] += a * b;
            }
        }
        s
    }

    /// Long division by a polynomial with constant term 1: the quotient
    /// `c` satisfies `c_k = a_k - Σ_{i≥1} den_i c_{k-i}`.
    ///
    /// # Panics
    /// If `den[0] != 1`.
    pub fn div_poly(&self, den: &[i64]) -> Self {
        assert_eq!(den.first(), Some(&1), "divisor must have constant term 1");
        let mut out = Self::zero(self.max_degree());
        for k in 0..=self.max_degree() {
            let mut c = self.coeffs[k];
            for (i, d) in den.iter().enumerate().skip(1).take(k) {
                c -= d * out.coeffs[k - i];
            }
            out.coeffs[k] = c;
        }
        out
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let d = self.max_degree().min(rhs.max_degree());
        PowerSeries {
            coeffs: (0..=d).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }
}

/// `1 - tᵈ` as a coefficient vector.
pub fn one_minus_power(d: usize) -> Vec<i64> {
    let mut p = vec![0; d + 1];
    p[0] = 1;
    p[d] -= 1;
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = PowerSeries::monomial(0, 8).div_poly(&one_minus_power(3));
        assert_eq!(s.coeffs(), &[1, 0, 0, 1, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = PowerSeries::from_poly(&[2, -1, 0, 5, 7], 12);
        let den = [1, 3, 0, -2];
        let q = a.div_poly(&den);
        let back = q.mul(&PowerSeries::from_poly(&den, 12));
        assert_eq!(back, a);
    }

    #[test]
    fn shift_and_add() {
        let a = PowerSeries::monomial(1, 4);
        let b = a.shift(2);
        assert_eq!(b.coeffs(), &[0, 0, 0, 1, 0]);
        assert_eq!((&a + &b).coeffs(), &[0, 1, 0, 1, 0]);
        assert_eq!(b.shift(2).coeffs(), &[0; 5]);
    }
}
