//! Exact rational λ-expansions of the trigonometric pieces of the GV
//! formula, written as series in `x = λ²`.

use crate::rational::{factorial, Rational};
use crate::series::QSeries;
use num_bigint::BigInt;

/// `cos λ = Σ (-1)^m x^m / (2m)!`.
pub fn cos_series(x_order: usize) -> QSeries {
    QSeries::from_coeffs(
        x_order,
        (0..=x_order).map(|m| {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            Rational::new(BigInt::from(sign), factorial(2 * m as u64))
        }),
    )
}

/// `2 sin(λ/2) / λ = Σ (-1)^m x^m / (4^m (2m+1)!)`.
pub fn half_angle_sinc(x_order: usize) -> QSeries {
    QSeries::from_coeffs(
        x_order,
        (0..=x_order).map(|m| {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            Rational::new(
                BigInt::from(sign),
                BigInt::from(4).pow(m as u32) * factorial(2 * m as u64 + 1),
            )
        }),
    )
}

/// `(2 - 2 cos λ) / λ² = (2 sin(λ/2) / λ)²`.
pub fn two_minus_two_cos_over_x(x_order: usize) -> QSeries {
    let c = cos_series(x_order + 1);
    // drop the constant 2 - 2 = 0 and shift down by one power of x
    QSeries::from_coeffs(
        x_order,
        (1..=x_order + 1).map(|m| -c.coeff(m) * Rational::from_integer(2.into())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn sinc_squared_matches_cosine_form() {
        let s = half_angle_sinc(6);
        assert_eq!(s.mul(&s), two_minus_two_cos_over_x(6));
        assert_eq!(s.coeff(1), &rat(-1, 24));
        assert_eq!(cos_series(2).coeff(2), &rat(1, 24));
        assert_eq!(two_minus_two_cos_over_x(1).coeff(0), &int(1));
    }
}
