use super::exponent::ExtendedExponent;

/// `(sum |g|^u)^{1/u}`, or `max |g|` for `u = inf`. Entries are magnitudes.
pub fn lp_norm(g: &[f64], u: ExtendedExponent) -> f64 {
    match u {
        ExtendedExponent::Infinite => g.iter().fold(0.0_f64, |m, &x| m.max(x.abs())),
        ExtendedExponent::Finite(_) => {
            let p = u.to_f64();
            if p == 1.0 {
                return g.iter().map(|x| x.abs()).sum();
            }
            if p == 2.0 {
                return g.iter().map(|x| x * x).sum::<f64>().sqrt();
            }
            // Scale by the max to avoid overflow for large p.
            let m = g.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
            if m == 0.0 {
                return 0.0;
            }
            m * g
                .iter()
                .map(|x| (x.abs() / m).powf(p))
                .sum::<f64>()
                .powf(1.0 / p)
        }
    }
}

/// `q^alpha` for a rational exponent, evaluated as `exp(alpha ln q)`.
pub fn q_power(q: u32, alpha: num_rational::Rational64) -> f64 {
    let a = *alpha.numer() as f64 / *alpha.denom() as f64;
    (a * (q as f64).ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtendedExponent as E;

    #[test]
    fn simple_norms() {
        let ones = vec![1.0; 16];
        assert!((lp_norm(&ones, E::int(2)) - 4.0).abs() < 1e-12);
        assert_eq!(lp_norm(&ones, E::Infinite), 1.0);
        assert!((lp_norm(&[3.0, 4.0], E::ratio(3, 1)) - 91f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert_eq!(lp_norm(&[], E::int(3)), 0.0);
    }
}
