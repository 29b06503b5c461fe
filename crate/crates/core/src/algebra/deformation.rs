use super::AlgebraError;

/// Default width of the band around `q = 1` where the limit branch is used.
pub const DEFAULT_LIMIT_THRESHOLD: f64 = 1e-8;

/// `C_{q,c} = (q^c - q^{-c}) / (c (q - q^{-1}))` with the removable
/// singularity at `q = 1` filled in.
pub fn deformation_constant(q: f64, c: f64) -> Result<f64, AlgebraError> {
    deformation_constant_with_threshold(q, c, DEFAULT_LIMIT_THRESHOLD)
}

pub fn deformation_constant_with_threshold(
    q: f64,
    c: f64,
    threshold: f64,
) -> Result<f64, AlgebraError> {
    check_positive("q", q)?;
    check_positive("c", c)?;
    if (q - 1.0).abs() < threshold {
        // q = e^t: sinh(ct)/(c sinh t) = 1 + (c^2 - 1) t^2 / 6 + O(t^4)
        let t = q.ln();
        return Ok(1.0 + (c * c - 1.0) * t * t / 6.0);
    }
    let num = q.powf(c) - q.powf(-c);
    let den = c * (q.powf(1.0) - q.powf(-1.0));
    Ok(num / den)
}

/// `q^{c/2}`, the numeric value of the parameter `s`.
pub fn half_power(q: f64, c: f64) -> Result<f64, AlgebraError> {
    check_positive("q", q)?;
    check_positive("c", c)?;
    Ok(q.powf(c / 2.0))
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<(), AlgebraError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(AlgebraError::NonPositive { name, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn c_equal_one_gives_one() {
        assert_eq!(deformation_constant(3.0, 1.0).unwrap(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let q: f64 = rng.random_range(0.1..10.0);
            assert_eq!(deformation_constant(q, 1.0).unwrap(), 1.0, "q = {q}");
        }
    }

    #[test]
    fn q_equal_one_is_the_limit() {
        assert_eq!(deformation_constant(1.0, 5.0).unwrap(), 1.0);
        for c in [0.5, 1.0, 2.0, 7.0] {
            let v = deformation_constant(1.0 + 1e-5, c).unwrap();
            assert!((v - 1.0).abs() < 1e-8, "c = {c}: {v}");
            let v = deformation_constant(1.0 - 1e-5, c).unwrap();
            assert!((v - 1.0).abs() < 1e-8, "c = {c}: {v}");
        }
    }

    #[test]
    fn direct_value() {
        // (4 - 1/4) / (2 (2 - 1/2)) = 3.75 / 3
        let v = deformation_constant(2.0, 2.0).unwrap();
        assert!((v - 1.25).abs() < 1e-15);
    }

    #[test]
    fn limit_branch_is_continuous() {
        for c in [0.5, 3.0] {
            let inside = deformation_constant(1.0 + 0.9e-8, c).unwrap();
            let outside = deformation_constant(1.0 + 1.1e-8, c).unwrap();
            assert!((inside - outside).abs() < 1e-7);
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(deformation_constant(0.0, 1.0).is_err());
        assert!(deformation_constant(2.0, -1.0).is_err());
        assert!(deformation_constant(f64::NAN, 1.0).is_err());
    }
}
