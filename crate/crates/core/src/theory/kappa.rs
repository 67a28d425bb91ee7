//! Grand-average constants `kappa_0`, `kappa_1`, `kappa_mu`.

use crate::error::{Error, Result};
use crate::markov_source::MarkovModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaConstants {
    pub kappa0: f64,
    pub kappa1: f64,
    pub kappa_mu: f64,
}

/// `(kappa_0, kappa_1)`, the means of the two-type fixed-point system.
pub fn kappas(model: &MarkovModel) -> Result<(f64, f64)> {
    if model.b() != 2 {
        return Err(Error::NotBinary(model.b()));
    }
    let (p00, p01) = (model.p(0, 0), model.p(0, 1));
    let (p10, p11) = (model.p(1, 0), model.p(1, 1));
    let s = p00 + p11;
    let denom = 2.0 * s * (1.0 + p00 * p11) - 2.0 * s * s;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::DegenerateKappa { p00, p11 });
    }
    Ok((
        (1.0 + p01 * p01 - p11 * p11) / denom,
        (1.0 + p10 * p10 - p00 * p00) / denom,
    ))
}

/// All three constants; `kappa_mu = mu0^2 kappa_0 + (1 - mu0)^2 kappa_1 + 1`.
pub fn kappa_mu(model: &MarkovModel) -> Result<KappaConstants> {
    let (kappa0, kappa1) = kappas(model)?;
    let mu0 = model.mu()[0];
    Ok(KappaConstants {
        kappa0,
        kappa1,
        kappa_mu: mu0 * mu0 * kappa0 + (1.0 - mu0) * (1.0 - mu0) * kappa1 + 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::mean::MarkovMean;
    use proptest::prelude::*;

    #[test]
    fn uniform_constants_are_two() {
        let k = kappa_mu(&MarkovModel::uniform(2).unwrap()).unwrap();
        assert_eq!((k.kappa0, k.kappa1, k.kappa_mu), (2.0, 2.0, 2.0));
    }

    #[test]
    fn hand_evaluated_constants() {
        let k = kappa_mu(&MarkovModel::binary(0.5, 0.3, 0.6).unwrap()).unwrap();
        assert!((k.kappa0 - 1.13 / 0.504).abs() < 1e-12);
        assert!((k.kappa1 - 1.07 / 0.504).abs() < 1e-12);
        assert!((k.kappa0 - 2.242063).abs() < 1e-6);
        assert!((k.kappa1 - 2.123016).abs() < 1e-6);
        assert!((k.kappa_mu - 2.091270).abs() < 1e-6);
    }

    #[test]
    fn rejects_non_binary() {
        assert_eq!(
            kappas(&MarkovModel::uniform(3).unwrap()),
            Err(Error::NotBinary(3))
        );
    }

    #[test]
    fn kappa_mu_is_mean_of_m_mu() {
        let m = MarkovModel::binary(0.5, 0.3, 0.6).unwrap();
        let mm = MarkovMean::new(&m, 1e-9).unwrap();
        let n = 10_000;
        let integral = (0..n)
            .map(|k| mm.eval((k as f64 + 0.5) / n as f64))
            .sum::<f64>()
            / n as f64;
        assert!((integral - kappa_mu(&m).unwrap().kappa_mu).abs() < 1e-3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn strictly_positive(p00 in 0.0..1.0f64, p11 in 0.0..1.0f64) {
            let Ok(m) = MarkovModel::binary(0.5, p00, p11) else {
                return Ok(());
            };
            let (k0, k1) = kappas(&m).unwrap();
            prop_assert!(k0 > 0.0 && k1 > 0.0);
        }

        #[test]
        fn solves_the_mean_system(p00 in 0.01..0.99f64, p11 in 0.01..0.99f64) {
            let m = MarkovModel::binary(0.5, p00, p11).unwrap();
            let (k0, k1) = kappas(&m).unwrap();
            let r0 = p00 * p00 * k0 + (1.0 - p00) * (1.0 - p00) * k1 + 1.0;
            let r1 = (1.0 - p11) * (1.0 - p11) * k0 + p11 * p11 * k1 + 1.0;
            prop_assert!((r0 - k0).abs() < 1e-9 * k0.max(1.0));
            prop_assert!((r1 - k1).abs() < 1e-9 * k1.max(1.0));
        }
    }
}
