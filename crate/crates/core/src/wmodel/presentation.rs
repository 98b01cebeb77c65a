use std::sync::Arc;

use num_integer::Integer;

use super::{CuntzClass, WModel};
use crate::error::{Error, Result};
use crate::ordmon::smith::smith_form;
use crate::ordmon::MonoidPresentation;
use crate::scalar::Scalar;

impl<T: Scalar> WModel<T> {
    /// `Σ cᵢ·xᵢ` for non-negative coefficients.
    pub fn combination(&self, classes: &[CuntzClass<T>], coeffs: &[u64]) -> Result<CuntzClass<T>> {
        if coeffs.len() != classes.len() {
            return Err(Error::dim(classes.len(), coeffs.len()));
        }
        let mut acc = self.zero_class();
        for (x, &c) in classes.iter().zip(coeffs) {
            for _ in 0..c {
                acc = self.add(&acc, x)?;
            }
        }
        Ok(acc)
    }

    /// Presents the submonoid generated by `classes`.
    ///
    /// Relations are a basis of the integer kernel of the `K₀*` image
    /// matrix, split into positive and negative parts; the order oracle
    /// evaluates both combinations in the model and compares them.
    pub fn presentation_from_classes(
        &self,
        classes: &[CuntzClass<T>],
    ) -> Result<MonoidPresentation> {
        if classes.is_empty() {
            return Err(Error::invalid("need at least one generator"));
        }
        for x in classes {
            self.validate_class(x)?;
        }
        let m = classes.len();
        let images: Vec<Vec<T>> = classes
            .iter()
            .map(|x| self.gamma(x))
            .collect::<Result<_>>()?;
        let n = self.trace_count();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let lcm = images
                    .iter()
                    .map(|col| {
                        col[i]
                            .denom_i64()
                            .ok_or_else(|| Error::invalid("denominator overflow"))
                    })
                    .try_fold(1i64, |acc, d| d.map(|d| acc.lcm(&d)))?;
                images
                    .iter()
                    .map(|col| {
                        (col[i].clone() * T::from_int(lcm))
                            .to_i64_exact()
                            .ok_or_else(|| Error::invalid("numerator overflow"))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let relations = smith_form(&rows, m)
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let lhs = k.iter().map(|&c| c.max(0) as u64).collect();
                let rhs = k.iter().map(|&c| (-c).max(0) as u64).collect();
                (lhs, rhs)
            })
            .collect();
        let model = self.clone();
        let gens = classes.to_vec();
        let oracle = Arc::new(move |a: &[u64], b: &[u64]| {
            let x = model.combination(&gens, a).expect("valid generators");
            let y = model.combination(&gens, b).expect("valid generators");
            model.compare(&x, &y).expect("valid generators")
        });
        Ok(MonoidPresentation::new(m, relations)?.with_oracle(oracle))
    }
}
