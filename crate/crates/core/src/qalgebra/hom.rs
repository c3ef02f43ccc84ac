use super::{Algebra, AlgebraElement, Tag};
use crate::ratmat::RatMatrix;
use crate::{Error, Q};

/// Algebra homomorphism given on generators: images of `e_i`, `f_i`, and a
/// linear map on Cartan exponents (row `p` is the image of `Y_p`).
#[derive(Clone, Debug)]
pub struct Hom {
    pub source: Tag,
    pub e_images: Vec<AlgebraElement>,
    pub f_images: Vec<AlgebraElement>,
    pub cartan_map: RatMatrix,
}

impl Hom {
    fn cartan_image(&self, y: &[Q]) -> Vec<Q> {
        let n = self.cartan_map.first().map_or(0, Vec::len);
        (0..n)
            .map(|r| y.iter().zip(&self.cartan_map).map(|(a, row)| a * row[r]).sum())
            .collect()
    }

    /// Apply to `x`, multiplying out in `target`.
    pub fn apply(&self, target: &Algebra, x: &AlgebraElement) -> Result<AlgebraElement, Error> {
        if *x.tag() != self.source {
            return Err(Error::RealizationMismatch(format!(
                "homomorphism defined on {:?}, applied to {:?}",
                self.source,
                x.tag()
            )));
        }
        let mut out = target.zero();
        for (m, c) in x.terms() {
            let mut acc = target.scalar(c.clone());
            for &i in &m.f {
                acc = target.mul(&acc, &self.f_images[i])?;
            }
            acc = target.mul(&acc, &target.cartan_exp(&self.cartan_image(&m.cartan)))?;
            for &i in &m.e {
                acc = target.mul(&acc, &self.e_images[i])?;
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}
