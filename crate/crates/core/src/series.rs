use std::ops::Deref;

use crate::error::{Error, Result};

/// A finite measurement sequence, the first layer of every diagram.
///
/// The length is fixed at construction and every value is guaranteed finite.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Series(Vec<f64>);

impl Series {
    /// Wraps `values`, rejecting NaN and infinities.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Series(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Applies `v -> scale * v + offset` to every value.
    pub fn affine(&self, scale: f64, offset: f64) -> Result<Self> {
        Series::new(self.0.iter().map(|v| scale * v + offset).collect())
    }
}

impl Deref for Series {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Series {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Series::new(values)
    }
}

impl TryFrom<&[f64]> for Series {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        Series::new(values.to_vec())
    }
}

pub(crate) fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}
