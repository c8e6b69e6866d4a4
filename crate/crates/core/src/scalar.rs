//! Scalar abstraction shared by the linear algebra, cylinder functions and
//! measure embeddings.
//!
//! Exact certificates use [`crate::Rational`]; the same code runs on `f64`
//! or `f32` for quick numeric exploration, where zero tests fall back to an
//! absolute tolerance.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// A field element usable as a matrix entry or a function value.
pub trait Scalar:
    Num + Signed + Clone + Debug + Display + PartialOrd + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    /// Zero test used by elimination. Exact types compare with zero,
    /// floating types use a small absolute tolerance.
    fn is_negligible(&self) -> bool;

    /// `num / den` as a scalar.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer fits scalar") / Self::from_i64(den).expect("integer fits scalar")
    }

    /// Text form used in serialized reports.
    fn to_report_string(&self) -> String {
        self.to_string()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn is_negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_report_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;
    fn is_negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
    fn to_report_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-5
    }
}

/// Serializes a scalar through [`Scalar::to_report_string`].
pub fn serialize_scalar<S: Scalar, Ser: serde::Serializer>(v: &S, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
    ser.serialize_str(&v.to_report_string())
}

pub fn serialize_scalars<S: Scalar, Ser: serde::Serializer>(v: &[S], ser: Ser) -> Result<Ser::Ok, Ser::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_report_string())?;
    }
    seq.end()
}
