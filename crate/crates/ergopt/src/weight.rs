//! The scalar type underlying all optimisation.
//!
//! Every algorithm in this crate compares suprema exactly, so the scalar must
//! form an *ordered field with exact arithmetic*: `BigRational` is the default
//! (see [`crate::Rational`]), `Ratio<i64>` works for small inputs. Floating
//! point types do not qualify (no total order, no exact comparison) and are
//! used only when rendering reports.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{Error, Result};
use crate::Rational;

/// Exact ordered-field scalar used for edge weights, cycle means and slopes.
///
/// Blanket-implemented for any type with exact `num_traits` field arithmetic
/// and a total order.
pub trait Weight: Num + Signed + Ord + Clone + FromPrimitive + Debug + Display + 'static {
    /// Embeds a (small, positive) count such as a cycle length.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in weight type")
    }
}

impl<T> Weight for T where T: Num + Signed + Ord + Clone + FromPrimitive + Debug + Display + 'static {}

/// Parses an exact rational from `"num/den"` or a plain decimal integer.
///
/// This is the weight syntax of all input documents. No floating point is
/// involved; the result is canonical (reduced, positive denominator).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Format(format!("expected integer or num/den rational, got {text:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(Error::Format(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `num/den`, always including the denominator.
///
/// Machine outputs use this form exclusively so that replays are
/// byte-identical; `2` prints as `2/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Fixed 6-decimal approximation for human-readable tables.
///
/// The only place floats appear; the exact `num/den` rendering stays
/// authoritative.
pub fn approx_decimal(q: &Rational) -> String {
    use num_traits::ToPrimitive;
    match q.to_f64() {
        Some(x) => format!("{x:.6}"),
        None => "?".to_string(),
    }
}
