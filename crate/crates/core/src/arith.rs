//! Checked integer arithmetic. Every value in the engine is an `i64`; any
//! overflow aborts the computation with [`Error::Overflow`].

use crate::error::{Error, Result};

#[inline]
pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `(-1)^e`
#[inline]
pub(crate) fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sum of products `Σ a_i · b_i`.
pub(crate) fn dot<I>(pairs: I) -> Result<i64>
where
    I: IntoIterator<Item = (i64, i64)>,
{
    pairs
        .into_iter()
        .try_fold(0i64, |acc, (a, b)| add(acc, mul(a, b)?))
}
