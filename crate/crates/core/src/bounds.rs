//! Closed-form face counts for the Scarf, L and Taylor complexes of
//! `E_q^r`, projective dimensions, and shape diagnostics of the betti
//! vectors.
//!
//! Homological degree `i` counts `i`-dimensional faces, i.e. faces with
//! `i + 1` vertices, so `β_0` is the number of generators.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binom(n: &BigUint, k: i64) -> BigUint {
    if k < 0 {
        return BigUint::zero();
    }
    let k = k as u64;
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    // Use the smaller of k and n - k when n is small enough to tell.
    let k = match n.to_u64() {
        Some(nn) => k.min(nn - k),
        None => k,
    };
    let mut acc = BigUint::one();
    let base = n - BigUint::from(k);
    for j in 1..=k {
        acc *= &base + BigUint::from(j);
        acc /= BigUint::from(j);
    }
    acc
}

/// `C(n, k)` for a machine-sized `n`; zero when `n < 0`.
pub fn binom_i(n: i64, k: i64) -> BigUint {
    if n < 0 {
        return BigUint::zero();
    }
    binom(&BigUint::from(n as u64), k)
}

fn c(n: i64, k: i64) -> i64 {
    binom_i(n, k).to_i64().expect("small binomial")
}

fn check_q(q: u64) -> Result<()> {
    if q == 0 {
        return domain("bounds need q >= 1");
    }
    Ok(())
}

/// The number of `i`-faces of the Scarf complex of `E_q^r` for `r ≤ 3`.
pub fn beta_bound(q: u64, r: u32, i: u64) -> Result<BigUint> {
    check_q(q)?;
    let (qi, ii) = (q as i64, i as i64);
    match r {
        1 => Ok(binom_i(qi, ii + 1)),
        2 => Ok(binom_i(c(qi, 2), ii + 1) + binom_i(qi - 1, ii) * q),
        3 if i == 0 => Ok(binom_i(qi + 2, 3)),
        3 => Ok(beta_r3_closed(qi, ii)),
        _ => Err(Error::Unsupported(format!(
            "no closed formula for r = {r}; only r <= 3"
        ))),
    }
}

fn beta_r3_closed(q: i64, i: i64) -> BigUint {
    let qb = BigUint::from(q as u64);
    let m = c(q - 1, 2);
    let mut total = binom_i(c(q, 3), i + 1)
        + &qb * binom_i(q - 1, i)
        + binom_i(q, 2) * binom_i(q - 2, i - 1);
    for s in 2..=q - 3 {
        total += &qb * binom_i(q - 1, s - 1) * binom_i(c(q - s, 3) + m, i - s + 2);
    }
    total += &qb * BigUint::from(m as u64) * binom_i(m, i - q + 4);
    total += &qb * BigUint::from((q - 1) as u64) * binom_i(m, i - q + 3);
    total += &qb * binom_i(m, i - q + 2);
    total
}

/// The r = 3 count in the form before the Vandermonde simplification, kept
/// as an independent path. Valid for `i ≥ 1`.
pub fn beta_bound_r3_unsimplified(q: u64, i: u64) -> Result<BigUint> {
    check_q(q)?;
    if i == 0 {
        return domain("the unsimplified form is stated for i >= 1");
    }
    let (q, i) = (q as i64, i as i64);
    let qb = BigUint::from(q as u64);
    let m = c(q - 1, 2);
    let mut total = binom_i(c(q, 3), i + 1)
        + &qb * (binom_i(c(q, 2), i + 1) - binom_i(m, i + 1))
        + &qb * binom_i(q - 1, i)
        + binom_i(q, 2) * binom_i(q - 2, i - 1);
    for s in 2..=q - 3 {
        total += &qb
            * binom_i(q - 1, s - 1)
            * (binom_i(c(q - s, 3) + m, i - s + 2) - binom_i(m, i - s + 2));
    }
    Ok(total)
}

/// Faces of the full Taylor simplex on `C(q+r−1, r)` vertices.
pub fn taylor_bound(q: u64, r: u32, i: u64) -> Result<BigUint> {
    check_q(q)?;
    let n = binom_i(q as i64 + r as i64 - 1, r as i64);
    Ok(binom(&n, i as i64 + 1))
}

/// Faces of the L-complex for `r = 3`.
pub fn l_bound(q: u64, r: u32, i: u64) -> Result<BigUint> {
    check_q(q)?;
    if r != 3 {
        return Err(Error::Unsupported(format!("the L-complex count needs r = 3, got {r}")));
    }
    let (q, i) = (q as i64, i as i64);
    Ok(binom_i(q - 1, i) * BigUint::from(q as u64) + binom_i(c(q, 3) + 2 * c(q, 2), i + 1))
}

/// Dimension of the Scarf complex of `E_q^r`.
pub fn pd_bound(q: u64, r: u32) -> Result<u64> {
    check_q(q)?;
    let qi = q as i64;
    Ok(match r {
        1 => q - 1,
        2 if q >= 3 => c(qi, 2) as u64 - 1,
        2 => q - 1,
        3 if q >= 5 => c(qi, 3) as u64 - 1,
        3 if q >= 3 => c(qi, 2) as u64 - 1,
        3 => q - 1,
        _ => {
            return Err(Error::Unsupported(format!(
                "no projective dimension formula for r = {r}"
            )))
        }
    })
}

/// A betti vector with its shape diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub q: u64,
    pub r: u32,
    /// `values[i] = β_i` for `0 ≤ i ≤ pd`.
    pub values: Vec<BigUint>,
    pub log_concave: bool,
    pub unimodal: bool,
    /// `β_pd`.
    pub top_value: BigUint,
}

pub fn betti_vector(q: u64, r: u32) -> Result<BettiVector> {
    let pd = pd_bound(q, r)?;
    let values = (0..=pd)
        .map(|i| beta_bound(q, r, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(BettiVector {
        q,
        r,
        log_concave: is_log_concave(&values),
        unimodal: is_unimodal(&values),
        top_value: values.last().cloned().unwrap_or_default(),
        values,
    })
}

/// `v_i² ≥ v_{i−1} v_{i+1}` at every interior index of the positive run.
pub fn is_log_concave(values: &[BigUint]) -> bool {
    let pos: Vec<&BigUint> = values.iter().filter(|v| !v.is_zero()).collect();
    pos.windows(3).all(|w| w[1] * w[1] >= w[0] * w[2])
}

/// No strict increase after a strict decrease.
pub fn is_unimodal(values: &[BigUint]) -> bool {
    let mut descending = false;
    for w in values.windows(2) {
        if w[1] < w[0] {
            descending = true;
        } else if w[1] > w[0] && descending {
            return false;
        }
    }
    true
}

/// One homological degree of a bound comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub i: u64,
    pub scarf: Option<BigUint>,
    pub l: Option<BigUint>,
    pub taylor: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTable {
    pub q: u64,
    pub r: u32,
    pub rows: Vec<BoundRow>,
}

/// Scarf, L and Taylor counts for each `i` in `degrees`. Columns without a
/// formula for this `r` are left empty.
pub fn bound_table(q: u64, r: u32, degrees: impl IntoIterator<Item = u64>) -> Result<BoundTable> {
    check_q(q)?;
    let rows = degrees
        .into_iter()
        .map(|i| {
            Ok(BoundRow {
                i,
                scarf: (r <= 3).then(|| beta_bound(q, r, i)).transpose()?,
                l: (r == 3).then(|| l_bound(q, r, i)).transpose()?,
                taylor: taylor_bound(q, r, i)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable { q, r, rows })
}

/// Exact ratios of the Taylor and L counts to the Scarf count at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRow {
    pub i: u64,
    pub scarf: BigUint,
    pub l: BigUint,
    pub taylor: BigUint,
    /// `None` where the Scarf count is zero.
    pub taylor_over_scarf: Option<BigRational>,
    pub l_over_scarf: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioDiagnostics {
    pub q: u64,
    pub rows: Vec<RatioRow>,
    /// Degree and value of the largest Taylor/Scarf ratio.
    pub max_taylor_ratio: (u64, BigRational),
    pub max_l_ratio: (u64, BigRational),
}

/// Largest `q` accepted by [`ratio_diagnostics`].
pub const MAX_RATIO_Q: u64 = 10;

/// Ratios for every degree of the Taylor simplex of `E_q^3`.
pub fn ratio_diagnostics(q: u64) -> Result<RatioDiagnostics> {
    check_q(q)?;
    if q > MAX_RATIO_Q {
        return Err(Error::Resource(format!(
            "ratio diagnostics are capped at q = {MAX_RATIO_Q}"
        )));
    }
    let vertices = binom_i(q as i64 + 2, 3).to_u64().expect("small");
    let ratio = |a: &BigUint, b: &BigUint| {
        (!b.is_zero()).then(|| BigRational::new(a.clone().into(), b.clone().into()))
    };
    let rows = (0..vertices)
        .map(|i| {
            let scarf = beta_bound(q, 3, i)?;
            let l = l_bound(q, 3, i)?;
            let taylor = taylor_bound(q, 3, i)?;
            Ok(RatioRow {
                i,
                taylor_over_scarf: ratio(&taylor, &scarf),
                l_over_scarf: ratio(&l, &scarf),
                scarf,
                l,
                taylor,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = |pick: fn(&RatioRow) -> &Option<BigRational>| {
        rows.iter()
            .filter_map(|row| pick(row).clone().map(|v| (row.i, v)))
            .fold(None, |acc: Option<(u64, BigRational)>, (i, v)| match acc {
                Some((_, ref b)) if *b >= v => acc,
                _ => Some((i, v)),
            })
            .expect("beta_0 is positive")
    };
    let max_taylor_ratio = best(|row| &row.taylor_over_scarf);
    let max_l_ratio = best(|row| &row.l_over_scarf);
    Ok(RatioDiagnostics {
        q,
        rows,
        max_taylor_ratio,
        max_l_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binom_i(56, 3), b(27720));
        assert_eq!(binom_i(7, 0), b(1));
        assert_eq!(binom_i(0, 0), b(1));
        assert_eq!(binom_i(3, 4), b(0));
        assert_eq!(binom_i(3, -1), b(0));
        assert_eq!(binom_i(-1, 0), b(0));
    }

    #[test]
    fn six_three_rows() {
        assert_eq!(beta_bound(6, 3, 2).unwrap(), b(4710));
        assert_eq!(beta_bound(6, 3, 3).unwrap(), b(19845));
        assert_eq!(beta_bound(6, 3, 4).unwrap(), b(58530));
        assert_eq!(beta_bound(6, 3, 20).unwrap(), b(0));
        assert_eq!(taylor_bound(6, 3, 20).unwrap(), b(1346766106565880));
        assert_eq!(l_bound(6, 3, 3).unwrap(), b(230360));
        // The L value 10272278170 = C(50, 40) sits at degree 39.
        assert_eq!(l_bound(6, 3, 39).unwrap(), b(10272278170));
    }

    #[test]
    fn small_cases() {
        assert_eq!(beta_bound(1, 1, 0).unwrap(), b(1));
        assert_eq!(beta_bound(2, 1, 1).unwrap(), b(1));
        assert_eq!(beta_bound(3, 3, 0).unwrap(), b(10));
        assert!(matches!(beta_bound(3, 4, 0), Err(Error::Unsupported(_))));
        assert!(l_bound(3, 2, 0).is_err());
        assert_eq!(taylor_bound(2, 1, 2).unwrap(), b(0));
    }

    #[test]
    fn projective_dimensions() {
        assert_eq!(pd_bound(6, 3).unwrap(), 19);
        assert_eq!(pd_bound(4, 3).unwrap(), 5);
        assert_eq!(pd_bound(1, 3).unwrap(), 0);
        assert_eq!(pd_bound(2, 2).unwrap(), 1);
    }

    #[test]
    fn betti_shape() {
        let v = betti_vector(2, 1).unwrap();
        assert_eq!(v.values, vec![b(2), b(1)]);
        assert!(v.log_concave && v.unimodal);
        assert_eq!(betti_vector(6, 3).unwrap().top_value, b(1));
        assert!(!is_unimodal(&[b(1), b(3), b(2), b(4)]));
        assert!(!is_log_concave(&[b(1), b(1), b(4)]));
    }

    #[test]
    fn ratio_examples() {
        let d = ratio_diagnostics(6).unwrap();
        let r = |n: u64, m: u64| BigRational::new(n.into(), m.into());
        assert_eq!(d.rows[2].taylor_over_scarf, Some(r(27720, 4710)));
        assert_eq!(d.rows[4].taylor_over_scarf, Some(r(3819816, 58530)));
        assert_eq!(d.rows[0].taylor_over_scarf, Some(r(1, 1)));
        assert_eq!(d.rows[30].taylor_over_scarf, None);
        assert!(ratio_diagnostics(11).is_err());
    }
}
