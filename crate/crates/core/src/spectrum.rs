//! Multisets of strictly positive eigenvalues, with an optional exact form
//! `{base^e}` over integer exponents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for every comparison of non-exact spectra.
pub const REL_TOL: f64 = 1e-9;

pub(crate) fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Exact multiset `{base^e : e ∈ exponents}` with `0 < base ≤ 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentForm {
    pub base: f64,
    /// Sorted ascending.
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpectrum")]
pub struct EigenSpectrum {
    /// Sorted ascending, all finite and positive.
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exact: Option<ExponentForm>,
}

#[derive(Deserialize)]
struct RawSpectrum {
    values: Vec<f64>,
    #[serde(default)]
    exact: Option<ExponentForm>,
}

impl TryFrom<RawSpectrum> for EigenSpectrum {
    type Error = Error;
    fn try_from(raw: RawSpectrum) -> Result<Self> {
        match raw.exact {
            Some(ex) => Self::from_exponents(ex.base, ex.exponents),
            None => Self::from_values(raw.values),
        }
    }
}

impl EigenSpectrum {
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "spectrum entries must be finite and > 0, got {bad}"
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values, exact: None })
    }

    pub fn from_exponents(base: f64, mut exponents: Vec<i64>) -> Result<Self> {
        if !(base > 0.0 && base <= 1.0) {
            return Err(Error::InvalidArgument(format!("exponent base must lie in (0, 1], got {base}")));
        }
        exponents.sort_unstable();
        let mut values: Vec<f64> = exponents.iter().map(|&e| base.powi(e as i32)).collect();
        values.sort_by(f64::total_cmp);
        Ok(Self { values, exact: Some(ExponentForm { base, exponents }) })
    }

    /// `n` copies of 1.
    pub fn ones(n: usize) -> Self {
        Self::from_exponents(1.0, vec![0; n]).expect("valid base")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn exact(&self) -> Option<&ExponentForm> {
        self.exact.as_ref()
    }

    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// Trace; summed in ascending order.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Trace of the inverse.
    pub fn sum_inverse(&self) -> f64 {
        self.values.iter().rev().map(|x| 1.0 / x).sum()
    }

    pub fn inverse(&self) -> Self {
        match &self.exact {
            Some(ex) => Self::from_exponents(ex.base, ex.exponents.iter().map(|e| -e).collect())
                .expect("valid base"),
            None => Self {
                values: self.values.iter().rev().map(|x| 1.0 / x).collect(),
                exact: None,
            },
        }
    }

    /// Multiset of pairwise products; exact when both sides share a base.
    pub fn tensor(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            if let Some(base) = common_base(a, b) {
                let exps = a
                    .exponents
                    .iter()
                    .flat_map(|x| b.exponents.iter().map(move |y| x + y))
                    .collect();
                return Self::from_exponents(base, exps).expect("valid base");
            }
        }
        let mut values: Vec<f64> = self
            .values
            .iter()
            .flat_map(|x| other.values.iter().map(move |y| x * y))
            .collect();
        values.sort_by(f64::total_cmp);
        Self { values, exact: None }
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            if let Some(base) = common_base(a, b) {
                let exps = a.exponents.iter().chain(&b.exponents).copied().collect();
                return Self::from_exponents(base, exps).expect("valid base");
            }
        }
        let mut values: Vec<f64> = self.values.iter().chain(&other.values).copied().collect();
        values.sort_by(f64::total_cmp);
        Self { values, exact: None }
    }

    /// Multiset difference `self ⊖ other`. Fails when some entry of `other`
    /// has no match in `self` (exactly, or within `tol` relative).
    pub fn subtract(&self, other: &Self, tol: f64) -> std::result::Result<Self, String> {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            if let Some(base) = common_base(a, b) {
                let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
                for e in &a.exponents {
                    *counts.entry(*e).or_insert(0) += 1;
                }
                for e in &b.exponents {
                    let c = counts.entry(*e).or_insert(0);
                    *c -= 1;
                    if *c < 0 {
                        return Err(format!("exponent {e} has negative multiplicity"));
                    }
                }
                let exps = counts
                    .into_iter()
                    .flat_map(|(e, c)| std::iter::repeat_n(e, c as usize))
                    .collect();
                return Ok(Self::from_exponents(base, exps).expect("valid base"));
            }
        }
        let sub = &other.values;
        let mut j = 0;
        let mut kept = Vec::with_capacity(self.values.len().saturating_sub(sub.len()));
        for &a in &self.values {
            if j < sub.len() && close(a, sub[j], tol) {
                j += 1;
                continue;
            }
            if j < sub.len() && sub[j] < a {
                return Err(format!("eigenvalue {} has negative multiplicity", sub[j]));
            }
            kept.push(a);
        }
        if j < sub.len() {
            return Err(format!("eigenvalue {} has negative multiplicity", sub[j]));
        }
        Ok(Self { values: kept, exact: None })
    }

    /// Equality as multisets: exact forms compare exactly, otherwise entries
    /// are matched in sorted order within `tol` relative.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            if common_base(a, b).is_some() {
                return a.exponents == b.exponents;
            }
        }
        self.len() == other.len()
            && self.values.iter().zip(&other.values).all(|(x, y)| close(*x, *y, tol))
    }

    /// All entries equal 1 (exactly for exact forms, else within `tol`).
    pub fn is_trivial(&self, tol: f64) -> bool {
        match &self.exact {
            Some(ex) if ex.base == 1.0 || ex.exponents.iter().all(|e| *e == 0) => true,
            Some(_) => false,
            None => self.values.iter().all(|x| close(*x, 1.0, tol)),
        }
    }

    /// Drops the exact form, keeping only the numeric values.
    pub fn to_numeric(&self) -> Self {
        Self { values: self.values.clone(), exact: None }
    }
}

fn common_base(a: &ExponentForm, b: &ExponentForm) -> Option<f64> {
    if a.base == b.base {
        Some(a.base)
    } else if a.exponents.iter().all(|e| *e == 0) {
        Some(b.base)
    } else if b.exponents.iter().all(|e| *e == 0) {
        Some(a.base)
    } else {
        None
    }
}

/// Spectrum of `j*j` for a tensor product of standard solutions.
pub fn tensor_jj_spectrum(s1: &EigenSpectrum, s2: &EigenSpectrum) -> EigenSpectrum {
    s1.tensor(s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        assert!(EigenSpectrum::from_values(vec![1.0, 0.0]).is_err());
        assert!(EigenSpectrum::from_values(vec![f64::NAN]).is_err());
        assert!(EigenSpectrum::from_exponents(2.0, vec![1]).is_err());
    }

    #[test]
    fn tensor_exact() {
        let q = 0.5;
        let s = EigenSpectrum::from_exponents(q, vec![1, -1]).unwrap();
        let t = tensor_jj_spectrum(&s, &s);
        assert_eq!(t.exact().unwrap().exponents, vec![-2, 0, 0, 2]);
        assert_eq!(t.values(), &[0.25, 1.0, 1.0, 4.0]);
        assert_eq!(t.max(), Some(s.max().unwrap() * s.max().unwrap()));
        assert_eq!(tensor_jj_spectrum(&s, &EigenSpectrum::ones(1)), s);
    }

    #[test]
    fn tensor_float() {
        let a = EigenSpectrum::from_values(vec![2.0, 0.5, 1.0]).unwrap();
        let b = EigenSpectrum::from_values(vec![3.0]).unwrap();
        let t = a.tensor(&b);
        assert_eq!(t.values(), &[1.5, 3.0, 6.0]);
        assert!(t.exact().is_none());
    }

    #[test]
    fn subtraction() {
        let a = EigenSpectrum::from_values(vec![0.5, 1.0, 1.0, 2.0]).unwrap();
        let b = EigenSpectrum::from_values(vec![1.0 + 1e-12]).unwrap();
        let d = a.subtract(&b, REL_TOL).unwrap();
        assert_eq!(d.values(), &[0.5, 1.0, 2.0]);
        let c = EigenSpectrum::from_values(vec![3.0]).unwrap();
        assert!(a.subtract(&c, REL_TOL).is_err());
        let e = EigenSpectrum::from_values(vec![0.1]).unwrap();
        assert!(a.subtract(&e, REL_TOL).is_err());

        let x = EigenSpectrum::from_exponents(0.5, vec![-2, 0, 0, 2]).unwrap();
        let y = EigenSpectrum::from_exponents(0.5, vec![0]).unwrap();
        assert_eq!(x.subtract(&y, REL_TOL).unwrap().exact().unwrap().exponents, vec![-2, 0, 2]);
        assert!(y.subtract(&x, REL_TOL).is_err());
    }

    #[test]
    fn inverse_and_sums() {
        let s = EigenSpectrum::from_exponents(0.5, vec![2, 0, -2]).unwrap();
        assert_eq!(s.sum(), 5.25);
        assert_eq!(s.sum_inverse(), 5.25);
        assert_eq!(s.inverse(), s);
        let f = EigenSpectrum::from_values(vec![0.25, 2.0]).unwrap();
        assert_eq!(f.inverse().values(), &[0.5, 4.0]);
        assert!(EigenSpectrum::ones(3).is_trivial(REL_TOL));
        assert!(!f.is_trivial(REL_TOL));
    }

    #[test]
    fn serde_validates() {
        let s = EigenSpectrum::from_exponents(0.5, vec![1, -1]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<EigenSpectrum>(&json).unwrap(), s);
        assert!(serde_json::from_str::<EigenSpectrum>(r#"{"values":[-1.0]}"#).is_err());
    }
}
