//! Union bound for clique minors in the maximal bipartite subgraphs of the
//! subdivided-clique construction.
//!
//! With `s = n / sqrt(log2 n - 3 log2 log2 n)`, the probability that some
//! maximal bipartite subgraph has a `K_s` minor is at most
//! `2^n * n^n * exp(-C(s,2) * 2^(-n^2/s^2))`. The power of two in the
//! exponent underflows for any interesting `n`, so everything is evaluated
//! as a natural logarithm.

use astro_float::{BigFloat, Consts, RoundingMode};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bits of precision used by the verification path.
pub const PRECISE_BITS: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEvaluation {
    pub n: u64,
    /// `log2 n - 3 log2 log2 n`, which equals `n^2 / s^2`.
    pub radicand: f64,
    pub s: f64,
    /// `n ln 2 + n ln n`, the log of the number of bipartitions times the
    /// number of partitions.
    pub log_count: f64,
    /// `C(s,2) * 2^(-radicand)`, the exponent of the compatibility bound.
    pub compatible_exponent: f64,
    /// Natural log of the whole union bound; negative means the bound is
    /// below one.
    pub log_failure_bound: f64,
}

fn radicand(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::FormulaUndefined { n });
    }
    let l = (n as f64).log2();
    let r = l - 3.0 * l.log2();
    if r > 0.0 {
        Ok(r)
    } else {
        Err(Error::FormulaUndefined { n })
    }
}

pub fn bce_probability_bound(n: u64) -> Result<BoundEvaluation> {
    let r = radicand(n)?;
    let nf = n as f64;
    let s = nf / r.sqrt();
    let log_count = nf * std::f64::consts::LN_2 + nf * nf.ln();
    let compatible_exponent = if s > 1.0 {
        let ln_term = s.ln() + (s - 1.0).ln() - std::f64::consts::LN_2 - r * std::f64::consts::LN_2;
        ln_term.exp()
    } else {
        // C(s,2) <= 0 here; the exponent is tiny and needs no log form
        0.5 * s * (s - 1.0) * (-r * std::f64::consts::LN_2).exp()
    };
    Ok(BoundEvaluation {
        n,
        radicand: r,
        s,
        log_count,
        compatible_exponent,
        log_failure_bound: log_count - compatible_exponent,
    })
}

fn to_f64(x: &BigFloat) -> f64 {
    x.to_string()
        .parse()
        .expect("BigFloat renders as a decimal float")
}

/// The same quantity as [`BoundEvaluation::log_failure_bound`], evaluated
/// from scratch with 256-bit binary floating point.
pub fn bce_log_failure_bound_precise(n: u64) -> Result<f64> {
    radicand(n)?;
    let p = PRECISE_BITS;
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("constants cache");
    let nb = BigFloat::from_u64(n, p);
    let one = BigFloat::from_u64(1, p);
    let two = BigFloat::from_u64(2, p);
    let three = BigFloat::from_u64(3, p);

    let ln2 = two.ln(p, rm, &mut cc);
    let ln_n = nb.ln(p, rm, &mut cc);
    let log2_n = ln_n.div(&ln2, p, rm);
    let log2_log2_n = log2_n.ln(p, rm, &mut cc).div(&ln2, p, rm);
    let r = log2_n.sub(&three.mul(&log2_log2_n, p, rm), p, rm);
    let s = nb.div(&r.sqrt(p, rm), p, rm);
    // C(s,2) * 2^(-n^2/s^2), with n^2/s^2 recomputed rather than reusing r
    let ratio = nb.mul(&nb, p, rm).div(&s.mul(&s, p, rm), p, rm);
    let pair_count = s.mul(&s.sub(&one, p, rm), p, rm).div(&two, p, rm);
    let decay = ratio.neg().mul(&ln2, p, rm).exp(p, rm, &mut cc);
    let exponent = pair_count.mul(&decay, p, rm);
    let log_count = nb.mul(&ln2, p, rm).add(&nb.mul(&ln_n, p, rm), p, rm);
    Ok(to_f64(&log_count.sub(&exponent, p, rm)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_2_16_is_negative() {
        let b = bce_probability_bound(1 << 16).unwrap();
        // log2 n = 16, log2 log2 n = 4: radicand 4, s = 2^15
        assert_eq!(b.radicand, 4.0);
        assert_eq!(b.s, 32768.0);
        // C(2^15, 2) / 16 exactly
        let exact = 32768.0 * 32767.0 / 2.0 / 16.0;
        assert!((b.compatible_exponent - exact).abs() / exact < 1e-12);
        assert!((b.log_count - 772_243.0).abs() < 1.0);
        assert!(b.log_failure_bound < 0.0);
    }

    #[test]
    fn small_n_is_undefined() {
        assert_eq!(bce_probability_bound(256), Err(Error::FormulaUndefined { n: 256 }));
        assert!(bce_probability_bound(1).is_err());
        assert!(bce_probability_bound(0).is_err());
    }

    #[test]
    fn decreasing_in_n() {
        let v: Vec<f64> = [16, 20, 24]
            .iter()
            .map(|&k| bce_probability_bound(1 << k).unwrap().log_failure_bound)
            .collect();
        assert!(v[0] > v[1] && v[1] > v[2], "{v:?}");
    }

    #[test]
    fn precise_path_agrees() {
        for k in [16u32, 18, 20, 24, 30] {
            let n = 1u64 << k;
            let fast = bce_probability_bound(n).unwrap().log_failure_bound;
            let precise = bce_log_failure_bound_precise(n).unwrap();
            let rel = ((fast - precise) / precise).abs();
            assert!(rel < 1e-9, "n = 2^{k}: {fast} vs {precise}");
        }
    }
}
