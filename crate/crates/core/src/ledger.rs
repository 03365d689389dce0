//! Dimension-dependent constants of the thick-thin and nerve constructions.
//!
//! The integer constants grow far past `f64` range (`ν₀` alone has hundreds
//! of digits for `n = 2`), so they are kept as exact big integers and the
//! real-valued ones (`C`, `E(k, n)`, `F`) as natural logarithms.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cover::packing::{euclidean_ball_volume, n_packing};
use crate::error::{Error, Result};

pub const DEFAULT_MARGULIS_EPS_2D: f64 = 0.32;
pub const DEFAULT_MARGULIS_INDEX_2D: u64 = 100;

/// A positive real stored as its natural logarithm.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Magnitude {
    ln: f64,
}

impl Magnitude {
    pub fn from_ln(ln: f64) -> Self {
        Self { ln }
    }

    pub fn from_f64(x: f64) -> Self {
        Self { ln: x.ln() }
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn log10(&self) -> f64 {
        self.ln / std::f64::consts::LN_10
    }

    /// The value as an `f64`, `inf` if it does not fit.
    pub fn value(&self) -> f64 {
        self.ln.exp()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self { ln: self.ln + factor.ln() }
    }

    /// `x <= self` for an ordinary nonnegative real `x`.
    pub fn bounds(&self, x: f64) -> bool {
        x <= 0.0 || x.ln() <= self.ln + 1e-12
    }
}

impl From<f64> for Magnitude {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.log10();
        if l.abs() < 15.0 {
            return write!(f, "{}", self.value());
        }
        let exp = l.floor();
        write!(f, "{:.6}e{}", 10f64.powf(l - exp), exp as i64)
    }
}

impl Serialize for Magnitude {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Magnitude", 3)?;
        st.serialize_field("ln", &self.ln)?;
        st.serialize_field("log10", &self.log10())?;
        st.serialize_field("approx", &self.to_string())?;
        st.end()
    }
}

/// Natural log of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_bigrational(x: &BigRational) -> f64 {
    let n = x.numer().to_biguint().unwrap_or_default();
    let d = x.denom().to_biguint().unwrap_or_else(BigUint::one);
    ln_biguint(&n) - ln_biguint(&d)
}

/// `3ⁿ (4κ + 1)^{nκ}`.
pub fn refinement_nu0(n: usize, kappa: u64) -> BigUint {
    let three = BigUint::from(3u32).pow(n as u32);
    let base = BigUint::from(4 * kappa + 1);
    three * base.pow((n as u64 * kappa) as u32)
}

/// `λ 2^λ ν₀`.
pub fn refinement_nu(lambda: u64, nu0: &BigUint) -> BigUint {
    (BigUint::from(lambda) << lambda as usize) * nu0
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsLedger {
    n: usize,
    margulis_eps: f64,
    margulis_index: u64,
    eps: f64,
    delta: f64,
    r: f64,
    rho: f64,
    kappa: u64,
    lambda: u64,
    nu0: BigUint,
    nu: BigUint,
    d_degree: BigUint,
    ln_c_cover: f64,
}

impl ConstantsLedger {
    /// Builds every constant from the configured Margulis data `ε(n)`, `m(n)`.
    pub fn build(n: usize, margulis_eps: f64, margulis_index: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter { name: "n", reason: format!("dimension {n} < 2") });
        }
        if !(margulis_eps > 0.0) || !margulis_eps.is_finite() {
            return Err(Error::InvalidParameter {
                name: "margulis_eps",
                reason: format!("{margulis_eps} is not positive"),
            });
        }
        if margulis_index == 0 {
            return Err(Error::InvalidParameter { name: "margulis_index", reason: "must be positive".into() });
        }
        let eps = margulis_eps / 4.0;
        let delta = margulis_eps / 8.0;
        let r = delta / 4.0;
        let kappa = n_packing(n, eps, margulis_eps)?;
        let lambda = n_packing(n, r / 2.0, 2.0 * r)?;
        Ok(Self::from_parts(n, margulis_eps, margulis_index, kappa, lambda))
    }

    /// Builds a ledger with explicit `κ` and `λ` instead of the packing bounds.
    pub fn with_counts(n: usize, margulis_eps: f64, margulis_index: u64, kappa: u64, lambda: u64) -> Result<Self> {
        if n < 2 || !(margulis_eps > 0.0) || kappa == 0 || lambda == 0 {
            return Err(Error::InvalidParameter {
                name: "ledger",
                reason: format!("n={n} eps={margulis_eps} kappa={kappa} lambda={lambda}"),
            });
        }
        Ok(Self::from_parts(n, margulis_eps, margulis_index, kappa, lambda))
    }

    fn from_parts(n: usize, margulis_eps: f64, margulis_index: u64, kappa: u64, lambda: u64) -> Self {
        let eps = margulis_eps / 4.0;
        let delta = margulis_eps / 8.0;
        let r = delta / 4.0;
        let rho = (eps / 2.0).min(delta / 4.0);
        let nu0 = refinement_nu0(n, kappa);
        let nu = refinement_nu(lambda, &nu0);
        let d_degree = &nu * BigUint::from(lambda);
        let ln_c_cover = ln_biguint(&nu) - euclidean_ball_volume(r / 4.0, n).ln();
        Self { n, margulis_eps, margulis_index, eps, delta, r, rho, kappa, lambda, nu0, nu, d_degree, ln_c_cover }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn margulis_eps(&self) -> f64 {
        self.margulis_eps
    }
    pub fn margulis_index(&self) -> u64 {
        self.margulis_index
    }
    pub fn eps(&self) -> f64 {
        self.eps
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }
    pub fn kappa(&self) -> u64 {
        self.kappa
    }
    pub fn lambda(&self) -> u64 {
        self.lambda
    }
    pub fn nu0(&self) -> &BigUint {
        &self.nu0
    }
    pub fn nu(&self) -> &BigUint {
        &self.nu
    }
    /// `D = ν · N(n, r/2, 2r)`.
    pub fn d_degree(&self) -> &BigUint {
        &self.d_degree
    }
    /// `C = ν / Vol(B_{r/4})` in Euclidean `n`-space.
    pub fn c_cover(&self) -> Magnitude {
        Magnitude::from_ln(self.ln_c_cover)
    }
    pub fn ln_d_degree(&self) -> f64 {
        ln_biguint(&self.d_degree)
    }

    /// Exact factor `D^{k-1} + D^k + 1` multiplying `C` in `E(k, n)`.
    pub fn e_multiplier(&self, k: usize) -> BigRational {
        let d = &self.d_degree;
        // both forms are already in lowest terms; skip the gcd on huge operands
        if k == 0 {
            let numer = d * 2u32 + 1u32;
            return BigRational::new_raw(numer.into(), d.clone().into());
        }
        let value = d.pow((k - 1) as u32) * (d + 1u32) + 1u32;
        BigRational::from_integer(value.into())
    }

    /// `E(k, n) = (D^{k-1} + D^k + 1) · C`.
    pub fn e_of_k(&self, k: usize) -> Magnitude {
        let ln_d = self.ln_d_degree();
        let kf = k as f64;
        // log-sum-exp of (k-1) ln D, k ln D, 0; the middle term dominates for D > 1
        let terms = [(kf - 1.0) * ln_d, kf * ln_d, 0.0];
        let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln();
        Magnitude::from_ln(lse + self.ln_c_cover)
    }

    /// `E(k, n)` through the exact multiplier; slower, used as a cross-check.
    pub fn e_of_k_exact(&self, k: usize) -> Magnitude {
        let m = self.e_multiplier(k);
        if m.is_zero() {
            return Magnitude::from_ln(f64::NEG_INFINITY);
        }
        Magnitude::from_ln(ln_bigrational(&m) + self.ln_c_cover)
    }

    /// Torsion-growth constant `F = max_k D^{k+1} C ln√(k+2)`, `k = 0..=n`.
    ///
    /// Derived from the Hadamard bound on boundary matrices with `{-1,0,1}`
    /// entries rather than taken from an explicit formula.
    pub fn f_torsion(&self) -> Magnitude {
        let ln_d = self.ln_d_degree();
        let ln_f = (0..=self.n)
            .map(|k| (k as f64 + 1.0) * ln_d + self.ln_c_cover + (0.5 * ((k + 2) as f64).ln()).ln())
            .fold(f64::NEG_INFINITY, f64::max);
        Magnitude::from_ln(ln_f)
    }

    /// `Vol / V_eucl(ρ, n)`, the bound on the number of thin components.
    pub fn component_count_bound(&self, vol: f64) -> Result<f64> {
        component_count_bound(self.rho, self.n, vol)
    }

    pub fn dump(&self) -> LedgerDump {
        LedgerDump {
            n: self.n,
            margulis_eps: self.margulis_eps,
            margulis_index: self.margulis_index,
            eps: self.eps,
            delta: self.delta,
            r: self.r,
            rho: self.rho,
            kappa: self.kappa,
            lambda: self.lambda,
            nu0: BigDump::new(&self.nu0),
            nu: BigDump::new(&self.nu),
            d_degree: BigDump::new(&self.d_degree),
            c_cover: self.c_cover(),
            e_of_k: (0..=self.n).map(|k| EDump { k, value: self.e_of_k(k) }).collect(),
            f_torsion: self.f_torsion(),
            f_torsion_provenance: "method-derived".to_string(),
        }
    }
}

/// `vol / V(ρ, n)` with `V` the Euclidean ball volume.
pub fn component_count_bound(rho: f64, n: usize, vol: f64) -> Result<f64> {
    if !(vol > 0.0) {
        return Err(Error::InvalidParameter { name: "vol", reason: format!("{vol} is not positive") });
    }
    Ok(vol / euclidean_ball_volume(rho, n))
}

#[derive(Clone, Debug, Serialize)]
pub struct BigDump {
    pub digits: usize,
    pub log10: f64,
    pub value: String,
}

impl BigDump {
    fn new(x: &BigUint) -> Self {
        let value = x.to_str_radix(10);
        Self { digits: value.len(), log10: ln_biguint(x) / std::f64::consts::LN_10, value }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EDump {
    pub k: usize,
    pub value: Magnitude,
}

/// JSON-facing view of a ledger.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerDump {
    pub n: usize,
    pub margulis_eps: f64,
    pub margulis_index: u64,
    pub eps: f64,
    pub delta: f64,
    pub r: f64,
    pub rho: f64,
    pub kappa: u64,
    pub lambda: u64,
    pub nu0: BigDump,
    pub nu: BigDump,
    pub d_degree: BigDump,
    pub c_cover: Magnitude,
    pub e_of_k: Vec<EDump>,
    pub f_torsion: Magnitude,
    pub f_torsion_provenance: String,
}

/// The inputs a ledger is rebuilt from when read back.
///
/// `kappa` and `lambda` replace the packing bounds when both are present.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
pub struct LedgerSeed {
    pub n: usize,
    pub margulis_eps: f64,
    pub margulis_index: u64,
    #[serde(default)]
    pub kappa: Option<u64>,
    #[serde(default)]
    pub lambda: Option<u64>,
}

impl LedgerSeed {
    pub fn build(&self) -> Result<ConstantsLedger> {
        match (self.kappa, self.lambda) {
            (Some(k), Some(l)) => ConstantsLedger::with_counts(self.n, self.margulis_eps, self.margulis_index, k, l),
            (None, None) => ConstantsLedger::build(self.n, self.margulis_eps, self.margulis_index),
            _ => Err(Error::InvalidParameter { name: "ledger", reason: "give both kappa and lambda or neither".into() }),
        }
    }
}
