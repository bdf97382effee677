use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{weight, Elem, FqMatrix, DEFAULT_SPAN_CAP};
use crate::instance::{IcsiInstance, DEFAULT_ENUM_CAP};

/// Which criterion [`verify_with`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMethod {
    /// Per receiver, the distance from `L_f(i)` to the span of `{L_j : j ∈ Y_i}`.
    SpanDistance,
    /// Stream every `z ∈ I(δ, H)` (one per projective class) and weigh `zL`.
    Enumeration,
}

/// Caps for the two verification strategies.
#[derive(Clone, Copy, Debug)]
pub struct VerifyCaps {
    /// Largest `q^|Y_i|` handled by the span path.
    pub span: u128,
    /// Largest number of `I` vectors handled by the enumeration path.
    pub enumeration: u128,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        VerifyCaps { span: DEFAULT_SPAN_CAP, enumeration: DEFAULT_ENUM_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub delta: usize,
    /// Minimum of `weight(zL)` over the inspected `z`.
    pub min_weight: usize,
    /// First `z` reaching the minimum, present iff `!ok`.
    pub witness: Option<Vec<Elem>>,
    pub method: VerifyMethod,
    /// Number of vectors inspected.
    pub cost: u128,
}

fn check_dims(inst: &IcsiInstance, l: &FqMatrix) -> Result<()> {
    if l.rows() != inst.n() {
        return Err(Error::dim(format!("L has {} rows, instance has n = {}", l.rows(), inst.n())));
    }
    Ok(())
}

/// Checks the `(δ, H)`-ECIC property with the default caps, choosing the
/// span path when every receiver fits and enumeration otherwise.
pub fn verify(inst: &IcsiInstance, l: &FqMatrix, delta: usize) -> Result<VerificationReport> {
    verify_with(inst, l, delta, None, VerifyCaps::default())
}

pub fn verify_with(
    inst: &IcsiInstance,
    l: &FqMatrix,
    delta: usize,
    method: Option<VerifyMethod>,
    caps: VerifyCaps,
) -> Result<VerificationReport> {
    check_dims(inst, l)?;
    let q = l.field().order() as u128;
    let span_cost =
        (0..inst.m()).map(|i| q.saturating_pow(inst.y_mask(i).count_ones())).fold(0u128, u128::saturating_add);
    let fits_span = (0..inst.m()).all(|i| q.saturating_pow(inst.y_mask(i).count_ones()) <= caps.span);
    let method = match method {
        Some(m) => m,
        None if fits_span => VerifyMethod::SpanDistance,
        None => VerifyMethod::Enumeration,
    };
    let (min_weight, witness, cost) = match method {
        VerifyMethod::SpanDistance => {
            if !fits_span {
                return Err(Error::budget("span-distance verification", span_cost, caps.span));
            }
            span_distance(inst, l)
        }
        VerifyMethod::Enumeration => enumeration(inst, l, caps.enumeration)?,
    };
    let ok = min_weight > 2 * delta;
    Ok(VerificationReport { ok, delta, min_weight, witness: (!ok).then_some(witness), method, cost })
}

/// For each receiver, sweep `L_f(i) + Σ_{j ∈ Y_i} c_j L_j` over all
/// coefficient vectors. Scaling `L_f(i)` by a nonzero constant only rescales
/// the whole vector, so the coefficient of `L_f(i)` is fixed to 1.
fn span_distance(inst: &IcsiInstance, l: &FqMatrix) -> (usize, Vec<Elem>, u128) {
    let f = l.field();
    let q = f.order();
    let mut best = (usize::MAX, Vec::new());
    let mut cost = 0u128;
    for i in 0..inst.m() {
        let fi = inst.demand(i);
        let y = crate::instance::set_to_vec(inst.y_mask(i));
        let mut cur = l.row(fi).to_vec();
        let mut coeffs = vec![0 as Elem; y.len()];
        loop {
            cost += 1;
            let w = weight(&cur);
            if w < best.0 {
                let mut z = vec![0; inst.n()];
                z[fi] = 1;
                for (&j, &c) in y.iter().zip(&coeffs) {
                    z[j] = c;
                }
                best = (w, z);
            }
            // odometer step with an incremental update of `cur`
            let mut k = coeffs.len();
            let mut more = false;
            while k > 0 {
                k -= 1;
                let old = coeffs[k];
                let new = if old + 1 == q { 0 } else { old + 1 };
                coeffs[k] = new;
                f.axpy(&mut cur, f.sub(new, old), l.row(y[k]));
                if new != 0 {
                    more = true;
                    break;
                }
            }
            if !more {
                break;
            }
        }
    }
    (best.0, best.1, cost)
}

fn enumeration(inst: &IcsiInstance, l: &FqMatrix, cap: u128) -> Result<(usize, Vec<Elem>, u128)> {
    let mut best = (usize::MAX, Vec::new());
    let mut cost = 0u128;
    for z in inst.iter_i_projective(l.field(), cap)? {
        cost += 1;
        let w = weight(&l.vec_mul(&z));
        if w < best.0 {
            best = (w, z);
        }
    }
    Ok((best.0, best.1, cost))
}

/// Largest `δ` the code corrects, `⌊(w_min - 1) / 2⌋`, or `None` when `L`
/// is not even an index code (`w_min = 0`).
pub fn max_delta(inst: &IcsiInstance, l: &FqMatrix) -> Result<Option<usize>> {
    let r = verify(inst, l, 0)?;
    Ok(r.min_weight.checked_sub(1).map(|w| w / 2))
}
