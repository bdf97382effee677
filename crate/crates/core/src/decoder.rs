//! Syndrome decoding for one receiver of an error-correcting index code.
//!
//! Receiver `i` sees `y = xL + ε`. Subtracting its side information leaves
//! `x_f(i) L_f(i) + x_Y L_Y + ε`, so the syndrome with respect to the code
//! `C_i = span(L_f(i), L_Y)` depends on `ε` alone. Any minimum-weight error
//! consistent with it differs from `ε` by an element of `span(L_Y)`, which
//! the combiner `u` (with `L u^T = v_i + e_f(i)`) annihilates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{span_iter, weight, Elem, FieldSpec, FqMatrix};
use crate::instance::{set_to_vec, IcsiInstance};

/// Default cap on the number of candidate error patterns per decode.
pub const DEFAULT_DECODE_BUDGET: u128 = 1 << 24;

/// What receiver `i` observes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceiverView {
    pub i: usize,
    pub y: Vec<Elem>,
    /// Values of `x_j` for `j ∈ X_i`, in ascending `j`.
    pub side: Vec<Elem>,
}

impl ReceiverView {
    /// The view of receiver `i` when `x` is sent and `err` is added.
    pub fn observe(inst: &IcsiInstance, l: &FqMatrix, i: usize, x: &[Elem], err: &[Elem]) -> Self {
        let f = l.field();
        let y = l.vec_mul(x).iter().zip(err).map(|(&a, &b)| f.add(a, b)).collect();
        let side = inst.side(i).iter().map(|&j| x[j]).collect();
        ReceiverView { i, y, side }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub x_hat: Elem,
    pub e_hat: Vec<Elem>,
    pub syndrome: Vec<Elem>,
    /// `u` with `L u^T = (v_i + e_f(i))^T`.
    pub combiner: Vec<Elem>,
    pub weight_searched: usize,
    /// Candidate error patterns examined.
    pub candidates: u128,
}

/// Generator rows `[L_f(i); L_Y]` of `C_i` and a parity-check matrix for it.
pub fn code_ci(inst: &IcsiInstance, l: &FqMatrix, i: usize) -> Result<(FqMatrix, FqMatrix)> {
    if l.rows() != inst.n() || i >= inst.m() {
        return Err(Error::dim("receiver or matrix does not match the instance"));
    }
    let mut rows = vec![inst.demand(i)];
    rows.extend(set_to_vec(inst.y_mask(i)));
    let g = l.select_rows(&rows);
    let h = g.kernel_basis();
    Ok((g, h))
}

/// `y - x_X L_X`.
fn strip_side(inst: &IcsiInstance, l: &FqMatrix, view: &ReceiverView) -> Result<Vec<Elem>> {
    let xs = inst.side(view.i);
    if view.y.len() != l.cols() || view.side.len() != xs.len() {
        return Err(Error::dim(format!(
            "view has |y| = {}, |side| = {}; expected {} and {}",
            view.y.len(),
            view.side.len(),
            l.cols(),
            xs.len()
        )));
    }
    let f = l.field();
    let mut r = view.y.clone();
    for (&j, &v) in xs.iter().zip(&view.side) {
        f.axpy(&mut r, f.neg(v), l.row(j));
    }
    Ok(r)
}

/// `H (y - x_X L_X)^T`.
pub fn syndrome(inst: &IcsiInstance, l: &FqMatrix, h: &FqMatrix, view: &ReceiverView) -> Result<Vec<Elem>> {
    if h.cols() != l.cols() {
        return Err(Error::dim("parity check and code length differ"));
    }
    Ok(h.mul_vec(&strip_side(inst, l, view)?))
}

/// First error of least weight `<= δ` with `H e^T = β`, weights ascending,
/// supports in lexicographic order and values in ascending code order.
/// Returns the error and the number of candidates examined.
pub fn min_weight_coset_solution(h: &FqMatrix, beta: &[Elem], delta: usize, budget: u128) -> Result<(Vec<Elem>, u128)> {
    let f = h.field();
    let n = h.cols();
    if beta.len() != h.rows() {
        return Err(Error::dim("syndrome length differs from parity-check rows"));
    }
    let delta = delta.min(n);
    let space = crate::bounds::sphere_volume(f.order(), n, delta);
    let space: u128 = space.try_into().unwrap_or(u128::MAX);
    if space > budget {
        return Err(Error::budget("coset leader candidates", space, budget));
    }
    let cols: Vec<Vec<Elem>> = (0..n).map(|c| h.column(c)).collect();
    let q = f.order();
    let mut examined = 0u128;
    for w in 0..=delta {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut vals = vec![1 as Elem; w];
            loop {
                examined += 1;
                let mut s = vec![0; h.rows()];
                for (&c, &v) in support.iter().zip(&vals) {
                    f.axpy(&mut s, v, &cols[c]);
                }
                if s == beta {
                    let mut e = vec![0; n];
                    for (&c, &v) in support.iter().zip(&vals) {
                        e[c] = v;
                    }
                    return Ok((e, examined));
                }
                if !next_nonzero(&mut vals, q) {
                    break;
                }
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
    }
    Err(Error::TooManyErrors { delta })
}

fn next_nonzero(vals: &mut [Elem], q: u32) -> bool {
    for v in vals.iter_mut().rev() {
        if *v + 1 < q {
            *v += 1;
            return true;
        }
        *v = 1;
    }
    false
}

pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for pos in (0..k).rev() {
        if c[pos] < n - k + pos {
            c[pos] += 1;
            for j in pos + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `(u, v)` with `L u^T = e_f(i) + v`, `v` supported on `X_i` (returned on
/// `X_i` only): the first solution of `[L | -E_X] [u; v] = e_f(i)`.
pub fn combiner(inst: &IcsiInstance, l: &FqMatrix, i: usize) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let f = l.field();
    let xs = inst.side(i);
    let n_cols = l.cols();
    let mut a = FqMatrix::zeros(f, l.rows(), n_cols + xs.len());
    for r in 0..l.rows() {
        for c in 0..n_cols {
            a.set(r, c, l.get(r, c));
        }
    }
    for (k, &j) in xs.iter().enumerate() {
        a.set(j, n_cols + k, f.neg(1));
    }
    let mut e = vec![0; l.rows()];
    e[inst.demand(i)] = 1;
    let sol = a.solve_affine(&e)?.next().ok_or(Error::NotIndexCode { receiver: i + 1 })?;
    Ok((sol[..n_cols].to_vec(), sol[n_cols..].to_vec()))
}

/// `x̂_f(i) = (y - ê) u^T - x_X v^T`.
pub fn recover(f: &FieldSpec, view: &ReceiverView, e_hat: &[Elem], u: &[Elem], v: &[Elem]) -> Elem {
    let clean: Vec<Elem> = view.y.iter().zip(e_hat).map(|(&a, &b)| f.sub(a, b)).collect();
    f.sub(f.dot(&clean, u), f.dot(&view.side, v))
}

/// Solves `x̂ L = y - ê` with `x̂_X` fixed to the side information and
/// returns `x̂_f(i)`, the one coordinate the solution pins down.
pub fn recover_by_elimination(inst: &IcsiInstance, l: &FqMatrix, view: &ReceiverView, e_hat: &[Elem]) -> Result<Elem> {
    let f = l.field();
    let mut rhs = strip_side(inst, l, view)?;
    for (r, &e) in rhs.iter_mut().zip(e_hat) {
        *r = f.sub(*r, e);
    }
    let side_mask = inst.side_mask(view.i);
    let rest: Vec<usize> = (0..inst.n()).filter(|&j| side_mask >> j & 1 == 0).collect();
    let sys = l.select_rows(&rest).transpose();
    let x = sys
        .solve_affine(&rhs)?
        .next()
        .ok_or_else(|| Error::ConditionViolated(format!("receiver {}: y - ê is not a codeword", view.i + 1)))?;
    let pos = rest.iter().position(|&j| j == inst.demand(view.i)).expect("f(i) is not side information");
    Ok(x[pos])
}

/// `{ε + z : z ∈ span{L_j : j ∈ Y_i}}`.
pub fn relevant_error_set(
    inst: &IcsiInstance,
    l: &FqMatrix,
    i: usize,
    err: &[Elem],
    cap: u128,
) -> Result<Vec<Vec<Elem>>> {
    let f = l.field();
    let rows: Vec<Vec<Elem>> = set_to_vec(inst.y_mask(i)).iter().map(|&j| l.row(j).to_vec()).collect();
    Ok(span_iter(f, &rows, l.cols(), cap)?.map(|z| z.iter().zip(err).map(|(&a, &b)| f.add(a, b)).collect()).collect())
}

/// Per-receiver data reused across decodes.
#[derive(Clone, Debug)]
struct ReceiverCode {
    h: FqMatrix,
    u: Vec<Elem>,
    v: Vec<Elem>,
}

impl ReceiverCode {
    fn build(inst: &IcsiInstance, l: &FqMatrix, i: usize) -> Result<Self> {
        let (_, h) = code_ci(inst, l, i)?;
        let (u, v) = combiner(inst, l, i)?;
        Ok(ReceiverCode { h, u, v })
    }

    fn decode(
        &self,
        inst: &IcsiInstance,
        l: &FqMatrix,
        delta: usize,
        budget: u128,
        view: &ReceiverView,
    ) -> Result<DecodeResult> {
        let beta = syndrome(inst, l, &self.h, view)?;
        let (e_hat, candidates) = min_weight_coset_solution(&self.h, &beta, delta, budget)?;
        let x_hat = recover(l.field(), view, &e_hat, &self.u, &self.v);
        Ok(DecodeResult {
            x_hat,
            weight_searched: weight(&e_hat),
            e_hat,
            syndrome: beta,
            combiner: self.u.clone(),
            candidates,
        })
    }
}

/// A decoder for one `(instance, L, δ)`, caching each receiver's parity
/// check and combiner.
#[derive(Clone, Debug)]
pub struct Decoder {
    inst: IcsiInstance,
    l: FqMatrix,
    delta: usize,
    budget: u128,
    receivers: Vec<ReceiverCode>,
}

impl Decoder {
    pub fn new(inst: &IcsiInstance, l: &FqMatrix, delta: usize) -> Result<Self> {
        let receivers = (0..inst.m()).map(|i| ReceiverCode::build(inst, l, i)).collect::<Result<_>>()?;
        Ok(Decoder { inst: inst.clone(), l: l.clone(), delta, budget: DEFAULT_DECODE_BUDGET, receivers })
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn instance(&self) -> &IcsiInstance {
        &self.inst
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.l
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn decode(&self, view: &ReceiverView) -> Result<DecodeResult> {
        let rc = self.receivers.get(view.i).ok_or_else(|| Error::dim(format!("no receiver {}", view.i + 1)))?;
        rc.decode(&self.inst, &self.l, self.delta, self.budget, view)
    }
}

/// One-shot decode of a single view.
pub fn decode(inst: &IcsiInstance, l: &FqMatrix, delta: usize, view: &ReceiverView) -> Result<DecodeResult> {
    if view.i >= inst.m() {
        return Err(Error::dim(format!("no receiver {}", view.i + 1)));
    }
    ReceiverCode::build(inst, l, view.i)?.decode(inst, l, delta, DEFAULT_DECODE_BUDGET, view)
}

/// A received word as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord {
    pub q: u32,
    pub view: ReceiverView,
}

/// Parses the received-word format: a line `i N q` (receiver 1-based),
/// a line with the `N` symbols of `y`, then `index:value` pairs (1-based
/// message indices) giving exactly the side information of receiver `i`.
pub fn parse_received_word(src: &str, inst: &IcsiInstance) -> Result<ReceivedWord> {
    let mut lines =
        src.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let num = |line: usize, tok: &str| tok.parse::<u64>().map_err(|e| perr(line, format!("{tok:?}: {e}")));

    let (ln, header) = lines.next().ok_or_else(|| perr(0, "empty input".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 {
        return Err(perr(ln, "header must be `i N q`".into()));
    }
    let (i, n, q) = (num(ln, h[0])? as usize, num(ln, h[1])? as usize, num(ln, h[2])? as u32);
    if i == 0 || i > inst.m() {
        return Err(perr(ln, format!("receiver {i} out of range 1..={}", inst.m())));
    }
    let i = i - 1;

    let (ln, yline) = lines.next().ok_or_else(|| perr(ln, "missing received vector".into()))?;
    let y = yline
        .split_whitespace()
        .map(|t| num(ln, t).and_then(|v| if v < q as u64 { Ok(v as Elem) } else { Err(perr(ln, format!("{v} >= q"))) }))
        .collect::<Result<Vec<_>>>()?;
    if y.len() != n {
        return Err(perr(ln, format!("expected {n} symbols, got {}", y.len())));
    }

    let mut side = vec![None; inst.n()];
    for (ln, line) in lines {
        for tok in line.split_whitespace() {
            let (a, b) = tok.split_once(':').ok_or_else(|| perr(ln, format!("{tok:?} is not index:value")))?;
            let j = num(ln, a)? as usize;
            let v = num(ln, b)?;
            if j == 0 || j > inst.n() || v >= q as u64 {
                return Err(perr(ln, format!("{tok:?} out of range")));
            }
            if side[j - 1].replace(v as Elem).is_some() {
                return Err(perr(ln, format!("message {j} assigned twice")));
            }
        }
    }
    let xs = inst.side(i);
    let given: Vec<usize> = (0..inst.n()).filter(|&j| side[j].is_some()).collect();
    if given != xs {
        return Err(perr(
            0,
            format!(
                "side information must cover exactly X_{} = {:?}",
                i + 1,
                xs.iter().map(|j| j + 1).collect::<Vec<_>>()
            ),
        ));
    }
    let side = xs.iter().map(|&j| side[j].expect("checked")).collect();
    Ok(ReceivedWord { q, view: ReceiverView { i, y, side } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    #[test]
    fn example1_trace() {
        let inst = golden::example1();
        let l = golden::example1_matrix();
        let (g, h) = code_ci(&inst, &l, 0).unwrap();
        assert_eq!(g.row_vecs(), vec![vec![1, 1, 1, 0]]);
        assert_eq!(h.rank(), 3);
        let view = ReceiverView::observe(&inst, &l, 0, &[1, 0, 1], &[1, 0, 0, 0]);
        assert_eq!(strip_side(&inst, &l, &view).unwrap(), vec![0, 1, 1, 0]);
        let beta = syndrome(&inst, &l, &h, &view).unwrap();
        assert!(beta.iter().any(|&b| b != 0));
        let (e, _) = min_weight_coset_solution(&h, &beta, 1, 1000).unwrap();
        assert_eq!(e, vec![1, 0, 0, 0]);
        let r = decode(&inst, &l, 1, &view).unwrap();
        assert_eq!(r.x_hat, 1);
        assert_eq!(recover_by_elimination(&inst, &l, &view, &r.e_hat).unwrap(), 1);
    }

    #[test]
    fn zero_syndrome_gives_zero_error() {
        let inst = golden::pentagon();
        let l = golden::pentagon_matrix();
        let (_, h) = code_ci(&inst, &l, 0).unwrap();
        let (e, n) = min_weight_coset_solution(&h, &vec![0; h.rows()], 2, 1000).unwrap();
        assert_eq!((weight(&e), n), (0, 1));
    }

    #[test]
    fn too_many_errors() {
        let inst = golden::example1();
        let l = golden::example1_matrix();
        let view = ReceiverView::observe(&inst, &l, 0, &[1, 0, 1], &[1, 0, 0, 0]);
        assert!(matches!(decode(&inst, &l, 0, &view), Err(Error::TooManyErrors { delta: 0 })));
    }

    #[test]
    fn budget_is_enforced() {
        let inst = golden::pentagon();
        let l = golden::pentagon_matrix();
        let view = ReceiverView::observe(&inst, &l, 0, &[0; 5], &[0; 9]);
        let d = Decoder::new(&inst, &l, 2).unwrap().with_budget(10);
        assert!(matches!(d.decode(&view), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn repetition_code_algebra() {
        let inst = golden::example1();
        let l = golden::example1_repetition();
        let f = l.field().clone();
        for x in crate::galois::all_vectors(2, 3) {
            let view = ReceiverView::observe(&inst, &l, 0, &x, &[0, 0, 0]);
            let s = f.add(f.add(x[0], x[1]), x[2]);
            let r = decode(&inst, &l, 1, &view).unwrap();
            assert_eq!(r.x_hat, f.sub(f.sub(s, x[1]), x[2]));
        }
    }

    #[test]
    fn relevant_sets() {
        let inst = golden::pentagon();
        let l = golden::pentagon_matrix();
        let set = relevant_error_set(&inst, &l, 0, &[0; 9], 1 << 10).unwrap();
        assert_eq!(set.len(), 4);
        assert!(set.contains(&l.row(2).to_vec()) && set.contains(&l.row(3).to_vec()));
        let e1 = golden::example1();
        let err = vec![0, 1, 0, 0];
        assert_eq!(relevant_error_set(&e1, &golden::example1_matrix(), 0, &err, 16).unwrap(), vec![err]);
    }

    #[test]
    fn combiner_missing_means_not_an_index_code() {
        let inst = golden::no_side_information(2);
        let l = FqMatrix::from_rows(&FieldSpec::gf2(), 1, &[vec![1], vec![1]]).unwrap();
        assert!(matches!(combiner(&inst, &l, 0), Err(Error::NotIndexCode { receiver: 1 })));
    }

    #[test]
    fn received_word_file() {
        let inst = golden::example1();
        let src = "# receiver 1\n1 4 2\n1 1 0 1\n2:0 3:1\n";
        let w = parse_received_word(src, &inst).unwrap();
        assert_eq!(w.view, ReceiverView { i: 0, y: vec![1, 1, 0, 1], side: vec![0, 1] });
        assert!(parse_received_word("1 4 2\n1 1 0 1\n2:0\n", &inst).is_err());
        assert!(parse_received_word("1 4 2\n1 1 0\n2:0 3:1\n", &inst).is_err());
        assert!(parse_received_word("4 4 2\n1 1 0 1\n", &inst).is_err());
        assert!(parse_received_word("1 4 2\n1 1 0 1\n1:0 2:0 3:1\n", &inst).is_err());
    }
}
