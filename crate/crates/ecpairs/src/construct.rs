//! Evaluation-code constructors: generalized Reed-Solomon codes, single-twist
//! variants, subset-sum sets of evaluation points, and the fast MDS/NMDS test
//! for the twist-at-top shape.

use std::collections::BTreeSet;

use crate::code::{for_each_subset, CodeClassTag, LinearCode};
use crate::error::{Error, Result};
use crate::gf::{Felt, Field};
use crate::linalg::Mat;

/// Work cap for direct subset enumeration in [`s_k_plus`]; larger instances
/// switch to the count/value dynamic program.
pub const SUBSET_ENUM_LIMIT: u128 = 1 << 20;

/// Evaluation-point/column-multiplier description of a generalized
/// Reed-Solomon code: row i of the generator is (v_j * alpha_j^i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrsSpec {
    field: Field,
    alpha: Vec<Felt>,
    v: Vec<Felt>,
    k: usize,
}

impl GrsSpec {
    /// Validates: alpha entries pairwise distinct, v entries nonzero, both of
    /// length n, and 1 <= k <= n. Distinctness already forces n <= q.
    pub fn new(field: Field, alpha: Vec<Felt>, v: Vec<Felt>, k: usize) -> Result<GrsSpec> {
        let n = alpha.len();
        if n == 0 {
            return Err(Error::BadSpec("empty evaluation-point vector".into()));
        }
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
        for &a in &alpha {
            field.felt(a.0)?;
        }
        let distinct: BTreeSet<Felt> = alpha.iter().copied().collect();
        if distinct.len() != n {
            return Err(Error::BadSpec("evaluation points must be distinct".into()));
        }
        for &w in &v {
            field.felt(w.0)?;
            if w == field.zero() {
                return Err(Error::BadSpec("column multipliers must be nonzero".into()));
            }
        }
        if k == 0 || k > n {
            return Err(Error::BadK { k, n });
        }
        Ok(GrsSpec { field, alpha, v, k })
    }

    /// Spec with the all-ones multiplier vector.
    pub fn unscaled(field: Field, alpha: Vec<Felt>, k: usize) -> Result<GrsSpec> {
        let one = field.one();
        let v = vec![one; alpha.len()];
        GrsSpec::new(field, alpha, v, k)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> &[Felt] {
        &self.alpha
    }

    pub fn v(&self) -> &[Felt] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }
}

/// GRS spec plus one twist: the hook row x^h is replaced by x^h + eta*x^(k-1+t).
/// The plus shape is exactly (t, h) = (1, k-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TgrsSpec {
    base: GrsSpec,
    eta: Felt,
    t: usize,
    h: usize,
}

impl TgrsSpec {
    /// Validates eta != 0, t >= 1, h < k on top of the base spec's invariants.
    pub fn new(base: GrsSpec, eta: Felt, t: usize, h: usize) -> Result<TgrsSpec> {
        base.field.felt(eta.0)?;
        if eta == base.field.zero() {
            return Err(Error::BadSpec("twist coefficient must be nonzero".into()));
        }
        if t == 0 {
            return Err(Error::BadSpec("twist offset must be at least 1".into()));
        }
        if h >= base.k {
            return Err(Error::BadSpec("hook index must be below the dimension".into()));
        }
        Ok(TgrsSpec { base, eta, t, h })
    }

    /// The (t, h) = (1, k-1) shape: the top basis row becomes x^(k-1) + eta*x^k.
    pub fn plus(base: GrsSpec, eta: Felt) -> Result<TgrsSpec> {
        let h = base.k - 1;
        TgrsSpec::new(base, eta, 1, h)
    }

    pub fn base(&self) -> &GrsSpec {
        &self.base
    }

    pub fn eta(&self) -> Felt {
        self.eta
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn is_plus(&self) -> bool {
        self.t == 1 && self.h == self.base.k - 1
    }
}

pub(crate) fn monomial_eval(field: &Field, a: Felt, e: usize) -> Felt {
    field
        .pow(a, e as i64)
        .expect("nonnegative exponent never fails")
}

/// Generator rows (v_j * alpha_j^i) for i = 0..k-1. Distinct evaluation points
/// make the rows independent, so the result is an [n, k, n-k+1] code.
pub fn grs(spec: &GrsSpec) -> LinearCode {
    let f = spec.field.clone();
    let n = spec.n();
    let mut rows = Vec::with_capacity(spec.k);
    for i in 0..spec.k {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(f.mul(spec.v[j], monomial_eval(&f, spec.alpha[j], i)));
        }
        rows.push(row);
    }
    let gen = Mat::from_rows(f, rows).expect("spec validation fixed the shape");
    LinearCode::from_generator_quiet(&gen).expect("monomial rows of distinct degree are independent")
}

/// Evaluation code of the twisted basis 1, x, ..., x^(h-1), x^h + eta*x^(k-1+t),
/// x^(h+1), ..., x^(k-1), scaled columnwise by v. Rejects specs whose twist
/// row is dependent on the rest (possible once k-1+t reaches n).
pub fn tgrs(spec: &TgrsSpec) -> Result<LinearCode> {
    let base = &spec.base;
    let f = base.field.clone();
    let n = base.n();
    let mut rows = Vec::with_capacity(base.k);
    for i in 0..base.k {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = monomial_eval(&f, base.alpha[j], i);
            if i == spec.h {
                let twist = monomial_eval(&f, base.alpha[j], base.k - 1 + spec.t);
                e = f.add(e, f.mul(spec.eta, twist));
            }
            row.push(f.mul(base.v[j], e));
        }
        rows.push(row);
    }
    let gen = Mat::from_rows(f, rows)?;
    let code = LinearCode::from_generator_quiet(&gen)?;
    if code.k() != base.k {
        return Err(Error::BadSpec(
            "twisted basis row is dependent on the plain rows".into(),
        ));
    }
    Ok(code)
}

fn binomial_capped(n: usize, k: usize, cap: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

/// All k-subset sums of alpha's entries, by direct subset enumeration.
pub fn s_k_plus_enumerate(field: &Field, alpha: &[Felt], k: usize) -> Result<BTreeSet<Felt>> {
    let n = alpha.len();
    if k == 0 || k >= n {
        return Err(Error::BadK { k, n });
    }
    for &a in alpha {
        field.felt(a.0)?;
    }
    let mut sums = BTreeSet::new();
    for_each_subset(n, k, |subset| {
        let mut s = field.zero();
        for &i in subset {
            s = field.add(s, alpha[i]);
        }
        sums.insert(s);
    });
    Ok(sums)
}

/// All k-subset sums of alpha's entries, by a (count, value) dynamic program:
/// reach[c] marks the values writable as a sum of c entries seen so far.
pub fn s_k_plus_dp(field: &Field, alpha: &[Felt], k: usize) -> Result<BTreeSet<Felt>> {
    let n = alpha.len();
    if k == 0 || k >= n {
        return Err(Error::BadK { k, n });
    }
    for &a in alpha {
        field.felt(a.0)?;
    }
    let q = field.q() as usize;
    let mut reach = vec![vec![false; q]; k + 1];
    reach[0][field.zero().0 as usize] = true;
    for &a in alpha {
        // Downward count loop so each entry joins a sum at most once.
        for c in (1..=k).rev() {
            let (lo, hi) = reach.split_at_mut(c);
            let prev = &lo[c - 1];
            let cur = &mut hi[0];
            for (s, &set) in prev.iter().enumerate() {
                if set {
                    let t = field.add(Felt(s as u64), a);
                    cur[t.0 as usize] = true;
                }
            }
        }
    }
    Ok(reach[k]
        .iter()
        .enumerate()
        .filter(|(_, &hit)| hit)
        .map(|(s, _)| Felt(s as u64))
        .collect())
}

/// All k-subset sums of alpha's entries. Enumerates subsets directly while
/// C(n, k) stays small, otherwise runs the dynamic program.
pub fn s_k_plus(field: &Field, alpha: &[Felt], k: usize) -> Result<BTreeSet<Felt>> {
    let n = alpha.len();
    if k == 0 || k >= n {
        return Err(Error::BadK { k, n });
    }
    if binomial_capped(n, k, SUBSET_ENUM_LIMIT) <= SUBSET_ENUM_LIMIT {
        s_k_plus_enumerate(field, alpha, k)
    } else {
        s_k_plus_dp(field, alpha, k)
    }
}

/// Distance class of a plus-shaped twisted code without building it:
/// NMDS when -eta^-1 is a k-subset sum of the evaluation points, else MDS.
pub fn tgrs_plus_class(spec: &TgrsSpec) -> Result<CodeClassTag> {
    if !spec.is_plus() {
        return Err(Error::PreconditionFailed(
            "classifier requires the (t, h) = (1, k-1) shape".into(),
        ));
    }
    let base = &spec.base;
    if base.k >= base.n() {
        return Err(Error::PreconditionFailed(
            "classifier requires k < n".into(),
        ));
    }
    let f = base.field();
    let target = f.neg(f.inv(spec.eta)?);
    let sums = s_k_plus(f, base.alpha(), base.k)?;
    Ok(if sums.contains(&target) {
        CodeClassTag::Nmds
    } else {
        CodeClassTag::Mds
    })
}

/// True iff the code equals the described construction: same dimension,
/// same row space.
pub fn grs_equals(c: &LinearCode, spec: &GrsSpec) -> Result<bool> {
    if c.field() != spec.field() {
        return Err(Error::FieldMismatch);
    }
    if c.n() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            got: c.n(),
        });
    }
    if c.k() != spec.k {
        return Ok(false);
    }
    c.generator().rowspace_eq(grs(spec).generator())
}

/// Finds a multiplier vector v with c = GRS_k(alpha, v), if one exists.
///
/// c equals GRS_k(alpha, v) exactly when the pointwise-rescaled code
/// diag(v^-1) * c is the plain polynomial-evaluation code RS_k(alpha), so the
/// reciprocal multiplier x = v^-1 is cut out by the bilinear conditions
/// sum_j x_j g_j h_j = 0 over generator rows g of c and parity rows h of
/// RS_k(alpha). Any all-nonzero kernel vector inverts to a valid v; if the
/// kernel has no all-nonzero vector there is none, and None is returned.
pub fn recover_multiplier(c: &LinearCode, alpha: &[Felt]) -> Result<Option<Vec<Felt>>> {
    let f = c.field().clone();
    let n = c.n();
    if alpha.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: alpha.len(),
        });
    }
    if c.k() == n {
        // Full space: every multiplier works.
        return Ok(Some(vec![f.one(); n]));
    }
    let plain = grs(&GrsSpec::unscaled(f.clone(), alpha.to_vec(), c.k())?);
    let checks = plain.parity_check();
    let gen = c.generator();
    let mut rows = Vec::with_capacity(c.k() * checks.rows());
    for i in 0..gen.rows() {
        for t in 0..checks.rows() {
            let row: Vec<Felt> = (0..n)
                .map(|j| f.mul(gen.get(i, j), checks.get(t, j)))
                .collect();
            rows.push(row);
        }
    }
    let kernel = Mat::from_rows(f.clone(), rows)?.kernel();
    let Some(x) = all_nonzero_kernel_vector(&f, &kernel) else {
        return Ok(None);
    };
    let mut v = Vec::with_capacity(n);
    for &xi in &x {
        v.push(f.inv(xi)?);
    }
    // Rescaling is invertible, so dimensions match and containment in one
    // direction suffices; recheck the full equality anyway.
    let spec = GrsSpec::new(f, alpha.to_vec(), v.clone(), c.k())?;
    if grs_equals(c, &spec)? {
        Ok(Some(v))
    } else {
        Ok(None)
    }
}

/// Searches span(rows of basis) for a vector with every entry nonzero.
///
/// A coordinate where all basis rows vanish is zero in the whole span. When
/// none exists, a repair walk fixes one zero coordinate per step: adding
/// lambda * (a row nonzero there) kills that zero while lambda dodges the at
/// most n values that would zero some other coordinate. With q > n the dodge
/// always succeeds; the tiny-field remainder falls back to scanning the span.
fn all_nonzero_kernel_vector(field: &Field, basis: &Mat) -> Option<Vec<Felt>> {
    let r = basis.rows();
    let n = basis.cols();
    if r == 0 {
        return None;
    }
    for j in 0..n {
        if (0..r).all(|i| basis.get(i, j) == field.zero()) {
            return None;
        }
    }
    let mut x = basis.row(0).to_vec();
    for _ in 0..n {
        let Some(j) = (0..n).find(|&j| x[j] == field.zero()) else {
            return Some(x);
        };
        let s = (0..r)
            .find(|&s| basis.get(s, j) != field.zero())
            .expect("checked above");
        let mut forbidden = BTreeSet::new();
        for (i, &xi) in x.iter().enumerate() {
            let b = basis.get(s, i);
            if b != field.zero() {
                // x_i + lambda*b_i = 0 at exactly one lambda.
                forbidden.insert(field.neg(field.div(xi, b).expect("b nonzero")));
            }
        }
        let Some(lambda) = field.elements().find(|l| !forbidden.contains(l)) else {
            return span_scan_for_all_nonzero(field, basis);
        };
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = field.add(*xi, field.mul(lambda, basis.get(s, i)));
        }
    }
    span_scan_for_all_nonzero(field, basis)
}

/// Exhaustive fallback over all q^r span coefficients; only reached on fields
/// too small for the repair walk to dodge every forbidden scalar.
fn span_scan_for_all_nonzero(field: &Field, basis: &Mat) -> Option<Vec<Felt>> {
    let r = basis.rows();
    let n = basis.cols();
    let q = field.q() as u128;
    let mut total: u128 = 1;
    for _ in 0..r {
        total = total.saturating_mul(q);
        if total > SUBSET_ENUM_LIMIT {
            return None;
        }
    }
    let mut coeffs = vec![0u64; r];
    for _ in 1..total {
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < field.q() {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        let x: Vec<Felt> = (0..n)
            .map(|j| {
                let mut s = field.zero();
                for (s_idx, &c) in coeffs.iter().enumerate() {
                    s = field.add(s, field.mul(Felt(c), basis.get(s_idx, j)));
                }
                s
            })
            .collect();
        if x.iter().all(|&e| e != field.zero()) {
            return Some(x);
        }
    }
    None
}
