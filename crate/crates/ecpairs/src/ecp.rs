//! Error-correcting pairs: the four defining conditions with witness data,
//! pair-driven decoding up to ell errors, a brute-force nearest-codeword
//! oracle, parameter-case labeling, and a pair search over one evaluation
//! sequence.

use std::collections::BTreeSet;

use crate::code::{CodeParams, DistanceStrategy, LinearCode};
use crate::construct::{grs, GrsSpec};
use crate::error::{Error, Result};
use crate::gf::{Felt, Field};
use crate::linalg::{Mat, Solve};
use crate::schur::{product_report, schur_product, ProductReport};

/// Case families keyed by d(C): family A covers d(C) = 2*ell+1, family D
/// covers d(C) = 2*ell+2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseFamily {
    A,
    D,
}

impl std::fmt::Display for CaseFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseFamily::A => write!(f, "A"),
            CaseFamily::D => write!(f, "D"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseLabel {
    pub family: CaseFamily,
    pub index: usize,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.family, self.index)
    }
}

/// One row of a case table: the pair component A has parameters
/// [n, ell + dim_offset, n - ell - dist_drop].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseRow {
    pub index: usize,
    pub dim_offset: usize,
    pub dist_drop: usize,
}

const FAMILY_A_ROWS: [CaseRow; 6] = [
    CaseRow { index: 1, dim_offset: 1, dist_drop: 0 },
    CaseRow { index: 2, dim_offset: 2, dist_drop: 1 },
    CaseRow { index: 3, dim_offset: 1, dist_drop: 1 },
    CaseRow { index: 4, dim_offset: 3, dist_drop: 2 },
    CaseRow { index: 5, dim_offset: 2, dist_drop: 2 },
    CaseRow { index: 6, dim_offset: 1, dist_drop: 2 },
];

const FAMILY_D_ROWS: [CaseRow; 10] = [
    CaseRow { index: 1, dim_offset: 1, dist_drop: 0 },
    CaseRow { index: 2, dim_offset: 2, dist_drop: 1 },
    CaseRow { index: 3, dim_offset: 1, dist_drop: 1 },
    CaseRow { index: 4, dim_offset: 3, dist_drop: 2 },
    CaseRow { index: 5, dim_offset: 2, dist_drop: 2 },
    CaseRow { index: 6, dim_offset: 1, dist_drop: 2 },
    CaseRow { index: 7, dim_offset: 4, dist_drop: 3 },
    CaseRow { index: 8, dim_offset: 3, dist_drop: 3 },
    CaseRow { index: 9, dim_offset: 2, dist_drop: 3 },
    CaseRow { index: 10, dim_offset: 1, dist_drop: 3 },
];

/// The parameter rows of one case family, in index order. Single source for
/// both the labeler and the table emitter.
pub fn case_table(family: CaseFamily) -> &'static [CaseRow] {
    match family {
        CaseFamily::A => &FAMILY_A_ROWS,
        CaseFamily::D => &FAMILY_D_ROWS,
    }
}

/// Matches A's parameters against the case table selected by d(C). Errors
/// unless d(C) is 2*ell+1 or 2*ell+2; None when no row fits.
pub fn case_label(
    n: usize,
    ell: usize,
    params_a: CodeParams,
    d_c: usize,
) -> Result<Option<CaseLabel>> {
    let family = if d_c == 2 * ell + 1 {
        CaseFamily::A
    } else if d_c == 2 * ell + 2 {
        CaseFamily::D
    } else {
        return Err(Error::BadDistance { d: d_c, ell });
    };
    if params_a.n != n {
        return Ok(None);
    }
    for row in case_table(family) {
        let dist = match (n).checked_sub(ell + row.dist_drop) {
            Some(d) if d > 0 => d,
            _ => continue,
        };
        if params_a.k == ell + row.dim_offset && params_a.d == dist {
            return Ok(Some(CaseLabel {
                family,
                index: row.index,
            }));
        }
    }
    Ok(None)
}

/// The four pair conditions for (A, B) against C, each with the number that
/// decides it: E.1 checks A*B inside the dual of C, E.2 that d(B-dual)
/// exceeds ell, E.3 that k(A) exceeds ell, E.4 that d(A)+d(C) exceeds n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcpReport {
    pub ell: usize,
    pub n: usize,
    pub e1_product_in_dual: bool,
    pub e2_dual_b_distance: usize,
    pub e3_a_dimension: usize,
    pub e4_distance_sum: usize,
    pub params_a: CodeParams,
    pub params_b: CodeParams,
    pub params_b_dual: CodeParams,
    pub params_prod: CodeParams,
    pub case: Option<CaseLabel>,
    pub product: ProductReport,
}

impl EcpReport {
    pub fn e1(&self) -> bool {
        self.e1_product_in_dual
    }

    pub fn e2(&self) -> bool {
        self.e2_dual_b_distance > self.ell
    }

    pub fn e3(&self) -> bool {
        self.e3_a_dimension > self.ell
    }

    pub fn e4(&self) -> bool {
        self.e4_distance_sum > self.n
    }

    pub fn is_ecp(&self) -> bool {
        self.e1() && self.e2() && self.e3() && self.e4()
    }
}

fn check_triple(a: &LinearCode, b: &LinearCode, c: &LinearCode) -> Result<()> {
    if a.field() != b.field() || a.field() != c.field() {
        return Err(Error::FieldMismatch);
    }
    if a.n() != b.n() {
        return Err(Error::LengthMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    if a.n() != c.n() {
        return Err(Error::LengthMismatch {
            expected: a.n(),
            got: c.n(),
        });
    }
    Ok(())
}

/// True iff every codeword of `sub` annihilates every generator row of `c`,
/// i.e. sub lies in the dual of c. Works for any k(c) without building duals.
fn lies_in_dual(sub: &LinearCode, c: &LinearCode) -> Result<bool> {
    let zero = c.field().zero();
    for i in 0..sub.k() {
        let syndrome = c.generator().mul_vec(sub.generator().row(i))?;
        if syndrome.iter().any(|&s| s != zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates all four pair conditions exactly and labels A's parameters when
/// d(C) falls on a case boundary. Degenerate inputs (zero Schur product, B
/// spanning the full space) are rejected rather than reported vacuously.
pub fn ecp_verify(
    a: &LinearCode,
    b: &LinearCode,
    c: &LinearCode,
    ell: usize,
) -> Result<EcpReport> {
    check_triple(a, b, c)?;
    let n = a.n();
    if ell == 0 || ell >= n {
        return Err(Error::PreconditionFailed(format!(
            "error budget {ell} outside 1..{n}"
        )));
    }
    if b.k() == n {
        return Err(Error::PreconditionFailed(
            "second pair member spans the full space, its dual distance is undefined".into(),
        ));
    }
    let product = product_report(a, b)?;
    let prod = schur_product(a, b)?;
    let e1_product_in_dual = lies_in_dual(&prod, c)?;
    let b_dual = b.dual()?;
    let e2_dual_b_distance = b_dual.min_distance(DistanceStrategy::Auto)?;
    let e3_a_dimension = a.k();
    let d_a = a.min_distance(DistanceStrategy::Auto)?;
    let d_c = c.min_distance(DistanceStrategy::Auto)?;
    let e4_distance_sum = d_a + d_c;
    let params_a = a.params()?;
    let case = if d_c == 2 * ell + 1 || d_c == 2 * ell + 2 {
        case_label(n, ell, params_a, d_c)?
    } else {
        None
    };
    Ok(EcpReport {
        ell,
        n,
        e1_product_in_dual,
        e2_dual_b_distance,
        e3_a_dimension,
        e4_distance_sum,
        params_a,
        params_b: b.params()?,
        params_b_dual: b_dual.params()?,
        params_prod: CodeParams {
            n,
            k: product.k_prod,
            d: product.d_prod,
        },
        case,
        product,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    Decoded,
    FailNoLocator,
    FailErasureUnsolvable,
    FailWeightExceeded,
}

impl std::fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DecodeStatus::Decoded => "Decoded",
            DecodeStatus::FailNoLocator => "Fail_NoLocator",
            DecodeStatus::FailErasureUnsolvable => "Fail_ErasureUnsolvable",
            DecodeStatus::FailWeightExceeded => "Fail_WeightExceeded",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub codeword: Option<Vec<Felt>>,
    pub error: Option<Vec<Felt>>,
    pub locator_zeroset: Option<BTreeSet<usize>>,
}

/// Decoder bound to one verified pair: verification runs once at
/// construction, decoding reuses the stored parity-check matrix.
#[derive(Debug, Clone)]
pub struct EcpDecoder {
    a: LinearCode,
    b: LinearCode,
    c: LinearCode,
    ell: usize,
    h_c: Mat,
    report: EcpReport,
}

impl EcpDecoder {
    pub fn new(a: &LinearCode, b: &LinearCode, c: &LinearCode, ell: usize) -> Result<EcpDecoder> {
        let report = ecp_verify(a, b, c, ell)?;
        if !report.is_ecp() {
            return Err(Error::PreconditionFailed(format!(
                "not an {ell}-error-correcting pair: E1={} E2={} E3={} E4={}",
                report.e1(),
                report.e2(),
                report.e3(),
                report.e4()
            )));
        }
        Ok(EcpDecoder {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            ell,
            h_c: c.parity_check(),
            report,
        })
    }

    pub fn report(&self) -> &EcpReport {
        &self.report
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Four fixed steps: (1) the locator space K(y) = {a in A : (a*y).b = 0
    /// for all b in B} as a kernel over A's message space; (2) each basis
    /// locator in row order gives a zero set J; (3) an erasure solve finds
    /// the error supported on J, accepted only when unique; (4) the first
    /// solution of weight at most ell wins. For y = c + e with wt(e) <= ell
    /// the first locator already recovers exactly c.
    pub fn decode(&self, y: &[Felt]) -> Result<DecodeResult> {
        let f = self.c.field().clone();
        let n = self.c.n();
        if y.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: y.len(),
            });
        }
        for &v in y {
            f.felt(v.0)?;
        }
        let g_a = self.a.generator();
        let g_b = self.b.generator();
        let mut m = Mat::zeros(f.clone(), self.b.k(), self.a.k());
        for i in 0..self.b.k() {
            for t in 0..self.a.k() {
                let mut s = f.zero();
                for (j, &yj) in y.iter().enumerate() {
                    s = f.add(s, f.mul(f.mul(g_a.get(t, j), yj), g_b.get(i, j)));
                }
                m.set(i, t, s);
            }
        }
        let kern = m.kernel();
        if kern.rows() == 0 {
            return Ok(DecodeResult {
                status: DecodeStatus::FailNoLocator,
                codeword: None,
                error: None,
                locator_zeroset: None,
            });
        }
        let syndrome = self.h_c.mul_vec(y)?;
        let mut saw_heavy = false;
        for r in 0..kern.rows() {
            let locator = g_a.vec_mul(kern.row(r))?;
            let zeroset: Vec<usize> = (0..n).filter(|&j| locator[j] == f.zero()).collect();
            let restricted = self.h_c.select_columns(&zeroset)?;
            match restricted.solve(&syndrome)? {
                Solve::Unique(vals) => {
                    let mut e = vec![f.zero(); n];
                    for (&j, &v) in zeroset.iter().zip(vals.iter()) {
                        e[j] = v;
                    }
                    let weight = e.iter().filter(|&&v| v != f.zero()).count();
                    if weight > self.ell {
                        saw_heavy = true;
                        continue;
                    }
                    let codeword: Vec<Felt> =
                        (0..n).map(|j| f.sub(y[j], e[j])).collect();
                    debug_assert!(self.c.contains(&codeword)?);
                    return Ok(DecodeResult {
                        status: DecodeStatus::Decoded,
                        codeword: Some(codeword),
                        error: Some(e),
                        locator_zeroset: Some(zeroset.into_iter().collect()),
                    });
                }
                Solve::Inconsistent | Solve::Underdetermined => continue,
            }
        }
        Ok(DecodeResult {
            status: if saw_heavy {
                DecodeStatus::FailWeightExceeded
            } else {
                DecodeStatus::FailErasureUnsolvable
            },
            codeword: None,
            error: None,
            locator_zeroset: None,
        })
    }
}

/// One-shot convenience: verify the pair, then decode a single word.
pub fn ecp_decode(
    a: &LinearCode,
    b: &LinearCode,
    c: &LinearCode,
    y: &[Felt],
    ell: usize,
) -> Result<DecodeResult> {
    EcpDecoder::new(a, b, c, ell)?.decode(y)
}

/// What the brute-force scan found: the closest codeword, the difference
/// y - codeword, its weight, and whether another codeword sits at the same
/// distance (ties resolve to the smallest message index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub codeword: Vec<Felt>,
    pub error: Vec<Felt>,
    pub distance: usize,
    pub tie: bool,
}

/// Cap on q^k for oracle table precomputation.
pub const ORACLE_TABLE_LIMIT: u64 = 1 << 22;

const BYTE_LO: u64 = 0x7f7f_7f7f_7f7f_7f7f;
const BYTE_HI: u64 = 0x8080_8080_8080_8080;
const WORD_LO: u64 = 0x7fff_7fff_7fff_7fff;
const WORD_HI: u64 = 0x8000_8000_8000_8000;

/// Nonzero lanes of x for the lane masks above: the high bit of a lane
/// survives iff the lane differs from zero, with no carry across lanes.
#[inline]
fn nonzero_lanes(x: u64, lo: u64, hi: u64) -> usize {
    ((((x & lo) + lo) | x) & hi).count_ones() as usize
}

/// Scan with a compile-time row width so the distance loop unrolls flat.
/// Stops once a row lands within the unique-decoding radius; everything
/// else is at least d minus that away, so neither the minimum nor the tie
/// flag can change.
fn scan_rows<const S: usize>(
    table: &[u64],
    target: &[u64],
    lo: u64,
    hi: u64,
    radius: usize,
    n: usize,
) -> (usize, usize, bool) {
    let target: &[u64; S] = target.try_into().expect("target matches the stride");
    let mut best = n + 1;
    let mut best_idx = 0usize;
    let mut tie = false;
    for (idx, chunk) in table.chunks_exact(S).enumerate() {
        let row: &[u64; S] = chunk.try_into().expect("chunks are stride wide");
        let mut dist = 0usize;
        for w in 0..S {
            dist += nonzero_lanes(row[w] ^ target[w], lo, hi);
        }
        if dist < best {
            best = dist;
            best_idx = idx;
            tie = false;
            if best <= radius {
                break;
            }
        } else if dist == best {
            tie = true;
        }
    }
    (best, best_idx, tie)
}

/// Independent nearest-codeword search: materializes every codeword once,
/// then answers queries by a full scan. Message index i maps to the base-q
/// digits of i, least significant digit on generator row 0. Rows pack eight
/// 8-bit coordinate lanes per word (sixteen-bit lanes for q > 256) so one
/// distance is a few xors, and the scan stops early only on a hit within
/// the unique-decoding radius floor((d-1)/2), where disjoint Hamming balls
/// rule out anything closer.
#[derive(Debug, Clone)]
pub struct NearestOracle {
    code: LinearCode,
    table: Vec<u64>,
    stride: usize,
    lane_bits: usize,
    unique_radius: usize,
}

impl NearestOracle {
    pub fn new(code: &LinearCode) -> Result<NearestOracle> {
        let f = code.field().clone();
        let q = f.q();
        let n = code.n();
        let mut count: u64 = 1;
        for _ in 0..code.k() {
            count = count.saturating_mul(q);
            if count > ORACLE_TABLE_LIMIT {
                return Err(Error::TooLarge(format!(
                    "codeword table {}^{} exceeds {}",
                    q,
                    code.k(),
                    ORACLE_TABLE_LIMIT
                )));
            }
        }
        let count = count as usize;
        let lane_bits = if q <= 256 { 8 } else { 16 };
        let lanes = 64 / lane_bits;
        let stride = n.div_ceil(lanes);
        let unique_radius = (code.min_distance(DistanceStrategy::Auto)? - 1) / 2;
        let mut table: Vec<u64> = Vec::with_capacity(count * stride);
        let mut word = vec![f.zero(); n];
        let mut digits = vec![0u64; code.k()];
        let gen = code.generator();
        for idx in 0..count {
            for chunk in word.chunks(lanes) {
                let mut acc = 0u64;
                for (lane, &v) in chunk.iter().enumerate() {
                    acc |= v.0 << (lane_bits * lane);
                }
                table.push(acc);
            }
            if idx + 1 == count {
                break;
            }
            // Odometer step: add the field delta of the carried digit's row.
            let mut pos = 0;
            loop {
                let old = digits[pos];
                let (next, delta) = if old + 1 == q {
                    (0, f.neg(Felt(old)))
                } else {
                    (old + 1, f.sub(Felt(old + 1), Felt(old)))
                };
                digits[pos] = next;
                for (w, j) in word.iter_mut().zip(0..n) {
                    *w = f.add(*w, f.mul(delta, gen.get(pos, j)));
                }
                if next != 0 {
                    break;
                }
                pos += 1;
            }
        }
        Ok(NearestOracle {
            code: code.clone(),
            table,
            stride,
            lane_bits,
            unique_radius,
        })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    fn unpack(&self, idx: usize) -> Vec<Felt> {
        let row = &self.table[idx * self.stride..(idx + 1) * self.stride];
        let lanes = 64 / self.lane_bits;
        let mask = (1u64 << self.lane_bits) - 1;
        (0..self.code.n())
            .map(|j| Felt((row[j / lanes] >> (self.lane_bits * (j % lanes))) & mask))
            .collect()
    }

    pub fn nearest(&self, y: &[Felt]) -> Result<OracleResult> {
        let f = self.code.field().clone();
        let n = self.code.n();
        if y.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: y.len(),
            });
        }
        for &v in y {
            f.felt(v.0)?;
        }
        let lanes = 64 / self.lane_bits;
        let mut target = vec![0u64; self.stride];
        for (j, &v) in y.iter().enumerate() {
            target[j / lanes] |= v.0 << (self.lane_bits * (j % lanes));
        }
        let r = self.unique_radius;
        let (best, best_idx, tie) = match (self.lane_bits, self.stride) {
            (8, 1) => scan_rows::<1>(&self.table, &target, BYTE_LO, BYTE_HI, r, n),
            (8, 2) => scan_rows::<2>(&self.table, &target, BYTE_LO, BYTE_HI, r, n),
            (8, 3) => scan_rows::<3>(&self.table, &target, BYTE_LO, BYTE_HI, r, n),
            (16, 1) => scan_rows::<1>(&self.table, &target, WORD_LO, WORD_HI, r, n),
            (16, 2) => scan_rows::<2>(&self.table, &target, WORD_LO, WORD_HI, r, n),
            (16, 3) => scan_rows::<3>(&self.table, &target, WORD_LO, WORD_HI, r, n),
            (16, 4) => scan_rows::<4>(&self.table, &target, WORD_LO, WORD_HI, r, n),
            (bits, _) => {
                // Longer codes take the plain per-word loop.
                let (lo, hi) = if bits == 8 {
                    (BYTE_LO, BYTE_HI)
                } else {
                    (WORD_LO, WORD_HI)
                };
                let mut best = n + 1;
                let mut best_idx = 0usize;
                let mut tie = false;
                for (idx, row) in self.table.chunks_exact(self.stride).enumerate() {
                    let dist: usize = row
                        .iter()
                        .zip(&target)
                        .map(|(&a, &b)| nonzero_lanes(a ^ b, lo, hi))
                        .sum();
                    if dist < best {
                        best = dist;
                        best_idx = idx;
                        tie = false;
                        if best <= r {
                            break;
                        }
                    } else if dist == best {
                        tie = true;
                    }
                }
                (best, best_idx, tie)
            }
        };
        let codeword = self.unpack(best_idx);
        let error: Vec<Felt> = (0..n).map(|j| f.sub(y[j], codeword[j])).collect();
        Ok(OracleResult {
            codeword,
            error,
            distance: best,
            tie,
        })
    }
}

/// One-shot convenience for a single nearest-codeword query.
pub fn nearest_codeword_oracle(code: &LinearCode, y: &[Felt]) -> Result<OracleResult> {
    NearestOracle::new(code)?.nearest(y)
}

/// A pair candidate drawn from one evaluation sequence: either a plain
/// polynomial-evaluation code or the dual of one. MDS structure makes both
/// distances exact without enumeration.
struct PoolEntry {
    code: LinearCode,
    d: usize,
    d_dual: usize,
}

fn candidate_pool(field: &Field, alpha: &[Felt]) -> Result<Vec<PoolEntry>> {
    let n = alpha.len();
    let mut pool = Vec::with_capacity(2 * (n - 1));
    for a in 1..n {
        let code = grs(&GrsSpec::unscaled(field.clone(), alpha.to_vec(), a)?);
        pool.push(PoolEntry {
            code,
            d: n - a + 1,
            d_dual: a + 1,
        });
    }
    for a in 1..n {
        let code = grs(&GrsSpec::unscaled(field.clone(), alpha.to_vec(), a)?).dual()?;
        pool.push(PoolEntry {
            code,
            d: a + 1,
            d_dual: n - a + 1,
        });
    }
    Ok(pool)
}

/// Scans ordered pairs from the evaluation-sequence family (plain codes of
/// every dimension, then their duals) and returns every pair that verifies.
/// Cheap screens (dimension, known distances, annihilation) run first; the
/// full verifier recomputes everything honestly for the survivors.
pub fn ecp_search(
    c: &LinearCode,
    ell: usize,
    alpha: &[Felt],
) -> Result<Vec<(LinearCode, LinearCode, EcpReport)>> {
    let f = c.field().clone();
    let n = c.n();
    if alpha.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: alpha.len(),
        });
    }
    if ell == 0 || ell >= n {
        return Err(Error::PreconditionFailed(format!(
            "error budget {ell} outside 1..{n}"
        )));
    }
    if c.k() == n {
        // The dual is trivial, so no nonzero product can land in it.
        return Ok(Vec::new());
    }
    let d_c = c.min_distance(DistanceStrategy::Auto)?;
    let pool = candidate_pool(&f, alpha)?;
    let mut found = Vec::new();
    for cand_a in &pool {
        if cand_a.code.k() <= ell {
            continue;
        }
        if cand_a.d + d_c <= n {
            continue;
        }
        for cand_b in &pool {
            if cand_b.d_dual <= ell {
                continue;
            }
            let prod = schur_product(&cand_a.code, &cand_b.code)?;
            if !lies_in_dual(&prod, c)? {
                continue;
            }
            let report = ecp_verify(&cand_a.code, &cand_b.code, c, ell)?;
            debug_assert!(report.is_ecp(), "screens and verifier disagree");
            if report.is_ecp() {
                found.push((cand_a.code.clone(), cand_b.code.clone(), report));
            }
        }
    }
    Ok(found)
}
