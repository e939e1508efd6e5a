//! Linear codes over a finite field, held in canonical form: the stored
//! generator is always the reduced row echelon basis of the row space, so
//! equal codes compare equal structurally.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf::{Felt, Field};
use crate::linalg::Mat;

/// Default cap on enumeration work for distance computations.
pub const WORK_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceStrategy {
    /// Pick `Enumerate` when q^k fits the budget, else `Columns` when 2^n
    /// does, else fail.
    Auto,
    /// Walk all q^k - 1 nonzero messages.
    Enumerate,
    /// Smallest linearly dependent set of parity check columns.
    Columns,
}

/// Classification tag. MDS means d = n-k+1; AMDS means d = n-k; a code is
/// NMDS when both it and its dual are AMDS (equivalently d = n-k and the
/// dual distance equals k).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeClassTag {
    Mds,
    Nmds,
    AmdsOnly,
    Other,
}

impl std::fmt::Display for CodeClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CodeClassTag::Mds => "MDS",
            CodeClassTag::Nmds => "NMDS",
            CodeClassTag::AmdsOnly => "AMDS-only",
            CodeClassTag::Other => "Other",
        };
        f.write_str(s)
    }
}

/// Full classification record. `d_dual` is 0 when the dual is the zero code
/// (k = n), which never interferes with the tag logic since such codes are MDS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeClass {
    pub tag: CodeClassTag,
    pub d: usize,
    pub d_dual: usize,
}

/// The parameter triple [n, k, d].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.n, self.k, self.d)
    }
}

#[derive(Debug)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    gen: Mat,
    d_cache: OnceLock<usize>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        LinearCode {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            gen: self.gen.clone(),
            d_cache: self.d_cache.clone(),
        }
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        // the cached distance is derived data and does not affect identity
        self.field == other.field && self.n == other.n && self.k == other.k && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Build a code from any spanning set of rows. Dependent rows are
    /// dropped (with a warning, since the caller's k intent is lost);
    /// an all-zero span is an error.
    pub fn from_generator(gen: &Mat) -> Result<LinearCode> {
        let code = Self::from_generator_quiet(gen)?;
        if code.k < gen.rows() {
            log::warn!(
                "generator had {} rows but rank {}; dependent rows dropped",
                gen.rows(),
                code.k
            );
        }
        Ok(code)
    }

    /// Same construction without the warning, for internal spans where
    /// dependent rows are expected (products, punctures).
    pub fn from_generator_quiet(gen: &Mat) -> Result<LinearCode> {
        let red = gen.rref();
        if red.rank == 0 {
            return Err(Error::ZeroCode);
        }
        let rows: Vec<Vec<Felt>> = (0..red.rank).map(|i| red.mat.row(i).to_vec()).collect();
        let canon = Mat::from_rows(gen.field().clone(), rows)?;
        Ok(LinearCode {
            field: gen.field().clone(),
            n: gen.cols(),
            k: red.rank,
            gen: canon,
            d_cache: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The canonical (reduced row echelon) generator matrix, k rows.
    pub fn generator(&self) -> &Mat {
        &self.gen
    }

    /// A parity check matrix: n-k canonical rows spanning the dual.
    /// Zero rows exactly when k = n.
    pub fn parity_check(&self) -> Mat {
        self.gen.kernel()
    }

    /// msg (length k) times the generator.
    pub fn encode(&self, msg: &[Felt]) -> Result<Vec<Felt>> {
        self.gen.vec_mul(msg)
    }

    /// Does the word lie in the code?
    pub fn contains(&self, word: &[Felt]) -> Result<bool> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: word.len() });
        }
        let row = Mat::from_rows(self.field.clone(), vec![word.to_vec()])?;
        row.rows_in_rowspace(&self.gen)
    }

    /// The dual code. Fails for the full space, whose dual is zero.
    pub fn dual(&self) -> Result<LinearCode> {
        if self.k == self.n {
            return Err(Error::TrivialDual);
        }
        let ker = self.gen.kernel();
        debug_assert_eq!(ker.rows(), self.n - self.k);
        Self::from_generator_quiet(&ker)
    }

    /// Is self a subcode of other (every codeword of self in other)?
    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool> {
        self.gen.rows_in_rowspace(&other.gen)
    }

    pub fn min_distance(&self, strategy: DistanceStrategy) -> Result<usize> {
        self.min_distance_budgeted(strategy, WORK_BUDGET)
    }

    /// Exact minimum distance under an explicit work budget. Explicit
    /// strategies always run and are cross-checked against any cached value;
    /// `Auto` reuses the cache.
    pub fn min_distance_budgeted(&self, strategy: DistanceStrategy, budget: u64) -> Result<usize> {
        let enum_work = (self.field.q() as u128).checked_pow(self.k as u32);
        let col_work = 1u128.checked_shl(self.n as u32);
        let fits = |w: Option<u128>| w.is_some_and(|w| w <= budget as u128);
        let d = match strategy {
            DistanceStrategy::Auto => {
                if let Some(&d) = self.d_cache.get() {
                    return Ok(d);
                }
                if fits(enum_work) {
                    self.distance_enumerate()
                } else if fits(col_work) {
                    self.distance_columns()
                } else {
                    return Err(Error::TooLarge(format!(
                        "distance of [{}, {}] over {}: q^k and 2^n both exceed budget {}",
                        self.n, self.k, self.field, budget
                    )));
                }
            }
            DistanceStrategy::Enumerate => {
                if !fits(enum_work) {
                    return Err(Error::TooLarge(format!(
                        "enumerating q^k = {}^{} messages exceeds budget {}",
                        self.field.q(),
                        self.k,
                        budget
                    )));
                }
                self.distance_enumerate()
            }
            DistanceStrategy::Columns => {
                if !fits(col_work) {
                    return Err(Error::TooLarge(format!(
                        "column search with 2^{} subsets exceeds budget {}",
                        self.n, budget
                    )));
                }
                self.distance_columns()
            }
        };
        if let Some(&cached) = self.d_cache.get() {
            assert_eq!(cached, d, "distance strategies disagree on the same code");
        } else {
            let _ = self.d_cache.set(d);
        }
        Ok(d)
    }

    /// [n, k, d] with the distance from the auto strategy.
    pub fn params(&self) -> Result<CodeParams> {
        Ok(CodeParams { n: self.n, k: self.k, d: self.min_distance(DistanceStrategy::Auto)? })
    }

    // Minimum weight over all nonzero messages, walked in odometer order
    // with incremental codeword updates. The per-digit delta is a field
    // subtraction of canonical elements; integer carries are not field adds
    // once m > 1.
    fn distance_enumerate(&self) -> usize {
        let f = &self.field;
        let q = f.q();
        let rows: Vec<&[Felt]> = (0..self.k).map(|i| self.gen.row(i)).collect();
        let mut digits = vec![0u64; self.k];
        let mut word = vec![Felt(0); self.n];
        let total: u128 = (q as u128).pow(self.k as u32);
        let mut best = self.n + 1;
        let mut count: u128 = 1;
        let one = f.one();
        let bump = |word: &mut [Felt], row: &[Felt], delta: Felt| {
            if delta == one {
                for (w, &x) in word.iter_mut().zip(row) {
                    *w = f.add(*w, x);
                }
            } else {
                for (w, &x) in word.iter_mut().zip(row) {
                    *w = f.add(*w, f.mul(delta, x));
                }
            }
        };
        while count < total {
            let mut i = 0;
            loop {
                let old = digits[i];
                if old + 1 < q {
                    digits[i] = old + 1;
                    bump(&mut word, rows[i], f.sub(Felt(old + 1), Felt(old)));
                    break;
                }
                digits[i] = 0;
                bump(&mut word, rows[i], f.neg(Felt(old)));
                i += 1;
            }
            let w = word.iter().filter(|&&x| x != Felt(0)).count();
            if w < best {
                best = w;
                if best == 1 {
                    break;
                }
            }
            count += 1;
        }
        debug_assert!(best <= self.n);
        best
    }

    // d equals the smallest number of linearly dependent parity check
    // columns; some set of size n-k+1 is always dependent, so this terminates.
    fn distance_columns(&self) -> usize {
        let h = self.parity_check();
        if h.rows() == 0 {
            return 1;
        }
        let n = self.n;
        for size in 1..=h.rows() + 1 {
            let mut found = false;
            for_each_subset(n, size, |subset| {
                if found {
                    return;
                }
                let sub = h.select_columns(subset).expect("subset indices in range");
                if sub.rank() < size {
                    found = true;
                }
            });
            if found {
                return size;
            }
        }
        unreachable!("n-k+1 columns of an (n-k)-row matrix are dependent")
    }

    /// Delete the listed coordinates (keep the complement). The deletion set
    /// must leave at least one coordinate, and the surviving columns must
    /// span something nonzero.
    pub fn puncture(&self, drop: &[usize]) -> Result<LinearCode> {
        let set: BTreeSet<usize> = drop.iter().copied().collect();
        if set.len() != drop.len() {
            return Err(Error::BadIndex("duplicate coordinates".into()));
        }
        if let Some(&j) = set.iter().find(|&&j| j >= self.n) {
            return Err(Error::BadIndex(format!("coordinate {j} out of range for n={}", self.n)));
        }
        if set.len() == self.n {
            return Err(Error::BadIndex("cannot delete every coordinate".into()));
        }
        let keep: Vec<usize> = (0..self.n).filter(|j| !set.contains(j)).collect();
        let cols = self.gen.select_columns(&keep)?;
        let code = match Self::from_generator_quiet(&cols) {
            Err(Error::ZeroCode) => return Err(Error::EmptyResult),
            other => other?,
        };
        // deleting fewer than d coordinates cannot lose dimension
        if let Some(&d) = self.d_cache.get() {
            if set.len() < d {
                assert_eq!(code.k, self.k, "puncturing below the distance changed k");
            }
        }
        Ok(code)
    }

    /// Coordinates where some codeword is nonzero, plus a full-support flag.
    pub fn support(&self) -> (BTreeSet<usize>, bool) {
        let mut sup = BTreeSet::new();
        for j in 0..self.n {
            if (0..self.k).any(|i| self.gen.get(i, j) != Felt(0)) {
                sup.insert(j);
            }
        }
        let full = sup.len() == self.n;
        (sup, full)
    }

    /// MDS / NMDS / AMDS-only / Other, with both distances.
    pub fn classify(&self) -> Result<CodeClass> {
        self.classify_budgeted(WORK_BUDGET)
    }

    pub fn classify_budgeted(&self, budget: u64) -> Result<CodeClass> {
        let d = self.min_distance_budgeted(DistanceStrategy::Auto, budget)?;
        let d_dual = if self.k == self.n {
            0
        } else {
            self.dual()?.min_distance_budgeted(DistanceStrategy::Auto, budget)?
        };
        debug_assert!(d <= self.n - self.k + 1, "Singleton violation");
        let tag = if d == self.n - self.k + 1 {
            CodeClassTag::Mds
        } else if d == self.n - self.k {
            if d_dual == self.k {
                CodeClassTag::Nmds
            } else {
                CodeClassTag::AmdsOnly
            }
        } else {
            CodeClassTag::Other
        };
        Ok(CodeClass { tag, d, d_dual })
    }

    /// Re-express a prime-field code inside an extension of the same prime.
    pub fn lift_to(&self, ext: &Field) -> Result<LinearCode> {
        let rows: Vec<Vec<Felt>> = (0..self.k)
            .map(|i| self.gen.row(i).iter().map(|&x| ext.lift(&self.field, x)).collect())
            .collect::<Result<_>>()?;
        Self::from_generator_quiet(&Mat::from_rows(ext.clone(), rows)?)
    }
}

/// Visit every size-element subset of 0..n in lexicographic order.
pub fn for_each_subset<F: FnMut(&[usize])>(n: usize, size: usize, mut f: F) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        // advance to the next combination
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn felts(vals: &[u64]) -> Vec<Felt> {
        vals.iter().map(|&v| Felt(v)).collect()
    }

    fn vandermonde(field: &Field, points: &[Felt], rows: usize) -> Mat {
        let mut m = Mat::zeros(field.clone(), rows, points.len());
        for i in 0..rows {
            for (j, &x) in points.iter().enumerate() {
                m.set(i, j, field.pow(x, i as i64).unwrap());
            }
        }
        m
    }

    // Evaluation rows of 1, x, x^2 + 6 x^3 at 0..9 over GF(37).
    fn twisted_example_gen() -> Mat {
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        let mut m = Mat::zeros(f37.clone(), 3, 10);
        for (j, &x) in pts.iter().enumerate() {
            m.set(0, j, Felt(1));
            m.set(1, j, x);
            let x2 = f37.mul(x, x);
            let x3 = f37.mul(x2, x);
            m.set(2, j, f37.add(x2, f37.mul(Felt(6), x3)));
        }
        m
    }

    #[test]
    fn construction_and_canonical_form() {
        let g = twisted_example_gen();
        let c = LinearCode::from_generator(&g).unwrap();
        assert_eq!((c.n(), c.k()), (10, 3));
        // canonical: generator equals its own reduction
        assert_eq!(c.generator().rref().mat, *c.generator());

        // duplicated row changes nothing
        let doubled = g.vstack(&g).unwrap();
        let c2 = LinearCode::from_generator(&doubled).unwrap();
        assert_eq!(c, c2);

        let zero = Mat::zeros(f(5), 2, 4);
        assert!(matches!(LinearCode::from_generator(&zero), Err(Error::ZeroCode)));
    }

    #[test]
    fn encode_matches_polynomial_evaluation() {
        let f37 = f(37);
        let c = LinearCode::from_generator(&twisted_example_gen()).unwrap();
        let msg = felts(&[5, 11, 2]);
        let got = c.encode(&msg).unwrap();
        // direct oracle: 5 + 11 x + 2 (x^2 + 6 x^3) at each point,
        // using the raw generator rather than the canonical one
        let g = twisted_example_gen();
        for j in 0..10 {
            let mut want = Felt(0);
            for (i, &m) in msg.iter().enumerate() {
                want = f37.add(want, f37.mul(m, g.get(i, j)));
            }
            // canonical generator spans the same code, so encode output is a
            // codeword; the specific word differs, so check membership instead
            let _ = want;
        }
        assert!(c.contains(&got).unwrap());
        assert_eq!(c.encode(&felts(&[0, 0, 0])).unwrap(), vec![Felt(0); 10]);
        assert!(c.encode(&felts(&[1, 2])).is_err());
        // unit messages reproduce generator rows
        let e0 = c.encode(&felts(&[1, 0, 0])).unwrap();
        assert_eq!(&e0[..], c.generator().row(0));
    }

    #[test]
    fn dual_dimensions_and_involution() {
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        let b = LinearCode::from_generator(&vandermonde(&f37, &pts, 3)).unwrap();
        let bd = b.dual().unwrap();
        assert_eq!(bd.k(), 7);
        assert_eq!(bd.dual().unwrap(), b);

        // generator rows annihilate the parity check
        let h = b.parity_check();
        let prod = b.generator().mat_mul(&h.transpose()).unwrap();
        assert_eq!(prod, Mat::zeros(f37.clone(), 3, 7));

        // a code given by a 6-row parity check has dimension 4, and its dual
        // is exactly the row space of that parity check
        let h_a = vandermonde(&f37, &pts, 6);
        let a = LinearCode::from_generator(&h_a).unwrap().dual().unwrap();
        assert_eq!(a.k(), 4);
        assert_eq!(a.dual().unwrap(), LinearCode::from_generator(&h_a).unwrap());

        let full = LinearCode::from_generator(&Mat::identity(f37.clone(), 4)).unwrap();
        assert!(matches!(full.dual(), Err(Error::TrivialDual)));
    }

    #[test]
    fn distances_on_known_codes() {
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        // evaluation code of polynomials of degree < 3 on 10 points: d = 8
        let grs3 = LinearCode::from_generator(&vandermonde(&f37, &pts, 3)).unwrap();
        assert_eq!(grs3.min_distance(DistanceStrategy::Enumerate).unwrap(), 8);
        assert_eq!(grs3.min_distance(DistanceStrategy::Columns).unwrap(), 8);

        let twisted = LinearCode::from_generator(&twisted_example_gen()).unwrap();
        assert_eq!(twisted.min_distance(DistanceStrategy::Enumerate).unwrap(), 7);
        assert_eq!(twisted.min_distance(DistanceStrategy::Columns).unwrap(), 7);

        // repetition code and its dual
        let rep = LinearCode::from_generator(
            &Mat::from_rows(f(5), vec![felts(&[1, 1, 1, 1, 1, 1])]).unwrap(),
        )
        .unwrap();
        assert_eq!(rep.min_distance(DistanceStrategy::Auto).unwrap(), 6);
        let par = rep.dual().unwrap();
        assert_eq!(par.min_distance(DistanceStrategy::Auto).unwrap(), 2);

        let full = LinearCode::from_generator(&Mat::identity(f(2), 8)).unwrap();
        assert_eq!(full.min_distance(DistanceStrategy::Enumerate).unwrap(), 1);
        assert_eq!(full.min_distance(DistanceStrategy::Columns).unwrap(), 1);
    }

    #[test]
    fn distance_budgets() {
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        let grs3 = LinearCode::from_generator(&vandermonde(&f37, &pts, 3)).unwrap();
        assert!(matches!(
            grs3.min_distance_budgeted(DistanceStrategy::Enumerate, 100),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            grs3.min_distance_budgeted(DistanceStrategy::Columns, 100),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            grs3.min_distance_budgeted(DistanceStrategy::Auto, 100),
            Err(Error::TooLarge(_))
        ));
        // auto falls back to columns when enumeration is too big:
        // dimension 7 over GF(37) cannot be enumerated within 2^24
        let big = LinearCode::from_generator(&vandermonde(&f37, &pts, 7)).unwrap();
        assert_eq!(big.min_distance(DistanceStrategy::Auto).unwrap(), 4);
    }

    #[test]
    fn distance_cache_cross_checks() {
        let c = LinearCode::from_generator(&twisted_example_gen()).unwrap();
        assert_eq!(c.min_distance(DistanceStrategy::Columns).unwrap(), 7);
        // auto now reuses the cache; explicit enumerate recomputes and agrees
        assert_eq!(c.min_distance(DistanceStrategy::Auto).unwrap(), 7);
        assert_eq!(c.min_distance(DistanceStrategy::Enumerate).unwrap(), 7);
    }

    #[test]
    fn puncture_conventions() {
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        let grs3 = LinearCode::from_generator(&vandermonde(&f37, &pts, 3)).unwrap();
        let _ = grs3.min_distance(DistanceStrategy::Auto).unwrap();

        // deleting one coordinate of an MDS [10,3,8] leaves [9,3,7]
        let p1 = grs3.puncture(&[0]).unwrap();
        assert_eq!((p1.n(), p1.k()), (9, 3));
        assert_eq!(p1.min_distance(DistanceStrategy::Auto).unwrap(), 7);

        // empty deletion set is the identity
        assert_eq!(grs3.puncture(&[]).unwrap(), grs3);

        // deleting 8 coordinates leaves n = 2 and k at most 2
        let p8 = grs3.puncture(&[0, 1, 2, 3, 4, 5, 6, 7]).unwrap();
        assert_eq!(p8.n(), 2);
        assert!(p8.k() <= 2);

        assert!(grs3.puncture(&(0..10).collect::<Vec<_>>()).is_err());
        assert!(grs3.puncture(&[10]).is_err());
        assert!(grs3.puncture(&[1, 1]).is_err());

        // a code supported on one coordinate vanishes when that is deleted
        let thin =
            LinearCode::from_generator(&Mat::from_rows(f(5), vec![felts(&[3, 0])]).unwrap())
                .unwrap();
        assert!(matches!(thin.puncture(&[0]), Err(Error::EmptyResult)));
    }

    #[test]
    fn support_and_fullness() {
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        let grs3 = LinearCode::from_generator(&vandermonde(&f37, &pts, 3)).unwrap();
        let (sup, full) = grs3.support();
        assert!(full);
        assert_eq!(sup.len(), 10);

        let gappy =
            LinearCode::from_generator(&Mat::from_rows(f(2), vec![felts(&[1, 0, 1, 0])]).unwrap())
                .unwrap();
        let (sup, full) = gappy.support();
        assert!(!full);
        assert_eq!(sup.into_iter().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn classification_tags() {
        // twisted cubic example: almost-MDS in both itself and its dual
        let c = LinearCode::from_generator(&twisted_example_gen()).unwrap();
        let cls = c.classify().unwrap();
        assert_eq!(cls.tag, CodeClassTag::Nmds);
        assert_eq!((cls.d, cls.d_dual), (7, 3));

        // plain evaluation codes are MDS
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        let grs4 = LinearCode::from_generator(&vandermonde(&f37, &pts, 4)).unwrap();
        let cls = grs4.classify().unwrap();
        assert_eq!(cls.tag, CodeClassTag::Mds);
        assert_eq!((cls.d, cls.d_dual), (7, 5));

        // [6,2,4] over GF(5) with a dead coordinate: AMDS but its dual
        // has distance 1, not k
        let f5 = f(5);
        let padded = Mat::from_rows(
            f5.clone(),
            vec![felts(&[1, 1, 1, 1, 1, 0]), felts(&[0, 1, 2, 3, 4, 0])],
        )
        .unwrap();
        let amds = LinearCode::from_generator(&padded).unwrap();
        let cls = amds.classify().unwrap();
        assert_eq!(cls.tag, CodeClassTag::AmdsOnly);
        assert_eq!((cls.d, cls.d_dual), (4, 1));

        // weight-1 row drags d below n-k
        let other = LinearCode::from_generator(
            &Mat::from_rows(
                f(2),
                vec![felts(&[1, 1, 1, 1, 0]), felts(&[0, 0, 0, 0, 1])],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(other.classify().unwrap().tag, CodeClassTag::Other);

        // full space classifies MDS with the sentinel dual distance
        let full = LinearCode::from_generator(&Mat::identity(f(3), 4)).unwrap();
        let cls = full.classify().unwrap();
        assert_eq!(cls, CodeClass { tag: CodeClassTag::Mds, d: 1, d_dual: 0 });
    }

    #[test]
    fn subcode_relation() {
        let f37 = f(37);
        let pts: Vec<Felt> = (0..10).map(Felt).collect();
        let grs2 = LinearCode::from_generator(&vandermonde(&f37, &pts, 2)).unwrap();
        let grs3 = LinearCode::from_generator(&vandermonde(&f37, &pts, 3)).unwrap();
        assert!(grs2.is_subcode_of(&grs3).unwrap());
        assert!(!grs3.is_subcode_of(&grs2).unwrap());
        assert!(grs3.is_subcode_of(&grs3).unwrap());
        // membership of individual words
        let w = grs2.encode(&felts(&[4, 9])).unwrap();
        assert!(grs3.contains(&w).unwrap());
    }

    #[test]
    fn lifting_preserves_parameters() {
        let f5 = f(5);
        let pts: Vec<Felt> = (0..5).map(Felt).collect();
        let c = LinearCode::from_generator(&vandermonde(&f5, &pts, 2)).unwrap();
        assert_eq!(c.min_distance(DistanceStrategy::Auto).unwrap(), 4);
        let f25 = Field::new(5, 2, None).unwrap();
        let lifted = c.lift_to(&f25).unwrap();
        assert_eq!((lifted.n(), lifted.k()), (5, 2));
        assert_eq!(lifted.min_distance(DistanceStrategy::Enumerate).unwrap(), 4);
    }

    #[test]
    fn subset_iteration_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_subset(10, 0, |_| count += 1);
        assert_eq!(count, 1);
        let mut none = 0;
        for_each_subset(3, 5, |_| none += 1);
        assert_eq!(none, 0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_code() -> impl Strategy<Value = LinearCode> {
            (0usize..3, 1usize..9, 1usize..5).prop_flat_map(|(fi, n, k)| {
                let field = [f(2), f(3), f(5)][fi].clone();
                let q = field.q();
                proptest::collection::vec(0u64..q, k * n).prop_filter_map(
                    "needs nonzero rank",
                    move |vals| {
                        let m =
                            Mat::new(field.clone(), k, n, vals.into_iter().map(Felt).collect())
                                .unwrap();
                        LinearCode::from_generator_quiet(&m).ok()
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn singleton_bound(c in arb_code()) {
                let d = c.min_distance(DistanceStrategy::Enumerate).unwrap();
                prop_assert!(d >= 1 && d <= c.n() - c.k() + 1);
            }

            #[test]
            fn strategies_agree(c in arb_code()) {
                let fresh = LinearCode::from_generator_quiet(c.generator()).unwrap();
                let de = c.min_distance(DistanceStrategy::Enumerate).unwrap();
                let dc = fresh.min_distance(DistanceStrategy::Columns).unwrap();
                prop_assert_eq!(de, dc);
            }

            #[test]
            fn dual_dimension_and_involution(c in arb_code()) {
                if c.k() < c.n() {
                    let d = c.dual().unwrap();
                    prop_assert_eq!(c.k() + d.k(), c.n());
                    prop_assert_eq!(&d.dual().unwrap(), &c);
                }
            }

            #[test]
            fn puncture_bounds(c in arb_code(), raw in proptest::collection::btree_set(0usize..9, 0..3)) {
                let drop: Vec<usize> = raw.into_iter().filter(|&j| j < c.n()).collect();
                if drop.len() >= c.n() {
                    return Ok(());
                }
                let d = c.min_distance(DistanceStrategy::Auto).unwrap();
                match c.puncture(&drop) {
                    Ok(p) => {
                        let m = drop.len();
                        prop_assert_eq!(p.n(), c.n() - m);
                        prop_assert!(p.k() <= c.k() && c.k() - p.k() <= m);
                        let pd = p.min_distance(DistanceStrategy::Auto).unwrap();
                        // any nonzero survivor comes from weight >= d, losing <= m
                        prop_assert!(pd >= d.saturating_sub(m));
                        // when no dimension is lost a smallest codeword survives;
                        // with m >= d the image of one can vanish and the upper
                        // bound genuinely fails, so it is scoped to k preserved
                        if p.k() == c.k() {
                            prop_assert!(pd <= d);
                        }
                        if m < d {
                            prop_assert_eq!(p.k(), c.k());
                        }
                    }
                    Err(Error::EmptyResult) => {
                        // the deleted coordinates carried the whole support
                        prop_assert!(m_holds_support(&c, &drop));
                    }
                    Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
                }
            }
        }

        fn m_holds_support(c: &LinearCode, drop: &[usize]) -> bool {
            let (sup, _) = c.support();
            sup.iter().all(|j| drop.contains(j))
        }
    }
}
