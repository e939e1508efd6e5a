//! Componentwise (Schur) products of codes and the bounds that govern them:
//! the product Singleton bound, recognition of pairs meeting it, the
//! full-support dimension bound, and the MDS-product and dual-distance checks.

use crate::code::{CodeClassTag, LinearCode, WORK_BUDGET};
use crate::error::{Error, Result};
use crate::gf::Felt;
use crate::linalg::Mat;

/// Exact product parameters next to the bounds they must respect.
/// `fullsupp_bound_ok` is None when its hypotheses (both factors full support,
/// at least one MDS) do not hold, so vacuous cases stay distinguishable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductReport {
    pub k_a: usize,
    pub k_b: usize,
    pub n: usize,
    pub d_prod: usize,
    pub k_prod: usize,
    pub psb: usize,
    pub is_pmds: bool,
    pub fullsupp_bound_ok: Option<bool>,
}

fn check_compatible(a: &LinearCode, b: &LinearCode) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.n() != b.n() {
        return Err(Error::LengthMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    Ok(())
}

/// The code spanned by all componentwise products of a codeword of `a` with a
/// codeword of `b`; the kA*kB generator-row products suffice. Errors with
/// ZeroCode when the supports are disjoint and the span collapses.
pub fn schur_product(a: &LinearCode, b: &LinearCode) -> Result<LinearCode> {
    check_compatible(a, b)?;
    let f = a.field().clone();
    let n = a.n();
    let mut rows = Vec::with_capacity(a.k() * b.k());
    for i in 0..a.k() {
        for t in 0..b.k() {
            let row: Vec<Felt> = (0..n)
                .map(|j| f.mul(a.generator().get(i, j), b.generator().get(t, j)))
                .collect();
            rows.push(row);
        }
    }
    LinearCode::from_generator_quiet(&Mat::from_rows(f, rows)?)
}

/// Singleton bound for products: d(A*B) can never exceed max(1, n-kA-kB+2).
pub fn product_singleton_bound(n: usize, k_a: usize, k_b: usize) -> usize {
    (n + 2).saturating_sub(k_a + k_b).max(1)
}

pub fn product_report(a: &LinearCode, b: &LinearCode) -> Result<ProductReport> {
    product_report_budgeted(a, b, WORK_BUDGET)
}

/// Computes the product and every bound field exactly. The product Singleton
/// bound is a theorem, so violating it means a computation bug: asserted.
pub fn product_report_budgeted(
    a: &LinearCode,
    b: &LinearCode,
    budget: u64,
) -> Result<ProductReport> {
    let prod = schur_product(a, b)?;
    let n = a.n();
    let (k_a, k_b) = (a.k(), b.k());
    let k_prod = prod.k();
    let d_prod = prod.min_distance_budgeted(crate::code::DistanceStrategy::Auto, budget)?;
    let psb = product_singleton_bound(n, k_a, k_b);
    assert!(
        d_prod <= psb,
        "product Singleton bound violated: d={d_prod} psb={psb}"
    );
    let is_pmds = d_prod >= 2 && d_prod == (n + 2).wrapping_sub(k_a + k_b);
    let fullsupp_bound_ok = if a.support().1 && b.support().1 {
        let d_a = a.min_distance_budgeted(crate::code::DistanceStrategy::Auto, budget)?;
        let d_b = b.min_distance_budgeted(crate::code::DistanceStrategy::Auto, budget)?;
        if d_a == n - k_a + 1 || d_b == n - k_b + 1 {
            Some(k_prod >= (k_a + k_b - 1).min(n))
        } else {
            None
        }
    } else {
        None
    };
    Ok(ProductReport {
        k_a,
        k_b,
        n,
        d_prod,
        k_prod,
        psb,
        is_pmds,
        fullsupp_bound_ok,
    })
}

/// For MDS factors whose product has the extremal dimension kA+kB-1, the
/// product must itself be MDS; that consequence is asserted and true is
/// returned. A product of larger dimension returns false (hypothesis fails).
pub fn mds_product_check(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    check_compatible(a, b)?;
    let n = a.n();
    for (label, c) in [("first factor", a), ("second factor", b)] {
        let d = c.min_distance(crate::code::DistanceStrategy::Auto)?;
        if d != n - c.k() + 1 {
            return Err(Error::PreconditionFailed(format!("{label} is not MDS")));
        }
    }
    let prod = schur_product(a, b)?;
    if prod.k() != a.k() + b.k() - 1 {
        return Ok(false);
    }
    let class = prod.classify()?;
    assert_eq!(
        class.tag,
        CodeClassTag::Mds,
        "extremal-dimension product of MDS factors must be MDS"
    );
    Ok(true)
}

/// Lower bound on d(C) forced by a pair with A*B inside the dual of C:
/// requires d(A-dual) > a > 0 and d(B-dual) > b > 0, then reports whether
/// d(C) >= a+b (always true; callers assert the outcome).
pub fn dual_distance_bound_check(
    a: &LinearCode,
    b: &LinearCode,
    c: &LinearCode,
    bound_a: usize,
    bound_b: usize,
) -> Result<bool> {
    check_compatible(a, b)?;
    check_compatible(a, c)?;
    if bound_a == 0 || bound_b == 0 {
        return Err(Error::PreconditionFailed("bounds must be positive".into()));
    }
    let prod = schur_product(a, b)?;
    for i in 0..prod.k() {
        let syndrome = c.generator().mul_vec(prod.generator().row(i))?;
        if syndrome.iter().any(|&s| s != c.field().zero()) {
            return Err(Error::PreconditionFailed(
                "product does not lie in the dual of the third code".into(),
            ));
        }
    }
    let d_a_dual = a.dual()?.min_distance(crate::code::DistanceStrategy::Auto)?;
    if d_a_dual <= bound_a {
        return Err(Error::PreconditionFailed(format!(
            "dual distance {d_a_dual} of the first code does not exceed {bound_a}"
        )));
    }
    let d_b_dual = b.dual()?.min_distance(crate::code::DistanceStrategy::Auto)?;
    if d_b_dual <= bound_b {
        return Err(Error::PreconditionFailed(format!(
            "dual distance {d_b_dual} of the second code does not exceed {bound_b}"
        )));
    }
    let d_c = c.min_distance(crate::code::DistanceStrategy::Auto)?;
    Ok(d_c >= bound_a + bound_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{grs, grs_equals, GrsSpec, TgrsSpec};
    use crate::gf::Field;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn f37() -> Field {
        Field::prime(37).unwrap()
    }

    fn points(f: &Field, upto: u64) -> Vec<Felt> {
        (0..upto).map(|a| f.felt(a).unwrap()).collect()
    }

    fn grs_unscaled(f: &Field, n: u64, k: usize) -> LinearCode {
        grs(&GrsSpec::unscaled(f.clone(), points(f, n), k).unwrap())
    }

    #[test]
    fn repetition_code_is_schur_identity() {
        let f = f37();
        let rep = grs_unscaled(&f, 10, 1);
        for code in [
            grs_unscaled(&f, 10, 4),
            crate::construct::tgrs(
                &TgrsSpec::plus(
                    GrsSpec::unscaled(f.clone(), points(&f, 10), 3).unwrap(),
                    Felt(6),
                )
                .unwrap(),
            )
            .unwrap(),
        ] {
            let prod = schur_product(&code, &rep).unwrap();
            assert!(prod.generator().rowspace_eq(code.generator()).unwrap());
        }
    }

    #[test]
    fn products_of_plain_grs_add_degrees() {
        for (q, n) in [(37u64, 10u64), (11, 8)] {
            let f = Field::prime(q).unwrap();
            let g2 = grs_unscaled(&f, n, 2);
            let prod = schur_product(&g2, &g2).unwrap();
            let spec3 = GrsSpec::unscaled(f.clone(), points(&f, n), 3).unwrap();
            assert!(grs_equals(&prod, &spec3).unwrap());
        }
    }

    #[test]
    fn example_pair_product_lies_in_dual_of_twisted_code() {
        let f = f37();
        let a = grs_unscaled(&f, 10, 6).dual().unwrap();
        let b = grs_unscaled(&f, 10, 3);
        let c = crate::construct::tgrs(
            &TgrsSpec::plus(
                GrsSpec::unscaled(f.clone(), points(&f, 10), 3).unwrap(),
                Felt(6),
            )
            .unwrap(),
        )
        .unwrap();
        let prod = schur_product(&a, &b).unwrap();
        assert!(prod.is_subcode_of(&c.dual().unwrap()).unwrap());
    }

    #[test]
    fn product_report_hand_values() {
        let f = f37();
        let r = product_report(&grs_unscaled(&f, 10, 4), &grs_unscaled(&f, 10, 3)).unwrap();
        assert_eq!((r.k_prod, r.d_prod, r.psb), (6, 5, 5));
        assert!(r.is_pmds);
        assert_eq!(r.fullsupp_bound_ok, Some(true));

        let rep = grs_unscaled(&f, 6, 1);
        let r = product_report(&rep, &rep).unwrap();
        assert_eq!((r.k_prod, r.d_prod, r.psb), (1, 6, 6));
        assert!(r.is_pmds);
        assert_eq!(r.fullsupp_bound_ok, Some(true));
    }

    #[test]
    fn product_bound_holds_for_binary_non_mds_pair() {
        let f = Field::prime(2).unwrap();
        let one = Felt(1);
        let zero = Felt(0);
        let a = LinearCode::from_generator_quiet(
            &Mat::from_rows(
                f.clone(),
                vec![
                    vec![one, one, zero, zero, one, zero, one, one],
                    vec![zero, one, one, zero, zero, one, one, zero],
                    vec![zero, zero, one, one, one, zero, zero, one],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let b = LinearCode::from_generator_quiet(
            &Mat::from_rows(
                f.clone(),
                vec![
                    vec![one, zero, one, zero, one, zero, one, zero],
                    vec![zero, zero, one, one, zero, zero, one, one],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let r = product_report(&a, &b).unwrap();
        assert!(r.d_prod <= r.psb);
        assert!(!r.is_pmds);

        // Kill a coordinate of b: the full-support hypothesis lapses.
        let b_holed = LinearCode::from_generator_quiet(
            &Mat::from_rows(
                f.clone(),
                vec![
                    vec![zero, zero, one, zero, one, zero, one, zero],
                    vec![zero, zero, one, one, zero, zero, one, one],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let r = product_report(&a, &b_holed).unwrap();
        assert_eq!(r.fullsupp_bound_ok, None);
    }

    #[test]
    fn mds_product_check_on_common_and_unrelated_points() {
        let f = f37();
        assert!(mds_product_check(&grs_unscaled(&f, 10, 4), &grs_unscaled(&f, 10, 3)).unwrap());

        let rep = grs_unscaled(&f, 6, 1);
        assert!(mds_product_check(&rep, &rep).unwrap());

        // Same length, unrelated evaluation sequences: the product dimension
        // overshoots kA+kB-1, so the hypothesis fails.
        let f11 = Field::prime(11).unwrap();
        let a = grs_unscaled(&f11, 8, 2);
        let beta: Vec<Felt> = [3u64, 7, 1, 9, 4, 0, 8, 5].map(Felt).to_vec();
        let b = grs(&GrsSpec::unscaled(f11.clone(), beta, 2).unwrap());
        assert!(!mds_product_check(&a, &b).unwrap());

        // Binary [8,3] code with d=3 < 6 is far from MDS.
        let f2 = Field::prime(2).unwrap();
        let one = Felt(1);
        let zero = Felt(0);
        let bad = LinearCode::from_generator_quiet(
            &Mat::from_rows(
                f2.clone(),
                vec![
                    vec![one, zero, zero, one, one, zero, zero, zero],
                    vec![zero, one, zero, one, zero, one, zero, zero],
                    vec![zero, zero, one, zero, one, one, zero, zero],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(matches!(
            mds_product_check(&bad, &bad),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn dual_distance_bound_on_worked_triple() {
        let f = f37();
        let a = grs_unscaled(&f, 10, 6).dual().unwrap();
        let b = grs_unscaled(&f, 10, 3);
        let c = crate::construct::tgrs(
            &TgrsSpec::plus(
                GrsSpec::unscaled(f.clone(), points(&f, 10), 3).unwrap(),
                Felt(6),
            )
            .unwrap(),
        )
        .unwrap();
        assert!(dual_distance_bound_check(&a, &b, &c, 3, 3).unwrap());
        assert!(dual_distance_bound_check(&a, &b, &c, 1, 1).unwrap());

        assert!(matches!(
            dual_distance_bound_check(&a, &b, &c, 0, 1),
            Err(Error::PreconditionFailed(_))
        ));
        // d(A-dual) = 5 is not strictly above 5.
        assert!(matches!(
            dual_distance_bound_check(&a, &b, &c, 5, 3),
            Err(Error::PreconditionFailed(_))
        ));
        // A*B has dimension 6, so it cannot land inside this 2-dim dual.
        let too_big = grs_unscaled(&f, 10, 8);
        assert!(matches!(
            dual_distance_bound_check(&a, &b, &too_big, 3, 3),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn dual_distance_bound_over_random_grs_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
        for trial in 0..100 {
            let q = *[11u64, 13, 17].get(rng.random_range(0..3)).unwrap();
            let f = Field::prime(q).unwrap();
            let n = rng.random_range(6..=10u64.min(q - 1));
            let k_a = rng.random_range(1..=3usize);
            let k_b = rng.random_range(1..=3usize);
            let deg = k_a + k_b - 1;
            if deg + 1 >= n as usize {
                continue;
            }
            let slack = rng.random_range(0..=(n as usize - deg - 1));
            let a = grs_unscaled(&f, n, k_a);
            let b = grs_unscaled(&f, n, k_b);
            let c = grs_unscaled(&f, n, deg + slack).dual().unwrap();
            assert!(
                dual_distance_bound_check(&a, &b, &c, k_a, k_b).unwrap(),
                "trial {trial}: q={q} n={n} kA={k_a} kB={k_b} slack={slack}"
            );
        }
    }

    #[test]
    fn extremal_products_force_every_party_mds() {
        // Whenever the product meets the Singleton bound with room to spare
        // (kA+kB < n), all three codes involved must be MDS.
        for (q, n) in [(37u64, 10usize), (13, 9), (11, 8)] {
            let f = Field::prime(q).unwrap();
            for k_a in 1..4usize {
                for k_b in 1..4usize {
                    if k_a + k_b >= n {
                        continue;
                    }
                    let a = grs_unscaled(&f, n as u64, k_a);
                    let b = grs_unscaled(&f, n as u64, k_b);
                    let r = product_report(&a, &b).unwrap();
                    assert!(r.is_pmds, "q={q} n={n} kA={k_a} kB={k_b}");
                    let prod = schur_product(&a, &b).unwrap();
                    for (code, k) in [(&a, k_a), (&b, k_b), (&prod, k_a + k_b - 1)] {
                        let d = code.min_distance(crate::code::DistanceStrategy::Auto).unwrap();
                        assert_eq!(d, n - k + 1);
                    }
                    // The witnesses really do live on one evaluation sequence.
                    let alpha = points(&f, n as u64);
                    assert!(grs_equals(
                        &a,
                        &GrsSpec::unscaled(f.clone(), alpha.clone(), k_a).unwrap()
                    )
                    .unwrap());
                    assert!(grs_equals(
                        &b,
                        &GrsSpec::unscaled(f.clone(), alpha, k_b).unwrap()
                    )
                    .unwrap());
                }
            }
        }
    }

    fn random_code(
        rng: &mut impl Rng,
        f: &Field,
        n: usize,
        k_max: usize,
    ) -> Option<LinearCode> {
        let rows: Vec<Vec<Felt>> = (0..k_max)
            .map(|_| (0..n).map(|_| Felt(rng.random_range(0..f.q()))).collect())
            .collect();
        LinearCode::from_generator_quiet(&Mat::from_rows(f.clone(), rows).ok()?).ok()
    }

    #[test]
    fn pmds_firing_on_random_pairs_implies_mds_factors() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let mut fired = 0;
        for _ in 0..400 {
            let q = *[3u64, 5, 7].get(rng.random_range(0..3)).unwrap();
            let f = Field::prime(q).unwrap();
            let n = rng.random_range(4..=7usize);
            let k_a = rng.random_range(1..=2);
            let Some(a) = random_code(&mut rng, &f, n, k_a) else {
                continue;
            };
            let k_b = rng.random_range(1..=2);
            let Some(b) = random_code(&mut rng, &f, n, k_b) else {
                continue;
            };
            // Disjoint supports give a zero product; skip those draws.
            let Ok(r) = product_report(&a, &b) else {
                continue;
            };
            if r.is_pmds && r.k_a + r.k_b < n {
                fired += 1;
                for code in [&a, &b] {
                    let d = code.min_distance(crate::code::DistanceStrategy::Auto).unwrap();
                    assert_eq!(d, n - code.k() + 1);
                }
            }
        }
        assert!(fired > 0, "sweep never exercised the predicate");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn product_commutes_and_respects_inclusion(
            q in prop::sample::select(vec![2u64, 3, 5]),
            n in 3usize..8,
            a_rows in prop::collection::vec(prop::collection::vec(0u64..5, 8), 2),
            b_rows in prop::collection::vec(prop::collection::vec(0u64..5, 8), 2),
            extra in prop::collection::vec(0u64..5, 8),
        ) {
            let f = Field::prime(q).unwrap();
            let clip = |rows: &[Vec<u64>]| -> Vec<Vec<Felt>> {
                rows.iter().map(|r| r[..n].iter().map(|&x| Felt(x % q)).collect()).collect()
            };
            let a = LinearCode::from_generator_quiet(
                &Mat::from_rows(f.clone(), clip(&a_rows)).unwrap());
            let b = LinearCode::from_generator_quiet(
                &Mat::from_rows(f.clone(), clip(&b_rows)).unwrap());
            let (Ok(a), Ok(b)) = (a, b) else { return Ok(()); };

            let ab = schur_product(&a, &b);
            let ba = schur_product(&b, &a);
            match (ab, ba) {
                (Ok(ab), Ok(ba)) => {
                    prop_assert!(ab.generator().rowspace_eq(ba.generator()).unwrap());

                    let mut rows = a.generator().row_vecs();
                    rows.push(clip(std::slice::from_ref(&extra))[0].clone());
                    let bigger = LinearCode::from_generator_quiet(
                        &Mat::from_rows(f.clone(), rows).unwrap()).unwrap();
                    if let Ok(bigger_prod) = schur_product(&bigger, &b) {
                        prop_assert!(ab.is_subcode_of(&bigger_prod).unwrap());
                    }
                }
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "commutativity broke on the zero product"),
            }
        }
    }
}
