//! Worked examples with hand-checkable values.

use std::collections::BTreeSet;
use std::sync::Arc;

use chow_core::ltmatrix::{
    apply_deranged, augment_matrix, beta_set, chow_family, chow_via_subsets, delete_index, dnk_family, gamma_chow,
    gv_permutation_sum, is_tn, minor, resolve, verify_resolution, LTMatrix, ResolutionCheck, ResolveOutcome,
};
use chow_core::poly::{gamma_expand, gamma_extract, qi, Poly, Q};
use chow_core::poset::{
    aug_pair, boolean_algebra, chain, chow_pair, chow_via_chains, convolve, invert, kernel_from_g, partition_lattice,
    paving_extension, subspace_lattice, IncidenceFunction, Uniformity,
};
use chow_core::realroot::{interlaces, is_in_interlacing, is_real_rooted, sturm_count};
use chow_core::toeplitz::{binomial_series, chow_series, pf_series, sheffer_matrix, toeplitz_family, PFData, TruncatedSeries};

fn p(c: &[i64]) -> Poly<Q> {
    Poly::from_i64s(c)
}

fn pascal(n: usize) -> LTMatrix<Q> {
    LTMatrix::pascal(n)
}

#[test]
fn reciprocal_and_s_operator() {
    assert_eq!(p(&[1, 4, 1]).reciprocal(3).unwrap(), p(&[0, 1, 4, 1]));
    assert_eq!(p(&[1, 4, 1]).reciprocal(2).unwrap(), p(&[1, 4, 1]));
    assert_eq!(Poly::<Q>::zero().reciprocal(5).unwrap(), Poly::zero());
    assert_eq!(p(&[1]).s_op(2).unwrap(), p(&[1, 1]));
    assert_eq!(p(&[1, 1]).s_op(2).unwrap(), p(&[1, 1]));
    assert_eq!(p(&[1, 4, 1]).s_op(2).unwrap(), Poly::zero());
    assert!(p(&[1, 4, 1]).is_palindromic(2));
    assert!(!p(&[1, 4, 1]).is_palindromic(3));
}

#[test]
fn gamma_vectors() {
    let entries = |f: &Poly<Q>, n| gamma_extract(f, n).unwrap().entries().to_vec();
    assert_eq!(entries(&p(&[1, 4, 1]), 2), vec![qi(1), qi(2)]);
    assert_eq!(entries(&p(&[1, 3, 3, 1]), 3), vec![qi(1), qi(0)]);
    assert_eq!(entries(&p(&[1, 0, 1]), 2), vec![qi(1), qi(-2)]);
    assert_eq!(gamma_expand(&[qi(0), qi(1)], 2).unwrap(), p(&[0, 1]));
}

#[test]
fn root_counting_and_interlacing() {
    assert_eq!(sturm_count(&p(&[1, 4, 1]), None, None).unwrap(), 2);
    assert_eq!(sturm_count(&p(&[1, 1, 1]), None, None).unwrap(), 0);
    assert_eq!(sturm_count(&p(&[0, 0, 1]), None, None).unwrap(), 1);
    assert!(is_real_rooted(&Poly::zero()));
    assert!(!is_real_rooted(&p(&[1, 1, 1])));
    assert!(interlaces(&p(&[1, 1]), &p(&[1, 4, 1])).verdict);
    assert!(!interlaces(&p(&[1, 4, 1]), &p(&[1, 1])).verdict);
    assert!(interlaces(&Poly::zero(), &p(&[1, 1])).verdict);
    assert!(is_in_interlacing(&[p(&[1, 1]), p(&[0, 1]), p(&[0, 1])], 2).unwrap());
    assert!(is_in_interlacing(&[p(&[1])], 0).unwrap());
    assert!(!is_in_interlacing(&[p(&[1, 3])], 1).unwrap());
}

#[test]
fn incidence_algebra_on_small_posets() {
    let b2 = Arc::new(boolean_algebra(2));
    let zeta = IncidenceFunction::<Q>::zeta(b2.clone());
    let (bot, top) = b2.bounds().unwrap();
    let mu = invert(&zeta).unwrap();
    assert_eq!(*mu.get(bot, top), p(&[1]));
    assert_eq!(convolve(&mu, &zeta).unwrap().to_json(), IncidenceFunction::<Q>::delta(b2.clone()).to_json());
    assert_eq!(*kernel_from_g(&zeta).unwrap().get(bot, top), p(&[1, -2, 1]));

    let c2 = Arc::new(chain(2));
    let (lo, hi) = c2.bounds().unwrap();
    let zeta_c = IncidenceFunction::<Q>::zeta(c2.clone());
    assert_eq!(*convolve(&zeta_c, &zeta_c).unwrap().get(lo, hi), p(&[3]));
    assert_eq!(*kernel_from_g(&zeta_c).unwrap().get(lo, hi), p(&[0, -1, 1]));
    assert_eq!(*chow_pair(&zeta_c).unwrap().0.get(lo, hi), p(&[1, 1]));
}

#[test]
fn boolean_algebra_families() {
    let b3 = Arc::new(boolean_algebra(3));
    assert_eq!(b3.len(), 8);
    let zeta = IncidenceFunction::<Q>::zeta(b3.clone());
    let (bot, top) = b3.bounds().unwrap();
    let (h, d) = chow_pair(&zeta).unwrap();
    assert_eq!(*h.get(bot, top), p(&[1, 4, 1]));
    assert_eq!(*d.get(bot, top), p(&[0, 1, 1]));
    assert_eq!(chow_via_chains(&zeta, bot, top).unwrap(), p(&[1, 4, 1]));

    let b2 = Arc::new(boolean_algebra(2));
    let zeta2 = IncidenceFunction::<Q>::zeta(b2.clone());
    let (bot, top) = b2.bounds().unwrap();
    assert_eq!(*aug_pair(&zeta2).unwrap().0.get(bot, top), p(&[1, 3, 1]));
    assert_eq!(chow_via_chains(&zeta2, bot, top).unwrap(), p(&[1, 1]));
}

#[test]
fn poset_transforms() {
    let b3 = boolean_algebra(3);
    let tau = b3.truncate().unwrap();
    assert_eq!(tau.len(), 5);
    assert_eq!(tau.total_rank().unwrap(), 2);
    let sel = b3.rank_select(&BTreeSet::from([1])).unwrap();
    assert_eq!(sel.len(), 5);
    assert_eq!(chain(3).truncate().unwrap().len(), chain(2).len());

    let b4 = boolean_algebra(4);
    let Uniformity::Uniform(r) = b4.rank_select(&BTreeSet::from([2])).unwrap().is_weak_rank_uniform().unwrap() else {
        panic!("rank selection of B_4 is uniform");
    };
    // weak ranks are inherited, so the six 2-subsets sit in row 4, column 2
    assert_eq!(r.get(4, 2), &qi(6));
    assert_eq!(r.get(4, 1), &qi(0));
}

#[test]
fn constructors() {
    assert_eq!(partition_lattice(3).len(), 5);
    assert_eq!(subspace_lattice(2, 2).unwrap().len(), 5);
    let Uniformity::Uniform(r) = subspace_lattice(3, 2).unwrap().is_weak_rank_uniform().unwrap() else {
        panic!("subspace lattices are uniform");
    };
    let rows: Vec<Vec<Q>> = r.rows().to_vec();
    let expect: Vec<Vec<Q>> = [&[1][..], &[1, 1], &[1, 3, 1], &[1, 7, 7, 1]]
        .iter()
        .map(|row| row.iter().map(|&v| qi(v)).collect())
        .collect();
    assert_eq!(rows, expect);

    let b4 = boolean_algebra(4);
    let hyper: Vec<usize> = ["{1,2,3}", "{1,4}", "{2,4}", "{3,4}"].iter().map(|s| b4.index_of(s).unwrap()).collect();
    let pav = paving_extension(&b4, 1, &hyper).unwrap();
    assert!(pav.is_graded());
    assert_eq!(pav.total_rank().unwrap(), 3);
}

#[test]
fn matrix_families() {
    let fam = chow_family(&pascal(3)).unwrap();
    assert_eq!(fam.h, vec![p(&[1]), p(&[1]), p(&[1, 1]), p(&[1, 4, 1])]);
    assert_eq!(fam.d, vec![p(&[1]), p(&[0]), p(&[0, 1]), p(&[0, 1, 1])]);
    let id = chow_family(&LTMatrix::<Q>::identity(3)).unwrap();
    assert_eq!(id.h, vec![p(&[1]), Poly::zero(), Poly::zero(), Poly::zero()]);
    let ones = LTMatrix::toeplitz(&vec![qi(1); 5]).unwrap();
    let ones_fam = chow_family(&ones).unwrap();
    for n in 1..=4 {
        assert_eq!(ones_fam.h[n], Poly::one_plus_t_pow(n - 1));
    }
    assert_eq!(chow_via_subsets(&pascal(3), 3).unwrap(), p(&[1, 4, 1]));
    assert_eq!(chow_via_subsets(&ones, 3).unwrap(), p(&[1, 2, 1]));

    let deleted = delete_index(&pascal(3), 2).unwrap();
    assert_eq!(deleted.row(2), &[qi(1), qi(3), qi(1)]);
    assert_eq!(chow_family(&deleted).unwrap().h[2].shift(1), p(&[0, 1, 1]));
    let bar = augment_matrix(&pascal(3));
    assert_eq!(bar.row(2), &[qi(1), qi(1), qi(1)]);
    assert_eq!(chow_family(&bar).unwrap().h[3], p(&[1, 3, 1]));
    assert_eq!(fam.g[2], p(&[1, 3, 1]));
    assert_eq!(fam.a[2], p(&[0, 1, 1]));
    assert_eq!(apply_deranged(&pascal(3), &p(&[0, 0, 0, 1])).unwrap(), p(&[0, 1, 1]));
    assert_eq!(apply_deranged(&pascal(3), &p(&[1, 3, 3, 1])).unwrap(), p(&[1, 4, 1]));
}

#[test]
fn minors_and_total_nonnegativity() {
    assert_eq!(minor(&pascal(3), &[2, 3], &[0, 2]).unwrap(), qi(2));
    assert_eq!(minor(&pascal(3), &[1, 2], &[0, 1]).unwrap(), qi(1));
    assert!(is_tn(&pascal(4)).unwrap().tn);
    assert!(is_tn(&LTMatrix::<Q>::identity(4)).unwrap().tn);
    let mut rows = pascal(2).rows().to_vec();
    rows[2][1] = qi(-1);
    let verdict = is_tn(&LTMatrix::from_rows(rows).unwrap()).unwrap();
    let w = verdict.witness.unwrap();
    assert!(!verdict.tn);
    assert_eq!((w.rows, w.cols), (vec![2], vec![1]));
}

#[test]
fn resolutions() {
    let ResolveOutcome::Resolved(res) = resolve(&pascal(4)) else { panic!("Pascal is resolvable") };
    assert!(res.lambda.iter().flatten().all(|l| *l == qi(1)));
    for k in 0..=3 {
        assert_eq!(res.resolved[3][k], Poly::one_plus_t_pow(3 - k).shift(k));
    }
    let ResolveOutcome::Resolved(id) = resolve(&LTMatrix::identity(3)) else { panic!("identity is resolvable") };
    assert!(id.lambda.iter().flatten().all(|l| *l == qi(0)));

    let lambda = vec![vec![qi(2)], vec![qi(1), qi(1)]];
    assert!(matches!(verify_resolution(&pascal(2), &lambda).unwrap(), ResolutionCheck::Invalid { .. }));

    let degenerate = LTMatrix::from_rows(vec![vec![qi(1)], vec![qi(0), qi(1)], vec![qi(1), qi(0), qi(1)]]).unwrap();
    assert!(matches!(resolve(&degenerate), ResolveOutcome::Inconclusive { .. }));

    let dnk = dnk_family(&pascal(2), &resolve_ok(&pascal(2))).unwrap();
    assert_eq!(dnk.d[2], vec![p(&[1, 1]), p(&[0, 1]), p(&[0, 1])]);
    assert_eq!(dnk.a[2][2], p(&[0, 1, 1]));
}

fn resolve_ok(r: &LTMatrix<Q>) -> chow_core::ltmatrix::Resolution {
    match resolve(r) {
        ResolveOutcome::Resolved(res) => res,
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn gamma_minor_formula() {
    let g = |n, aug| gamma_chow(&pascal(3), n, aug).unwrap().entries().to_vec();
    assert_eq!(g(3, false), vec![qi(1), qi(2)]);
    assert_eq!(g(2, true), vec![qi(1), qi(1)]);
    assert_eq!(beta_set(&pascal(3), 3, &[2]).unwrap(), qi(2));
    assert_eq!(beta_set(&pascal(3), 3, &[]).unwrap(), qi(1));
    let res = resolve_ok(&pascal(3));
    assert_eq!(gv_permutation_sum(&res, 3, &[2]).unwrap(), qi(2));
    assert_eq!(gv_permutation_sum(&res, 3, &[]).unwrap(), qi(1));
}

#[test]
fn series_examples() {
    let geometric = TruncatedSeries::new(vec![qi(1); 7]);
    let s = chow_series(&geometric).unwrap();
    for n in 1..=6 {
        assert_eq!(s.h.coeff(n), &Poly::one_plus_t_pow(n - 1));
    }
    let linear = TruncatedSeries::from_poly(&[qi(1), qi(1)], 5);
    let lin = chow_series(&linear).unwrap();
    assert!((2..=5).all(|n| lin.h.coeff(n).is_zero()));
    assert_eq!(lin.h.coeff(1), &p(&[1]));

    let pf = pf_series(&PFData { alphas: vec![qi(1), qi(1)], ..Default::default() }, 4).unwrap();
    assert_eq!(pf.coeffs(), &[qi(1), qi(2), qi(1), qi(0), qi(0)]);
    assert_eq!(toeplitz_family(&pf).unwrap().h[2], p(&[1, 1]));
    let beta = pf_series(&PFData { betas: vec![qi(1)], ..Default::default() }, 4).unwrap();
    assert_eq!(beta.coeffs(), &vec![qi(1); 5][..]);

    let factorials: Vec<Q> = (0..6).scan(qi(1), |f, n| {
        if n > 0 {
            *f = &*f * qi(n);
        }
        Some(f.clone())
    }).collect();
    let binom = binomial_series(&factorials).unwrap();
    assert_eq!(binom.h.coeff(3), &p(&[1, 4, 1]));
    assert_eq!(binom.h.coeff(1), &p(&[1]));

    // r-cubical with r = 2: C(n) = 2^(n-1) (n-1)!
    let cubical: Vec<Q> = (0..5)
        .map(|n| if n == 0 { qi(1) } else { &factorials[n - 1] * qi(1 << (n - 1)) })
        .collect();
    let r = sheffer_matrix(&factorials[..5], &cubical).unwrap();
    assert_eq!((r.get(3, 1), r.get(3, 2)), (&qi(4), &qi(4)));
    assert_eq!(chow_family(&r).unwrap().h[3], p(&[1, 5, 1]));
}
