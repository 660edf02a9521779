mod common;

use common::{all_perms, perm};
use hamsym::models::sigma_at;
use hamsym::Perm;
use proptest::prelude::*;

#[test]
fn to_matrix_is_a_homomorphism_up_to_five() {
    for n in 1..=5 {
        let perms = all_perms(n);
        let mats: Vec<_> = perms.iter().map(Perm::to_matrix).collect();
        for (p, pm) in perms.iter().zip(&mats) {
            assert_eq!(pm.transpose(), p.inverse().to_matrix());
            for (q, qm) in perms.iter().zip(&mats) {
                assert_eq!(p.compose(q).unwrap().to_matrix(), pm.matmul(qm).unwrap());
            }
        }
    }
}

#[test]
fn induced_site_perm_is_a_homomorphism_on_s3_and_s4() {
    for n in [3, 4] {
        let sites = all_perms(n);
        let induced: Vec<Perm> = sites
            .iter()
            .map(|g| Perm::induced_site_perm(g).unwrap())
            .collect();
        for (g, ig) in sites.iter().zip(&induced) {
            for (h, ih) in sites.iter().zip(&induced) {
                assert_eq!(
                    Perm::induced_site_perm(&g.compose(h).unwrap()).unwrap(),
                    ig.compose(ih).unwrap()
                );
            }
        }
    }
    // matrix level on S3
    for g in all_perms(3) {
        let ig = Perm::induced_site_perm(&g).unwrap().to_matrix();
        for h in all_perms(3) {
            let ih = Perm::induced_site_perm(&h).unwrap().to_matrix();
            let igh = Perm::induced_site_perm(&g.compose(&h).unwrap())
                .unwrap()
                .to_matrix();
            assert_eq!(igh, ig.matmul(&ih).unwrap());
        }
    }
}

/// Conjugating a one-site operator by the induced matrix moves it to the
/// image site: `P^T sigma_k(s) P = sigma_k(g(s))`.
#[test]
fn induced_matrix_relabels_site_operators() {
    for g in all_perms(3) {
        let p = Perm::induced_site_perm(&g).unwrap().to_matrix();
        for k in 1..=3u8 {
            for s in 0..3 {
                let op = sigma_at(k, s + 1, 3).unwrap();
                let moved = p.transpose().matmul(&op).unwrap().matmul(&p).unwrap();
                assert_eq!(
                    moved,
                    sigma_at(k, g.apply(s) + 1, 3).unwrap(),
                    "g={g} k={k} s={s}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn inverse_and_order((p, q) in (2usize..9).prop_flat_map(|n| (perm(n), perm(n)))) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        prop_assert!(p.pow(p.order()).is_identity());
        prop_assert_eq!(p.compose(&q).unwrap().inverse(), q.inverse().compose(&p.inverse()).unwrap());
        let n = p.len();
        let covered: usize = p.cycles().iter().map(Vec::len).sum();
        prop_assert_eq!(covered, n);
    }

    #[test]
    fn matrix_round_trip(p in (1usize..9).prop_flat_map(perm)) {
        let m = p.to_matrix();
        prop_assert!(m.is_permutation_matrix());
        prop_assert_eq!(Perm::from_matrix(&m).unwrap(), p.clone());
        prop_assert_eq!(p.to_string().parse::<Perm>().unwrap(), p);
    }
}
