use proptest::prelude::*;

use uplab::asymptotics::{entropy, entropy_closed};
use uplab::cache::{CacheEntry, DistanceCache};
use uplab::cyclic::{DistanceLookup, DistanceResult, Method};
use uplab::mstransform::{naive_up_check, MsTransform};
use uplab::polyring::FPoly;
use uplab::ramsey::{contains_ap, szemeredi_r, witness_is_valid};
use uplab::Fq;

const MS_PARAMS: [(usize, u64); 8] = [(7, 2), (9, 2), (15, 2), (17, 2), (5, 3), (8, 3), (13, 3), (5, 4)];

fn word_for(q: u64, n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q as u32, n)
}

fn ms_case() -> impl Strategy<Value = (usize, u64, Vec<u32>)> {
    prop::sample::select(&MS_PARAMS[..]).prop_flat_map(|(n, q)| (Just(n), Just(q), word_for(q, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ms_round_trip((n, q, word) in ms_case()) {
        let t = MsTransform::new(n, q).unwrap();
        let v = t.forward(&word).unwrap();
        prop_assert!(t.is_conjugate_consistent(&v));
        prop_assert_eq!(t.inverse(&v).unwrap(), word.clone());
        if word.iter().any(|&x| x != 0) {
            let c = naive_up_check(&t, &word).unwrap();
            prop_assert!(c.holds && c.w * c.w_hat >= n);
        }
    }

    #[test]
    fn stride_keeps_spectral_weight((n, q, word) in ms_case(), b in 1u64..40) {
        prop_assume!(uplab::gf::gcd(b, n as u64) == 1);
        let base = MsTransform::new(n, q).unwrap().forward(&word).unwrap();
        let strided = MsTransform::with_stride(n, q, b).unwrap().forward(&word).unwrap();
        prop_assert_eq!(base.weight(), strided.weight());
    }

    #[test]
    fn division_identity(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9]),
                         a in prop::collection::vec(0u32..9, 0..12),
                         b in prop::collection::vec(0u32..9, 1..7)) {
        let f = Fq::get(q).unwrap();
        let a = FPoly::new(f.clone(), a.into_iter().map(|x| x % q as u32).collect()).unwrap();
        let b = FPoly::new(f.clone(), b.into_iter().map(|x| x % q as u32).collect()).unwrap();
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).unwrap().add(&rem).unwrap(), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn ap_free_sets_are_bounded(n in 4usize..14, m in 3usize..5, mask in any::<u16>()) {
        let set: Vec<u64> = (0..n as u64).filter(|&i| mask >> i & 1 == 1).collect();
        let r = szemeredi_r(m, n).unwrap();
        prop_assert!(witness_is_valid(&r));
        if contains_ap(&set, n as u64, m).is_none() {
            prop_assert!(set.len() <= r.value);
        }
    }

    #[test]
    fn entropy_symmetric_and_concave(x in 0.001f64..0.999, y in 0.001f64..0.999) {
        let h = |t: f64| entropy(t).unwrap();
        prop_assert!((h(x) - h(1.0 - x)).abs() < 1e-12);
        prop_assert!(h(x) > 0.0 && h(x) <= 1.0);
        prop_assert!(h((x + y) / 2.0) + 1e-12 >= (h(x) + h(y)) / 2.0);
        prop_assert_eq!(entropy_closed(0.0f64).unwrap(), 0.0);
        let hf = entropy(x as f32).unwrap();
        prop_assert!((hf as f64 - h(x)).abs() < 1e-4);
    }

    #[test]
    fn cache_round_trip(entries in prop::collection::vec((0u8..4, 1usize..6, 0usize..3), 1..12)) {
        let dir = tempfile::tempdir().unwrap();
        let mut c = DistanceCache::in_dir(dir.path());
        for &(g, lower, gap) in &entries {
            let d = DistanceResult { lower, upper: lower + gap, exact: gap == 0, method: Method::Bz, work: 1 };
            c.put(CacheEntry::new(2, 15, &format!("1{g:b}1"), 7, &d));
        }
        let reread = DistanceCache::in_dir(dir.path());
        prop_assert_eq!(reread.len(), c.len());
        for g in 0u8..4 {
            let gen = format!("1{g:b}1");
            prop_assert_eq!(reread.get(2, 15, &gen), c.get(2, 15, &gen));
            let exact = entries.iter().any(|&(h, _, gap)| h == g && gap == 0);
            prop_assert_eq!(reread.lookup(2, 15, &gen).is_some(), exact);
        }
    }
}
