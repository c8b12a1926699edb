use proptest::prelude::*;

use grand_dyck::bijections::{
    canonicalize, gdp_to_pair, insert_low_peaks, pair_to_gdp, remove_low_peaks, restore_order,
    section3_forward, section3_inverse,
};
use grand_dyck::compositions::Composition;
use grand_dyck::paths::{GrandDyckPath, Sign, Step};
use grand_dyck::series::TruncatedSeries;

fn balanced_path(max_n: usize) -> impl Strategy<Value = GrandDyckPath> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let steps: Vec<Step> = (0..n).flat_map(|_| [Step::Up, Step::Down]).collect();
            Just(steps).prop_shuffle()
        })
        .prop_map(|steps| GrandDyckPath::new(steps).unwrap())
}

fn low_peak_free(max_n: usize) -> impl Strategy<Value = GrandDyckPath> {
    balanced_path(max_n).prop_map(|p| remove_low_peaks(&p).0)
}

proptest! {
    #[test]
    fn components_concatenate_back(p in balanced_path(14)) {
        let comps = p.components();
        let joined = GrandDyckPath::concat(comps.iter().map(|c| c.steps.as_slice())).unwrap();
        prop_assert_eq!(joined, p.clone());
        for c in &comps {
            let h = c.to_path().heights();
            let inner = &h[1..h.len() - 1];
            match c.sign {
                Sign::Above => prop_assert!(inner.iter().all(|&x| x > 0)),
                Sign::Below => prop_assert!(inner.iter().all(|&x| x < 0)),
            }
        }
    }

    #[test]
    fn statistics_are_ordered(p in balanced_path(14)) {
        let s = p.stats();
        prop_assert!(s.i <= s.j && s.j <= s.k && s.k <= s.n);
        prop_assert!(s.j + s.k <= 2 * s.n);
        prop_assert_eq!(s.j + s.k == 2 * s.n, p == GrandDyckPath::sawtooth(s.n));
    }

    #[test]
    fn reflection_swaps_signs(p in balanced_path(14)) {
        let (s, r) = (p.stats(), p.reflect().stats());
        prop_assert_eq!(r.k, s.k);
        prop_assert_eq!(r.j, s.k - s.j);
    }

    #[test]
    fn low_peaks_round_trip(p in balanced_path(14)) {
        let (rest, rec) = remove_low_peaks(&p);
        prop_assert_eq!(rest.low_peaks(), 0);
        prop_assert_eq!(rec.i(), p.low_peaks());
        prop_assert_eq!(insert_low_peaks(&rest, &rec).unwrap(), p);
    }

    #[test]
    fn component_rewriting_round_trips(p in low_peak_free(14)) {
        let (pattern, canon) = canonicalize(&p);
        prop_assert_eq!(restore_order(&pattern, &canon).unwrap(), p.clone());
        let d = section3_forward(&canon).unwrap();
        let s = canon.stats();
        prop_assert_eq!(d.component_count(), s.j + s.k);
        prop_assert_eq!(section3_inverse(&d, s.j).unwrap(), canon);
    }

    #[test]
    fn pair_bijection_round_trips(p in low_peak_free(14)) {
        let pair = gdp_to_pair(&p).unwrap();
        prop_assert!(pair.is_irreducible());
        prop_assert_eq!(pair.total() as usize, p.semilength() + 1);
        prop_assert_eq!(pair_to_gdp(&pair).unwrap(), p);
    }

    #[test]
    fn composition_text_round_trips(parts in prop::collection::vec(1u32..9, 1..10)) {
        let c = Composition::new(parts).unwrap();
        prop_assert_eq!(c.to_string().parse::<Composition>().unwrap(), c.clone());
        prop_assert_eq!(c.ne_path(true).to_composition(true), Some(c));
    }

    #[test]
    fn reciprocal_inverts(cs in prop::collection::vec(-5i64..6, 1..8), lead in prop::sample::select(vec![-2i64, -1, 1, 3])) {
        let order = 7;
        let mut coeffs = cs.clone();
        coeffs[0] = lead;
        let a = TruncatedSeries::from_ints(order, &coeffs);
        let b = a.reciprocal().unwrap();
        prop_assert_eq!(a.checked_mul(&b).unwrap(), TruncatedSeries::one(order));
        let c = TruncatedSeries::from_ints(order, &cs);
        prop_assert_eq!(a.checked_mul(&c).unwrap(), c.checked_mul(&a).unwrap());
    }
}
