//! Randomized round trips and cross-checks.

use num_bigint::BigInt;
use proptest::prelude::*;

use perimeter::counting::{count_in_set, ell_two_residue, PartSet};
use perimeter::genfunc::{build_gf, count_stream, GfFamily, RationalGF, ZPoly};
use perimeter::maps::{phi, psi, st_inject, DominatingPair, IncreasingSeq};
use perimeter::oracle::{sizes_divisible, sizes_repeated};
use perimeter::{Count, Partition, Profile};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..30, 1..25).prop_map(|v| Partition::from_unsorted(v).unwrap())
}

fn zpoly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-20i64..20, 0..5).prop_map(|v| ZPoly::from_i64s(&v))
}

proptest! {
    #[test]
    fn profile_round_trip(p in partition()) {
        let w = p.profile();
        prop_assert_eq!(w.len(), p.perimeter() + 1);
        prop_assert_eq!(w.to_partition(), p.clone());
        prop_assert_eq!(Profile::from_index(p.perimeter(), w.index()), w.clone());
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Profile>().unwrap(), w);
    }

    #[test]
    fn multiplicity_form_round_trip(p in partition()) {
        let form = p.multiplicity_form();
        prop_assert_eq!(form.number_of_parts(), p.len());
        prop_assert_eq!(form.to_partition().unwrap(), p.clone());
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn phi_psi_inverse(p in partition()) {
        let f = phi(&p);
        prop_assert_eq!(f.perimeter(), p.perimeter());
        prop_assert_eq!(psi(&f), p.clone());
        prop_assert_eq!(phi(&psi(&p)), p.clone());
        prop_assert_eq!(
            sizes_divisible(&f.multiplicity_form(), 2),
            sizes_repeated(&p.multiplicity_form(), 2)
        );
    }

    #[test]
    fn injection_keeps_perimeter(
        parts in prop::collection::vec(0usize..4, 1..12),
        gaps in prop::collection::vec(0usize..3, 4),
    ) {
        // S = {3, 5, 8, 12}; T shrinks each entry by a random amount.
        let s = vec![3usize, 5, 8, 12];
        let mut t = Vec::new();
        let mut floor = 0;
        for (&a, &g) in s.iter().zip(&gaps) {
            let b = a.saturating_sub(g).max(floor + 1);
            t.push(b);
            floor = b;
        }
        let pair = DominatingPair::new(
            IncreasingSeq::finite(s.clone()).unwrap(),
            IncreasingSeq::finite(t.clone()).unwrap(),
        ).unwrap();
        let p = Partition::from_unsorted(parts.iter().map(|&i| s[i]).collect()).unwrap();
        let img = st_inject(&pair, &p).unwrap();
        prop_assert_eq!(img.perimeter(), p.perimeter());
        prop_assert!(img.parts().iter().all(|x| t.contains(x)));
    }

    #[test]
    fn two_residue_gf_matches_counter(d in 2usize..9, a in 1usize..8, gap in 1usize..8) {
        prop_assume!(a < d && a + gap <= d);
        let b = a + gap;
        let g = build_gf(GfFamily::TwoResidue { d, a, b }).unwrap();
        let stream = count_stream(&g, 40).unwrap();
        let set = PartSet::two_progressions(a, b, d).unwrap();
        for n in 1..=40 {
            let closed = ell_two_residue(d, a, b, n).unwrap();
            prop_assert_eq!(&stream[n], &BigInt::from(closed.clone()));
            prop_assert_eq!(count_in_set(&set, n), closed);
        }
    }

    #[test]
    fn zpoly_ring_laws(x in zpoly(), y in zpoly(), z in zpoly()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        prop_assert_eq!((&x * &y).eval_one(), x.eval_one() * y.eval_one());
    }

    #[test]
    fn gf_document_round_trip(d in 1usize..6, a in 1usize..7) {
        prop_assume!(a <= d + 1);
        let g = build_gf(GfFamily::CongruentByParts { d, a }).unwrap();
        let doc = g.to_document().unwrap();
        let json = serde_json::to_string(&doc).unwrap();
        let back = RationalGF::from_document(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }
}

#[test]
fn perimeter_gf_is_powers_of_two() {
    let stream = count_stream(&build_gf(GfFamily::Perimeter).unwrap(), 80).unwrap();
    for n in 1..=80 {
        let expected = Count::from(1u8) << (n - 1);
        assert_eq!(stream[n], BigInt::from(expected));
    }
}
