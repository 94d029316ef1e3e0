mod common;

use idoneal::classifier::ClassifyOptions;
use idoneal::enriques::covers_enriques;
use idoneal::genus::parse_genus;
use idoneal::lattice::{format_shorthand, parse_lattice, parse_shorthand};
use idoneal::mass::{mass_ratio, ratio_factors};
use idoneal::{arith, genus_of, IntLattice, TorsionForm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Nondegenerate symmetric Gram matrices with small entries.
fn lattice(max_rank: usize, even: bool) -> impl Strategy<Value = IntLattice> {
    (1..=max_rank)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], n),
                prop::collection::vec(-1i64..=1, n * (n - 1) / 2),
            )
        })
        .prop_filter_map("degenerate", move |(diag, off)| {
            let n = diag.len();
            let mut g = vec![vec![0i64; n]; n];
            let mut k = 0;
            for i in 0..n {
                g[i][i] = if even { 2 * diag[i] } else { diag[i] };
                for j in 0..i {
                    g[i][j] = off[k];
                    g[j][i] = off[k];
                    k += 1;
                }
            }
            IntLattice::new(g).ok().filter(|l| l.determinant() != 0)
        })
}

fn positive_lattice(max_rank: usize) -> impl Strategy<Value = IntLattice> {
    lattice(max_rank, false).prop_filter("not definite", |l| l.is_positive_definite())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shorthand_round_trip(l in lattice(6, false)) {
        let text = format_shorthand(&l);
        prop_assert_eq!(parse_shorthand(&text).unwrap(), l);
    }

    #[test]
    fn genus_text_round_trip(l in lattice(6, false)) {
        let g = genus_of(&l);
        prop_assert_eq!(parse_genus(&g.to_string()).unwrap().key(), g.key());
    }

    #[test]
    fn genus_invariant_under_base_change(l in lattice(6, false), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = common::random_unimodular(&mut rng, l.rank());
        let m = l.transform(&b).unwrap();
        prop_assert_eq!(genus_of(&m).key(), genus_of(&l).key());
    }

    #[test]
    fn milgram_signature(l in lattice(8, true)) {
        let (sp, sm) = l.signature();
        let q = TorsionForm::of_even_lattice(&l);
        prop_assert_eq!(q.signature_mod8() as i64, (sp as i64 - sm as i64).rem_euclid(8));
    }

    #[test]
    fn discriminant_form_round_trip(l in lattice(6, true)) {
        let (sp, sm) = l.signature();
        let g = genus_of(&l);
        let q = TorsionForm::of_even_lattice(&l);
        let h = idoneal::GenusSymbol::from_discriminant_form(&q, sp, sm).unwrap();
        prop_assert_eq!(h.key(), g.key());
    }

    #[test]
    fn factor_d_and_e(l in positive_lattice(6)) {
        prop_assume!(l.rank() >= 2);
        let g = genus_of(&l);
        let f = ratio_factors(&g);
        prop_assert_eq!(&f.d, &arith::rat_int(g.det));
        if g.is_even() {
            let e = (g.rank() as i64 - arith::valuation(g.det, 2) as i64).max(0);
            prop_assert!(f.e >= arith::rational_pow(&arith::rat(2, 1), e));
        } else {
            prop_assert_eq!(&f.e, &arith::rat(1, 1));
        }
        let r = mass_ratio(&g);
        let p = f.product_squared();
        prop_assert_eq!(p.pi_exp, 0);
        prop_assert_eq!(p.rational, &r * &r);
    }
}

/// A plane, one more positive direction and negative definite pieces: signature (2, λ-2).
fn transcendental() -> impl Strategy<Value = IntLattice> {
    let plane = prop_oneof![Just("U"), Just("U(2)")];
    let positive = prop_oneof![Just("U"), Just("U(2)"), Just("[2]"), Just("[4]")];
    let pieces = prop::collection::vec(
        prop_oneof![Just("[-2]"), Just("[-4]"), Just("A2"), Just("D4(2)"), Just("E8(2)"), Just("[-6]")],
        1..5,
    );
    (plane, positive, pieces).prop_filter_map("rank", |(p, q, rest)| {
        let text = [p, q].into_iter().chain(rest).collect::<Vec<_>>().join(" + ");
        let l = parse_lattice(&text).ok()?;
        (8..=12).contains(&l.rank()).then_some(l)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cover_verdict_invariant_under_base_change(t in transcendental(), seed in any::<u64>()) {
        let opts = ClassifyOptions::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = common::random_unimodular(&mut rng, t.rank());
        let a = covers_enriques(&t, &opts).unwrap();
        let c = covers_enriques(&t.transform(&b).unwrap(), &opts).unwrap();
        prop_assert_eq!(a.verdict, c.verdict);
        prop_assert_eq!(a.condition, c.condition);
    }
}
