mod common;

use latkit::algebra::samples::{chain, chain_with_involution};
use latkit::enumerate::{self, CorpusOptions};
use latkit::katrinak::{
    converse_check, kappa, kappa_dual, katrinak_check, primed_form_check, roundtrip_check, roundtrip_unverified,
    ConversePart, Functor, KappaDualVariant, KatrinakError,
};
use latkit::varieties::is_member;
use latkit::{FiniteAlgebra, Op};

fn corpus(class: &str) -> Vec<FiniteAlgebra> {
    enumerate::build_corpus_with(&CorpusOptions::new(4, 16), class).unwrap()
}

#[test]
fn kappa_agrees_with_brute_force_implications() {
    for a in corpus("RDBLP") {
        let (arrow, coarrow) = (common::brute_arrow(&a), common::brute_coarrow(&a));
        let n = a.n();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(kappa(&a, x, y).unwrap(), arrow[x * n + y]);
                assert_eq!(kappa_dual(&a, x, y, KappaDualVariant::StrictDual).unwrap(), coarrow[x * n + y]);
            }
        }
    }
}

#[test]
fn kappa_is_not_the_implication_off_regular_algebras() {
    let c4 = chain(4);
    let r = katrinak_check(&c4, KappaDualVariant::StrictDual);
    assert!(matches!(r, Err(KatrinakError::NotInSourceVariety { .. })), "{r:?}");
    let differs = (0..4).any(|x| (0..4).any(|y| kappa(&c4, x, y).unwrap() != c4.heyting_arrow(x, y).unwrap()));
    assert!(differs);
}

#[test]
fn printed_kappa_dual_fails_only_as_expected() {
    let r = katrinak_check(&chain(3), KappaDualVariant::Printed).unwrap();
    assert!(r.entry("arrow=kappa").unwrap().verdict.holds());
    assert_eq!(r.entry("coarrow=kappa_d").unwrap().detail, "FAILS at x=0,y=a  lhs=a rhs=0");
}

#[test]
fn functor_images_lie_in_their_targets() {
    for f in Functor::ALL {
        for a in corpus(f.source()) {
            let image = f.apply(&a).unwrap();
            assert!(is_member(&image, f.target()).unwrap(), "{f} on {}", a.name());
            roundtrip_check(&a, f).unwrap();
        }
    }
}

#[test]
fn functor_names_parse_back() {
    for f in Functor::ALL {
        assert_eq!(f.name().parse::<Functor>().unwrap(), f);
        assert_eq!(f.inverse().inverse(), f);
        assert_eq!(f.target(), f.inverse().source());
    }
    assert!("dblx".parse::<Functor>().is_err());
}

#[test]
fn corrupted_plus_breaks_the_round_trip() {
    let c3 = chain(3);
    let bad = c3.clone().with_table(Op::Plus, vec![1, 2, 0]).unwrap();
    assert!(matches!(roundtrip_check(&bad, Functor::Dblh), Err(KatrinakError::NotInSourceVariety { .. })));
    match roundtrip_unverified(&bad, Functor::Dblh) {
        Err(KatrinakError::RoundTripFailure { op, expected, got, .. }) => {
            assert_eq!(op, Op::Plus);
            assert_ne!(expected, got);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn converse_on_each_class() {
    for part in [ConversePart::Implication, ConversePart::CoImplication, ConversePart::Both] {
        for a in corpus(part.class()) {
            assert!(converse_check(&a, part).unwrap().holds(), "{} {}", part.class(), a.name());
        }
    }
}

#[test]
fn primed_display_disagrees_with_the_implication() {
    let v = primed_form_check(&chain_with_involution(3)).unwrap();
    assert!(!v.holds());
}
