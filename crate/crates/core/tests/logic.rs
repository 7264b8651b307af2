use std::collections::BTreeMap;
use std::path::PathBuf;

use latkit::algebra::samples::{chain, chain_with_involution};
use latkit::enumerate::CorpusOptions;
use latkit::logic::{
    check_derivation, eval_formula, faithfulness_check, model_report, parse_formula, parse_script, soundness_check,
    Formula, LogicSpec, Model, NegBinding, ProofVerdict, CP_DEMO, LOGIC_NAMES, MP_DEMO,
};
use latkit::Op;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name} differs; rerun with UPDATE_GOLDEN=1 to accept");
}

#[test]
fn dual_axiom_list_matches_golden() {
    check_golden("rpchd_axioms.txt", &LogicSpec::by_name("RPCHd").unwrap().axiom_listing());
}

#[test]
fn rdpch_axiom_list_matches_golden() {
    check_golden("rdpch_axioms.txt", &LogicSpec::by_name("RDPCH").unwrap().axiom_listing());
}

/// Classical truth tables, written independently of the library.
fn boolean(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::PVar(x) => v[x],
        Formula::Bot => false,
        Formula::Top => true,
        Formula::Or(a, b) => boolean(a, v) || boolean(b, v),
        Formula::And(a, b) => boolean(a, v) && boolean(b, v),
        Formula::Imp(a, b) => !boolean(a, v) || boolean(b, v),
        // x <- y is the least z with y <= x \/ z
        Formula::CoImp(a, b) => !boolean(a, v) && boolean(b, v),
        Formula::Neg(a) => !boolean(a, v),
    }
}

#[test]
fn two_element_models_agree_with_truth_tables() {
    let b2 = chain(2);
    let b2i = b2.clone().with_involution(vec![1, 0]).unwrap();
    for name in LOGIC_NAMES.iter().filter(|n| **n != "RPCHd") {
        let logic = LogicSpec::by_name(name).unwrap();
        let (alg, neg) = match logic.neg_binding {
            NegBinding::Involution => (&b2i, NegBinding::Involution),
            _ => (&b2, NegBinding::Plus),
        };
        for s in &logic.schemas {
            let vars: Vec<String> = s.template.vars().into_iter().collect();
            for code in 0..1u32 << vars.len() {
                let bv: BTreeMap<String, bool> =
                    vars.iter().enumerate().map(|(i, x)| (x.clone(), code >> i & 1 == 1)).collect();
                let ev: BTreeMap<String, usize> = bv.iter().map(|(k, &b)| (k.clone(), b as usize)).collect();
                let value = eval_formula(alg, &neg, &s.template, &ev).unwrap();
                assert_eq!(value == 1, boolean(&s.template, &bv), "{name} axiom {}", s.id);
                assert_eq!(value, 1, "{name} axiom {} under {bv:?}", s.id);
            }
        }
    }
}

#[test]
fn evaluation_of_the_defined_implication_on_c3() {
    let c3 = chain(3);
    let v = [("p".to_string(), 2), ("q".to_string(), 1)].into();
    let f = parse_formula("p ->h q").unwrap();
    assert_eq!(eval_formula(&c3, &NegBinding::Plus, &f, &v).unwrap(), 1);
}

#[test]
fn wrong_negation_is_caught_by_soundness() {
    let logic = LogicSpec::by_name("DHMSH").unwrap();
    let models = [Model::new(chain(3), NegBinding::Plus), Model::new(chain(3), NegBinding::Custom(vec![0, 1, 2]))];
    let r = soundness_check(&logic, &models).unwrap();
    assert!(r.entries[0].verdict.holds());
    // ~bot = bot breaks 12 first; 13 fails as well
    assert_eq!(r.entries[1].detail, "axiom 12 FAILS at -  lhs=0 rhs=1");
    assert!(!r.holds());
    let full = model_report(&logic, &models[1]).unwrap();
    assert_eq!(full.entry("13").unwrap().detail, "FAILS at -  lhs=0 rhs=1");
}

#[test]
fn star_is_not_a_sound_negation_for_dpch() {
    // 19 needs x \/ ~x = 1, which * violates on C3
    let logic = LogicSpec::by_name("DPCH").unwrap();
    let r = model_report(&logic, &Model::new(chain(3), NegBinding::Star)).unwrap();
    assert!(!r.entry("19").unwrap().verdict.holds());
}

#[test]
fn alternative_axiom_19_holds_wherever_19_does() {
    for name in ["DPCH", "RDPCH"] {
        let logic = LogicSpec::by_name(name).unwrap();
        for m in logic.models(&CorpusOptions::new(4, 16)).unwrap() {
            let r = model_report(&logic, &m).unwrap();
            assert!(r.entry("19").unwrap().verdict.holds());
            assert!(r.entry("19b").unwrap().verdict.holds(), "{}", m.name());
        }
    }
}

#[test]
fn m2_separates_regular_de_morgan_heyting_algebras() {
    // C4 with its involution is De Morgan Heyting but not regular
    let logic = LogicSpec::by_name("RDMH").unwrap();
    let c4 = Model::new(chain_with_involution(4), NegBinding::Involution);
    let r = model_report(&logic, &c4).unwrap();
    assert!(!r.entry("M2").unwrap().verdict.holds());
    assert!(r.entries.iter().filter(|e| e.name != "M2").all(|e| e.verdict.holds()), "{r}");
    let c3 = Model::new(chain_with_involution(3), NegBinding::Involution);
    assert!(model_report(&logic, &c3).unwrap().holds());
}

#[test]
fn faithfulness_discriminates_on_c3() {
    let c3 = chain(3);
    assert!(faithfulness_check(&c3).unwrap().holds());
    let v = [("p".to_string(), 2), ("q".to_string(), 1)].into();
    let f = parse_formula("p ->h q").unwrap();
    assert_ne!(eval_formula(&c3, &NegBinding::Plus, &f, &v).unwrap(), c3.top());
}

#[test]
fn faithfulness_uses_the_co_implication_without_an_arrow() {
    let d = chain(4).dualize().restrict(&[Op::Star, Op::CoArrow]);
    let r = faithfulness_check(&d).unwrap();
    assert!(r.holds(), "{r}");
}

const LONGER: &str = "\
premises: p /\\ q
1. p /\\ q ; premise 1
2. (p /\\ q) ->h p ; ax 4 [alpha:=p, beta:=q]
3. p ; mp 1,2
4. p ->h (p \\/ ~p) ; ax 1 [alpha:=p, beta:=~p]
5. p \\/ ~p ; mp 3,4
6. p \\/ ~p ; ax 19 [alpha:=p]
7. (p /\\ q) -> p ; ax 15 [alpha:=p, beta:=q]
8. ~(p \\/ ~p) ->h ~p ; cp 4
";

#[test]
fn dpch_derivations_are_rdpch_derivations() {
    let d = parse_script(LONGER).unwrap();
    let dpch = check_derivation(&LogicSpec::by_name("DPCH").unwrap(), &d);
    assert!(dpch.is_valid(), "{dpch}");
    assert_eq!(check_derivation(&LogicSpec::by_name("RDPCH").unwrap(), &d), dpch);
    // 15 and 19 are not base axioms
    assert_eq!(
        check_derivation(&LogicSpec::by_name("DHMSH").unwrap(), &d),
        ProofVerdict::InvalidStep { step: 6, reason: "logic DHMSH has no axiom 19".into() }
    );
}

#[test]
fn rdpch_derivations_dualize_into_rpchd() {
    let rpchd = LogicSpec::by_name("RPCHd").unwrap();
    let rdpch = LogicSpec::by_name("RDPCH").unwrap();
    for text in [MP_DEMO, CP_DEMO, LONGER] {
        let d = parse_script(text).unwrap();
        let ProofVerdict::Valid(conclusion) = check_derivation(&rdpch, &d) else { panic!("{text}") };
        assert_eq!(check_derivation(&rpchd, &d.dualize()), ProofVerdict::Valid(conclusion.dualize()));
    }
}

#[test]
fn soundness_holds_for_every_logic_on_a_small_corpus() {
    for name in LOGIC_NAMES {
        let logic = LogicSpec::by_name(name).unwrap();
        let models = logic.models(&CorpusOptions::new(3, 16)).unwrap();
        assert!(!models.is_empty(), "{name}");
        let r = soundness_check(&logic, &models).unwrap();
        assert!(r.holds(), "{name}\n{r}");
    }
}
