//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! status if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use latkit::enumerate::{self, CorpusOptions};
use latkit::katrinak::{
    converse_check, kappa_dual_table, kappa_table, katrinak_check, lemma21_suite, roundtrip_check, ConversePart,
    Functor, KappaDualVariant,
};
use latkit::logic::{
    check_derivation, faithfulness_check, parse_script, soundness_check, LogicSpec, ProofVerdict, CP_DEMO,
    LOGIC_NAMES, MP_DEMO,
};
use latkit::varieties::{catalog, check_suite, is_member, lemma_dpch_suite, lemma_heyting_suite};
use latkit::{algebra::samples::chain, FiniteAlgebra, Op};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

type Criterion = (&'static str, &'static str, fn() -> Outcome);

/// Posets of up to five points, lattices of up to 32 elements.
fn wide() -> CorpusOptions {
    CorpusOptions::new(5, 32)
}

fn corpus(opts: &CorpusOptions, class: &str) -> Result<Vec<FiniteAlgebra>, String> {
    let c = enumerate::build_corpus_with(opts, class).map_err(|e| e.to_string())?;
    if c.is_empty() {
        return Err(format!("empty {class} corpus"));
    }
    Ok(c)
}

fn ac1() -> Outcome {
    let algebras = corpus(&wide(), "RDBLP")?;
    for a in &algebras {
        let r = katrinak_check(a, KappaDualVariant::StrictDual).map_err(|e| e.to_string())?;
        if !r.holds() {
            return Err(format!("{}:\n{r}", a.name()));
        }
        if kappa_table(a).map_err(|e| e.to_string())? != common::brute_arrow(a) {
            return Err(format!("{}: kappa differs from the brute-force arrow", a.name()));
        }
        let kd = kappa_dual_table(a, KappaDualVariant::StrictDual).map_err(|e| e.to_string())?;
        if kd != common::brute_coarrow(a) {
            return Err(format!("{}: kappa_d differs from the brute-force co-implication", a.name()));
        }
    }
    let max = algebras.iter().map(|a| a.n()).max().unwrap_or(0);
    Ok(format!("{} RDBLP algebras up to {max} elements", algebras.len()))
}

fn ac2() -> Outcome {
    let mut counts = Vec::new();
    for part in [ConversePart::Implication, ConversePart::CoImplication, ConversePart::Both] {
        let algebras = corpus(&wide(), part.class())?;
        for a in &algebras {
            let r = converse_check(a, part).map_err(|e| e.to_string())?;
            if !r.holds() {
                return Err(format!("{}:\n{r}", a.name()));
            }
        }
        counts.push(format!("{} {}", algebras.len(), part.class()));
    }
    Ok(counts.join(", "))
}

fn ac3() -> Outcome {
    let algebras = corpus(&wide(), "RDPCH")?;
    for a in &algebras {
        let reports = [
            lemma21_suite(a).map_err(|e| e.to_string())?,
            check_suite(a, &lemma_heyting_suite()).map_err(|e| e.to_string())?,
            check_suite(a, &lemma_dpch_suite()).map_err(|e| e.to_string())?,
        ];
        if let Some(r) = reports.iter().find(|r| !r.holds()) {
            return Err(format!("{}:\n{r}", r.title));
        }
    }
    Ok(format!("three suites on {} RDPCH algebras", algebras.len()))
}

fn ac4() -> Outcome {
    let mut total = 0;
    for f in Functor::ALL {
        let algebras = corpus(&wide(), f.source())?;
        for a in &algebras {
            roundtrip_check(a, f).map_err(|e| format!("{f} on {}: {e}", a.name()))?;
        }
        total += algebras.len();
    }
    Ok(format!("12 functors, {total} round trips"))
}

fn ac5() -> Outcome {
    let dblp = corpus(&wide(), "DBLP")?;
    let mut irregular: Vec<&FiniteAlgebra> = Vec::new();
    for a in &dblp {
        let m = is_member(a, "RDBLP").map_err(|e| e.to_string())?;
        let r = is_member(a, "RDBLP_R").map_err(|e| e.to_string())?;
        if m != r {
            return Err(format!("{}: (M) gives {m}, (R) gives {r}", a.name()));
        }
        if !m {
            irregular.push(a);
        }
    }
    let smallest = irregular.iter().map(|a| a.n()).min().ok_or("no irregular DBLP member")?;
    let minimal: Vec<_> = irregular.iter().filter(|a| a.n() == smallest).collect();
    if minimal.len() != 1 || !minimal[0].is_isomorphic(&chain(4)) {
        return Err(format!("minimal irregular members: {:?}", minimal.iter().map(|a| a.name()).collect::<Vec<_>>()));
    }
    let dm = enumerate::de_morgan_algebras(&wide()).map_err(|e| e.to_string())?;
    let mut regular = 0;
    for a in &dm {
        if is_member(a, "RDMP").map_err(|e| e.to_string())? {
            regular += 1;
        }
    }
    Ok(format!(
        "(M)<=>(R) on {} DBLP algebras, {} irregular, minimal witness C4; (M1) decided on {} De Morgan algebras ({regular} regular)",
        dblp.len(),
        irregular.len(),
        dm.len()
    ))
}

fn ac6() -> Outcome {
    let seeds = enumerate::enumerate_posets(enumerate::MAX_POSET).map_err(|e| e.to_string())?;
    let posets = enumerate::poset_counts(&seeds);
    if posets != common::PUBLISHED_POSETS {
        return Err(format!("library poset counts {posets:?}"));
    }
    let oracle = common::poset_count_oracle(6);
    if oracle[..] != common::PUBLISHED_POSETS[..6] {
        return Err(format!("oracle poset counts {oracle:?}"));
    }
    let lattices = enumerate::lattices(&CorpusOptions::new(7, 8)).map_err(|e| e.to_string())?;
    let lc = enumerate::lattice_counts(&lattices, 8);
    let lo = common::lattice_count_oracle(8);
    if lc != common::PUBLISHED_LATTICES || lo != common::PUBLISHED_LATTICES {
        return Err(format!("lattice counts: library {lc:?}, oracle {lo:?}"));
    }
    Ok(format!("posets {posets:?}, lattices {lc:?}"))
}

fn logic_models(name: &str) -> Result<(LogicSpec, Vec<latkit::logic::Model>), String> {
    let logic = LogicSpec::by_name(name).map_err(|e| e.to_string())?;
    let models = logic.models(&CorpusOptions::new(4, 32)).map_err(|e| e.to_string())?;
    if models.is_empty() {
        return Err(format!("no {name} models"));
    }
    Ok((logic, models))
}

fn ac7() -> Outcome {
    let mut counts = Vec::new();
    for name in LOGIC_NAMES {
        let (logic, models) = logic_models(name)?;
        let r = soundness_check(&logic, &models).map_err(|e| e.to_string())?;
        if let Some(e) = r.first_failure() {
            return Err(format!("{name} on {}: {}", e.name, e.detail));
        }
        counts.push(format!("{name} {}", models.len()));
    }
    Ok(format!("models: {}", counts.join(", ")))
}

fn ac8() -> Outcome {
    let mut total = 0;
    for name in LOGIC_NAMES {
        let (logic, models) = logic_models(name)?;
        let ops = catalog(&logic.model_class).map_err(|e| e.to_string())?.required_ops;
        for m in &models {
            let view = m.algebra.clone().restrict(&ops);
            let r = faithfulness_check(&view).map_err(|e| e.to_string())?;
            if !r.holds() {
                return Err(format!("{name} on {}:\n{r}", m.name()));
            }
        }
        total += models.len();
    }
    Ok(format!("{total} models across six logics"))
}

fn ac9() -> Outcome {
    let logic = LogicSpec::by_name("DHMSH").map_err(|e| e.to_string())?;
    let demos = [parse_script(MP_DEMO).map_err(|e| e.to_string())?, parse_script(CP_DEMO).map_err(|e| e.to_string())?];
    for d in &demos {
        let v = check_derivation(&logic, d);
        if !v.is_valid() {
            return Err(format!("demo rejected: {v}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..100 {
        let (mutant, step) = common::mutate(&mut rng, &demos[round % 2]);
        let text = mutant.to_string();
        let reparsed = parse_script(&text).map_err(|e| format!("mutant does not reparse: {e}\n{text}"))?;
        match check_derivation(&logic, &reparsed) {
            ProofVerdict::InvalidStep { step: s, ref reason } if s == step && !reason.is_empty() => {}
            other => return Err(format!("mutant {round} (step {step} changed) gave {other}\n{text}")),
        }
    }
    Ok("2 demos valid, 100 mutants rejected at the mutated step".into())
}

fn ac10() -> Outcome {
    let c3 = chain(3);
    let printed = katrinak_check(&c3, KappaDualVariant::Printed).map_err(|e| e.to_string())?;
    let entry = printed.entry("coarrow=kappa_d").ok_or("missing coarrow entry")?;
    if entry.detail != "FAILS at x=0,y=a  lhs=a rhs=0" {
        return Err(format!("printed variant on C3: {}", entry.detail));
    }
    let algebras = corpus(&wide(), "RDBLP")?;
    for a in &algebras {
        let kd = kappa_dual_table(a, KappaDualVariant::StrictDual).map_err(|e| e.to_string())?;
        if kd != a.table(Op::CoArrow).ok_or("missing <-")? {
            return Err(format!("strict dual differs on {}", a.name()));
        }
    }
    Ok(format!("printed fails at 0 <- a on C3; strict dual matches on {} algebras", algebras.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "kappa and kappa_d are the implications on RDBLP", ac1),
        ("AC2", "converse on RDPCH, RPCHd, RDBLH", ac2),
        ("AC3", "lemma suites on RDPCH", ac3),
        ("AC4", "functor round trips", ac4),
        ("AC5", "regularity characterizations", ac5),
        ("AC6", "enumeration counts", ac6),
        ("AC7", "soundness of the six logics", ac7),
        ("AC8", "faithfulness of the equivalence formulas", ac8),
        ("AC9", "proof checker demos and mutants", ac9),
        ("AC10", "kappa_d variant regression", ac10),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why} ({secs:.2}s)");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
