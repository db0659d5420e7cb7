//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use depchoice::bitset::BitSet;
use depchoice::combinatorics::{central_coefficient, chain_product_width, width_bound};
use depchoice::completion::{bl_of_rdp, bl_topology, topology_generators, BlLattice};
use depchoice::dsc::{Dsc, PreDsc};
use depchoice::logic::{
    build_ubl, build_ubl_for_bl, check_modal_laws_with, lift_nucleus_ubl, RequirementAlgebra, DEFAULT_UBL_CAP,
};
use depchoice::nucleus::{nucleus_quotient, Nucleus, NucleusReport};
use depchoice::order::classify::{find_s7_cover, s7};
use depchoice::order::{
    classify_lattice, count_antichains, downsets, is_isomorphic, width, width_matching, FiniteLattice, FinitePoset,
    DEFAULT_ISO_CAP,
};
use depchoice::rdp::{build_rdp, RdpLattice, DEFAULT_STATE_CAP};
use depchoice::representation::{compute_q, roundtrip_check, uds};
use depchoice::solver::{solve, DependencyProblem, Objective};
use depchoice::versioning::{induced_pvp, lift_nucleus_bl, VersionMap};
use num_bigint::BigUint;
use rand::Rng;

type Outcome = (bool, String);

fn running() -> Dsc {
    let pre = PreDsc::from_lists(&[("a", &[&["b"], &["c"]]), ("b", &[&[]]), ("c", &[&[]])]).unwrap();
    Dsc::try_from_pre(pre).unwrap()
}

fn running_lattices() -> (RdpLattice, BlLattice) {
    let r = build_rdp(&running(), DEFAULT_STATE_CAP).unwrap();
    let b = bl_of_rdp(&r);
    (r, b)
}

fn iso(p: &FinitePoset, q: &FinitePoset) -> bool {
    is_isomorphic(p, q, DEFAULT_ISO_CAP).unwrap().is_some()
}

fn ids(l: &FiniteLattice, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&i| l.id(i).to_string()).collect()
}

fn criterion_1() -> Outcome {
    let (r, _) = running_lattices();
    let l = r.lattice();
    let c = classify_lattice(l);
    let shape = l.len() == 7 && iso(l.poset(), s7().poset()) && find_s7_cover(l).is_some();
    let class = c.upper_semimodular && !c.modular && !c.distributive && !c.has_m3;
    (shape && class, format!("{} elements, isomorphic to S7: {shape}, {c:?}", l.len()))
}

fn criterion_2() -> Outcome {
    let (_, b) = running_lattices();
    let grid = downsets(&FinitePoset::from_named(&["b", "c", "x", "y"], &[("b", "x"), ("c", "y")]).unwrap());
    let names: Vec<&str> = b.labels().unwrap().iter().map(|l| l.name()).collect();
    let ok = b.len() == 9 && iso(b.lattice().poset(), grid.poset()) && names.contains(&"a[b]") && names.contains(&"a[c]");
    (ok, format!("{} elements, traces {names:?}", b.len()))
}

fn criterion_3() -> Outcome {
    let (r, b) = running_lattices();
    let p = induced_pvp(&r, &VersionMap::from_pairs(&[("b", "c")]).unwrap()).unwrap();
    let rn = p.to_nucleus().unwrap();
    let bn = lift_nucleus_bl(&b, &p).unwrap();
    let rf = ids(rn.carrier(), &rn.fixed_points());
    let bf = ids(bn.carrier(), &bn.fixed_points());
    let chain3 = |n: &Nucleus| iso(nucleus_quotient(n).lattice.poset(), &FinitePoset::chain(3));
    let ok = rf == ["{}", "{b,c}", "{a,b,c}"] && bf == ["{}", "{b,c}", "{b,c,a[b],a[c]}"] && chain3(&rn) && chain3(&bn);
    (ok, format!("rdp fixed {rf:?}, bl fixed {bf:?}"))
}

fn ubl_count(p: FinitePoset) -> usize {
    build_ubl(RequirementAlgebra::new(p), DEFAULT_UBL_CAP).unwrap().len()
}

fn criterion_4() -> Outcome {
    let (r, b) = running_lattices();
    let u = build_ubl_for_bl(&b, DEFAULT_UBL_CAP).unwrap();
    let p = induced_pvp(&r, &VersionMap::from_pairs(&[("b", "c")]).unwrap()).unwrap();
    let n = lift_nucleus_ubl(&u, &lift_nucleus_bl(&b, &p).unwrap()).unwrap();
    let fixed = ids(u.lattice(), &n.fixed_points());
    let modal_chain = fixed == ["true", "b & c", "a[b] & a[c]", "false"]
        && iso(nucleus_quotient(&n).lattice.poset(), &FinitePoset::chain(4));
    let v = FinitePoset::from_named(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
    let counts = [
        ("discrete-2", ubl_count(FinitePoset::discrete(2)), 6),
        ("2-chain", ubl_count(FinitePoset::chain(2)), 4),
        ("a below b and c", ubl_count(v), 7),
        ("discrete-4", ubl_count(FinitePoset::discrete(4)), 168),
        ("running example", u.len(), 21),
    ];
    let wrong: Vec<String> = counts
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name}: {got}, expected {want}"))
        .collect();
    let ok = wrong.is_empty() && modal_chain;
    let detail = if ok {
        format!("counts {:?}, modal sublattice {fixed:?}", counts.map(|c| c.1))
    } else {
        format!("{}; modal sublattice {fixed:?} (4-chain: {modal_chain})", wrong.join(", "))
    };
    (ok, detail)
}

/// Posets with at most `max` downsets, one per isomorphism class, grown by
/// adding a new maximal element above some downset.
fn posets_with_few_downsets(max: u128) -> Vec<FinitePoset> {
    let mut level = vec![FinitePoset::discrete(0)];
    let mut all = level.clone();
    while !level.is_empty() {
        let mut next: Vec<FinitePoset> = Vec::new();
        for p in &level {
            let n = p.len();
            for below in downsets(p).sets() {
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                for i in 0..n {
                    for j in p.strictly_above(i).iter() {
                        pairs.push((i, j));
                    }
                }
                pairs.extend(below.iter().map(|i| (i, n)));
                let q = FinitePoset::from_pairs((0..=n).map(|i| format!("p{i}")).collect(), &pairs).unwrap();
                if count_antichains(&q) > max || next.iter().any(|o| iso(o, &q)) {
                    continue;
                }
                next.push(q);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(5);
    let mut failures = Vec::new();
    for i in 0..500 {
        let d = common::random_dsc(&mut rng, 5);
        let rep = roundtrip_check(&d, DEFAULT_STATE_CAP).unwrap();
        if !rep.passed {
            failures.push(format!("dsc {i}: {} vs {} states", rep.states, rep.roundtrip_states));
        }
    }
    let posets = posets_with_few_downsets(16);
    for p in &posets {
        let l = downsets(p).lattice().clone();
        let q = compute_q(&l);
        let d = uds(&l).unwrap();
        let birkhoff = d.deps().values().all(|alts| alts.len() == 1);
        let back = build_rdp(&d, DEFAULT_STATE_CAP).unwrap();
        if !q.is_empty() || !birkhoff || !iso(back.lattice().poset(), l.poset()) {
            failures.push(format!("distributive lattice on {} elements", l.len()));
        }
    }
    let detail = format!("500 random DSCs, {} distributive lattices; {} failures {:?}", posets.len(), failures.len(), failures.iter().take(3).collect::<Vec<_>>());
    (failures.is_empty(), detail)
}

/// Nucleus fixed sets: contain top, closed under meets and under `x -> s`.
fn is_nucleus_fixed_set(l: &FiniteLattice, table: &[usize], s: &BitSet) -> bool {
    let n = l.len();
    s.contains(l.top())
        && s.iter().all(|a| s.iter().all(|b| s.contains(l.meet(a, b))))
        && (0..n).all(|x| s.iter().all(|f| s.contains(table[x * n + f])))
}

/// Intersection of all nucleus fixed sets containing the generators.
fn least_fixed_set(l: &FiniteLattice, gens: &BitSet) -> BitSet {
    let n = l.len();
    let table = l.implication_table().unwrap();
    let mut meet = BitSet::full(n);
    for mask in 0u32..(1 << n) {
        let s: BitSet = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if gens.is_subset(&s) && is_nucleus_fixed_set(l, &table, &s) {
            meet.intersect_with(&s);
        }
    }
    meet
}

fn core_laws(r: &NucleusReport) -> bool {
    r.inflationary && r.idempotent && r.meet_preserving
}

fn criterion_6() -> Outcome {
    let mut problems = Vec::new();
    // Topologies on completions, with leastness on the small ones.
    let mut rng = common::rng(6);
    let (mut topologies, mut least_checked) = (0, 0);
    let (_, rb) = running_lattices();
    let mut completions = vec![rb];
    for _ in 0..60 {
        let d = common::random_dsc(&mut rng, 4);
        completions.push(bl_of_rdp(&build_rdp(&d, DEFAULT_STATE_CAP).unwrap()));
    }
    for b in &completions {
        let t = bl_topology(b.lattice()).unwrap();
        topologies += 1;
        if !core_laws(&t.check()) {
            problems.push(format!("topology on {} elements is not a nucleus", b.len()));
        }
        if b.len() <= 10 {
            least_checked += 1;
            let fixed: BitSet = t.fixed_points().into_iter().collect();
            if fixed != least_fixed_set(b.lattice(), &topology_generators(b.lattice())) {
                problems.push(format!("topology on {} elements is not least", b.len()));
            }
        }
    }

    // Version nuclei of the running example on rdp, BL and UBL.
    let (r, b) = running_lattices();
    let p = induced_pvp(&r, &VersionMap::from_pairs(&[("b", "c")]).unwrap()).unwrap();
    let bn = lift_nucleus_bl(&b, &p).unwrap();
    let u = build_ubl_for_bl(&b, DEFAULT_UBL_CAP).unwrap();
    let un = lift_nucleus_ubl(&u, &bn).unwrap();
    for (name, n) in [("rdp", p.to_nucleus().unwrap()), ("bl", bn), ("ubl", un.clone())] {
        let c = n.check();
        if !core_laws(&c) {
            problems.push(format!("version nucleus on {name}: {}", c.counterexamples.join("; ")));
        }
    }
    let running = check_modal_laws_with(&un, &u.implication_table());
    if !running.all_hold() {
        problems.push("modal laws fail on the running example".into());
    }

    // Random instances whose version map admits a lift.
    let mut rng = common::rng(60);
    let (mut done, mut not_join, mut too_big, mut bl_meet_failures) = (0, 0, 0, 0);
    while done < 100 {
        let d = common::random_dsc(&mut rng, 5);
        let v = common::random_version_map(&mut rng, &d);
        let r = build_rdp(&d, DEFAULT_STATE_CAP).unwrap();
        let b = bl_of_rdp(&r);
        let Ok(bn) = lift_nucleus_bl(&b, &induced_pvp(&r, &v).unwrap()) else {
            not_join += 1;
            continue;
        };
        let Ok(u) = build_ubl_for_bl(&b, 400) else {
            too_big += 1;
            continue;
        };
        done += 1;
        if !core_laws(&bn.check()) {
            bl_meet_failures += 1;
        }
        let n = lift_nucleus_ubl(&u, &bn).unwrap();
        if !core_laws(&n.check()) {
            problems.push(format!("random instance {done}: ubl version map is not a nucleus"));
        }
        if !check_modal_laws_with(&n, &u.implication_table()).all_hold() {
            problems.push(format!("random instance {done}: modal law fails"));
        }
    }
    let detail = format!(
        "{topologies} topologies ({least_checked} checked for leastness); running example laws hold: {}; 100 random instances \
         ({not_join} draws skipped as not join-preserving, {too_big} over 400 requirements; \
         {bl_meet_failures} BL version maps not meet-preserving); problems: {problems:?}",
        running.all_hold()
    );
    (problems.is_empty() && bl_meet_failures == 0, detail)
}

fn criterion_7() -> Outcome {
    let mut rng = common::rng(7);
    let mut mismatches = Vec::new();
    for i in 0..300 {
        let d = common::random_dsc(&mut rng, 5);
        let r = build_rdp(&d, DEFAULT_STATE_CAP).unwrap();
        let b = bl_of_rdp(&r);
        let names: Vec<String> = d.events().map(|e| e.to_string()).collect();
        let formula = common::random_dnf(&mut rng, &names);
        let objective = Objective::Weighted {
            weights: r.events().iter().map(|e| (e.clone(), rng.gen_range(0..6) as f64)).collect(),
        };
        let expected = common::oracle::brute_minimum(&b, &formula, &objective);
        let got = solve(&r, &b, &DependencyProblem { formula, objective });
        let agree = match (&expected, &got) {
            (None, Err(_)) => true,
            (Some((v, sets)), Ok(s)) => s.value == *v && sets.contains(&s.state),
            _ => false,
        };
        if !agree {
            mismatches.push(i);
        }
    }
    (mismatches.is_empty(), format!("300 instances, {} mismatches {:?}", mismatches.len(), mismatches))
}

fn chain_tuples(max_product: usize) -> Vec<Vec<usize>> {
    fn go(min: usize, product: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for h in min..=max / product {
            cur.push(h);
            go(h, product * h, max, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![vec![1]];
    go(2, 1, max_product, &mut Vec::new(), &mut out);
    out
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    let sperner = (0..=5).all(|n| {
        let brute = common::oracle::sperner_brute(n);
        central_coefficient(2, n) == BigUint::from(brute) && width(downsets(&FinitePoset::discrete(n)).poset()) == brute
    });
    if !sperner {
        notes.push("Sperner values differ".to_string());
    }
    let tuples = chain_tuples(200);
    let bad_tuples: Vec<&Vec<usize>> = tuples
        .iter()
        .filter(|h| chain_product_width(h) != BigUint::from(width_matching(&FinitePoset::chain_product(h))))
        .collect();
    if !bad_tuples.is_empty() {
        notes.push(format!("chain products differ: {bad_tuples:?}"));
    }
    let discrete = (1..=7).all(|n| {
        let p = FinitePoset::discrete(n);
        width_bound(&p) == BigUint::from(width(downsets(&p).poset()))
    });
    if !discrete {
        notes.push("bound not tight on discrete posets".into());
    }
    let mut rng = common::rng(8);
    let mut violations: Vec<String> = Vec::new();
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let density = rng.gen_range(0.0..0.6);
        let p = common::random_poset(&mut rng, n, density);
        let exact = width(downsets(&p).poset());
        let bound = width_bound(&p);
        if bound < BigUint::from(exact) {
            violations.push(format!("{} elements: bound {bound} < width {exact}", p.len()));
        }
    }
    if !violations.is_empty() {
        let distinct: BTreeSet<&String> = violations.iter().collect();
        notes.push(format!(
            "bound below exact width on {}/200 random posets, e.g. {:?}",
            violations.len(),
            distinct.iter().take(2).collect::<Vec<_>>()
        ));
    }
    let detail = format!("Sperner n<=5, {} chain tuples, discrete tightness n<=7; {}", tuples.len(), if notes.is_empty() { "no discrepancies".into() } else { notes.join("; ") });
    (notes.is_empty(), detail)
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 0..=4 {
        for p in common::oracle::all_posets(n) {
            checked += 1;
            let alg = RequirementAlgebra::new(p.clone());
            let got = build_ubl(alg.clone(), DEFAULT_UBL_CAP).unwrap().len();
            let antichains = count_antichains(downsets(&p).poset());
            if got as u128 != antichains || common::oracle::closure_count(&alg) != got {
                bad.push(format!("{:?}", p.cover_pairs()));
            }
        }
    }
    (bad.is_empty(), format!("{checked} posets, {} mismatches", bad.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("running example rdp is S7", criterion_1),
        ("BL completion has 9 elements and 4 traces", criterion_2),
        ("version nucleus fixed points and quotients", criterion_3),
        ("requirement lattice counts", criterion_4),
        ("representation roundtrip", criterion_5),
        ("nucleus and modal law suites", criterion_6),
        ("solver agrees with exhaustive search", criterion_7),
        ("widths and the width bound", criterion_8),
        ("requirements count antichains of downsets", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        if !ok {
            failed += 1;
        }
        println!("criterion {}: {} {name} ({detail})", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
