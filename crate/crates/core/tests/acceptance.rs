//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p hazard-core --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use hazard_core::circuit::Circuit;
use hazard_core::families::{
    gap_report, mk_exact_clique, mk_exact_k, mk_exact_pm, mk_parity, FamilySpec, PmVariant,
};
use hazard_core::hazard::{
    check_cor34, check_thm5_conditions, check_thm6_conditions, detect_oracle,
    detect_prime_witness, detect_structural, hazard_map, prime_witnesses, verify_thm1,
    verify_thm2, Polarity,
};
use hazard_core::netlist::parse_expr;
use hazard_core::primes::prime_implicants_qmc;
use hazard_core::produce::{formal_cnf, formal_dnf};
use hazard_core::random::{corpus, random_hazard_free_circuit, random_truth_table, rng, DEFAULT_SEED};
use hazard_core::synthesis::{consensus_combine, huffman_dnf, shannon_gate_bound, synthesize_shannon};
use hazard_core::ternary::{
    hazard_derivative_circuit, hazard_derivative_function, index_of, tri_and, tri_not, tri_or,
};
use hazard_core::{Tri, TruthTable};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn golden_circuits() -> Vec<Circuit> {
    let mut v: Vec<Circuit> = GOLDEN_EXPRS.iter().map(|s| parse_expr(s).unwrap()).collect();
    v.push(mk_parity(4).unwrap());
    v.push(mk_exact_pm(2, PmVariant::Counting).unwrap());
    v.push(hazard_core::families::mk_multiplexer().dual());
    v
}

fn shared_corpus() -> Vec<Circuit> {
    let mut v = golden_circuits();
    v.extend(corpus(DEFAULT_SEED, 500, 6, 30));
    v
}

fn bits(a: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| a >> i & 1 == 1).collect()
}

fn criterion_1() -> Outcome {
    use Tri::{One as I, Unstable as U, Zero as O};
    let and = [[O, O, O], [O, U, U], [O, U, I]];
    let or = [[O, U, I], [U, U, I], [I, I, I]];
    let not = [I, U, O];
    let mut entries = 0;
    for (i, a) in Tri::ALL.into_iter().enumerate() {
        check(tri_not(a) == not[i], || format!("not {a}"))?;
        entries += 1;
        for (j, b) in Tri::ALL.into_iter().enumerate() {
            check(tri_and(a, b) == and[i][j], || format!("{a} and {b}"))?;
            check(tri_or(a, b) == or[i][j], || format!("{a} or {b}"))?;
            entries += 2;
            let (x, y) = (a.as_half(), b.as_half());
            check(tri_and(a, b).as_half() == x.min(y), || format!("min({a},{b})"))?;
            check(tri_or(a, b).as_half() == x.max(y), || format!("max({a},{b})"))?;
        }
        check(tri_not(a).as_half() == 1.0 - a.as_half(), || format!("1-{a}"))?;
    }
    check(entries == 21, || format!("{entries} entries"))?;
    Ok("21 table entries, 9 min/max pairs".into())
}

fn criterion_2() -> Outcome {
    let suite = hazard_core::golden::golden_suite();
    for g in &suite {
        check(g.passed, || format!("{}: {}", g.name, g.detail))?;
    }
    // Independent confirmation of the hazard locations by definition.
    let expect: &[(&str, &[(&str, bool)])] = &[
        ("x&z | y&~z", &[("11u", true)]),
        ("(x|~z)&(y|z)", &[("00u", false)]),
        ("x&(y|z) | y&~z", &[]),
    ];
    for (src, want) in expect {
        let got = naive_hazards(&parse_expr(src).unwrap());
        let want: BTreeSet<(String, bool)> = want.iter().map(|(v, p)| (v.to_string(), *p)).collect();
        check(got == want, || format!("{src}: {got:?}"))?;
    }
    let ex33 = naive_hazards(&parse_expr("y&~z | x&(~y | ~x&y)").unwrap());
    check(ex33.contains(&("u11".into(), false)) && ex33.contains(&("1u0".into(), true)), || {
        format!("mixed circuit: {ex33:?}")
    })?;
    let ex61 = naive_hazards(&parse_expr("x&(~y|~z) | ~x&y").unwrap());
    check(ex61.contains(&("u10".into(), true)), || format!("one-clause circuit: {ex61:?}"))?;
    let c = parse_expr("(x|~z)&(y|z)").unwrap();
    let dnf: Vec<String> = e(formal_dnf(&c))?.iter().map(|t| t.to_text(c.names())).collect();
    check(dnf == ["xy", "xz", "y~z", "z~z"], || format!("{dnf:?}"))?;
    Ok(format!("{} golden checks", suite.len()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let circuits = shared_corpus();
    for (i, c) in circuits.iter().enumerate() {
        let o = e(detect_oracle(c))?;
        let p = e(detect_prime_witness(c))?;
        let s = e(detect_structural(c))?;
        check(o.same_verdict(&p) && o.same_verdict(&s), || format!("circuit {i}: {c}"))?;
        check(p.witness_set() == s.witness_set(), || format!("witness sets differ on circuit {i}"))?;
        let naive = naive_hazards(c);
        let oracle: BTreeSet<(String, bool)> =
            o.witnesses.iter().map(|w| (w.vector.to_string(), w.polarity.value())).collect();
        check(naive == oracle, || format!("oracle differs from definition on circuit {i}"))?;
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{} circuits agree in {:.2?}", circuits.len(), t))
}

fn criterion_4() -> Outcome {
    let circuits = shared_corpus();
    let (mut certs, mut witnesses, mut dual_checked) = (0, 0, 0);
    for (i, c) in circuits.iter().enumerate() {
        let o = e(detect_oracle(c))?;
        let dnf = e(formal_dnf(c))?;
        let cnf = e(formal_cnf(c))?;
        if !dnf.iter().any(|t| t.is_zero_term()) {
            check(!o.has_0_hazard, || format!("circuit {i}: 0-hazard without zero-terms"))?;
        }
        if !cnf.iter().any(|k| k.is_one_clause()) {
            check(!o.has_1_hazard, || format!("circuit {i}: 1-hazard without one-clauses"))?;
        }
        if c.stats().is_monotone {
            check(o.is_hazard_free(), || format!("circuit {i}: monotone with hazards"))?;
        }
        check(e(verify_thm1(c))?, || format!("circuit {i}: monotone-version implication"))?;
        check(e(verify_thm2(c))?, || format!("circuit {i}: zero-term biconditional"))?;
        let map = e(hazard_map(c))?;
        if let Some(cert) = e(check_cor34(c))? {
            certs += 1;
            check(map[index_of(&cert.vector)] == Some(Polarity::Zero), || {
                format!("circuit {i}: certificate {} is not a 0-hazard", cert.vector)
            })?;
        }
        if c.arity() <= 5 {
            dual_checked += 1;
            let dmap = e(hazard_map(&c.dual()))?;
            for (idx, hazard) in map.iter().enumerate() {
                let alpha = hazard_core::ternary::vector_at(c.arity(), idx);
                let didx = index_of(&alpha.complement());
                let flipped = hazard.map(|p| match p {
                    Polarity::Zero => Polarity::One,
                    Polarity::One => Polarity::Zero,
                });
                check(dmap[didx] == flipped, || format!("circuit {i}: duality at {alpha}"))?;
            }
        }
        for w in prime_witnesses(&e(c.truth_table())?) {
            let chk = match w.polarity {
                Polarity::One => e(check_thm5_conditions(c, &w.vector))?,
                Polarity::Zero => e(check_thm6_conditions(c, &w.vector))?,
            };
            check(chk.all_or_nothing(), || format!("circuit {i}: partial set {:?}", chk.satisfied))?;
            let hazard = map[index_of(&w.vector)] == Some(w.polarity);
            check(hazard == !chk.satisfied.is_empty(), || format!("circuit {i}: condition 1"))?;
            witnesses += 1;
        }
    }
    Ok(format!(
        "{} circuits, {certs} zero-hazard certificates, {dual_checked} duality maps, {witnesses} prime witnesses",
        circuits.len()
    ))
}

fn oracle_hazard_free(c: &Circuit) -> Result<bool, String> {
    Ok(e(detect_oracle(c))?.is_hazard_free())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for g in 0..256u64 {
        let f = e(TruthTable::from_u64(3, g))?;
        let c = e(huffman_dnf(&f))?;
        check(e(c.truth_table())? == f, || format!("huffman wrong for {g:#x}"))?;
        check(oracle_hazard_free(&c)?, || format!("huffman hazard for {g:#x}"))?;
        check(naive_hazards(&c).is_empty(), || format!("definition finds hazard for {g:#x}"))?;
    }
    let mut r = rng(DEFAULT_SEED ^ 5);
    for i in 0..1000 {
        let n = 4 + i % 3;
        let f = random_truth_table(&mut r, n);
        let c = e(huffman_dnf(&f))?;
        check(e(c.truth_table())? == f, || format!("huffman wrong, sample {i}"))?;
        check(oracle_hazard_free(&c)?, || format!("huffman hazard, sample {i}"))?;
    }
    let mut max_size = 0;
    for i in 0..100 {
        let f = random_truth_table(&mut r, 8);
        let c = e(synthesize_shannon(&f, Some(3)))?;
        check(e(c.truth_table())? == f, || format!("shannon wrong, sample {i}"))?;
        check(oracle_hazard_free(&c)?, || format!("shannon hazard, sample {i}"))?;
        check(e(detect_prime_witness(&c))?.is_hazard_free(), || format!("shannon witness, {i}"))?;
        let size = c.stats().size;
        check(size <= shannon_gate_bound(8, 3), || format!("shannon size {size}"))?;
        max_size = max_size.max(size);
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!(
        "256 + 1000 DNFs, 100 recursions (max {max_size} <= {} gates) in {t:.2?}",
        shannon_gate_bound(8, 3)
    ))
}

fn criterion_6() -> Outcome {
    let mut r = rng(DEFAULT_SEED ^ 6);
    for i in 0..200 {
        let k = r.gen_range(1..=5);
        let f0 = e(random_hazard_free_circuit(&mut r, k))?;
        let f1 = e(random_hazard_free_circuit(&mut r, k))?;
        check(oracle_hazard_free(&f0)? && oracle_hazard_free(&f1)?, || format!("pair {i} input"))?;
        let c = e(consensus_combine(&f0, &f1, "xn"))?;
        check(c.stats().size <= f0.stats().size + f1.stats().size + 5, || format!("pair {i} size"))?;
        check(oracle_hazard_free(&c)?, || format!("pair {i}: combination has a hazard"))?;
        let (t0, t1, t) = (e(f0.truth_table())?, e(f1.truth_table())?, e(c.truth_table())?);
        let half = 1u64 << k;
        for a in 0..2 * half {
            let want = if a >= half { t1.get(a - half) } else { t0.get(a) };
            check(t.get(a) == want, || format!("pair {i}: wrong function"))?;
        }
    }
    Ok("200 pairs".into())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for m in [2usize, 3] {
        let f = e(e(mk_exact_pm(m, PmVariant::Formula))?.truth_table())?;
        let g = e(e(mk_exact_pm(m, PmVariant::Counting))?.truth_table())?;
        check(f.count_ones() == factorial(m as u64), || format!("exact_pm({m}) count"))?;
        check(f == g, || format!("exact_pm({m}) variants differ"))?;
        for a in 0..f.len() {
            check(f.get(a) == is_permutation_matrix(m, a), || format!("exact_pm({m}) at {a}"))?;
        }
    }
    let f4 = e(e(mk_exact_pm(4, PmVariant::Formula))?.truth_table())?;
    let g4 = e(e(mk_exact_pm(4, PmVariant::Counting))?.truth_table())?;
    check(f4 == g4 && f4.count_ones() == 24, || "exact_pm(4)".into())?;
    for m in 1..=5usize {
        for k in 1..=m {
            let t = e(e(mk_exact_clique(m, k))?.truth_table())?;
            for a in 0..t.len() {
                check(t.get(a) == is_exact_clique(m, k, a), || format!("clique({m},{k}) at {a}"))?;
            }
        }
    }
    for m in 0..=12usize {
        for k in 0..=m {
            let t = e(e(mk_exact_k(m, k))?.truth_table())?;
            check(t == popcount_table(m, k), || format!("exact_k({m},{k})"))?;
        }
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("matchings, cliques m<=5, exact_k m<=12 in {t:.2?}"))
}

fn criterion_8() -> Outcome {
    let mut sizes = Vec::new();
    for m in 2..=4usize {
        let c = e(mk_exact_pm(m, PmVariant::Formula))?;
        let size = c.stats().size;
        check(size == 2 * m * m * m - 1, || format!("formula size {size} at m={m}"))?;
        sizes.push(size);
    }
    for (m, count) in [(2usize, 2usize), (3, 6)] {
        let f = e(e(mk_exact_pm(m, PmVariant::Formula))?.truth_table())?;
        let primes = prime_implicants_qmc(&f);
        check(primes.len() == count, || format!("m={m}: {} primes", primes.len()))?;
        check(primes.iter().all(|t| t.len() == m * m), || format!("m={m}: short prime"))?;
    }
    let r = e(gap_report(&FamilySpec::ExactPm { m: 3, variant: PmVariant::Formula }))?;
    check(r.hazard_free_huffman.prime_implicants == 6, || "report primes".into())?;
    check(r.hazard_free_huffman.literal_count == 54, || "report literals".into())?;
    check(r.hazard_free_huffman.literal_count > r.unrestricted.size, || "no gap at m=3".into())?;
    Ok(format!(
        "formula sizes {sizes:?}; m=3: {} literals vs {} gates",
        r.hazard_free_huffman.literal_count, r.unrestricted.size
    ))
}

fn criterion_9() -> Outcome {
    let circuits: Vec<Circuit> = shared_corpus().into_iter().filter(|c| c.arity() <= 5).collect();
    let mut closure_checks = 0;
    for (i, c) in circuits.iter().enumerate() {
        let n = c.arity();
        let f = e(c.truth_table())?;
        let mut agree = true;
        for a in 0..1u64 << n {
            for x in 0..1u64 << n {
                let (ab, xb) = (bits(a, n), bits(x, n));
                let dc = e(hazard_derivative_circuit(c, &ab, &xb))?;
                let df = e(hazard_derivative_function(&f, &ab, &xb))?;
                agree &= dc == df;
            }
        }
        let free = naive_hazards(c).is_empty();
        check(free == agree, || format!("circuit {i}: hazard-free={free}, derivatives agree={agree}"))?;
        if !f.get(0) {
            let up = f.upwards_closure();
            let zero = vec![false; n];
            for x in 0..1u64 << n {
                let d = e(hazard_derivative_function(&f, &zero, &bits(x, n)))?;
                check(d == up.get(x), || format!("circuit {i}: derivative at 0 vs closure"))?;
            }
            closure_checks += 1;
        }
    }
    Ok(format!("{} circuits, {closure_checks} closure identities", circuits.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("truth-table fidelity", criterion_1),
        ("worked-example golden suite", criterion_2),
        ("detector equivalence", criterion_3),
        ("theorem property suites", criterion_4),
        ("synthesis correctness", criterion_5),
        ("consensus recursion preserves hazard-freeness", criterion_6),
        ("family constructions", criterion_7),
        ("gap demonstration", criterion_8),
        ("derivative identity", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}
