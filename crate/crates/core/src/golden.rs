//! Worked examples with known answers, runnable as a self-test.

use serde::Serialize;

use crate::circuit::Circuit;
use crate::families::{mk_parity, FamilySpec};
use crate::hazard::{
    check_thm5_conditions, check_thm6_conditions, detect_oracle, detect_prime_witness,
    detect_structural, verify_thm1, verify_thm2, HazardReport, Polarity,
};
use crate::netlist::{parse_expr, parse_netlist};
use crate::primes::{prime_implicants_consensus, prime_implicants_qmc, prime_implicates};
use crate::produce::{formal_cnf, formal_dnf};
use crate::random::corpus;
use crate::ternary::eval_ternary;
use crate::tri::{Tri, TriVector};

#[derive(Debug, Clone, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expr(e: &str) -> std::result::Result<Circuit, String> {
    parse_expr(e).map_err(|err| err.to_string())
}

fn tv(s: &str) -> TriVector {
    s.parse().expect("literal vector")
}

fn hazards(r: &HazardReport, p: Polarity) -> Vec<String> {
    r.witnesses.iter().filter(|w| w.polarity == p).map(|w| w.vector.to_string()).collect()
}

fn dnf_text(c: &Circuit) -> std::result::Result<Vec<String>, String> {
    let d = formal_dnf(c).map_err(|e| e.to_string())?;
    Ok(d.iter().map(|t| t.to_text(c.names())).collect())
}

fn cnf_text(c: &Circuit) -> std::result::Result<Vec<String>, String> {
    let d = formal_cnf(c).map_err(|e| e.to_string())?;
    Ok(d.iter().map(|t| t.to_text(c.names())).collect())
}

const MUX_NET: &str = "inputs x y z\ng1 = AND x z\ng2 = AND y ~z\ng3 = OR g1 g2\noutput g3";

fn kleene_tables() -> Check {
    use Tri::{One as I, Unstable as U, Zero as O};
    let and = [[O, O, O], [O, U, U], [O, U, I]];
    let or = [[O, U, I], [U, U, I], [I, I, I]];
    let not = [I, U, O];
    for (i, a) in Tri::ALL.into_iter().enumerate() {
        ensure(!a == not[i], || format!("not {a}"))?;
        for (j, b) in Tri::ALL.into_iter().enumerate() {
            ensure((a & b) == and[i][j], || format!("{a} and {b}"))?;
            ensure((a | b) == or[i][j], || format!("{a} or {b}"))?;
            ensure((a & b).as_half() == a.as_half().min(b.as_half()), || "min".into())?;
            ensure((a | b).as_half() == a.as_half().max(b.as_half()), || "max".into())?;
        }
        ensure((!a).as_half() == 1.0 - a.as_half(), || "1-x".into())?;
    }
    Ok(())
}

fn multiplexer() -> Check {
    let c = parse_netlist(MUX_NET).map_err(|e| e.to_string())?;
    ensure(c.stats().size == 3, || "size".into())?;
    let r = detect_oracle(&c).map_err(|e| e.to_string())?;
    ensure(hazards(&r, Polarity::One) == ["11u"], || format!("1-hazards {:?}", hazards(&r, Polarity::One)))?;
    ensure(!r.has_0_hazard, || "unexpected 0-hazard".into())?;
    let chk = check_thm5_conditions(&c, &tv("11u")).map_err(|e| e.to_string())?;
    ensure(chk.satisfied == [1, 2, 3, 4, 5] && chk.witness_cube == "xy", || format!("{chk:?}"))
}

fn zero_hazard_example() -> Check {
    let c = expr("(x|~z)&(y|z)")?;
    let r = detect_oracle(&c).map_err(|e| e.to_string())?;
    ensure(hazards(&r, Polarity::Zero) == ["00u"], || format!("0-hazards {:?}", hazards(&r, Polarity::Zero)))?;
    ensure(!r.has_1_hazard, || "unexpected 1-hazard".into())?;
    ensure(dnf_text(&c)? == ["xy", "xz", "y~z", "z~z"], || "formal DNF".into())?;
    let dual = c.dual();
    let dual_dnf = dnf_text(&dual)?;
    ensure(dual_dnf == ["x~z", "yz"], || format!("dual DNF {dual_dnf:?}"))?;
    let chk = check_thm6_conditions(&c, &tv("00u")).map_err(|e| e.to_string())?;
    ensure(chk.satisfied == [1, 2, 3, 4, 5] && chk.cube_at_u.as_deref() == Some("z~z"), || {
        format!("{chk:?}")
    })
}

fn hazard_free_example() -> Check {
    let c = expr("x&(y|z) | y&~z")?;
    let v = eval_ternary(&c, &tv("1u1")).map_err(|e| e.to_string())?;
    ensure(v == Tri::One, || format!("F(1u1) = {v}"))?;
    let r = detect_oracle(&c).map_err(|e| e.to_string())?;
    ensure(r.is_hazard_free(), || format!("{:?}", r.witnesses))?;
    let names = c.names().to_vec();
    let primes: Vec<String> = prime_implicants_qmc(&c.truth_table().map_err(|e| e.to_string())?)
        .iter()
        .map(|t| t.to_text(&names))
        .collect();
    ensure(primes == ["xy", "xz", "y~z"], || format!("primes {primes:?}"))
}

fn monotone_version_example() -> Check {
    let c = expr("y&~z | x&(~y | ~x&y)")?;
    let r = detect_oracle(&c).map_err(|e| e.to_string())?;
    ensure(hazards(&r, Polarity::Zero).contains(&"u11".to_string()), || "0-hazard at u11".into())?;
    ensure(hazards(&r, Polarity::One).contains(&"1u0".to_string()), || "1-hazard at 1u0".into())?;
    let f = c.truth_table().map_err(|e| e.to_string())?;
    let up = f.upwards_closure();
    let x_or_y = expr("x|y|z&0")?.truth_table().map_err(|e| e.to_string())?;
    ensure(up == x_or_y, || "f↑ is not x ∨ y".into())?;
    let plus = c.monotone_version().truth_table().map_err(|e| e.to_string())?;
    ensure(plus == up, || "F⁺ differs from f↑".into())?;
    ensure(verify_thm1(&c) == Ok(true) && verify_thm2(&c) == Ok(true), || "theorem checks".into())
}

fn consensus_example() -> Check {
    let c = expr("x&(~y|~z) | ~x&y")?;
    ensure(dnf_text(&c)? == ["x~y", "x~z", "~xy"], || format!("DNF {:?}", dnf_text(&c)))?;
    ensure(cnf_text(&c)? == ["x~x", "xy", "~x~y~z", "y~y~z"], || format!("CNF {:?}", cnf_text(&c)))?;
    let alpha = tv("u10");
    let r = detect_prime_witness(&c).map_err(|e| e.to_string())?;
    ensure(hazards(&r, Polarity::One).contains(&"u10".to_string()), || "1-hazard at u10".into())?;
    let s = detect_structural(&c).map_err(|e| e.to_string())?;
    let missing: Vec<_> = s.witnesses.iter().filter_map(|w| w.missing_prime.clone()).collect();
    ensure(missing.contains(&"y~z".to_string()), || format!("missing {missing:?}"))?;

    let chk = check_thm5_conditions(&c, &alpha).map_err(|e| e.to_string())?;
    ensure(chk.satisfied == [1, 2, 3, 4, 5], || format!("{:?}", chk.satisfied))?;
    ensure(chk.cube_at_u.as_deref() == Some("x~x"), || "one-clause x ∨ x̄ at u".into())?;
    ensure(chk.disjoint_cube.as_deref() == Some("x~x"), || "y z̄ ∩ (x ∨ x̄) = ∅".into())?;
    let values: Vec<(String, Tri)> = chk.values.iter().map(|v| (v.cube.clone(), v.value)).collect();
    let expected = [
        ("x~y".to_string(), Tri::Zero),
        ("x~z".to_string(), Tri::Unstable),
        ("~xy".to_string(), Tri::Unstable),
    ];
    ensure(values == expected, || format!("term values {values:?}"))?;
    ensure(chk.witness_cube == "y~z" && !chk.witness_cube_produced, || "y z̄ produced".into())?;
    // Dual circuit: the 0-hazard sits at the complemented vector.
    let d = c.dual();
    let chk = check_thm6_conditions(&d, &alpha.complement()).map_err(|e| e.to_string())?;
    ensure(chk.satisfied == [1, 2, 3, 4, 5], || "dual conditions".into())
}

fn prime_sets() -> Check {
    let f = expr("x&y | x&~y&z")?.truth_table().map_err(|e| e.to_string())?;
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let p: Vec<String> = prime_implicants_qmc(&f).iter().map(|t| t.to_text(&names)).collect();
    ensure(p == ["xy", "xz"], || format!("{p:?}"))?;
    let mux = parse_netlist(MUX_NET).map_err(|e| e.to_string())?;
    let ft = mux.truth_table().map_err(|e| e.to_string())?;
    let imp: Vec<String> = prime_implicates(&ft).iter().map(|c| c.to_text(&names)).collect();
    ensure(imp == ["xy", "x~z", "yz"], || format!("{imp:?}"))?;
    let via_consensus = prime_implicants_consensus(&formal_dnf(&mux).map_err(|e| e.to_string())?);
    ensure(via_consensus == prime_implicants_qmc(&ft), || "consensus vs QMC".into())
}

fn parity_is_hazard_free() -> Check {
    for n in 1..=5 {
        let c = mk_parity(n).map_err(|e| e.to_string())?;
        ensure(detect_oracle(&c).map_err(|e| e.to_string())?.is_hazard_free(), || format!("parity {n}"))?;
    }
    Ok(())
}

fn exact_pm_gap() -> Check {
    let r = crate::families::gap_report(&FamilySpec::ExactPm {
        m: 3,
        variant: crate::families::PmVariant::Formula,
    })
    .map_err(|e| e.to_string())?;
    ensure(r.hazard_free_huffman.prime_implicants == 6, || "prime count".into())?;
    ensure(r.hazard_free_huffman.literal_count > r.unrestricted.size, || "no gap".into())
}

fn run(name: &str, f: fn() -> Check) -> GoldenCheck {
    let (passed, detail) = match f() {
        Ok(()) => (true, String::new()),
        Err(d) => (false, d),
    };
    GoldenCheck { name: name.to_string(), passed, detail }
}

/// Every worked example with a known answer.
pub fn golden_suite() -> Vec<GoldenCheck> {
    vec![
        run("kleene-tables", kleene_tables),
        run("multiplexer-1-hazard", multiplexer),
        run("product-of-sums-0-hazard", zero_hazard_example),
        run("hazard-free-example", hazard_free_example),
        run("monotone-version-example", monotone_version_example),
        run("formal-dnf-cnf-and-conditions", consensus_example),
        run("prime-implicants-and-implicates", prime_sets),
        run("parity-hazard-free", parity_is_hazard_free),
        run("exact-pm-gap", exact_pm_gap),
    ]
}

/// Detector agreement over `count` random circuits drawn from `seed`.
pub fn randomized_suite(seed: u64, count: usize) -> GoldenCheck {
    let check = || -> Check {
        for (i, c) in corpus(seed, count, 6, 30).iter().enumerate() {
            let a = detect_oracle(c).map_err(|e| e.to_string())?;
            let b = detect_prime_witness(c).map_err(|e| e.to_string())?;
            let s = detect_structural(c).map_err(|e| e.to_string())?;
            ensure(a.same_verdict(&b) && a.same_verdict(&s), || format!("circuit {i} disagrees"))?;
        }
        Ok(())
    };
    let (passed, detail) = match check() {
        Ok(()) => (true, String::new()),
        Err(d) => (false, d),
    };
    GoldenCheck { name: format!("detector-agreement(seed={seed}, count={count})"), passed, detail }
}
