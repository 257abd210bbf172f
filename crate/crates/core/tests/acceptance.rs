//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use minpoly::engine::{self, InitVariant, Options, Run, Sequence};
use minpoly::lfsr::{feedback_to_characteristic, Recurrence};
use minpoly::oracle;
use minpoly::{Field, Poly, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    id: &'static str,
    title: &'static str,
    violations: Vec<String>,
    summary: String,
}

impl Verdict {
    fn new(id: &'static str, title: &'static str) -> Verdict {
        Verdict {
            id,
            title,
            violations: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(what());
        }
    }

    fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every sequence over GF(p) of length 1..=max_len.
fn all_sequences(p: u32, max_len: usize) -> Vec<Sequence> {
    let f = Field::Prime(p);
    let mut out = Vec::new();
    for n in 1..=max_len {
        for code in 0..(p as u64).pow(n as u32) {
            let mut rest = code;
            let mut terms = vec![0i64; n];
            for t in terms.iter_mut().rev() {
                *t = (rest % p as u64) as i64;
                rest /= p as u64;
            }
            out.push(Sequence::from_integers(f, &terms));
        }
    }
    out
}

struct Case {
    s: Sequence,
    b0: Run,
    b1: Run,
}

fn corpus() -> Vec<Case> {
    let mut seqs = all_sequences(2, 12);
    seqs.extend(all_sequences(3, 7));
    seqs.into_iter()
        .map(|s| Case {
            b0: engine::run(&s, InitVariant::BZero).expect("engine run"),
            b1: engine::run(&s, InitVariant::BOne).expect("engine run"),
            s,
        })
        .collect()
}

fn criterion_1() -> Verdict {
    let mut v = Verdict::new("1", "worked-example traces reproduced byte-exact");
    let f = Field::gf2();
    let cases: [(&[i64], [&str; 4]); 2] = [
        (&[0, 1, 1, 0], ["1", "x^2", "x^2 + x", "x^2 + x + 1"]),
        (&[1, 1, 0, 0], ["x", "x + 1", "x^2 + x + 1", "x^2"]),
    ];
    for (terms, expected) in cases {
        let s = Sequence::from_integers(f, terms);
        let run = engine::run(&s, InitVariant::BZero).unwrap();
        let got: Vec<String> = run.states[1..].iter().map(|st| st.poly.to_string()).collect();
        v.check(got == expected, || format!("({s}): got {got:?}, want {expected:?}"));
    }
    v.summary = "2 traces".into();
    v
}

fn criterion_2(corpus: &[Case]) -> Verdict {
    let mut v = Verdict::new("2", "engine output matches the brute-force oracle");
    let (mut gf2, mut gf3) = (0, 0);
    for case in corpus {
        match case.s.field() {
            Field::Prime(2) => gf2 += 1,
            _ => gf3 += 1,
        }
        let c = case.b0.minimal_polynomial();
        let degree = oracle::brute_force_min_degree(&case.s).unwrap();
        let truth = oracle::enumerate_minimal_polys(&case.s).unwrap();
        v.check(c.degree() == degree && truth.min_degree == degree, || {
            format!("({}) over {}: engine degree {}, oracle {}", case.s, case.s.field(), c.degree(), degree)
        });
        v.check(truth.contains(&c), || {
            format!("({}) over {}: {c} not among oracle polynomials", case.s, case.s.field())
        });
    }
    v.check(gf2 == 8190 && gf3 == 3279, || {
        format!("corpus size {gf2} + {gf3}, want 8190 + 3279")
    });
    v.summary = format!("{gf2} GF(2) + {gf3} GF(3) sequences");
    v
}

fn criterion_3(corpus: &[Case]) -> Verdict {
    let mut v = Verdict::new("3", "deg C = (e_i + i + 1)/2 after every step");
    let mut steps = 0;
    for case in corpus {
        for run in [&case.b0, &case.b1] {
            for st in &run.states[1..] {
                steps += 1;
                let twice = st.exponent + st.i as i64 + 1;
                v.check(
                    twice % 2 == 0 && st.poly.degree().finite() == Some((twice / 2) as usize),
                    || format!("({}) step {}: deg C = {}, e = {}", case.s, st.i, st.poly.degree(), st.exponent),
                );
            }
        }
    }
    v.summary = format!("{steps} steps, both variants");
    v
}

fn criterion_4(corpus: &[Case]) -> Verdict {
    let mut v = Verdict::new("4", "jump rule and lower bound at nonzero discrepancies");
    let mut nonzero = 0;
    for case in corpus {
        let mut prev = 0usize;
        for entry in case.b0.profile() {
            let l = entry.linear_complexity;
            if entry.discrepancy.is_zero() {
                v.check(l == prev, || format!("({}) step {}: L moved on zero discrepancy", case.s, entry.i));
            } else {
                nonzero += 1;
                let i = entry.i;
                v.check(l == prev.max(i - prev), || {
                    format!("({}) step {i}: L = {l}, max(L_prev, i - L_prev) = {}", case.s, prev.max(i - prev))
                });
                v.check(l >= i - prev, || format!("({}) step {i}: L = {l} < i - L_prev", case.s));
            }
            prev = l;
        }
    }
    v.summary = format!("{nonzero} steps with nonzero discrepancy");
    v
}

fn criterion_5a(corpus: &[Case]) -> Verdict {
    let mut v = Verdict::new("5a", "B=0 and B=1 outputs have equal degree and are characteristic");
    for case in corpus {
        let (c0, c1) = (case.b0.minimal_polynomial(), case.b1.minimal_polynomial());
        v.check(c0.degree() == c1.degree(), || {
            format!("({}) over {}: degrees {} vs {}", case.s, case.s.field(), c0.degree(), c1.degree())
        });
        for c in [&c0, &c1] {
            v.check(engine::is_characteristic(c, &case.s).unwrap(), || {
                format!("({}) over {}: {c} fails the recurrence", case.s, case.s.field())
            });
        }
    }
    v.summary = format!("{} sequences", corpus.len());
    v
}

fn criterion_5b(corpus: &[Case]) -> Verdict {
    let mut v = Verdict::new("5b", "with s_1 != 0, B=0 and B=1 per-step C sequences identical");
    let mut subset = 0;
    let mut first_step_only = 0;
    for case in corpus.iter().filter(|c| !c.s.term(1).is_zero()) {
        subset += 1;
        let polys = |r: &Run| -> Vec<Poly> { r.states[1..].iter().map(|st| st.poly.clone()).collect() };
        let (p0, p1) = (polys(&case.b0), polys(&case.b1));
        if p0 != p1 {
            let monic = |ps: &[Poly]| -> Vec<Poly> { ps.iter().map(|p| p.make_monic().unwrap()).collect() };
            if monic(&p0[1..]) == monic(&p1[1..]) {
                first_step_only += 1;
            }
            let step = p0.iter().zip(&p1).position(|(a, b)| a != b).unwrap() + 1;
            v.check(false, || {
                format!("({}) over {}: first difference at step {step}: {} vs {}", case.s, case.s.field(), p0[step - 1], p1[step - 1])
            });
        }
    }
    v.summary = format!(
        "{subset} sequences with s_1 != 0; {} differ, {first_step_only} of them only at step 1 up to scalars",
        v.violations.len()
    );
    v
}

fn criterion_6(corpus: &[Case]) -> Verdict {
    let mut v = Verdict::new("6", "feedback form round trip and L = (e_n + n + 1)/2");
    for case in corpus {
        let (f, l) = engine::massey_form(&case.s).unwrap();
        let c = case.b0.minimal_polynomial();
        let back = feedback_to_characteristic(&f, l).unwrap();
        v.check(back == c, || format!("({}) over {}: x^(L-deg F) F* = {back}, C = {c}", case.s, case.s.field()));
        let last = case.b0.final_state();
        let formula = (last.exponent + case.s.len() as i64 + 1) / 2;
        v.check(l as i64 == formula && c.degree() == l, || {
            format!("({}): L = {l}, (e_n + n + 1)/2 = {formula}, deg C = {}", case.s, c.degree())
        });
    }
    v.summary = format!("{} sequences", corpus.len());
    v
}

fn random_scalar(rng: &mut ChaCha8Rng, f: Field) -> Scalar {
    match f {
        Field::Prime(p) => Scalar::from_integer(rng.gen_range(0..p as i64), f),
        Field::Rational => {
            let n: i64 = rng.gen_range(-50..=50);
            let d: i64 = rng.gen_range(1..=20);
            Scalar::from_fraction(&n.into(), &d.into(), f).unwrap()
        }
    }
}

fn criterion_7() -> Verdict {
    let mut v = Verdict::new("7", "generated sequences recognized (c.p. holds, L <= deg C)");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut pairs = 0;
    for f in [Field::gf2(), Field::Prime(3)] {
        for _ in 0..1000 {
            let d = rng.gen_range(0..=6usize);
            let mut coeffs: Vec<Scalar> = (0..d).map(|_| random_scalar(&mut rng, f)).collect();
            coeffs.push(f.one());
            let c = Poly::from_coeffs(f, coeffs).unwrap();
            let seed: Vec<Scalar> = (0..d).map(|_| random_scalar(&mut rng, f)).collect();
            let s = Recurrence::new(c.clone(), seed).unwrap().extend(2 * d);
            pairs += 1;
            v.check(engine::is_characteristic(&c, &s).unwrap(), || format!("{c} does not generate ({s})"));
            let l = engine::run(&s, InitVariant::BZero).unwrap().linear_complexity();
            v.check(l <= d, || format!("({s}): L = {l} > deg C = {d}"));
        }
    }
    v.summary = format!("{pairs} (C, seed) pairs");
    v
}

fn check_run_invariants(v: &mut Verdict, s: &Sequence) {
    match engine::run(s, Options::for_field(s.field(), InitVariant::BZero)) {
        Err(e) => v.check(false, || format!("engine reported: {e}")),
        Ok(run) => {
            for st in &run.states {
                v.check((st.exponent + st.i as i64).rem_euclid(2) == 1, || {
                    format!("parity broken at step {}", st.i)
                });
                v.check(!st.prev_disc.is_zero(), || format!("b = 0 at step {}", st.i));
            }
            let c = run.minimal_polynomial();
            v.check(c.is_monic() && engine::is_characteristic(&c, s).unwrap(), || {
                format!("output {c} is not a monic characteristic polynomial")
            });
        }
    }
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::new("8", "random length-64 runs over GF(1000003) and Q keep invariants");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let big = Field::prime(1000003).unwrap();
    for (field, count) in [(big, 200), (Field::Rational, 50)] {
        for _ in 0..count {
            let terms = (0..64).map(|_| random_scalar(&mut rng, field)).collect();
            let s = Sequence::new(field, terms).unwrap();
            check_run_invariants(&mut v, &s);
        }
    }
    v.summary = "200 GF(1000003) + 50 rational sequences".into();
    v
}

fn report(v: &Verdict, elapsed: std::time::Duration) {
    let status = if v.passed() { "PASS" } else { "FAIL" };
    println!(
        "criterion {:<3} {status}  {} ({}; {:.1?})",
        v.id, v.title, v.summary, elapsed
    );
    for line in v.violations.iter().take(3) {
        println!("    {line}");
    }
    if v.violations.len() > 3 {
        println!("    ... {} violations in total", v.violations.len());
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let criteria: [&dyn Fn() -> Verdict; 9] = [
        &criterion_1,
        &|| criterion_2(&corpus),
        &|| criterion_3(&corpus),
        &|| criterion_4(&corpus),
        &|| criterion_5a(&corpus),
        &|| criterion_5b(&corpus),
        &|| criterion_6(&corpus),
        &criterion_7,
        &criterion_8,
    ];
    let mut failed = 0;
    for criterion in criteria {
        let t = Instant::now();
        let v = criterion();
        report(&v, t.elapsed());
        if !v.passed() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1?}",
        criteria.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
