//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so each criterion prints a
//! single PASS/FAIL line with a short summary; the process fails if any
//! criterion fails.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rado::distrib::{
    block_sum_counts, for_each_sorted_tuple, is_t_distributable, is_t_distributable_bruteforce, sdc,
    sdc_bruteforce, SdcQuery,
};
use rado::search::{export_cnf, parse_dimacs, rado_search, SearchConfig, SearchOutcome};
use rado::sweep::{
    multisets_with_sum, oracle_cap, run_oracle, run_sweep, summarise, ConstantRange, OracleResult, SweepSpec,
};
use rado::theorems::{rado_by_theorems, OutcomeKind};
use rado::transform::{complement_pair, shift_colouring_down, shift_down};
use rado::witness::WitnessKind;
use rado::{is_valid_colouring, Colouring, Equation};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed_search(eq: &Equation, r: usize, cap: u64) -> Result<(u64, Duration), String> {
    let start = Instant::now();
    match rado_search(eq, &SearchConfig::new(cap).colours(r)).map_err(|e| e.to_string())? {
        SearchOutcome::Found { n, .. } => Ok((n, start.elapsed())),
        other => Err(format!("{eq} with {r} colours: {other:?}")),
    }
}

fn schur_values() -> Check {
    let schur = Equation::new(vec![1, 1], 0).unwrap();
    let (s2, t2) = timed_search(&schur, 2, 20)?;
    ensure(s2 == 5 && t2 < Duration::from_secs(1), || format!("s(2) = {s2} in {t2:?}"))?;
    let (s3, t3) = timed_search(&schur, 3, 30)?;
    ensure(s3 == 14 && t3 < Duration::from_secs(60), || format!("s(3) = {s3} in {t3:?}"))?;
    let mut sizes = Vec::new();
    for n in [44, 45] {
        let cnf = export_cnf(&schur, n, 4).map_err(|e| e.to_string())?;
        let parsed = parse_dimacs(&cnf.to_dimacs()).map_err(|e| e.to_string())?;
        ensure(parsed == cnf && cnf.num_vars == 4 * n as usize, || format!("CNF for N = {n} does not round-trip"))?;
        sizes.push(format!("N={n}: {} vars/{} clauses", cnf.num_vars, cnf.clauses.len()));
    }
    Ok(format!("s(2)=5 in {t2:?}, s(3)=14 in {t3:?}; r=4 CNF {}", sizes.join(", ")))
}

fn beutelspacher_brestovansky() -> Check {
    let start = Instant::now();
    let mut got = Vec::new();
    for m in 3u64..=5 {
        let eq = Equation::new(vec![1; m as usize - 1], 0).unwrap();
        let want = m * m - m - 1;
        let theory = rado_by_theorems(&eq).map_err(|e| e.to_string())?.kind;
        let (oracle, _) = timed_search(&eq, 2, 2 * want)?;
        ensure(theory == OutcomeKind::Exact(want) && oracle == want, || {
            format!("m = {m}: theory {theory}, search {oracle}, expected {want}")
        })?;
        got.push(want.to_string());
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), || format!("took {took:?}"))?;
    Ok(format!("m=3,4,5 -> {} (theory and search) in {took:?}", got.join(", ")))
}

fn full_sweep() -> Result<(String, Vec<rado::sweep::SweepRow>), String> {
    let start = Instant::now();
    let spec = SweepSpec::new(7, 4, ConstantRange::Scaled);
    let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
    let s = summarise(&rows);
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.agree)
        .take(5)
        .map(|r| format!("{}: {}", r.equation(), r.problems.join("; ")))
        .collect();
    ensure(s.disagree == 0 && s.unknown == 0, || format!("{} disagreements, {} unknown: {}", s.disagree, s.unknown, bad.join(" | ")))?;
    let dne = rows.iter().filter(|r| r.theory.kind == OutcomeKind::DoesNotExist).count();
    let bounded = rows.iter().filter(|r| matches!(r.theory.kind, OutcomeKind::Bounds { .. })).count();
    let msg = format!(
        "{} rows (S<=7, coeffs<=4): {} exact, {} bounds, {} does-not-exist, 0 discrepancies in {:?}",
        s.rows,
        s.exact,
        bounded,
        dne,
        start.elapsed()
    );
    Ok((msg, rows))
}

fn distributability_equivalence() -> Check {
    let mut checked = 0;
    for s in 1..=12u32 {
        for a in multisets_with_sum(s, s) {
            let a: Vec<u64> = a.into_iter().map(u64::from).collect();
            for t in 1..=4 {
                let closed = is_t_distributable(&a, t).holds;
                let brute = is_t_distributable_bruteforce(&a, t).map_err(|e| e.to_string())?;
                ensure(closed == brute, || format!("{a:?}, t = {t}: prefix test {closed}, brute force {brute}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (multiset, t) pairs with sum <= 12, t <= 4 agree"))
}

fn multisets_bounded(max_len: usize, max_value: u64) -> Vec<Vec<u64>> {
    fn go(len: usize, min: u64, max: u64, buf: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(buf.clone());
        if len == 0 {
            return;
        }
        for v in min..=max {
            buf.push(v);
            go(len - 1, v, max, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    go(max_len, 1, max_value, &mut Vec::new(), &mut out);
    out
}

fn sdc_recurrence() -> Check {
    let mut compared = 0usize;
    for a in multisets_bounded(8, 4) {
        let total: u64 = a.iter().sum();
        for t in 1..=3 {
            let counts = block_sum_counts(&a, t).map_err(|e| e.to_string())?;
            let mut failure = None;
            for_each_sorted_tuple(total, t, &mut |sorted| {
                if failure.is_some() {
                    return;
                }
                let q = SdcQuery::new(a.clone(), sorted.to_vec()).unwrap();
                let want = counts.get(sorted).copied().unwrap_or(0);
                match sdc(&q) {
                    Ok(v) if v == want => compared += 1,
                    other => failure = Some(format!("{a:?} into {sorted:?}: {other:?} vs {want}")),
                }
            });
            if let Some(f) = failure {
                return Err(f);
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5dc);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=10);
        let a: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
        let t = rng.gen_range(1..=4);
        let total: u64 = a.iter().sum();
        let mut targets = vec![0u64; t];
        for _ in 0..total {
            targets[rng.gen_range(0..t)] += 1;
        }
        let q = SdcQuery::new(a.clone(), targets.clone()).unwrap();
        let (&last, rest) = a.split_last().unwrap();
        let mut sum = 0u128;
        for j in 0..t {
            if targets[j] >= last {
                let mut next = targets.clone();
                next[j] -= last;
                sum += sdc(&SdcQuery::new(rest.to_vec(), next).unwrap()).map_err(|e| e.to_string())?;
            }
        }
        let direct = sdc(&q).map_err(|e| e.to_string())?;
        ensure(direct == sum, || format!("peeling identity fails for {a:?} into {targets:?}"))?;
        if k <= 8 {
            let brute = sdc_bruteforce(&q).map_err(|e| e.to_string())?;
            ensure(direct == brute, || format!("{a:?} into {targets:?}: {direct} vs {brute}"))?;
        }
    }
    Ok(format!("{compared} sorted target tuples match enumeration (k<=8, a<=4, t<=3); peeling identity holds on 1000 random queries"))
}

fn witness_soundness(rows: &[rado::sweep::SweepRow]) -> Check {
    use std::collections::BTreeMap;
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    let mut exact = 0;
    for row in rows {
        let eq = row.equation();
        for w in rado::witness::applicable_witnesses(eq, rado::sweep::RESIDUE_CHECK_LEN) {
            let ok = w.check().map_err(|e| e.to_string())?;
            ensure(ok, || format!("{} witness {} invalid for {eq}", w.kind, w.colouring))?;
            *kinds.entry(w.kind.tag()).or_default() += 1;
        }
        if let OutcomeKind::Exact(n) = row.theory.kind {
            let (oracle, col) = run_oracle(eq, &SearchConfig::new(n)).map_err(|e| e.to_string())?;
            ensure(oracle == OracleResult::Exact(n), || format!("{eq}: search gives {oracle}, theory {n}"))?;
            if n > 1 {
                let col = col.ok_or_else(|| format!("{eq}: no witness for {n}"))?;
                let ok = col.len() as u64 == n - 1 && is_valid_colouring(eq, &col).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{eq}: witness {col} does not certify {n}"))?;
            }
            exact += 1;
        }
    }
    for kind in [WitnessKind::ThreeBlock, WitnessKind::TwoBlock, WitnessKind::SingleBlock, WitnessKind::Residue, WitnessKind::TwoPoint] {
        ensure(kinds.get(kind.tag()).copied().unwrap_or(0) > 0, || format!("no {kind} witness exercised"))?;
    }
    let counts: Vec<String> = kinds.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Ok(format!("all witnesses valid ({}); {exact} exact rows certified at n-1 and refuted at n", counts.join(", ")))
}

fn reduction_inequality() -> Check {
    let mut triples = 0;
    for s in 1..=5u32 {
        for a in multisets_with_sum(s, s) {
            let sigma = s as i64 - 1;
            let s = s as i64;
            for base in -2 * s..=s * (s - 1) + 2 * s {
                if (base * s) % 2 != 0 {
                    continue;
                }
                let eq = Equation::new(a.clone(), base).unwrap();
                let cap = oracle_cap(&rado_by_theorems(&eq).map_err(|e| e.to_string())?.kind);
                let (OracleResult::Exact(rad), _) = run_oracle(&eq, &SearchConfig::new(cap)).map_err(|e| e.to_string())? else {
                    continue;
                };
                for lambda in 2..=3i64 {
                    let target = Equation::new(a.clone(), lambda * (base - sigma) + sigma).unwrap();
                    let bound = 1 + lambda as u64 * (rad - 1);
                    let (got, _) = run_oracle(&target, &SearchConfig::new(bound)).map_err(|e| e.to_string())?;
                    ensure(matches!(got, OracleResult::Exact(v) if v <= bound), || {
                        format!("{target}: search {got}, bound {bound} from {eq} = {rad}")
                    })?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} (equation, lambda) pairs with S<=5, lambda in {{2,3}} satisfy the bound"))
}

fn transform_round_trips() -> Check {
    let mut rng = StdRng::seed_from_u64(0x7a5);
    let mut valid = 0;
    for _ in 0..10_000 {
        let k = rng.gen_range(1..=4);
        let a: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let eq = Equation::new(a, rng.gen_range(-8..=16)).unwrap();
        let lo = rng.gen_range(1..=4);
        let len = rng.gen_range(1..=16);
        let bits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
        let col = Colouring::new(lo, &bits, 2).unwrap();
        let v = is_valid_colouring(&eq, &col).map_err(|e| e.to_string())?;

        let down = shift_colouring_down(&col);
        ensure(down.translated(1) == col, || format!("shift round trip fails on {col}"))?;
        let v_down = is_valid_colouring(&shift_down(&eq), &down).map_err(|e| e.to_string())?;

        let (meq, mcol) = complement_pair(&eq, &col).map_err(|e| e.to_string())?;
        let v_mirror = is_valid_colouring(&meq, &mcol).map_err(|e| e.to_string())?;
        let (beq, bcol) = complement_pair(&meq, &mcol).map_err(|e| e.to_string())?;
        ensure(beq == eq && bcol == col, || format!("reflection round trip fails on {col}"))?;
        ensure(v == v_down && v == v_mirror, || format!("{eq} on {col}: validity {v}, shifted {v_down}, mirrored {v_mirror}"))?;
        valid += v as usize;
    }
    Ok(format!("10000 random colourings round-trip ({valid} valid, {} invalid)", 10_000 - valid))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, result: Check| {
        match result {
            Ok(msg) => println!("criterion {n} PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} FAIL  {name}: {msg}");
            }
        }
    };
    report(1, "Schur values", schur_values());
    report(2, "Beutelspacher-Brestovansky", beutelspacher_brestovansky());
    let sweep = full_sweep();
    let rows = sweep.as_ref().map(|(_, rows)| rows.clone()).unwrap_or_default();
    report(3, "full sweep", sweep.map(|(msg, _)| msg));
    report(4, "distributability equivalence", distributability_equivalence());
    report(5, "set distribution coefficients", sdc_recurrence());
    report(6, "witness soundness", if rows.is_empty() { Err("sweep did not run".into()) } else { witness_soundness(&rows) });
    report(7, "reduction inequality", reduction_inequality());
    report(8, "transform round trips", transform_round_trips());
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
