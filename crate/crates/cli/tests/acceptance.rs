//! Acceptance suite. Each criterion prints one PASS/FAIL line to stderr
//! (uncaptured), and the test fails if any criterion does.
//!
//! Seeds come from `CARTMATCH_SEED` when set.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use cartmatch::multi::{MatchAutomaton, MultiMatch};
use cartmatch::signature::{signature, signature_search};
use cartmatch::single::{failure_func, search, search_counted};
use cartmatch::suffixtree::{verify_quasi_suffix, CartesianSuffixTree, EdgeLabel};
use cartmatch::testkit::{naive_failure, naive_pd, naive_search, naive_tree, seed_from_env, InstanceGenerator};
use cartmatch::{parent_distance, CartesianTree};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const PRICE_TEXT: [i64; 14] = [41, 36, 15, 8, 41, 23, 28, 16, 26, 22, 56, 29, 12, 61];
const HEAD_AND_SHOULDERS: [i64; 7] = [6, 2, 5, 1, 4, 3, 7];
const SUFFIX_TREE_TEXT: [i64; 11] = [2, 7, 5, 6, 4, 3, 11, 9, 10, 8, 1];
const ALPHABETS: [u32; 3] = [2, 5, 100];

fn fixtures() -> Outcome {
    let pd = parent_distance(&[2, 5, 4, 2, 2, 1]);
    check!(pd.as_slice() == [0, 1, 2, 3, 1, 0], "pd of (2,5,4,2,2,1) = {pd}");
    let pd = parent_distance(&[2, 7, 5, 6, 4, 3, 1]);
    check!(pd.as_slice() == [0, 1, 2, 1, 4, 5, 0], "pd of (2,7,5,6,4,3,1) = {pd}");
    let sub = pd.substring(2, 7).map_err(|e| e.to_string())?;
    check!(sub.as_slice() == [0, 0, 1, 0, 0, 0], "pd of S[2..7] = {sub}");

    let ff = failure_func(&[5, 7, 4, 6, 1, 3, 2]).map_err(|e| e.to_string())?;
    check!(ff.pi() == [0, 1, 1, 2, 3, 4, 1], "pi = {:?}", ff.pi());

    let hits = search(PRICE_TEXT, &HEAD_AND_SHOULDERS).map_err(|e| e.to_string())?;
    check!(hits == [5], "search hits {hits:?}");

    let mut sig = signature(&[2, 7, 5, 6, 4, 3, 1]);
    check!(sig.pops() == [0, 0, 1, 0, 2, 1, 2], "L = {:?}", sig.pops());
    check!(sig.distances() == [6, 1, 2, 1, 1, 1, 0], "D = {:?}", sig.distances());
    check!(sig.bits().to_string() == "0010011010110", "bits = {}", sig.bits());
    sig.delete_front().map_err(|e| e.to_string())?;
    check!(sig.pops() == [0, 1, 0, 2, 1, 1], "L' = {:?}", sig.pops());
    check!(sig.distances() == [1, 2, 1, 1, 1, 0], "D' = {:?}", sig.distances());

    let automaton =
        MatchAutomaton::new(&[vec![4, 2, 3, 1, 5], vec![3, 1, 4, 2], vec![1, 2, 3, 5, 4]]).map_err(|e| e.to_string())?;
    let q7 = automaton.find(&[0, 0, 1, 2]).ok_or("no node for PD(P2)[1..4]")?;
    let q2 = automaton.find(&[0, 0]).ok_or("no node for PD(P2)[1..2]")?;
    check!(automaton.node(q7).fail() == q2, "fail(q7) = {}", automaton.node(q7).fail());

    let tree = CartesianSuffixTree::build(&SUFFIX_TREE_TEXT);
    let a = tree.explicit_node(&[0, 1, 2, 1, 4]).ok_or("node A missing")?;
    let edge = tree.edge(a).ok_or("node A has no edge")?;
    check!(
        matches!(edge, EdgeLabel { suffix: 1 | 6, start: 3, end: 5 }),
        "edge into A = {edge:?}"
    );
    check!(tree.explicit_node(&[0, 0, 1, 0]).is_none(), "explicit node for (0,0,1,0)");
    Ok(())
}

fn oracle_equivalence(seed: u64) -> Outcome {
    const PER_ALPHABET: usize = 1000;
    for (s, &sigma) in ALPHABETS.iter().enumerate() {
        let mut gen = InstanceGenerator::new(seed ^ ((s as u64 + 1) * 0x9e37), sigma, 0, 200);
        for instance in 0..PER_ALPHABET {
            let text = gen.string();
            let m = gen.len_between(1, 12);
            let pattern = if text.len() >= m && gen.coin() {
                gen.window_of(&text, m)
            } else {
                gen.string_of_len(m)
            };
            let ctx = || format!("sigma={sigma} instance={instance} T={text:?} P={pattern:?}");

            let expected = naive_search(&text, &pattern);
            let kmp = search(text.iter().copied(), &pattern).map_err(|e| e.to_string())?;
            check!(kmp == expected, "search != naive_search: {}", ctx());

            let pi = failure_func(&pattern).map_err(|e| e.to_string())?;
            check!(pi.pi() == naive_failure(&pattern), "failure_func != naive_failure: {}", ctx());

            check!(
                parent_distance(&text).as_slice() == naive_pd(&text),
                "parent_distance != naive_pd: {}",
                ctx()
            );

            let by_sig = signature_search(text.iter().copied(), &pattern).map_err(|e| e.to_string())?;
            check!(by_sig == kmp, "signature_search != search: {}", ctx());

            if !text.is_empty() {
                let tree = CartesianSuffixTree::build(&text);
                let by_index = tree.query(&pattern).map_err(|e| e.to_string())?;
                check!(by_index == kmp, "suffix tree query != search: {}", ctx());
            }

            let k = gen.len_between(1, 8);
            let mut patterns = vec![pattern.clone()];
            while patterns.len() < k {
                let m = gen.len_between(1, 12);
                patterns.push(if text.len() >= m && gen.coin() {
                    gen.window_of(&text, m)
                } else {
                    gen.string_of_len(m)
                });
            }
            let automaton = MatchAutomaton::new(&patterns).map_err(|e| e.to_string())?;
            let got = automaton.search(text.iter().copied());
            let mut union = Vec::new();
            for (j, p) in patterns.iter().enumerate() {
                for position in search(text.iter().copied(), p).map_err(|e| e.to_string())? {
                    union.push(MultiMatch { position, pattern: j + 1 });
                }
            }
            union.sort_unstable();
            check!(got == union, "multi_search != per-pattern union: {} patterns={patterns:?}", ctx());
        }
    }
    Ok(())
}

fn bijection(seed: u64) -> Outcome {
    let mut equal_pairs = 0;
    let mut total = 0;
    for (s, &sigma) in [2u32, 3, 5, 100].iter().enumerate() {
        let mut gen = InstanceGenerator::new(seed.wrapping_add(77 + s as u64), sigma, 0, 12);
        for _ in 0..1000 {
            let n = gen.len_between(0, if sigma <= 3 { 7 } else { 12 });
            let a = gen.string_of_len(n);
            let b = gen.string_of_len(n);
            let same_pd = parent_distance(&a) == parent_distance(&b);
            let same_tree = naive_tree(&a) == naive_tree(&b);
            let same_array_tree = CartesianTree::build(&a) == CartesianTree::build(&b);
            check!(
                same_pd == same_tree && same_tree == same_array_tree,
                "PD equality {same_pd}, tree equality {same_tree}/{same_array_tree} for {a:?} vs {b:?}"
            );
            equal_pairs += same_pd as usize;
            total += 1;

            for s in [&a, &b] {
                let rebuilt = CartesianTree::from_parent_distance(&parent_distance(s)).map_err(|e| e.to_string())?;
                check!(rebuilt == CartesianTree::build(s), "round trip failed for {s:?}");
            }
        }
    }
    check!(
        equal_pairs * 20 >= total,
        "only {equal_pairs} of {total} pairs had equal trees; the positive side is barely exercised"
    );
    Ok(())
}

fn complexity(seed: u64) -> Outcome {
    let mut gen = InstanceGenerator::new(seed.wrapping_add(4), 100, 0, 0);
    let half = gen.string_of_len(500_000);
    let full = {
        let mut t = half.clone();
        t.extend(gen.string_of_len(500_000));
        t
    };
    for sigma in [2u32, 100] {
        let mut pgen = InstanceGenerator::new(seed.wrapping_add(sigma as u64), sigma, 0, 0);
        let text: Vec<i64> = if sigma == 100 { full.clone() } else { pgen.string_of_len(1_000_000) };
        for m in [1usize, 5, 20] {
            let pattern = pgen.string_of_len(m);
            let (_, c) = search_counted(text.iter().copied(), &pattern).map_err(|e| e.to_string())?;
            let n = text.len() as u64;
            check!(c.pushes == n, "pushes {} != n {n} (sigma={sigma}, m={m})", c.pushes);
            check!(c.pops() <= n, "pops {} > n (sigma={sigma}, m={m})", c.pops());
            check!(c.failure_links <= n, "failure links {} > n (sigma={sigma}, m={m})", c.failure_links);
            check!(c.max_deque <= m, "deque reached {} > m={m} (sigma={sigma})", c.max_deque);
        }
    }

    let pattern = gen.string_of_len(20);
    let (_, small) = search_counted(half.iter().copied(), &pattern).map_err(|e| e.to_string())?;
    let (_, large) = search_counted(full.iter().copied(), &pattern).map_err(|e| e.to_string())?;
    let ratio = large.comparisons as f64 / small.comparisons as f64;
    check!(
        (1.5..=2.5).contains(&ratio),
        "comparison ratio {ratio:.3} ({} -> {}) outside [1.5, 2.5]",
        small.comparisons,
        large.comparisons
    );
    Ok(())
}

fn quasi_suffix(seed: u64) -> Outcome {
    let mut gen = InstanceGenerator::new(seed.wrapping_add(5), 3, 0, 0);
    for i in 0..200 {
        let sigma = ALPHABETS[i % ALPHABETS.len()];
        let mut g = InstanceGenerator::new(seed.wrapping_add(500 + i as u64), sigma, 1, 80);
        let text = if gen.coin() { g.string() } else { gen.string_of_len(g.len_between(1, 80)) };
        check!(verify_quasi_suffix(&text), "quasi-suffix properties fail for {text:?}");
    }
    Ok(())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cartmatch"))
}

fn persistence(seed: u64) -> Outcome {
    for i in 0..100 {
        let sigma = ALPHABETS[i % ALPHABETS.len()];
        let mut gen = InstanceGenerator::new(seed.wrapping_add(900 + i as u64), sigma, 1, 150);
        let text = gen.string();
        let tree = CartesianSuffixTree::build(&text);
        let loaded = CartesianSuffixTree::from_bytes(&tree.to_bytes()).map_err(|e| format!("text {i}: {e}"))?;
        for _ in 0..10 {
            let m = gen.len_between(1, text.len().min(12));
            let p = if gen.coin() { gen.window_of(&text, m) } else { gen.string_of_len(m) };
            let a = tree.query(&p).map_err(|e| e.to_string())?;
            let b = loaded.query(&p).map_err(|e| e.to_string())?;
            check!(a == b, "loaded index answers {b:?}, in-memory {a:?} for T={text:?} P={p:?}");
        }
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let text_path = dir.path().join("text.txt");
    let pattern_path = dir.path().join("pattern.txt");
    let index_path = dir.path().join("text.cst");
    let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    std::fs::write(&text_path, join(&SUFFIX_TREE_TEXT)).map_err(|e| e.to_string())?;
    std::fs::write(&pattern_path, "1 3 2 3 1").map_err(|e| e.to_string())?;
    let status = bin()
        .args(["index", "build"])
        .arg(&text_path)
        .arg(&index_path)
        .status()
        .map_err(|e| e.to_string())?;
    check!(status.success(), "index build failed: {status}");
    let good = std::fs::read(&index_path).map_err(|e| e.to_string())?;

    let query = |bytes: &[u8]| -> Result<(i32, String), String> {
        std::fs::write(&index_path, bytes).map_err(|e| e.to_string())?;
        let out = bin()
            .args(["index", "query"])
            .arg(&index_path)
            .arg(&pattern_path)
            .output()
            .map_err(|e| e.to_string())?;
        Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
    };
    let (code, stdout) = query(&good)?;
    check!(code == 0 && stdout == "1\n6\n", "intact index: exit {code}, output {stdout:?}");

    let header = 16 + 8 * SUFFIX_TREE_TEXT.len();
    let record = 28;
    let mut damaged: Vec<(String, Vec<u8>)> = Vec::new();
    for cut in [good.len() / 2, good.len() - 1, header + 3, 7] {
        damaged.push((format!("truncated to {cut} bytes"), good[..cut].to_vec()));
    }
    let mut leaf_records = 0;
    for k in 0..(good.len() - header) / record {
        let at = header + k * record;
        let count = u32::from_le_bytes(good[at..at + 4].try_into().unwrap());
        let mut bad = good.clone();
        if count == 0 {
            leaf_records += 1;
            bad[at] = 1;
            damaged.push((format!("leaf record {k} given a child"), bad));
        } else {
            bad[at] ^= 1;
            damaged.push((format!("child count of record {k} flipped"), bad));
        }
    }
    check!(leaf_records == SUFFIX_TREE_TEXT.len() + 1, "expected {} leaf records", SUFFIX_TREE_TEXT.len() + 1);
    for (what, bytes) in damaged {
        let (code, _) = query(&bytes)?;
        check!(code == 3, "{what}: exit code {code}, expected 3");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let seed = seed_from_env(20190527);
    let criteria: [Criterion; 6] = [
        ("1 reference fixtures", Duration::from_secs(1), Box::new(fixtures)),
        ("2 oracle equivalence", Duration::from_secs(60), Box::new(move || oracle_equivalence(seed))),
        ("3 tree/parent-distance bijection", Duration::from_secs(60), Box::new(move || bijection(seed))),
        ("4 complexity counters", Duration::from_secs(30), Box::new(move || complexity(seed))),
        ("5 quasi-suffix properties", Duration::from_secs(60), Box::new(move || quasi_suffix(seed))),
        ("6 index persistence", Duration::from_secs(60), Box::new(move || persistence(seed))),
    ];
    let mut stderr = std::io::stderr();
    let mut failed = Vec::new();
    for (name, limit, criterion) in criteria {
        let start = Instant::now();
        let mut outcome = criterion();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > limit {
            outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        let line = match &outcome {
            Ok(()) => format!("PASS  {name} ({elapsed:.2?})"),
            Err(msg) => format!("FAIL  {name} ({elapsed:.2?}): {msg}"),
        };
        let _ = writeln!(stderr, "acceptance: {line}");
        if outcome.is_err() {
            failed.push(line);
        }
    }
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
