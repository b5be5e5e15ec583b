//! End-to-end acceptance checks.  Each criterion prints one PASS/FAIL line;
//! the test fails if any of them is red.
//!
//! The symmetric-group families are checked against a brute-force oracle
//! written here, independent of the library's action builders.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use qsrlab_core::harness::{self, Record, Report, RunConfig, Status};
use serde_json::Value;

struct Outcome {
    id: u32,
    name: &'static str,
    ok: bool,
    detail: String,
}

fn s<'a>(r: &'a Record, f: &str) -> &'a str {
    r.get(f).and_then(Value::as_str).unwrap_or("")
}

fn u(r: &Record, f: &str) -> u64 {
    match r.get(f) {
        Some(Value::String(x)) => x.parse().unwrap_or(u64::MAX),
        Some(v) => v.as_u64().unwrap_or(u64::MAX),
        None => u64::MAX,
    }
}

fn b(r: &Record, f: &str) -> bool {
    r.get(f).and_then(Value::as_bool).unwrap_or(false)
}

fn of_kind<'a>(rep: &'a Report, kind: &str) -> Vec<&'a Record> {
    rep.records.iter().filter(|r| r.kind == kind).collect()
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

// ---- brute-force oracle ----------------------------------------------

/// A permutation of `0..n` with `c` cycles of length `p` and the rest fixed,
/// fixed points first.
fn rep_of_type(n: usize, p: usize, c: usize) -> Vec<usize> {
    let mut img: Vec<usize> = (0..n).collect();
    let start = n - c * p;
    for j in 0..c {
        let base = start + j * p;
        for i in 0..p {
            img[base + i] = base + (i + 1) % p;
        }
    }
    img
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rest: Vec<usize>, k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = rest[0];
        for others in subsets(rest.len() - 1, k - 1) {
            let mut block = vec![first];
            block.extend(others.iter().map(|&i| rest[i + 1]));
            let remaining: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|x| !block.contains(x))
                .collect();
            cur.push(block);
            go(remaining, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go((0..n).collect(), k, &mut Vec::new(), &mut out);
    out
}

fn fixes_set(g: &[usize], set: &[usize]) -> bool {
    let mut img: Vec<usize> = set.iter().map(|&x| g[x]).collect();
    img.sort_unstable();
    img == set
}

/// Blocks may be permuted among themselves.
fn fixes_partition(g: &[usize], pt: &[Vec<usize>]) -> bool {
    pt.iter().all(|bl| {
        let mut img: Vec<usize> = bl.iter().map(|&x| g[x]).collect();
        img.sort_unstable();
        pt.contains(&img)
    })
}

fn type_string(n: usize, p: usize, c: usize) -> String {
    let f = n - c * p;
    if f == 0 {
        format!("{p}^{c}")
    } else {
        format!("1^{f} {p}^{c}")
    }
}

/// Primes and cycle types of prime-order elements with exactly one fixed
/// point, i.e. quasi-semiregular ones.  `alt` restricts to even types.
fn oracle(n: usize, k: usize, on_partitions: bool, alt: bool) -> (Vec<usize>, Vec<String>) {
    let sets = if on_partitions {
        Vec::new()
    } else {
        subsets(n, k)
    };
    let parts = if on_partitions {
        partitions(n, k)
    } else {
        Vec::new()
    };
    let mut primes = Vec::new();
    let mut types = BTreeSet::new();
    for p in (2..=n).filter(|&p| is_prime(p)) {
        let mut found = false;
        for c in 1..=n / p {
            if alt && p == 2 && c % 2 == 1 {
                continue;
            }
            let g = rep_of_type(n, p, c);
            let fixed = if on_partitions {
                parts.iter().filter(|pt| fixes_partition(&g, pt)).count()
            } else {
                sets.iter().filter(|st| fixes_set(&g, st)).count()
            };
            if fixed == 1 {
                found = true;
                types.insert(type_string(n, p, c));
            }
        }
        if found {
            primes.push(p);
        }
    }
    (primes, types.into_iter().collect())
}

fn primes_field(r: &Record, f: &str) -> Vec<usize> {
    s(r, f)
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect()
}

fn types_field(r: &Record) -> Vec<String> {
    s(r, "computed_types")
        .split(", ")
        .filter(|x| !x.is_empty())
        .map(str::to_string)
        .collect()
}

/// (n, k, alt) from a ksubsets or partitions record.
fn params(r: &Record) -> (usize, usize, bool) {
    let group = s(r, "group");
    let alt = group.starts_with("Alt");
    let n: usize = group[4..group.len() - 1].parse().unwrap();
    let action = s(r, "action");
    let k = if let Some(rest) = action.strip_prefix("partitions into ") {
        rest.split('x').nth(1).unwrap().parse().unwrap()
    } else {
        action.split('-').next().unwrap().parse().unwrap()
    };
    (n, k, alt)
}

// ---- criteria ----------------------------------------------------------

fn ksubsets(tables: &Report, elapsed: Duration) -> Outcome {
    let rows: Vec<_> = of_kind(tables, "ksubsets");
    let mut checked = 0;
    let mut mismatches = 0;
    for r in &rows {
        let (n, k, alt) = params(r);
        if alt {
            continue;
        }
        checked += 1;
        let computed = primes_field(r, "computed");
        let rule: Vec<usize> = (2..=n)
            .filter(|&p| is_prime(p) && k < p && (n - k) % p == 0)
            .collect();
        let (brute, types) = oracle(n, k, false, false);
        if computed != rule
            || computed != brute
            || types_field(r) != types
            || r.status != Status::Pass
        {
            mismatches += 1;
        }
    }
    let expected: usize = (5..=13).map(|n| (1..n).filter(|k| 2 * k < n).count()).sum();
    Outcome {
        id: 1,
        name: "Sym(n) on k-subsets, 5 <= n <= 13",
        ok: mismatches == 0 && checked == expected && elapsed < Duration::from_secs(300),
        detail: format!(
            "{checked} actions, {mismatches} mismatches, table run {:.1}s",
            elapsed.as_secs_f64()
        ),
    }
}

fn partition_rows(tables: &Report) -> Outcome {
    let mut checked = 0;
    let mut mismatches = 0;
    let mut first = String::new();
    for r in of_kind(tables, "partitions") {
        let (n, k, alt) = params(r);
        checked += 1;
        // closed form: p = k odd, m = n/k with 2 <= m <= p; type p^m only when m < p
        let m = n / k;
        let rule_primes: Vec<usize> = if is_prime(k) && k % 2 == 1 && (2..=k).contains(&m) {
            vec![k]
        } else {
            vec![]
        };
        let mut rule_types = Vec::new();
        if !rule_primes.is_empty() {
            rule_types.push(type_string(n, k, m - 1));
            if m < k {
                rule_types.push(type_string(n, k, m));
            }
        }
        rule_types.sort();
        let (brute, types) = oracle(n, k, true, alt);
        let computed = primes_field(r, "computed");
        if computed != rule_primes
            || computed != brute
            || types_field(r) != rule_types
            || types != rule_types
        {
            mismatches += 1;
            if first.is_empty() {
                first = format!(
                    "; first: n={n} k={k} alt={alt} computed {computed:?} {:?}, rule {rule_primes:?} {rule_types:?}, brute {brute:?} {types:?}",
                    types_field(r)
                );
            }
        }
    }
    Outcome {
        id: 2,
        name: "Sym(n), Alt(n) on uniform partitions, 6 <= n <= 12",
        ok: mismatches == 0 && checked > 0,
        detail: format!("{checked} actions, {mismatches} mismatches{first}"),
    }
}

fn alt_natural(tables: &Report) -> Outcome {
    let rows = of_kind(tables, "alt-natural");
    let mut mismatches = 0;
    let mut ns = BTreeSet::new();
    for r in &rows {
        let n = u(r, "degree") as usize;
        ns.insert(n);
        // an involution with one fixed point has (n-1)/2 transpositions
        let brute = n % 2 == 1 && ((n - 1) / 2).is_multiple_of(2);
        if b(r, "computed") != (n % 4 == 1) || brute != b(r, "computed") {
            mismatches += 1;
        }
    }
    Outcome {
        id: 3,
        name: "Alt(n) natural action, involutions, n <= 13",
        ok: mismatches == 0 && (5..=13).all(|n| ns.contains(&n)),
        detail: format!("{} degrees, {mismatches} mismatches", rows.len()),
    }
}

fn a6_socle(tables: &Report) -> Outcome {
    let rows = of_kind(tables, "a6-socle");
    let want = [(10, "3"), (36, "5")];
    let ok = want.iter().all(|&(d, p)| {
        rows.iter()
            .any(|r| u(r, "degree") == d && s(r, "computed") == p && r.status == Status::Pass)
    }) && rows.len() == 2;
    Outcome {
        id: 4,
        name: "Alt(6)-socle group on 10 and 36 points",
        ok,
        detail: rows
            .iter()
            .map(|r| format!("degree {} -> {}", u(r, "degree"), s(r, "computed")))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

/// Published qsr classes per maximal subgroup, rows with none omitted.
const SPORADIC_ROWS: &[(&str, &[(&str, &str)])] = &[
    (
        "M11",
        &[
            ("A6.2_3", "5a"),
            ("L2(11)", "11a 11b"),
            ("3^2:Q8.2", "3a"),
            ("A5.2", "5a"),
        ],
    ),
    (
        "M12",
        &[
            ("M11", "11a 11b"),
            ("M11'", "11a 11b"),
            ("A6.2^2", "5a"),
            ("A6.2^2'", "5a"),
            ("L2(11)", "11a 11b"),
            ("2xS5", "5a"),
        ],
    ),
    (
        "M22",
        &[
            ("L3(4)", "7a 7b"),
            ("A7", "5a 7a 7b"),
            ("A7'", "5a 7a 7b"),
            ("2^4:S5", "5a"),
            ("2^3:L3(2)", "7a 7b"),
            ("A6.2_3", "5a"),
            ("L2(11)", "11a 11b"),
        ],
    ),
    (
        "M23",
        &[
            ("M22", "11a 11b"),
            ("L3(4).2_2", "7a 7b"),
            ("2^4:A7", "7a 7b"),
            ("A8", "5a"),
            ("M11", "11a 11b"),
            ("2^4:(3xA5):2", "5a"),
            ("23:11", "23a 23b"),
        ],
    ),
];

fn sporadic_rows(reports: &[(&str, Report)], elapsed: Duration) -> Outcome {
    let mut mismatches = Vec::new();
    let mut rows = 0;
    for (group, expected) in SPORADIC_ROWS {
        let rep = &reports.iter().find(|(g, _)| g == group).unwrap().1;
        let recs = of_kind(rep, "sporadic");
        let with_qsr: Vec<_> = recs.iter().filter(|r| s(r, "qsr_classes") != "-").collect();
        if with_qsr.len() != expected.len() {
            mismatches.push(format!("{group}: {} rows", with_qsr.len()));
        }
        for (sub, classes) in *expected {
            rows += 1;
            match recs.iter().find(|r| s(r, "subgroup") == *sub) {
                Some(r) if s(r, "qsr_classes") == *classes && b(r, "certified") => {}
                _ => mismatches.push(format!("{group} {sub}")),
            }
        }
        if recs.iter().any(|r| r.status == Status::Fail) {
            mismatches.push(format!("{group}: failing row"));
        }
    }
    Outcome {
        id: 5,
        name: "Mathieu groups M11, M12, M22, M23: qsr classes per maximal subgroup",
        ok: mismatches.is_empty() && elapsed < Duration::from_secs(900),
        detail: format!(
            "{rows} rows, mismatches [{}], {:.1}s",
            mismatches.join("; "),
            elapsed.as_secs_f64()
        ),
    }
}

fn checks<'a>(reports: &'a [(&str, Report)]) -> Vec<&'a Record> {
    reports
        .iter()
        .filter(|(g, _)| ["M11", "M12", "M22", "M23"].contains(g))
        .flat_map(|(_, r)| of_kind(r, "sporadic-checks"))
        .collect()
}

fn routes(reports: &[(&str, Report)]) -> Outcome {
    let c = checks(reports);
    let pairs: u64 = c.iter().map(|r| u(r, "prime_pairs")).sum();
    let bad: u64 = c.iter().map(|r| u(r, "route_disagreements")).sum();
    Outcome {
        id: 6,
        name: "three qsr tests agree on prime-order classes",
        ok: c.len() == 4 && pairs > 0 && bad == 0,
        detail: format!("{pairs} (subgroup, class) pairs, {bad} disagreements"),
    }
}

fn counting(reports: &[(&str, Report)], verify: &Report) -> Outcome {
    let c = checks(reports);
    let classes: u64 = c.iter().map(|r| u(r, "classes")).sum();
    let count_bad: u64 = c.iter().map(|r| u(r, "count_mismatches")).sum();
    let manning: u64 = c.iter().map(|r| u(r, "manning_checked")).sum();
    let manning_bad: u64 = c.iter().map(|r| u(r, "manning_mismatches")).sum();
    let suite: Vec<_> = verify
        .records
        .iter()
        .filter(|r| s(r, "suite") == "counting")
        .collect();
    let suite_ok = !suite.is_empty() && suite.iter().all(|r| r.status == Status::Pass);
    Outcome {
        id: 7,
        name: "fixed-point formula and Manning's count match realized counts",
        ok: c.len() == 4 && count_bad == 0 && manning > 0 && manning_bad == 0 && suite_ok,
        detail: format!(
            "{classes} classes, {count_bad} formula mismatches, {manning} Manning checks, {manning_bad} mismatches, {} extra cases",
            suite.len()
        ),
    }
}

fn product(structural: &Report) -> Outcome {
    let rows = of_kind(structural, "product-action");
    let special = of_kind(structural, "product-element");
    let shapes: BTreeSet<(u64, u64)> = rows.iter().map(|r| (u(r, "k"), u(r, "l"))).collect();
    let want: BTreeSet<(u64, u64)> = [(3, 2), (4, 2), (5, 2), (3, 3)].into_iter().collect();
    let rows_ok = rows.iter().all(|r| {
        u(r, "qsr_elements") > 0 && u(r, "outside_base") == 0 && u(r, "bad_components") == 0
    });
    let special_ok = special.len() == 1
        && b(special[0], "qsr")
        && !b(special[0], "in_base")
        && u(special[0], "order") == 4;
    Outcome {
        id: 8,
        name: "wreath products in product action",
        ok: shapes == want && rows_ok && special_ok,
        detail: rows
            .iter()
            .map(|r| {
                format!(
                    "({},{}): {} qsr",
                    u(r, "k"),
                    u(r, "l"),
                    u(r, "qsr_elements")
                )
            })
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn diagonal(structural: &Report) -> Outcome {
    let rows = of_kind(structural, "diagonal-count");
    let orders = [("Alt(5)", 60u64), ("PSL(2,7)", 168)];
    let mut bad = 0;
    for r in &rows {
        let order = orders
            .iter()
            .find(|(g, _)| *g == s(r, "group"))
            .map(|x| x.1)
            .unwrap();
        let k = u(r, "k");
        if (u(r, "solutions") == 1) != (order % k != 0) {
            bad += 1;
        }
    }
    let groups: BTreeSet<&str> = rows.iter().map(|r| s(r, "group")).collect();
    Outcome {
        id: 9,
        name: "diagonal fixed-coset count for Alt(5) and PSL(2,7), k <= 13",
        ok: bad == 0 && groups.len() == 2 && rows.len() == 12,
        detail: format!("{} primes, {bad} mismatches", rows.len()),
    }
}

fn holomorph(structural: &Report) -> Outcome {
    let rows = of_kind(structural, "holomorph");
    let flags: BTreeSet<(bool, bool)> =
        rows.iter().map(|r| (b(r, "swap"), b(r, "outer"))).collect();
    let ok = flags.len() == 4
        && rows
            .iter()
            .all(|r| u(r, "degree") == 60 && u(r, "prime_order_qsr") == 0);
    Outcome {
        id: 10,
        name: "holomorph-type group with socle Alt(5)^2 on 60 points",
        ok,
        detail: format!("{} flag settings", flags.len()),
    }
}

fn affine(report: &Report) -> Outcome {
    let rows = of_kind(report, "affine");
    let doubly: Vec<_> = rows
        .iter()
        .filter(|r| b(r, "two_transitive") && u(r, "degree") <= 841)
        .collect();
    let with = doubly.iter().filter(|r| s(r, "qsr_primes") != "-").count();
    let negative = rows.iter().find(|r| s(r, "group") == "3^3:Alt(4)");
    let neg_ok = negative.is_some_and(|r| {
        u(r, "degree") == 27 && s(r, "qsr_primes") == "-" && r.status == Status::Pass
    });
    Outcome {
        id: 11,
        name: "affine groups: 2-transitive have qsr, 3^3:Alt(4) has none",
        ok: !doubly.is_empty() && with == doubly.len() && neg_ok,
        detail: format!(
            "{with}/{} 2-transitive with qsr, negative case {}",
            doubly.len(),
            if neg_ok { "none" } else { "wrong" }
        ),
    }
}

fn subnormaliser(reports: &[(&str, Report)]) -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    let mut eleven = Vec::new();
    for (g, rep) in reports.iter().filter(|(g, _)| ["M11", "M12"].contains(g)) {
        for r in of_kind(rep, "sporadic-checks") {
            checked += u(r, "subnormaliser_checked");
            bad += u(r, "subnormaliser_mismatches");
        }
        if *g == "M12" {
            eleven = of_kind(rep, "subnormaliser")
                .into_iter()
                .filter(|r| s(r, "class").starts_with("11"))
                .map(|r| u(r, "order"))
                .collect();
        }
    }
    Outcome {
        id: 12,
        name: "qsr iff subnormaliser in stabilizer, M11 and M12",
        ok: checked > 0 && bad == 0 && !eleven.is_empty() && eleven.iter().all(|&o| o == 55),
        detail: format!("{checked} checks, {bad} mismatches, order-11 subnormalisers {eleven:?}"),
    }
}

fn embedded(verify: &Report) -> Outcome {
    let row = verify
        .records
        .iter()
        .find(|r| s(r, "suite") == "embedded" && s(r, "case").starts_with("Alt(6)"));
    Outcome {
        id: 13,
        name: "strongly 3-embedded subgroup of Alt(6)",
        ok: row.is_some_and(|r| r.status == Status::Pass),
        detail: row.map_or("missing".into(), |r| {
            format!(
                "{} elements checked, {} failures",
                u(r, "checked"),
                u(r, "failures")
            )
        }),
    }
}

#[test]
fn acceptance_criteria() {
    let cfg = RunConfig::default();

    let start = Instant::now();
    let tables = harness::tables::run(&cfg, 13).unwrap();
    let tables_time = start.elapsed();

    let start = Instant::now();
    let sporadic: Vec<(&str, Report)> = ["M11", "M12", "M22", "M23"]
        .into_iter()
        .map(|g| (g, harness::sporadic::run(&cfg, Some(g)).unwrap()))
        .collect();
    let sporadic_time = start.elapsed();

    let structural = harness::structural::run(&cfg).unwrap();
    let affine_report = harness::affine::run(&cfg).unwrap();
    let mut verify = harness::verify::run(&cfg, Some("counting")).unwrap();
    verify.extend(
        harness::verify::run(&cfg, Some("embedded"))
            .unwrap()
            .records,
    );

    let outcomes = [
        ksubsets(&tables, tables_time),
        partition_rows(&tables),
        alt_natural(&tables),
        a6_socle(&tables),
        sporadic_rows(&sporadic, sporadic_time),
        routes(&sporadic),
        counting(&sporadic, &verify),
        product(&structural),
        diagonal(&structural),
        holomorph(&structural),
        affine(&affine_report),
        subnormaliser(&sporadic),
        embedded(&verify),
    ];

    // bypass the test harness capture so the lines land in the log
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for o in &outcomes {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} {:02} {}: {}", o.id, o.name, o.detail).unwrap();
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.ok).map(|o| o.id).collect();
    writeln!(
        out,
        "acceptance: {} of {} criteria pass",
        outcomes.len() - failed.len(),
        outcomes.len()
    )
    .unwrap();
    drop(out);
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn oracle_self_check() {
    // 3-cycles on 2-subsets of 5 points: fix {3,4} only
    assert_eq!(
        oracle(5, 2, false, false),
        (vec![3], vec!["1^2 3^1".to_string()])
    );
    assert_eq!(partitions(6, 2).len(), 15);
    // (2,3)(4,5) also fixes {01, 24, 35}
    assert_eq!(
        partitions(6, 2)
            .iter()
            .filter(|pt| fixes_partition(&rep_of_type(6, 2, 2), pt))
            .count(),
        3
    );
    assert_eq!(partitions(12, 3).len(), 15400);
    assert_eq!(subsets(13, 6).len(), 1716);
}
