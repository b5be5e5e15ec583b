//! Regenerates the Mathieu group datasets under `data/`.
//!
//! The groups come from their standard permutation generators.  Maximal
//! subgroups are found either as stabilizers (points, sets) or by seeded
//! random search for two elements generating a subgroup of the right
//! order; every candidate is checked for maximality through primitivity of
//! its coset action, and classes with the same order are told apart by a
//! conjugacy test.
//!
//! Usage: `cargo run --release --example build_datasets [OUT_DIR]`

use std::fmt::Write as _;
use std::path::PathBuf;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use qsrlab_core::actions::{coset_action, is_primitive};
use qsrlab_core::dataset::{parse_dataset, DatasetFile, SubgroupFile};
use qsrlab_core::group::{orbit_stabilizer, Orbit};
use qsrlab_core::structure::{normalizer_of_cyclic, subgroup_key};
use qsrlab_core::{PermGroup, Permutation};

type Set = SmallVec<[u8; 12]>;

enum Plan {
    PointStabilizer,
    /// Stabilizer of a k-set whose orbit has length equal to the index.
    SetStabilizer(usize),
    /// Random two-generator search, optionally required to be
    /// non-conjugate to an earlier subgroup.
    Random(Option<&'static str>),
    /// Normalizer of a cyclic subgroup of the given prime order.
    Normalizer(u64),
}

struct Target {
    name: &'static str,
    order: u64,
    plan: Plan,
}

fn t(name: &'static str, order: u64, plan: Plan) -> Target {
    Target { name, order, plan }
}

fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
    let zero: Vec<Vec<u32>> = cycles
        .iter()
        .map(|c| c.iter().map(|x| x - 1).collect())
        .collect();
    let refs: Vec<&[u32]> = zero.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(n, &refs).unwrap()
}

fn long_cycle(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

fn m11() -> PermGroup {
    let gens = vec![
        perm(11, &[&long_cycle(11)]),
        perm(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]),
    ];
    PermGroup::new(11, gens).unwrap()
}

fn m12() -> PermGroup {
    let gens = vec![
        perm(12, &[&long_cycle(11)]),
        perm(12, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]),
        perm(
            12,
            &[&[1, 12], &[2, 11], &[3, 6], &[4, 8], &[5, 9], &[7, 10]],
        ),
    ];
    PermGroup::new(12, gens).unwrap()
}

fn m23_gens() -> Vec<Permutation> {
    vec![
        perm(23, &[&long_cycle(23)]),
        perm(
            23,
            &[
                &[3, 17, 10, 7, 9],
                &[4, 13, 14, 19, 5],
                &[8, 18, 11, 12, 23],
                &[15, 20, 22, 21, 16],
            ],
        ),
    ]
}

fn m23() -> PermGroup {
    PermGroup::new(23, m23_gens()).unwrap()
}

fn m24() -> PermGroup {
    let mut gens: Vec<Permutation> = m23_gens()
        .iter()
        .map(|g| {
            let mut im = g.images().to_vec();
            im.push(23);
            Permutation::from_images(im).unwrap()
        })
        .collect();
    gens.push(perm(
        24,
        &[
            &[1, 24],
            &[2, 23],
            &[3, 12],
            &[4, 16],
            &[5, 18],
            &[6, 10],
            &[7, 20],
            &[8, 14],
            &[9, 21],
            &[11, 17],
            &[13, 22],
            &[15, 19],
        ],
    ));
    PermGroup::new(24, gens).unwrap()
}

/// Restriction of a group fixing every point `>= n` to `0..n`.
fn restrict(g: &PermGroup, n: usize) -> PermGroup {
    let gens = g
        .generators()
        .iter()
        .map(|x| Permutation::from_images(x.images()[..n].to_vec()).unwrap())
        .collect();
    PermGroup::new(n, gens).unwrap()
}

/// Two random elements generating `h`, or `h` itself if none are found.
fn two_generators<R: Rng>(h: &PermGroup, rng: &mut R) -> PermGroup {
    let order = h.order();
    for _ in 0..2000 {
        let gens = vec![h.random_element(rng), h.random_element(rng)];
        let k = PermGroup::new(h.degree(), gens).unwrap();
        if k.order() == order {
            return k;
        }
    }
    h.clone()
}

/// Orders of a few short words in `a`, `b`; all must divide `order`.
fn words_divide(a: &Permutation, b: &Permutation, order: u64) -> bool {
    let ab = a.mul(b);
    let words = [
        a.clone(),
        b.clone(),
        ab.clone(),
        ab.mul(b),
        a.mul(&ab),
        a.mul(&b.inverse()),
        ab.mul(&ab).mul(b),
        a.inverse().mul(&b.inverse()).mul(&ab),
        ab.mul(b).mul(b).mul(a),
    ];
    words.iter().all(|w| order.is_multiple_of(w.order()))
}

fn conjugate(g: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> bool {
    let n = g.degree();
    let act = |k: &Vec<qsrlab_core::perm::PermKey>, x: &Permutation| {
        let mut out: Vec<_> = k
            .iter()
            .map(|e| Permutation::from_key(e, n).conjugate_by(x).key())
            .collect();
        out.sort_unstable();
        out
    };
    let orbit = Orbit::new(g.generators(), subgroup_key(h1).unwrap(), act, 100_000).unwrap();
    orbit.contains(&subgroup_key(h2).unwrap())
}

fn is_maximal(g: &PermGroup, h: &PermGroup) -> bool {
    let a = coset_action(g, h, "check").unwrap();
    is_primitive(&a).unwrap()
}

fn set_stabilizer<R: Rng>(g: &PermGroup, k: usize, index: u64, rng: &mut R) -> PermGroup {
    let n = g.degree();
    let act = |s: &Set, x: &Permutation| {
        let mut out: Set = s.iter().map(|&p| x.image(p as u32) as u8).collect();
        out.sort_unstable();
        out
    };
    for _ in 0..10_000 {
        let mut seed: Set = sample(rng, n, k).iter().map(|p| p as u8).collect();
        seed.sort_unstable();
        let orbit = Orbit::new(g.generators(), seed.clone(), act, 10_000_000).unwrap();
        if orbit.len() as u64 == index {
            let (_, stab) = orbit_stabilizer(g, seed, act, 10_000_000, rng).unwrap();
            return stab;
        }
    }
    panic!("no {k}-set with orbit length {index}");
}

fn find<R: Rng>(
    g: &PermGroup,
    target: &Target,
    found: &[(String, PermGroup)],
    rng: &mut R,
) -> PermGroup {
    let g_order = g.order_u64().unwrap();
    let index = g_order / target.order;
    let h = match target.plan {
        Plan::PointStabilizer => {
            orbit_stabilizer(g, 0u32, |p: &u32, x: &Permutation| x.image(*p), 100, rng)
                .unwrap()
                .1
        }
        Plan::SetStabilizer(k) => set_stabilizer(g, k, index, rng),
        Plan::Normalizer(p) => {
            let x = loop {
                let r = g.random_element(rng);
                let o = r.order();
                if o.is_multiple_of(p) {
                    break r.pow((o / p) as i64);
                }
            };
            normalizer_of_cyclic(g, &x, rng, Default::default()).unwrap()
        }
        Plan::Random(distinct) => {
            let other = distinct.map(|name| {
                &found
                    .iter()
                    .find(|(n, _)| n == name)
                    .expect("earlier subgroup")
                    .1
            });
            let mut tries = 0u64;
            loop {
                tries += 1;
                assert!(tries < 50_000_000, "search for {} failed", target.name);
                let a = g.random_element(rng);
                let b = g.random_element(rng);
                if !words_divide(&a, &b, target.order) {
                    continue;
                }
                let h = PermGroup::new(g.degree(), vec![a, b]).unwrap();
                if h.order_u64() != Some(target.order) {
                    continue;
                }
                if other.is_some_and(|o| conjugate(g, o, &h)) {
                    continue;
                }
                if is_maximal(g, &h) {
                    break h;
                }
            }
        }
    };
    assert_eq!(h.order_u64(), Some(target.order), "{}", target.name);
    let h = two_generators(&h, rng);
    assert!(is_maximal(g, &h), "{} is not maximal", target.name);
    h
}

fn one_based(g: &Permutation) -> Vec<u64> {
    g.to_one_based()
}

fn build(name: &str, g: &PermGroup, targets: &[Target], rng: &mut ChaCha8Rng) -> DatasetFile {
    let mut found: Vec<(String, PermGroup)> = Vec::new();
    for target in targets {
        let start = std::time::Instant::now();
        let h = find(g, target, &found, rng);
        eprintln!(
            "  {name} > {}: order {} ({:.1?})",
            target.name,
            h.order(),
            start.elapsed()
        );
        found.push((target.name.to_string(), h));
    }
    DatasetFile {
        name: name.to_string(),
        degree: g.degree(),
        order: g.order().to_string(),
        generators: g.generators().iter().map(one_based).collect(),
        subgroups: found
            .iter()
            .map(|(n, h)| SubgroupFile {
                name: n.clone(),
                generators: h.generators().iter().map(one_based).collect(),
                index: (g.order() / h.order()).to_string(),
            })
            .collect(),
    }
}

fn list(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(","))
}

fn to_json(d: &DatasetFile) -> String {
    let gens = |g: &[Vec<u64>], indent: &str| -> String {
        let lines: Vec<String> = g.iter().map(|v| format!("{indent}{}", list(v))).collect();
        lines.join(",\n")
    };
    let mut s = String::new();
    writeln!(s, "{{").unwrap();
    writeln!(
        s,
        "  \"name\": {},",
        serde_json::to_string(&d.name).unwrap()
    )
    .unwrap();
    writeln!(s, "  \"degree\": {},", d.degree).unwrap();
    writeln!(s, "  \"order\": \"{}\",", d.order).unwrap();
    writeln!(
        s,
        "  \"generators\": [\n{}\n  ],",
        gens(&d.generators, "    ")
    )
    .unwrap();
    writeln!(s, "  \"subgroups\": [").unwrap();
    for (i, sg) in d.subgroups.iter().enumerate() {
        writeln!(s, "    {{").unwrap();
        writeln!(
            s,
            "      \"name\": {},",
            serde_json::to_string(&sg.name).unwrap()
        )
        .unwrap();
        writeln!(s, "      \"index\": \"{}\",", sg.index).unwrap();
        writeln!(
            s,
            "      \"generators\": [\n{}\n      ]",
            gens(&sg.generators, "        ")
        )
        .unwrap();
        let comma = if i + 1 < d.subgroups.len() { "," } else { "" };
        writeln!(s, "    }}{comma}").unwrap();
    }
    writeln!(s, "  ]").unwrap();
    writeln!(s, "}}").unwrap();
    s
}

fn main() {
    use Plan::*;
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(qsrlab_core::dataset::default_data_dir);
    std::fs::create_dir_all(&out).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);

    let m11 = m11();
    let m12 = m12();
    let m23 = m23();
    let m24 = m24();
    let m22 = restrict(
        &two_generators(
            &orbit_stabilizer(
                &m23,
                22u32,
                |p: &u32, x: &Permutation| x.image(*p),
                100,
                &mut rng,
            )
            .unwrap()
            .1,
            &mut rng,
        ),
        22,
    );
    let m22_2 = {
        let act = |s: &Set, x: &Permutation| {
            let mut o: Set = s.iter().map(|&p| x.image(p as u32) as u8).collect();
            o.sort_unstable();
            o
        };
        let seed: Set = [22u8, 23].into_iter().collect();
        let stab = orbit_stabilizer(&m24, seed, act, 1000, &mut rng).unwrap().1;
        restrict(&two_generators(&stab, &mut rng), 22)
    };
    let m12_2 = find(&m24, &t("M12.2", 190080, Plan::Random(None)), &[], &mut rng);

    let jobs: Vec<(&str, PermGroup, Vec<Target>)> = vec![
        (
            "M11",
            m11,
            vec![
                t("A6.2_3", 720, PointStabilizer),
                t("L2(11)", 660, Random(None)),
                t("3^2:Q8.2", 144, SetStabilizer(2)),
                t("A5.2", 120, SetStabilizer(5)),
                t("2S4", 48, SetStabilizer(3)),
            ],
        ),
        (
            "M12",
            m12,
            vec![
                t("M11", 7920, PointStabilizer),
                t("M11'", 7920, Random(Some("M11"))),
                t("A6.2^2", 1440, SetStabilizer(2)),
                t("A6.2^2'", 1440, Random(Some("A6.2^2"))),
                t("L2(11)", 660, Random(None)),
                t("3^2:2S4", 432, SetStabilizer(3)),
                t("3^2:2S4'", 432, Random(Some("3^2:2S4"))),
                t("2xS5", 240, Random(None)),
                t("M8.S4", 192, SetStabilizer(4)),
                t("4^2:D12", 192, Random(Some("M8.S4"))),
                t("A4xS3", 72, Random(None)),
            ],
        ),
        (
            "M22",
            m22,
            vec![
                t("L3(4)", 20160, PointStabilizer),
                t("2^4:A6", 5760, Random(None)),
                t("A7", 2520, Random(None)),
                t("A7'", 2520, Random(Some("A7"))),
                t("2^4:S5", 1920, SetStabilizer(2)),
                t("2^3:L3(2)", 1344, Random(None)),
                t("A6.2_3", 720, Random(None)),
                t("L2(11)", 660, Random(None)),
            ],
        ),
        (
            "M22.2",
            m22_2,
            vec![
                t("M22", 443520, Random(None)),
                t("L3(4).2_2", 40320, PointStabilizer),
                t("2^4:S6", 11520, Random(None)),
                t("2^5:S5", 3840, SetStabilizer(2)),
                t("2^3:L3(2)x2", 2688, Random(None)),
                t("A6.2^2", 1440, Random(None)),
                t("L2(11).2", 1320, Random(None)),
            ],
        ),
        (
            "M12.2",
            m12_2,
            vec![
                t("M12", 95040, Random(None)),
                t("L2(11).2", 1320, Random(None)),
                t("L2(11).2'", 1320, Random(Some("L2(11).2"))),
                t("(2^2xA5):2", 480, Random(None)),
                t("2^(1+4).S3.2", 384, Random(None)),
                t("4^2:D12.2", 384, Random(Some("2^(1+4).S3.2"))),
                t("3^(1+2):D8", 216, Random(None)),
                t("S4xS3", 144, Random(None)),
                t("S5", 120, Random(None)),
            ],
        ),
        (
            "M23",
            m23,
            vec![
                t("M22", 443520, PointStabilizer),
                t("L3(4).2_2", 40320, SetStabilizer(2)),
                t("2^4:A7", 40320, Random(Some("L3(4).2_2"))),
                t("A8", 20160, Random(None)),
                t("M11", 7920, Random(None)),
                t("2^4:(3xA5):2", 5760, SetStabilizer(3)),
                t("23:11", 253, Normalizer(23)),
            ],
        ),
    ];
    for (name, g, targets) in jobs {
        eprintln!("{name}: order {}", g.order());
        let file = build(name, &g, &targets, &mut rng);
        let text = to_json(&file);
        parse_dataset(&text).expect("generated dataset must load");
        let path = qsrlab_core::dataset::dataset_path(&out, name);
        std::fs::write(&path, text).unwrap();
        eprintln!("wrote {}", path.display());
    }
}
