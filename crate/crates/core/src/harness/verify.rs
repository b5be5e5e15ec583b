//! Cross-module invariant suites.  Every case reports how many instances it
//! checked and how many failed.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;

use super::{error_record, timed, Record, Report, RunConfig, Status};
use crate::actions::{
    binomial, block_systems, coset_action, coset_action_limited, induced_block_action,
    ksubset_action, minimal_block_containing, partition_action, partition_count, ActionInstance,
    BlockSystem,
};
use crate::constructors::{factorial, make_product_action, make_sym_alt};
use crate::dataset::{dataset_path, load_dataset, Dataset};
use crate::error::{Error, Result};
use crate::field::{
    affine_perm_action, is_prime, projective_perm_action, sl2_generators, Field, Matrix,
};
use crate::group::{orbit_stabilizer, PermGroup};
use crate::par::{self, Exec};
use crate::perm::Permutation;
use crate::qsr::{
    common_fixed_points, element_orbit, fixed_points_formula, fixed_points_manning, fusion_verdict,
    intersect_orbit, is_qsr_direct, is_qsr_fusion, is_qsr_normalizer, primes_up_to,
    qsr_fixed_point, scan_action,
};
use crate::structure::{
    centralizer, class_orbits, conj_act, fusion_test, is_strongly_p_embedded, normalizer_of_cyclic,
    subnormaliser, ENUMERATION_LIMIT,
};

pub const SUITES: &[&str] = &[
    "blocks",
    "overgroups",
    "routes",
    "counting",
    "necessity",
    "prediction",
    "cosets",
    "subnormaliser",
    "embedded",
    "scalars",
    "classes",
    "degrees",
];

pub fn run(cfg: &RunConfig, suite: Option<&str>) -> Result<Report> {
    let suites: Vec<&str> = match suite {
        Some(s) => vec![*SUITES.iter().find(|x| **x == s).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown suite `{s}`; expected one of {}",
                SUITES.join(", ")
            ))
        })?],
        None => SUITES.to_vec(),
    };
    let mut report = Report::new("verify", cfg);
    for s in suites {
        let records = timed(|| {
            let mut rng = cfg.rng(&format!("verify {s}"));
            run_suite(cfg, s, &mut rng).unwrap_or_else(|e| vec![error_record("verify", s, &e)])
        });
        report.extend(records);
    }
    Ok(report)
}

fn run_suite(cfg: &RunConfig, suite: &str, rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    match suite {
        "blocks" => blocks(cfg),
        "overgroups" => overgroups(cfg, rng),
        "routes" => routes(cfg, rng),
        "counting" => counting(cfg, rng),
        "necessity" => necessity(cfg, rng),
        "prediction" => prediction(cfg),
        "cosets" => cosets(),
        "subnormaliser" => subnormalisers(cfg, rng),
        "embedded" => embedded(cfg, rng),
        "scalars" => scalars(),
        "classes" => classes(cfg, rng),
        "degrees" => degrees(),
        _ => unreachable!(),
    }
}

fn case(suite: &str, name: &str, checked: u64, failures: u64) -> Record {
    noted(suite, name, checked, failures, "-")
}

fn noted(suite: &str, name: &str, checked: u64, failures: u64, note: impl Into<String>) -> Record {
    Record::new("verify")
        .field("suite", suite)
        .field("case", name)
        .field("checked", checked)
        .field("failures", failures)
        .field("note", note.into())
        .status(Status::from_bool(failures == 0 && checked > 0))
}

fn load(cfg: &RunConfig, name: &str) -> Result<Dataset> {
    let path = dataset_path(&cfg.data_dir, name);
    load_dataset(&path).map_err(|e| Error::Dataset {
        name: name.into(),
        reason: format!("{}: {e}", path.display()),
    })
}

fn element_of_order<R: rand::Rng + ?Sized>(
    g: &PermGroup,
    p: u64,
    rng: &mut R,
) -> Option<Permutation> {
    if !(g.order() % p).is_zero() {
        return None;
    }
    loop {
        let r = g.random_element(rng);
        let o = r.order();
        if o.is_multiple_of(p) {
            return Some(r.pow((o / p) as i64));
        }
    }
}

/// PSL(2,8) on the 9 points of the projective line.
fn psl28() -> Result<PermGroup> {
    let f = Field::gf(2, 3)?;
    Ok(
        projective_perm_action(&f, 2, &sl2_generators(&f), 0, "PSL(2,8)")?
            .group()
            .clone(),
    )
}

/// Small transitive actions with nontrivial block systems.
fn imprimitive_corpus<R: rand::Rng + ?Sized>(
    cfg: &RunConfig,
    rng: &mut R,
) -> Result<Vec<ActionInstance>> {
    let mut out = Vec::new();
    let pa = make_product_action(3, 2)?;
    let id3 = Permutation::identity(3);
    let id2 = Permutation::identity(2);
    let mut base = Vec::new();
    for s in make_sym_alt(3, false)?.generators() {
        base.push(pa.element(&[s.clone(), id3.clone()], &id2)?);
        base.push(pa.element(&[id3.clone(), s.clone()], &id2)?);
    }
    out.push(ActionInstance::from_generators(
        "Sym(3)^2 on 9 points",
        9,
        base,
    )?);
    let c6 = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]])?;
    out.push(ActionInstance::from_generators("C6 regular", 6, vec![c6])?);
    let s4 = make_sym_alt(4, false)?;
    let t = PermGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1]])?])?;
    out.push(coset_action(&s4, &t, "Sym(4) on cosets of <(1,2)>")?);
    let s5 = make_sym_alt(5, false)?;
    let c5 = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]])?])?;
    out.push(coset_action(&s5, &c5, "Sym(5) on cosets of C5")?);
    let (h, _) = super::tables::affine_line(7, true)?;
    out.push(coset_action(
        &make_sym_alt(7, true)?,
        &h,
        "Alt(7) on cosets of 7:3",
    )?);
    let (h, _) = super::tables::projective_line(7, true)?;
    out.push(coset_action(
        &make_sym_alt(8, true)?,
        &h,
        "Alt(8) on cosets of PSL(2,7)",
    )?);
    let m11 = load(cfg, "M11")?.group;
    let x = element_of_order(&m11, 11, rng).unwrap();
    let n = normalizer_of_cyclic(&m11, &x, rng, cfg.exec)?;
    out.push(coset_action(&m11, &n, "M11 on cosets of 11:5")?);
    Ok(out)
}

/// Distinct nontrivial systems generated by a pair `{0, b}`.
fn pair_systems(a: &ActionInstance) -> Result<Vec<BlockSystem>> {
    let gens = a.generator_images();
    let n = a.degree();
    let mut out = block_systems(a)?;
    for b in 1..n as u32 {
        let s = minimal_block_containing(gens, n, b);
        if s.num_blocks() > 1 && !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// A quasi-semiregular element induces a quasi-semiregular permutation on
/// every block system.
fn blocks(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut rng = cfg.rng("verify blocks corpus");
    let corpus = imprimitive_corpus(cfg, &mut rng)?;
    let mut out = Vec::new();
    for a in &corpus {
        let systems = pair_systems(a)?;
        let induced: Vec<ActionInstance> = systems
            .iter()
            .map(|s| induced_block_action(a, s))
            .collect::<Result<_>>()?;
        let mut failures = induced
            .iter()
            .zip(&systems)
            .filter(|(b, s)| b.degree() != s.num_blocks())
            .count() as u64;
        let g = a.group();
        let order = g
            .order_u64()
            .filter(|&o| o <= ENUMERATION_LIMIT)
            .ok_or_else(|| Error::Budget(format!("|G| = {}", g.order())))?;
        let counts: Vec<(u64, u64)> = par::collect_chunks(cfg.exec, order, 1 << 10, |s, e| {
            let mut c = (0u64, 0u64);
            for i in s..e {
                let x = g.element_at(i);
                if x.is_identity() || qsr_fixed_point(&x).is_none() {
                    continue;
                }
                for sys in &systems {
                    c.0 += 1;
                    let blocks = sys.blocks();
                    let img: Vec<u32> =
                        blocks.iter().map(|b| sys.block_of(x.image(b[0]))).collect();
                    if Permutation::from_images(img).map_or(true, |p| qsr_fixed_point(&p).is_none())
                    {
                        c.1 += 1;
                    }
                }
            }
            vec![c]
        });
        let checked: u64 = counts.iter().map(|c| c.0).sum();
        failures += counts.iter().map(|c| c.1).sum::<u64>();
        let mut rec = noted(
            "blocks",
            a.label(),
            checked,
            failures,
            format!("systems: {}", systems.len()),
        );
        if checked == 0 {
            // no quasi-semiregular elements: nothing to induce
            rec = rec.status(if failures == 0 {
                Status::Info
            } else {
                Status::Fail
            });
        }
        out.push(rec);
    }
    Ok(out)
}

/// Quasi-semiregular on `[G:H]` implies quasi-semiregular on `[G:K]` for
/// every `K >= H`.  `H` runs over normalizers in `K` of prime-order cyclic
/// subgroups of the maximal subgroups `K` of the Mathieu datasets.
fn overgroups(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for name in ["M11", "M12"] {
        let d = load(cfg, name)?;
        let g = &d.group;
        let (classes, _) = class_orbits(g, None, rng, cfg.exec)?;
        let prime_reps: Vec<&Permutation> = classes
            .iter()
            .map(|c| &c.datum.representative)
            .filter(|x| is_prime(x.order()))
            .collect();
        let maximal: Vec<ActionInstance> = d
            .subgroups
            .iter()
            .map(|s| coset_action(g, &s.group, &s.name))
            .collect::<Result<_>>()?;
        let mut checked = 0;
        let mut failures = 0;
        let mut pairs = 0;
        for s in &d.subgroups {
            for p in primes_up_to(g.degree() as u64) {
                let Some(x) = element_of_order(&s.group, p, rng) else {
                    continue;
                };
                let h = normalizer_of_cyclic(&s.group, &x, rng, cfg.exec)?;
                let a = coset_action_limited(g, &h, "H", cfg.max_degree)?;
                for (k, ka) in d.subgroups.iter().zip(&maximal) {
                    if !h.is_subgroup_of(&k.group) {
                        continue;
                    }
                    pairs += 1;
                    for rep in &prime_reps {
                        if is_qsr_direct(&a, rep).is_some() {
                            checked += 1;
                            if is_qsr_direct(ka, rep).is_none() {
                                failures += 1;
                            }
                        }
                    }
                }
            }
        }
        out.push(noted(
            "overgroups",
            &format!("{name} cyclic normalizers"),
            checked,
            failures,
            format!("{pairs} pairs H <= K"),
        ));
    }
    Ok(out)
}

/// Direct, fusion and normalizer routes on every prime-order element of `H`.
fn routes(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let mut cases: Vec<(String, PermGroup, PermGroup)> = Vec::new();
    let point_stab = |g: &PermGroup, rng: &mut ChaCha8Rng| -> Result<PermGroup> {
        Ok(orbit_stabilizer(
            g,
            0u32,
            |x: &u32, h: &Permutation| h.image(*x),
            usize::MAX,
            rng,
        )?
        .1)
    };
    for n in [4, 7] {
        let g = make_sym_alt(n, false)?;
        let h = point_stab(&g, rng)?;
        cases.push((format!("Sym({n}) point stabilizer"), g, h));
    }
    let a6 = make_sym_alt(6, true)?;
    let (h, _) = super::tables::projective_line(5, true)?;
    cases.push(("Alt(6) on cosets of PSL(2,5)".into(), a6, h));
    let l28 = psl28()?;
    let x3 = element_of_order(&l28, 3, rng).unwrap();
    let d18 = normalizer_of_cyclic(&l28, &x3, rng, cfg.exec)?;
    cases.push(("PSL(2,8) on cosets of D18".into(), l28.clone(), d18));
    let h = point_stab(&l28, rng)?;
    cases.push(("PSL(2,8) point stabilizer".into(), l28, h));
    let m11 = load(cfg, "M11")?;
    for s in &m11.subgroups {
        cases.push((
            format!("M11 on cosets of {}", s.name),
            m11.group.clone(),
            s.group.clone(),
        ));
    }
    let mut out = Vec::new();
    for (name, g, h) in &cases {
        let a = coset_action(g, h, name)?;
        let order = h.order_u64().unwrap();
        let elems: Vec<Permutation> = (0..order)
            .map(|i| h.element_at(i))
            .filter(|x| is_prime(x.order()))
            .collect();
        let verdicts: Vec<Result<bool>> = par::map(cfg.exec, &elems, |x| {
            let direct = is_qsr_direct(&a, x).is_some();
            let fusion = is_qsr_fusion(g, h, x, Exec::Sequential)?;
            let normalizer = is_qsr_normalizer(g, h, x, Exec::Sequential)?;
            Ok(direct == fusion && fusion == normalizer)
        });
        let mut failures = 0;
        for v in verdicts {
            if !v? {
                failures += 1;
            }
        }
        out.push(case("routes", name, elems.len() as u64, failures));
    }

    // the fusion and centralizer conditions hold for (1,2,3,4)(5,6) in the
    // stabilizer of 7, which is still not quasi-semiregular
    let s7 = make_sym_alt(7, false)?;
    let h = point_stab(&s7, rng)?;
    let h = PermGroup::new(7, h.generators().to_vec())?;
    let x = Permutation::from_cycles(7, &[&[1, 2, 3, 4], &[5, 6]])?;
    let a = coset_action(&s7, &h, "Sym(7) on 7 points")?;
    let data = intersect_orbit(&element_orbit(&s7, &x)?, &h, conj_act, cfg.exec)?;
    let conditions = fusion_verdict(&s7.order(), &h.order(), &data);
    let direct = is_qsr_direct(&a, &x).is_some();
    out.push(case(
        "routes",
        "composite order: conditions hold, not quasi-semiregular",
        1,
        u64::from(!(conditions && !direct)),
    ));
    let rejected = matches!(
        is_qsr_fusion(&s7, &h, &x, cfg.exec),
        Err(Error::NotPrimeOrder)
    ) && matches!(
        is_qsr_normalizer(&s7, &h, &Permutation::identity(7), cfg.exec),
        Err(Error::NotPrimeOrder)
    );
    out.push(case(
        "routes",
        "non-prime input rejected",
        1,
        u64::from(!rejected),
    ));
    Ok(out)
}

/// Fixed-point formula on every class, Manning's count on cyclic and
/// extreme subgroups.
fn counting(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let mut cases: Vec<(String, PermGroup, PermGroup)> = Vec::new();
    let s4 = make_sym_alt(4, false)?;
    let s3 = PermGroup::new(
        4,
        make_sym_alt(3, false)?
            .generators()
            .iter()
            .map(|g| extend(g, 4))
            .collect(),
    )?;
    cases.push(("Sym(4) on 4 points".into(), s4, s3));
    for name in ["M11", "M12"] {
        let d = load(cfg, name)?;
        for s in &d.subgroups {
            cases.push((
                format!("{name} on cosets of {}", s.name),
                d.group.clone(),
                s.group.clone(),
            ));
        }
    }
    let mut out = Vec::new();
    for (name, g, h) in &cases {
        let a = coset_action(g, h, name)?;
        let (classes, _) = class_orbits(g, None, rng, cfg.exec)?;
        let index = BigUint::from(a.degree());
        let mut checked = 0;
        let mut failures = 0;
        let mut manning_checked = 0;
        let mut manning_failures = 0;
        for c in &classes {
            let x = &c.datum.representative;
            let data = intersect_orbit(&c.orbit, h, conj_act, cfg.exec)?;
            let size = c.datum.class_size.to_u64().unwrap();
            let formula = fixed_points_formula(&index, size, data.in_h())?;
            checked += 1;
            if formula != a.act(x).fixed_point_count() as u64 {
                failures += 1;
            }
            if is_prime(x.order()) && data.in_h() > 0 {
                let y = Permutation::from_key(&data.h_reps[0], g.degree());
                let k = PermGroup::new(g.degree(), vec![y])?;
                manning_checked += 1;
                if fixed_points_manning(g, h, &k)? != common_fixed_points(&a, &k) as u64 {
                    manning_failures += 1;
                }
            }
        }
        out.push(case(
            "counting",
            &format!("{name}: formula"),
            checked,
            failures,
        ));
        // K = H fixes |N_G(H) : H| points, K = 1 fixes all of them
        let trivial = PermGroup::trivial(g.degree());
        let all = fixed_points_manning(g, h, &trivial)? == a.degree() as u64;
        let own = fixed_points_manning(g, h, h).ok();
        let own_ok = match own {
            Some(m) => m == common_fixed_points(&a, h) as u64,
            None => true,
        };
        out.push(case(
            "counting",
            &format!("{name}: Manning"),
            manning_checked + 2,
            manning_failures + u64::from(!all) + u64::from(!own_ok),
        ));
    }
    Ok(out)
}

fn extend(g: &Permutation, n: usize) -> Permutation {
    let mut images: Vec<u32> = g.images().to_vec();
    images.extend(g.degree() as u32..n as u32);
    Permutation::from_images(images).unwrap()
}

fn p_part(n: &BigUint, p: u64) -> BigUint {
    let mut n = n.clone();
    let mut out = BigUint::from(1u32);
    while (&n % p).is_zero() {
        n /= p;
        out *= p;
    }
    out
}

/// Every certificate satisfies `degree ≡ 1 (mod order)`, and a
/// quasi-semiregular p-element in `[G:H]` forces `|H|_p = |G|_p`.
fn necessity(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for name in ["M11", "M12", "M22"] {
        let d = load(cfg, name)?;
        let mut checked = 0;
        let mut congruence = 0;
        let mut sylow = 0;
        for s in &d.subgroups {
            let a = coset_action(&d.group, &s.group, &s.name)?;
            let report = scan_action(&a, &primes_up_to(d.group.degree() as u64), rng, cfg.exec)?;
            for cert in &report.certificates {
                checked += 1;
                if !(a.degree() as u64 - 1).is_multiple_of(cert.order) {
                    congruence += 1;
                }
            }
            for p in report.primes_with_qsr() {
                checked += 1;
                if p_part(&s.group.order(), p) != p_part(&d.group.order(), p) {
                    sylow += 1;
                }
            }
        }
        out.push(case(
            "necessity",
            &format!("{name} maximal subgroups"),
            checked,
            congruence + sylow,
        ));
    }
    Ok(out)
}

/// Scans of the Sym(n) and Alt(n) families against the closed forms.
fn prediction(cfg: &RunConfig) -> Result<Vec<Record>> {
    let report = super::tables::run(cfg, 10)?;
    let mut out = Vec::new();
    for kind in ["ksubsets", "partitions", "alt-natural"] {
        let rows: Vec<_> = report.records.iter().filter(|r| r.kind == kind).collect();
        let failures = rows.iter().filter(|r| r.status == Status::Fail).count();
        out.push(case(
            "prediction",
            &format!("{kind}, n <= 10"),
            rows.len() as u64,
            failures as u64,
        ));
    }
    Ok(out)
}

/// Cosets of a set stabilizer against the k-subset action: the map
/// `H r -> {0..k-1}^r` is a bijection that intertwines the generators.
fn cosets() -> Result<Vec<Record>> {
    let mut checked = 0;
    let mut failures = 0;
    for n in 3..=8usize {
        let g = make_sym_alt(n, false)?;
        for k in (1..).take_while(|k| 2 * k < n) {
            let mut gens = Vec::new();
            if k >= 2 {
                gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
                gens.push(Permutation::from_cycles(
                    n,
                    &[&(0..k as u32).collect::<Vec<_>>()],
                )?);
            }
            if n - k >= 2 {
                gens.push(Permutation::from_cycles(n, &[&[k as u32, k as u32 + 1]])?);
                gens.push(Permutation::from_cycles(
                    n,
                    &[&(k as u32..n as u32).collect::<Vec<_>>()],
                )?);
            }
            let h = PermGroup::new(n, gens)?;
            let a = coset_action(&g, &h, "cosets")?;
            let b = ksubset_action(&g, k)?;
            checked += 1;
            let reps = a.coset_table().unwrap().representatives();
            let sets: Vec<Vec<u32>> = reps
                .iter()
                .map(|r| {
                    let mut s: Vec<u32> = (0..k as u32).map(|x| r.image(x)).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            let mut distinct = sets.clone();
            distinct.sort();
            distinct.dedup();
            let mut ok = distinct.len() == sets.len() && a.degree() == b.degree();
            for (ga, gb) in a.generator_images().iter().zip(b.generator_images()) {
                ok &= ga.cycle_type() == gb.cycle_type();
            }
            for (s, gen) in g.generators().iter().enumerate() {
                let ga = &a.generator_images()[s];
                for (i, set) in sets.iter().enumerate() {
                    let mut img: Vec<u32> = set.iter().map(|&x| gen.image(x)).collect();
                    img.sort_unstable();
                    ok &= sets[ga.image(i as u32) as usize] == img;
                }
            }
            if !ok {
                failures += 1;
            }
        }
    }
    Ok(vec![case(
        "cosets",
        "set stabilizer cosets vs k-subsets, n <= 8",
        checked,
        failures,
    )])
}

fn generated_contains(big: &PermGroup, small: &PermGroup) -> bool {
    small.generators().iter().all(|x| big.contains(x))
}

/// `Sub_G(x)` contains `C_G(x)` and controls the fusion of `x`.
fn subnormalisers(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let mut groups: Vec<(String, PermGroup)> = vec![
        ("Sym(4)".into(), make_sym_alt(4, false)?),
        ("Alt(5)".into(), make_sym_alt(5, true)?),
        ("PSL(2,8)".into(), psl28()?),
    ];
    groups.push(("M11".into(), load(cfg, "M11")?.group));
    let mut out = Vec::new();
    for (name, g) in &groups {
        let g = PermGroup::new(g.degree(), g.generators().to_vec())?;
        let (classes, _) = class_orbits(&g, None, rng, cfg.exec)?;
        let mut checked = 0;
        let mut failures = 0;
        for c in classes.iter().filter(|c| is_prime(c.datum.element_order)) {
            let x = &c.datum.representative;
            let s = subnormaliser(&g, x, cfg.exec)?;
            let cent = centralizer(&g, x, rng, cfg.exec)?;
            checked += 1;
            if !generated_contains(&s, &cent) || !fusion_test(&g, &s, x)? {
                failures += 1;
            }
        }
        out.push(case(
            "subnormaliser",
            &format!("{name}: C_G(x) <= Sub_G(x), fusion"),
            checked,
            failures,
        ));
    }
    // central x: Sub_G(x) = G
    let c6 = PermGroup::new(
        6,
        vec![Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]])?],
    )?;
    let x = c6.generators()[0].pow(3);
    let whole = subnormaliser(&c6, &x, cfg.exec)?.order() == c6.order();
    out.push(case(
        "subnormaliser",
        "central element",
        1,
        u64::from(!whole),
    ));
    let rejected = matches!(
        subnormaliser(&c6, &c6.generators()[0], cfg.exec),
        Err(Error::NotPrimeOrder)
    );
    out.push(case(
        "subnormaliser",
        "non-prime order rejected",
        1,
        u64::from(!rejected),
    ));
    Ok(out)
}

/// Strongly p-embedded subgroups, and their order-p elements being
/// quasi-semiregular on the cosets.
fn embedded(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let a6 = make_sym_alt(6, true)?;
    let a6 = PermGroup::new(6, a6.generators().to_vec())?;
    let x = Permutation::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]])?;
    let sylow = PermGroup::new(
        6,
        vec![x.clone(), Permutation::from_cycles(6, &[&[0, 1, 2]])?],
    )?;
    let h = crate::structure::normalizer(&a6, &sylow, rng)?;
    let l28 = psl28()?;
    let y = element_of_order(&l28, 3, rng).unwrap();
    let d18 = normalizer_of_cyclic(&l28, &y, rng, cfg.exec)?;
    for (name, g, h, p) in [
        ("Alt(6), N(Sylow 3), p = 3", &a6, &h, 3u64),
        ("PSL(2,8), D18, p = 3", &l28, &d18, 3),
    ] {
        let embedded = is_strongly_p_embedded(g, h, p)?;
        let a = coset_action(g, h, name)?;
        let order = h.order_u64().unwrap();
        let elems: Vec<Permutation> = (0..order)
            .map(|i| h.element_at(i))
            .filter(|e| e.order() == p)
            .collect();
        let bad = elems
            .iter()
            .filter(|e| is_qsr_direct(&a, e).is_none())
            .count() as u64;
        out.push(noted(
            "embedded",
            name,
            elems.len() as u64 + 1,
            bad + u64::from(!embedded),
            format!("|H| = {}", h.order()),
        ));
    }
    let s4 = make_sym_alt(4, false)?;
    let s3 = PermGroup::new(
        4,
        make_sym_alt(3, false)?
            .generators()
            .iter()
            .map(|g| extend(g, 4))
            .collect(),
    )?;
    let a4 = make_sym_alt(4, true)?;
    let a4 = PermGroup::new(4, a4.generators().to_vec())?;
    let yes = is_strongly_p_embedded(&s4, &s3, 3)?;
    let no = is_strongly_p_embedded(&s4, &a4, 2)?;
    out.push(case(
        "embedded",
        "Sym(4): Sym(3) at 3, not Alt(4) at 2",
        2,
        u64::from(!yes) + u64::from(no),
    ));
    Ok(out)
}

/// Nonidentity scalars fix only the zero vector and move every other vector
/// in cycles of full length.
fn scalars() -> Result<Vec<Record>> {
    let mut checked = 0;
    let mut failures = 0;
    for (p, f) in [
        (2, 2),
        (3, 1),
        (5, 1),
        (7, 1),
        (2, 3),
        (3, 2),
        (11, 1),
        (13, 1),
    ] {
        let field = Field::gf(p, f)?;
        for d in 1..=2usize {
            for c in field.elements().skip(2) {
                let m = Matrix::diagonal(&vec![c; d]);
                let a = affine_perm_action(&field, d, &[m], 0, false, "scalar")?;
                checked += 1;
                if qsr_fixed_point(&a.generator_images()[0]) != Some(0) {
                    failures += 1;
                }
            }
        }
    }
    Ok(vec![case(
        "scalars",
        "F_q^d, d <= 2, q <= 13",
        checked,
        failures,
    )])
}

/// Class sizes sum to `|G|` and agree with centralizer orders.
fn classes(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let groups: Vec<(&str, PermGroup, usize)> = vec![
        ("Sym(6)", make_sym_alt(6, false)?, 11),
        ("Alt(5)", make_sym_alt(5, true)?, 5),
        ("PSL(2,8)", psl28()?, 9),
        ("M11", load(cfg, "M11")?.group, 10),
        ("M12", load(cfg, "M12")?.group, 15),
    ];
    for (name, g, expected) in groups {
        // generic search, not the closed form
        let generic = PermGroup::new(g.degree(), g.generators().to_vec())?;
        let (cls, _) = class_orbits(&generic, None, rng, cfg.exec)?;
        let total: BigUint = cls.iter().map(|c| c.datum.class_size.clone()).sum();
        let mut failures = u64::from(total != g.order()) + u64::from(cls.len() != expected);
        for c in &cls {
            let cent = centralizer(&generic, &c.datum.representative, rng, cfg.exec)?;
            if cent.order() * &c.datum.class_size != g.order() {
                failures += 1;
            }
        }
        let closed = crate::structure::conjugacy_classes(&g, None, rng, cfg.exec)?;
        if closed.classes.len() != expected {
            failures += 1;
        }
        out.push(noted(
            "classes",
            name,
            cls.len() as u64 + 2,
            failures,
            format!("{} classes", cls.len()),
        ));
    }
    Ok(out)
}

/// Degrees of constructed actions against their closed forms.
fn degrees() -> Result<Vec<Record>> {
    let mut checked = 0;
    let mut failures = 0;
    for n in 4..=9usize {
        let g = make_sym_alt(n, false)?;
        for k in (1..).take_while(|k| 2 * k < n) {
            checked += 1;
            if BigUint::from(ksubset_action(&g, k)?.degree()) != binomial(n as u64, k as u64) {
                failures += 1;
            }
        }
        for k in (2..=n / 2).filter(|k| n % k == 0) {
            checked += 1;
            let deg = BigUint::from(partition_action(&g, k)?.degree());
            let m = (n / k) as u64;
            let closed = factorial(n as u64) / (factorial(k as u64).pow(m as u32) * factorial(m));
            if deg != partition_count(n as u64, k as u64) || deg != closed {
                failures += 1;
            }
        }
    }
    let s6 = make_sym_alt(6, false)?;
    let c = PermGroup::new(6, vec![Permutation::from_cycles(6, &[&[0, 1, 2]])?])?;
    checked += 1;
    if BigUint::from(coset_action(&s6, &c, "cosets")?.degree()) != s6.index_of(&c)? {
        failures += 1;
    }
    Ok(vec![case(
        "degrees",
        "k-subsets, partitions, cosets",
        checked,
        failures,
    )])
}
