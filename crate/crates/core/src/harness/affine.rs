//! Affine and semilinear groups on `F_q^d`.

use super::{error_record, list, timed, Record, Report, RunConfig, Status};
use crate::actions::ActionInstance;
use crate::error::Result;
use crate::field::{affine_perm_action, is_prime, s0_generators, sl2_5_generators, Field, Matrix};
use crate::group::{orbit_stabilizer, PermGroup};
use crate::par;
use crate::perm::Permutation;
use crate::qsr::{primes_up_to, scan_action};

#[derive(Clone, Copy, Debug)]
enum Item {
    Agl1(u32),
    Agaml1(u32, u32),
    S0(u32, u32),
    Sl25(u32, u32),
    /// `3^3 : Alt(4)` on 27 points.
    Negative,
}

fn prime_power(q: u32) -> (u32, u32) {
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap();
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    (p, f)
}

fn items() -> Vec<Item> {
    let mut out: Vec<Item> = (3..=29u32)
        .filter(|&p| is_prime(p as u64))
        .map(Item::Agl1)
        .collect();
    for q in [8, 9, 16, 27, 32, 64] {
        let (p, f) = prime_power(q);
        out.push(Item::Agaml1(p, f));
    }
    for q in [5, 7, 9] {
        let (p, f) = prime_power(q);
        out.push(Item::S0(p, f));
    }
    for q in [9, 11, 19, 29] {
        let (p, f) = prime_power(q);
        out.push(Item::Sl25(p, f));
    }
    out.push(Item::Negative);
    out
}

fn build(item: Item) -> Result<(String, ActionInstance)> {
    match item {
        Item::Agl1(p) => {
            let f = Field::gf(p, 1)?;
            let m = [Matrix::diagonal(&[f.primitive_element()])];
            let name = format!("AGL(1,{p})");
            Ok((name.clone(), affine_perm_action(&f, 1, &m, 0, true, &name)?))
        }
        Item::Agaml1(p, e) => {
            let f = Field::gf(p, e)?;
            let m = [Matrix::diagonal(&[f.primitive_element()])];
            let name = format!("AΓL(1,{})", f.size());
            Ok((name.clone(), affine_perm_action(&f, 1, &m, 1, true, &name)?))
        }
        Item::S0(p, e) => {
            let f = Field::gf(p, e)?;
            let name = format!("{}^2:S0({})", f.size(), f.size());
            Ok((
                name.clone(),
                affine_perm_action(&f, 2, &s0_generators(&f), 0, true, &name)?,
            ))
        }
        Item::Sl25(p, e) => {
            let f = Field::gf(p, e)?;
            let name = format!("{}^2:SL(2,5)", f.size());
            Ok((
                name.clone(),
                affine_perm_action(&f, 2, &sl2_5_generators(&f)?, 0, true, &name)?,
            ))
        }
        Item::Negative => {
            let f = Field::gf(3, 1)?;
            let m = [
                Matrix::diagonal(&[2, 2, 1]),
                Matrix::permutation(&[1, 2, 0]),
            ];
            let name = "3^3:Alt(4)".to_string();
            Ok((name.clone(), affine_perm_action(&f, 3, &m, 0, true, &name)?))
        }
    }
}

/// Orbit sizes of the stabilizer of point 0 on the other points.
fn suborbit_sizes<R: rand::Rng + ?Sized>(g: &PermGroup, rng: &mut R) -> Result<Vec<usize>> {
    let (_, stab) = orbit_stabilizer(
        g,
        0u32,
        |x: &u32, h: &Permutation| h.image(*x),
        usize::MAX,
        rng,
    )?;
    Ok(stab
        .orbits()
        .iter()
        .filter(|o| o[0] != 0)
        .map(|o| o.len())
        .collect())
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let items = items();
    let rows = par::map(cfg.exec, &items, |&item| {
        timed(|| {
            run_item(cfg, item)
                .unwrap_or_else(|e| vec![error_record("affine", &format!("{item:?}"), &e)])
        })
    });
    let mut report = Report::new("affine", cfg);
    report.extend(rows.into_iter().flatten());
    Ok(report)
}

fn run_item(cfg: &RunConfig, item: Item) -> Result<Vec<Record>> {
    let mut rng = cfg.rng(&format!("affine {item:?}"));
    let (name, a) = build(item)?;
    let g = a.group();
    let transitive = g.is_transitive();
    let sizes = if transitive {
        suborbit_sizes(g, &mut rng)?
    } else {
        Vec::new()
    };
    let doubly = transitive && sizes.len() == 1;
    // nonregular, all nontrivial suborbits of one size
    let three_halves = transitive && sizes.iter().all(|&s| s == sizes[0] && s > 1);
    let report = scan_action(&a, &primes_up_to(a.degree() as u64), &mut rng, cfg.exec)?;
    let primes = report.primes_with_qsr();
    let certified = report.verdicts.iter().all(|v| v.certified);
    let (expected, status) = match item {
        Item::Negative => ("none", Status::from_bool(primes.is_empty() && certified)),
        _ if three_halves => ("some", Status::from_bool(!primes.is_empty())),
        _ => ("-", Status::Info),
    };
    Ok(vec![Record::new("affine")
        .field("group", name)
        .field("degree", a.degree())
        .field("order", g.order().to_string())
        .field("transitive", transitive)
        .field("two_transitive", doubly)
        .field("three_halves_transitive", three_halves)
        .field("expected", expected)
        .field(
            "qsr_primes",
            if primes.is_empty() {
                "-".into()
            } else {
                list(&primes)
            },
        )
        .status(status)])
}
