//! Product actions, simple diagonal counts and holomorph-type groups.

use super::{error_record, timed, Record, Report, RunConfig, Status};
use crate::constructors::{
    make_hs_type, make_product_action, make_sd_small, make_sym_alt, sd_fixed_coset_count,
};
use crate::error::Result;
use crate::field::is_prime;
use crate::group::PermGroup;
use crate::par;
use crate::perm::Permutation;
use crate::qsr::{count_prime_order_qsr, primes_up_to, qsr_fixed_point};
use crate::structure::ENUMERATION_LIMIT;

pub const PRODUCT_SHAPES: &[(usize, usize)] = &[(3, 2), (4, 2), (5, 2), (3, 3)];

/// Simple groups used for the diagonal checks.
pub fn simple_groups() -> Result<Vec<(&'static str, PermGroup)>> {
    Ok(vec![
        ("Alt(5)", make_sym_alt(5, true)?),
        ("PSL(2,7)", super::tables::projective_line(7, true)?.0),
    ])
}

#[derive(Clone, Debug)]
enum Item {
    Product(usize, usize),
    ProductSpecial,
    SdCount(usize, u64),
    SdAction(usize, usize),
    Holomorph(bool, bool),
}

fn kind(item: &Item) -> &'static str {
    match item {
        Item::Product(..) => "product-action",
        Item::ProductSpecial => "product-element",
        Item::SdCount(..) => "diagonal-count",
        Item::SdAction(..) => "diagonal-action",
        Item::Holomorph(..) => "holomorph",
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let simple = simple_groups()?;
    let mut items: Vec<Item> = PRODUCT_SHAPES
        .iter()
        .map(|&(k, l)| Item::Product(k, l))
        .collect();
    items.push(Item::ProductSpecial);
    for t in 0..simple.len() {
        for k in primes_up_to(13) {
            items.push(Item::SdCount(t, k));
        }
    }
    for t in 0..simple.len() {
        for k in [2, 3] {
            items.push(Item::SdAction(t, k));
        }
    }
    for swap in [false, true] {
        for outer in [false, true] {
            items.push(Item::Holomorph(swap, outer));
        }
    }
    let rows = par::map(cfg.exec, &items, |item| {
        timed(|| {
            run_item(cfg, item, &simple)
                .unwrap_or_else(|e| vec![error_record(kind(item), &format!("{item:?}"), &e)])
        })
    });
    let mut report = Report::new("structural", cfg);
    report.extend(rows.into_iter().flatten());
    Ok(report)
}

fn run_item(cfg: &RunConfig, item: &Item, simple: &[(&str, PermGroup)]) -> Result<Vec<Record>> {
    match *item {
        Item::Product(k, l) => product(cfg, k, l),
        Item::ProductSpecial => product_special(),
        Item::SdCount(t, k) => {
            let (name, group) = &simple[t];
            let order = group.order_u64().unwrap_or(0);
            let count = sd_fixed_coset_count(group, k, cfg.exec)?;
            let divides = order % k == 0;
            Ok(vec![Record::new(kind(item))
                .field("group", *name)
                .field("k", k)
                .field("k_divides_order", divides)
                .field("solutions", count)
                .status(Status::from_bool((count == 1) == !divides))])
        }
        Item::SdAction(t, k) => {
            let (name, group) = &simple[t];
            let sd = make_sd_small(group, k, &[])?;
            let fixed = sd.sigma.fixed_point_count() as u64;
            let count = sd_fixed_coset_count(group, k as u64, cfg.exec)?;
            Ok(vec![Record::new(kind(item))
                .field("group", *name)
                .field("k", k)
                .field("degree", sd.action.degree())
                .field("cycle_fixed_points", fixed)
                .field("solutions", count)
                .status(Status::from_bool(fixed == count))])
        }
        Item::Holomorph(swap, outer) => {
            let t = make_sym_alt(5, true)?;
            let a = make_hs_type(&t, swap, outer)?;
            let count = count_prime_order_qsr(&a, ENUMERATION_LIMIT, cfg.exec)?;
            Ok(vec![Record::new(kind(item))
                .field("socle", "Alt(5)^2")
                .field("swap", swap)
                .field("outer", outer)
                .field("degree", a.degree())
                .field("order", a.group().order().to_string())
                .field("prime_order_qsr", count)
                .status(Status::from_bool(count == 0))])
        }
    }
}

/// Exhaustive scan of `Sym(k) wr Sym(l)` in product action.
fn product(cfg: &RunConfig, k: usize, l: usize) -> Result<Vec<Record>> {
    let pa = make_product_action(k, l)?;
    let g = pa.group();
    let order = g.order_u64().unwrap_or(u64::MAX);
    // (qsr, prime-order qsr, outside base group, bad component)
    let tallies: Vec<[u64; 4]> = par::collect_chunks(cfg.exec, order, 1 << 12, |a, b| {
        let mut t = [0u64; 4];
        for i in a..b {
            let x = g.element_at(i);
            if x.is_identity() || qsr_fixed_point(&x).is_none() {
                continue;
            }
            t[0] += 1;
            if !is_prime(x.order()) {
                continue;
            }
            t[1] += 1;
            match pa.base_components(&x) {
                None => t[2] += 1,
                Some(comps) => {
                    if comps.iter().any(|c| qsr_fixed_point(c).is_none()) {
                        t[3] += 1;
                    }
                }
            }
        }
        vec![t]
    });
    let t = tallies.iter().fold([0u64; 4], |mut acc, x| {
        for i in 0..4 {
            acc[i] += x[i];
        }
        acc
    });
    Ok(vec![Record::new("product-action")
        .field("k", k)
        .field("l", l)
        .field("degree", pa.action().degree())
        .field("order", order)
        .field("qsr_elements", t[0])
        .field("prime_order_qsr", t[1])
        .field("outside_base", t[2])
        .field("bad_components", t[3])
        .status(Status::from_bool(
            t[0] > 0 && t[1] > 0 && t[2] == 0 && t[3] == 0,
        ))])
}

/// The order-4 element `((1 2), (3 4)) * swap` of `Sym(5) wr Sym(2)`,
/// which lies outside the base group.
fn product_special() -> Result<Vec<Record>> {
    let pa = make_product_action(5, 2)?;
    let h = [
        Permutation::from_cycles(5, &[&[0, 1]])?,
        Permutation::from_cycles(5, &[&[2, 3]])?,
    ];
    let swap = Permutation::from_cycles(2, &[&[0, 1]])?;
    let x = pa.element(&h, &swap)?;
    let qsr = qsr_fixed_point(&x).is_some();
    let in_base = pa.in_base_group(&x);
    Ok(vec![Record::new("product-element")
        .field("k", 5)
        .field("l", 2)
        .field("element", "((1,2),(3,4)) swap")
        .field("order", x.order())
        .field("cycle_type", x.cycle_type().to_string())
        .field("in_base", in_base)
        .field("qsr", qsr)
        .status(Status::from_bool(
            qsr && !in_base && x.order() == 4,
        ))])
}
