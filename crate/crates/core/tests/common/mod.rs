#![allow(dead_code)]

use std::sync::Arc;

use mapspace_core::dga::differential_matrix;
use mapspace_core::linalg::dense;
use mapspace_core::{
    betti_table, e2_page, DgaPage, Element, Field, GradedAlgebra, Grading, Monomial, SpaceSpec, Variant,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub type Check = Result<String, String>;

pub const WEIGHTS: [i64; 9] = [-4, -3, -2, -1, 0, 1, 2, 3, 4];

/// Every space the property suite sweeps.
pub fn configurations() -> Vec<SpaceSpec> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for field in [Field::Rational, Field::Prime(2), Field::Prime(3), Field::Prime(5)] {
            for variant in [Variant::Loop, Variant::Hol] {
                out.push(SpaceSpec::new(n, field, variant).unwrap());
            }
        }
    }
    out
}

pub fn weights_for(space: &SpaceSpec) -> Vec<i64> {
    WEIGHTS.iter().copied().filter(|&k| space.allows_component(k)).collect()
}

/// Internal degrees covering ordinary degrees `0..=cutoff`.
pub fn internal_range(space: &SpaceSpec, cutoff: i64) -> std::ops::RangeInclusive<i64> {
    -space.shift()..=cutoff - space.shift()
}

fn coefficient(field: Field, rng: &mut StdRng) -> mapspace_core::Scalar {
    loop {
        let s = field.from_i64(rng.gen_range(-4..=4));
        if !s.is_zero() {
            return s;
        }
    }
}

/// Bases of the nonempty `(degree, weight)` cells.
pub fn nonempty_cells(alg: &GradedAlgebra, degrees: &[i64], weights: &[i64]) -> Vec<Vec<Monomial>> {
    let mut out = Vec::new();
    for &d in degrees {
        for &w in weights {
            let basis = alg.enumerate_basis(d, w).unwrap();
            if !basis.is_empty() {
                out.push(basis);
            }
        }
    }
    out
}

/// A random nonzero homogeneous element with up to four terms, or `None` if
/// the terms cancelled.
pub fn random_element(alg: &Arc<GradedAlgebra>, cells: &[Vec<Monomial>], rng: &mut StdRng) -> Option<Element> {
    let basis = cells.choose(rng)?;
    let mut x = Element::zero(alg);
    for _ in 0..rng.gen_range(1..=4) {
        let m = basis.choose(rng).unwrap().clone();
        x = x
            .checked_add(&Element::from_monomial(alg, m, coefficient(alg.field(), rng)))
            .unwrap();
    }
    (!x.is_zero()).then_some(x)
}

fn sign_element(alg: &Arc<GradedAlgebra>, x: &Element, odd: bool) -> Element {
    if odd {
        x.scale(&alg.field().from_i64(-1))
    } else {
        x.clone()
    }
}

pub fn d_squared_zero(space: SpaceSpec, cutoff: i64) -> Check {
    let page = e2_page(space, cutoff).map_err(|e| e.to_string())?;
    let alg = page.algebra();
    let d = page.differential();
    let mut checked = 0;
    for degree in internal_range(&space, cutoff) {
        for &w in &weights_for(&space) {
            for m in alg.enumerate_basis(degree, w).map_err(|e| e.to_string())? {
                let x = Element::from_monomial(alg, m, alg.field().one());
                let dd = d.apply(&d.apply(&x).unwrap()).unwrap();
                if !dd.is_zero() {
                    return Err(format!("{space:?}: d²({x}) = {dd}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} basis elements"))
}

/// `d(ab) = d(a) b + (-1)^{|a|} a d(b)` on random homogeneous pairs.
pub fn leibniz_random(space: SpaceSpec, cutoff: i64, pairs: usize, seed: u64) -> Check {
    let page = e2_page(space, cutoff).map_err(|e| e.to_string())?;
    let alg = page.algebra();
    let d = page.differential();
    let degrees: Vec<i64> = internal_range(&space, cutoff / 2).collect();
    let weights: Vec<i64> = [-2, -1, 0, 1, 2]
        .into_iter()
        .filter(|&k| space.allows_component(k))
        .collect();
    let cells = nonempty_cells(alg, &degrees, &weights);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < pairs {
        attempts += 1;
        if attempts > pairs * 50 {
            return Err(format!("{space:?}: could not sample {pairs} pairs"));
        }
        let (Some(a), Some(b)) = (
            random_element(alg, &cells, &mut rng),
            random_element(alg, &cells, &mut rng),
        ) else {
            continue;
        };
        let odd = a.bidegree().unwrap().0.rem_euclid(2) == 1;
        let lhs = d.apply(&(&a * &b)).unwrap();
        let rhs = &(&d.apply(&a).unwrap() * &b) + &sign_element(alg, &(&a * &d.apply(&b).unwrap()), odd);
        if lhs != rhs {
            return Err(format!("{space:?}: a = {a}, b = {b}: {lhs} != {rhs}"));
        }
        done += 1;
    }
    Ok(format!("{done} pairs"))
}

fn basis_below(alg: &Arc<GradedAlgebra>, space: &SpaceSpec, ordinary: i64, weights: &[i64]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for degree in -space.shift()..ordinary - space.shift() {
        for &w in weights {
            out.extend(alg.enumerate_basis(degree, w).unwrap());
        }
    }
    out
}

/// `xy = (-1)^{|x||y|} yx` for every pair of basis monomials below the bound.
pub fn koszul_commutativity(space: SpaceSpec, below: i64) -> Check {
    let page = e2_page(space, below).map_err(|e| e.to_string())?;
    let alg = page.algebra();
    let basis = basis_below(alg, &space, below, &[-2, -1, 0, 1, 2]);
    let one = alg.field().one();
    let mut pairs = 0;
    for x in &basis {
        let ex = Element::from_monomial(alg, x.clone(), one.clone());
        for y in &basis {
            let ey = Element::from_monomial(alg, y.clone(), one.clone());
            let odd = (x.degree() * y.degree()).rem_euclid(2) == 1;
            if &ex * &ey != sign_element(alg, &(&ey * &ex), odd) {
                return Err(format!("{space:?}: {ex} and {ey} do not graded-commute"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

/// `(ab)c = a(bc)` on random triples.
pub fn associativity_random(space: SpaceSpec, cutoff: i64, triples: usize, seed: u64) -> Check {
    let page = e2_page(space, cutoff).map_err(|e| e.to_string())?;
    let alg = page.algebra();
    let degrees: Vec<i64> = internal_range(&space, cutoff / 3).collect();
    let weights: Vec<i64> = [-1, 0, 1, 2]
        .into_iter()
        .filter(|&k| space.allows_component(k))
        .collect();
    let cells = nonempty_cells(alg, &degrees, &weights);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut done = 0;
    for _ in 0..triples * 50 {
        if done == triples {
            break;
        }
        let (Some(a), Some(b), Some(c)) = (
            random_element(alg, &cells, &mut rng),
            random_element(alg, &cells, &mut rng),
            random_element(alg, &cells, &mut rng),
        ) else {
            continue;
        };
        if &(&a * &b) * &c != &a * &(&b * &c) {
            return Err(format!("{space:?}: ({a})({b})({c}) not associative"));
        }
        done += 1;
    }
    Ok(format!("{done} triples"))
}

/// Sparse rank against the dense oracle on every differential matrix with at
/// most `max_cols` columns.
pub fn sparse_dense_rank(space: SpaceSpec, cutoff: i64, max_cols: usize) -> Check {
    let page = e2_page(space, cutoff).map_err(|e| e.to_string())?;
    let mut compared = 0;
    for degree in internal_range(&space, cutoff) {
        for &w in &weights_for(&space) {
            let dm = differential_matrix(page.differential(), degree, w).map_err(|e| e.to_string())?;
            if dm.matrix.cols() > max_cols {
                continue;
            }
            let sparse = dm.matrix.rank();
            let dense = dense::rank(&dm.matrix.to_dense());
            if sparse != dense {
                return Err(format!("{space:?} ({degree}, {w}): sparse {sparse} vs dense {dense}"));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} matrices"))
}

/// `d(ιᵏ) = (n+1) k cⁿ u ι^{k-1}` for `1 <= |k| <= kmax`, built term by term.
pub fn iota_power_differential(page: &DgaPage, n: u32, kmax: i64) -> Check {
    let alg = page.algebra();
    let field = alg.field();
    let laurent = page.algebra().generator_by_name("iota").unwrap().kind == mapspace_core::GeneratorKind::Laurent;
    let ks: Vec<i64> = (1..=kmax).chain((-kmax..=-1).filter(|_| laurent)).collect();
    for &k in &ks {
        let x = Element::monomial(alg, &[("iota", k)]).unwrap();
        let expected = Element::monomial(alg, &[("c", n as i64), ("u", 1), ("iota", k - 1)])
            .unwrap()
            .scale(&field.from_i64((n as i64 + 1) * k));
        let got = page.differential().apply(&x).unwrap();
        if got != expected {
            return Err(format!("n={n} {field} k={k}: d = {got}, expected {expected}"));
        }
    }
    Ok(format!("{} powers", ks.len()))
}

/// Ordinary → Regraded → Ordinary is the identity, and the shift is `2n`.
pub fn grading_involution(space: SpaceSpec, cutoff: i64) -> Check {
    let ks = weights_for(&space);
    let t = betti_table(space, &ks, cutoff, Grading::Ordinary).map_err(|e| e.to_string())?;
    let r = t.to_grading(Grading::Regraded);
    if r.to_grading(Grading::Ordinary) != t {
        return Err(format!("{space:?}: round trip changed the table"));
    }
    for (k, d, v) in t.entries() {
        if r.get(k, d - space.shift()) != v {
            return Err(format!("{space:?}: shift mismatch at ({k}, {d})"));
        }
    }
    let direct = betti_table(space, &ks, cutoff, Grading::Regraded).map_err(|e| e.to_string())?;
    if direct != r {
        return Err(format!("{space:?}: regraded table differs from converted table"));
    }
    Ok(format!("{} entries", t.entries().count()))
}
