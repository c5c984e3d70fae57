//! Derivation differentials and their homology.
//!
//! A [`Derivation`] of bidegree `(-1, 0)` is fixed by its values on
//! generators and extended by the signed Leibniz rule
//! `d(ab) = d(a) b + (-1)^{|a|} a d(b)`. Homology is computed one
//! `(degree, weight)` cell at a time from exact ranks.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{same_algebra, Element, GenId, GeneratorKind, GradedAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalars::Scalar;

#[derive(Clone, Debug)]
pub struct Derivation {
    algebra: Arc<GradedAlgebra>,
    images: BTreeMap<GenId, Element>,
}

impl Derivation {
    pub fn zero(algebra: &Arc<GradedAlgebra>) -> Derivation {
        Derivation {
            algebra: Arc::clone(algebra),
            images: BTreeMap::new(),
        }
    }

    /// Validates bidegrees and `d∘d = 0` on generators, which by the Leibniz
    /// rule is enough for `d∘d = 0` everywhere.
    pub fn from_generator_images(
        algebra: &Arc<GradedAlgebra>,
        images: impl IntoIterator<Item = (GenId, Element)>,
    ) -> Result<Derivation> {
        let mut map = BTreeMap::new();
        for (id, image) in images {
            let g = algebra
                .generator(id)
                .ok_or_else(|| Error::UnknownGenerator(format!("#{id}")))?;
            if !same_algebra(image.algebra(), algebra) {
                return Err(Error::AlgebraMismatch);
            }
            if !image.is_homogeneous() {
                return Err(Error::InhomogeneousImage(g.name.clone()));
            }
            if let Some((degree, weight)) = image.bidegree() {
                if (degree, weight) != (g.degree - 1, g.weight) {
                    return Err(Error::WrongBidegree {
                        generator: g.name.clone(),
                        degree,
                        weight,
                        expected_degree: g.degree - 1,
                        expected_weight: g.weight,
                    });
                }
                map.insert(id, image);
            }
        }
        let d = Derivation {
            algebra: Arc::clone(algebra),
            images: map,
        };
        for (id, image) in &d.images {
            if !d.apply(image)?.is_zero() {
                return Err(Error::NotSquareZero(algebra.generators()[*id].name.clone()));
            }
        }
        Ok(d)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    /// Image of a generator; zero when none was given.
    pub fn image(&self, id: GenId) -> Element {
        self.images
            .get(&id)
            .cloned()
            .unwrap_or_else(|| Element::zero(&self.algebra))
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !same_algebra(x.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = Element::zero(&self.algebra);
        for (m, c) in x.terms() {
            for (dm, dc) in self.apply_monomial(m).terms() {
                out.add_term(dm.clone(), dc * c);
            }
        }
        Ok(out)
    }

    /// `d(g_1^{e_1} ... g_r^{e_r})` as `Σ ± prefix · d(g_i^{e_i}) · suffix`.
    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let alg = &self.algebra;
        let field = alg.field();
        let mut out = Element::zero(alg);
        let exps = m.exponents();
        for (i, &(id, e)) in exps.iter().enumerate() {
            let Some(dg) = self.images.get(&id) else { continue };
            // d(g^e) = e g^{e-1} d(g). For odd g only e = 1 occurs outside
            // characteristic 2, where the formula holds without signs.
            let power = alg
                .canonical_monomial(&[(id, e - 1)])
                .expect("generator id is valid")
                .expect("lower power of a nonzero power is nonzero");
            let d_power = &Element::from_monomial(alg, power, field.from_i64(e)) * dg;
            let prefix = alg
                .canonical_monomial(&exps[..i])
                .expect("prefix of a canonical monomial")
                .expect("prefix of a nonzero monomial");
            let suffix = alg
                .canonical_monomial(&exps[i + 1..])
                .expect("suffix of a canonical monomial")
                .expect("suffix of a nonzero monomial");
            let sign = if prefix.degree().rem_euclid(2) == 1 {
                -field.one()
            } else {
                field.one()
            };
            let term = &(&Element::from_monomial(alg, prefix, sign) * &d_power)
                * &Element::from_monomial(alg, suffix, field.one());
            out = &out + &term;
        }
        out
    }
}

/// Matrix of `d` from the `(degree, weight)` basis to the `(degree - 1, weight)`
/// basis, columns in basis order.
#[derive(Clone, Debug)]
pub struct DifferentialMatrix {
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub matrix: SparseMatrix,
}

pub fn differential_matrix(d: &Derivation, degree: i64, weight: i64) -> Result<DifferentialMatrix> {
    let alg = d.algebra();
    let source = alg.enumerate_basis(degree, weight)?;
    let target = alg.enumerate_basis(degree - 1, weight)?;
    let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let columns = source
        .iter()
        .map(|m| {
            d.apply_monomial(m)
                .terms()
                .map(|(t, c)| (index[t], c.clone()))
                .collect()
        })
        .collect();
    let matrix = SparseMatrix::from_columns(alg.field(), target.len(), columns);
    Ok(DifferentialMatrix { source, target, matrix })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageLabel {
    E2,
    EInfinity,
}

/// A page of the spectral sequence presented as one differential algebra.
#[derive(Clone, Debug)]
pub struct DgaPage {
    algebra: Arc<GradedAlgebra>,
    differential: Derivation,
    label: PageLabel,
    complete_through: Option<i64>,
}

impl DgaPage {
    /// `complete_through` is the largest internal degree whose basis is not
    /// affected by generators left out of the algebra; `None` if nothing was
    /// left out.
    pub fn new(differential: Derivation, complete_through: Option<i64>) -> Result<DgaPage> {
        differential.algebra().check_finiteness()?;
        Ok(DgaPage {
            algebra: Arc::clone(differential.algebra()),
            differential,
            label: PageLabel::E2,
            complete_through,
        })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn label(&self) -> PageLabel {
        self.label
    }

    pub fn complete_through(&self) -> Option<i64> {
        self.complete_through
    }

    fn require_complete(&self, requested: i64, needed: i64) -> Result<()> {
        match self.complete_through {
            Some(available) if needed > available => Err(Error::CutoffTooTight {
                requested,
                needed,
                available,
            }),
            _ => Ok(()),
        }
    }

    pub fn matrix(&self, degree: i64, weight: i64) -> Result<DifferentialMatrix> {
        self.require_complete(degree, degree)?;
        differential_matrix(&self.differential, degree, weight)
    }

    /// Coordinates of a homogeneous element in the basis of its bidegree.
    fn coordinates(&self, x: &Element, degree: i64, weight: i64) -> Result<Vec<Scalar>> {
        let basis = self.algebra.enumerate_basis(degree, weight)?;
        Ok(basis.iter().map(|m| x.coefficient(m)).collect())
    }

    pub fn is_cycle(&self, x: &Element) -> Result<bool> {
        Ok(self.differential.apply(x)?.is_zero())
    }

    /// Whether the homogeneous element `x` lies in the image of `d`.
    pub fn is_boundary(&self, x: &Element) -> Result<bool> {
        if !x.is_homogeneous() {
            return Err(Error::InvalidParameter("element is not homogeneous".into()));
        }
        let Some((degree, weight)) = x.bidegree() else {
            return Ok(true);
        };
        self.require_complete(degree, degree + 1)?;
        let above = differential_matrix(&self.differential, degree + 1, weight)?;
        Ok(above.matrix.spans(&self.coordinates(x, degree, weight)?))
    }

    /// `x` is a cycle representing a nonzero homology class.
    pub fn is_nonzero_class(&self, x: &Element) -> Result<bool> {
        Ok(!x.is_zero() && self.is_cycle(x)? && !self.is_boundary(x)?)
    }
}

/// Rank data for one `(degree, weight)` cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub degree: i64,
    pub weight: i64,
    pub dim_source: usize,
    /// Rank of `d` leaving this cell.
    pub rank_d_here: usize,
    /// Rank of `d` arriving from `degree + 1`.
    pub rank_d_above: usize,
    pub betti: usize,
}

pub type RankProfiles = BTreeMap<(i64, i64), RankProfile>;

/// Betti numbers for every `(degree, weight)` with degree in `degrees`.
/// One degree above the range is read for the incoming ranks.
pub fn homology_dimensions(page: &DgaPage, degrees: RangeInclusive<i64>, weights: &[i64]) -> Result<RankProfiles> {
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if lo > hi {
        return Ok(RankProfiles::new());
    }
    page.require_complete(hi, hi + 1)?;
    let cells: Vec<(i64, i64)> = weights
        .iter()
        .flat_map(|&w| (lo..=hi + 1).map(move |deg| (deg, w)))
        .collect();
    let ranks: BTreeMap<(i64, i64), (usize, usize)> = cells
        .par_iter()
        .map(|&(deg, w)| {
            let m = differential_matrix(&page.differential, deg, w)?;
            Ok(((deg, w), (m.source.len(), m.matrix.rank())))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    let mut out = RankProfiles::new();
    for &w in weights {
        for deg in lo..=hi {
            let (dim_source, rank_d_here) = ranks[&(deg, w)];
            let rank_d_above = ranks[&(deg + 1, w)].1;
            out.insert(
                (deg, w),
                RankProfile {
                    degree: deg,
                    weight: w,
                    dim_source,
                    rank_d_here,
                    rank_d_above,
                    betti: dim_source - rank_d_here - rank_d_above,
                },
            );
        }
    }
    Ok(out)
}

/// Rank of `H(sub) → H(big)` in one cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InducedMapCell {
    pub degree: i64,
    pub weight: i64,
    pub source_betti: usize,
    pub target_betti: usize,
    pub rank: usize,
    pub injective: bool,
}

/// Checks that `sub`'s generators sit inside `big` with the same bidegree
/// (a polynomial generator may become Laurent) and that the inclusion
/// commutes with both differentials on generators.
pub fn check_inclusion(sub: &DgaPage, big: &DgaPage) -> Result<()> {
    for g in sub.algebra.generators() {
        let h = big
            .algebra
            .generator_by_name(&g.name)
            .ok_or_else(|| Error::UnknownGenerator(g.name.clone()))?;
        let kinds_ok = g.kind == h.kind || (g.kind == GeneratorKind::Polynomial && h.kind == GeneratorKind::Laurent);
        if (g.degree, g.weight) != (h.degree, h.weight) || !kinds_ok {
            return Err(Error::NotAChainMap(format!("generator `{}` differs", g.name)));
        }
        let along_sub = sub.differential.image(g.id).transport(&big.algebra)?;
        let along_big = big.differential.image(h.id);
        if along_sub != along_big {
            return Err(Error::NotAChainMap(format!("d({})", g.name)));
        }
    }
    Ok(())
}

pub fn induced_map_on_homology(
    sub: &DgaPage,
    big: &DgaPage,
    degrees: RangeInclusive<i64>,
    weights: &[i64],
) -> Result<BTreeMap<(i64, i64), InducedMapCell>> {
    check_inclusion(sub, big)?;
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if lo > hi {
        return Ok(BTreeMap::new());
    }
    sub.require_complete(hi, hi + 1)?;
    big.require_complete(hi, hi + 1)?;
    let cells: Vec<(i64, i64)> = weights
        .iter()
        .flat_map(|&w| (lo..=hi).map(move |deg| (deg, w)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(deg, w)| induced_cell(sub, big, deg, w).map(|c| ((deg, w), c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(results.into_iter().collect())
}

fn induced_cell(sub: &DgaPage, big: &DgaPage, degree: i64, weight: i64) -> Result<InducedMapCell> {
    let sub_here = differential_matrix(&sub.differential, degree, weight)?;
    let sub_above = differential_matrix(&sub.differential, degree + 1, weight)?;
    let big_here = differential_matrix(&big.differential, degree, weight)?;
    let big_above = differential_matrix(&big.differential, degree + 1, weight)?;

    let field = big.algebra.field();
    let index: HashMap<&Monomial, usize> = big_here.source.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut images = Vec::new();
    for m in &sub_here.source {
        let t = Element::from_monomial(&sub.algebra, m.clone(), field.one()).transport(&big.algebra)?;
        let (tm, _) = t.terms().next().expect("inclusion sends basis monomials to monomials");
        images.push(index[tm]);
    }

    let cycles = sub_here.matrix.kernel();
    let cycle_columns: Vec<Vec<(usize, Scalar)>> = cycles
        .iter()
        .map(|z| {
            z.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (images[i], c.clone()))
                .collect()
        })
        .collect();
    let pushed = SparseMatrix::from_columns(field, big_here.source.len(), cycle_columns);
    let boundary_rank = big_above.matrix.rank();
    let rank = big_above.matrix.hconcat(&pushed).rank() - boundary_rank;

    let source_betti = cycles.len() - sub_above.matrix.rank();
    let target_betti = big_here.source.len() - big_here.matrix.rank() - boundary_rank;
    Ok(InducedMapCell {
        degree,
        weight,
        source_betti,
        target_betti,
        rank,
        injective: rank == source_betti,
    })
}
