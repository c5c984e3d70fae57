//! Bigraded graded-commutative algebras.
//!
//! Every generator carries a homological degree and a component weight. A
//! monomial's degree and weight are the exponent-weighted sums over its
//! generators. Generators of odd degree anticommute (Koszul sign
//! `(-1)^{|a||b|}`); over `F_2` all signs are trivial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

pub type GenId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Free polynomial generator, exponents `>= 0`.
    Polynomial,
    /// Invertible degree-0 generator, exponents in `Z`.
    Laurent,
    /// Square-zero generator, exponents in `{0, 1}`.
    Exterior,
    /// Truncated polynomial `x^{m+1} = 0`, exponents in `[0, m]`.
    Truncated(u32),
}

impl GeneratorKind {
    fn max_exponent(self) -> Option<i64> {
        match self {
            GeneratorKind::Exterior => Some(1),
            GeneratorKind::Truncated(m) => Some(m as i64),
            GeneratorKind::Polynomial | GeneratorKind::Laurent => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            GeneratorKind::Polynomial => "polynomial",
            GeneratorKind::Laurent => "Laurent",
            GeneratorKind::Exterior => "exterior",
            GeneratorKind::Truncated(_) => "truncated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub degree: i64,
    pub weight: i64,
    pub kind: GeneratorKind,
}

/// Generator data before it is assigned an id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
    pub kind: GeneratorKind,
}

impl GeneratorDecl {
    pub fn new(name: impl Into<String>, degree: i64, weight: i64, kind: GeneratorKind) -> Self {
        GeneratorDecl {
            name: name.into(),
            degree,
            weight,
            kind,
        }
    }
}

/// An indexed, possibly infinite list of generator families whose degrees
/// grow with the index.
pub trait GeneratorTemplate {
    /// Generators of family `index`, or `None` past the last family.
    fn family(&self, index: usize) -> Option<Vec<GeneratorDecl>>;
}

/// Smallest `i_max` such that every generator in a family of index `> i_max`
/// has degree above `cutoff`. Family minimum degrees must be nondecreasing.
pub fn generator_horizon<T: GeneratorTemplate + ?Sized>(template: &T, cutoff: i64) -> usize {
    let mut horizon = 0;
    let mut index = 1;
    while let Some(family) = template.family(index) {
        match family.iter().map(|g| g.degree).min() {
            Some(d) if d <= cutoff => horizon = index,
            Some(_) => break,
            None => {}
        }
        index += 1;
    }
    horizon
}

/// A canonical monomial: strictly increasing generator ids, no zero exponents.
///
/// Monomials are ordered lexicographically on their dense exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(GenId, i64)>,
    degree: i64,
    weight: i64,
}

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial {
            exps: Vec::new(),
            degree: 0,
            weight: 0,
        }
    }

    pub fn exponents(&self) -> &[(GenId, i64)] {
        &self.exps
    }

    pub fn exponent(&self, id: GenId) -> i64 {
        self.exps.iter().find(|(g, _)| *g == id).map_or(0, |(_, e)| *e)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exps, &other.exps);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, f))) => return 0.cmp(&f),
                (Some(&(g, e)), Some(&(h, f))) => {
                    let ord = match g.cmp(&h) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                            e.cmp(&f)
                        }
                        Ordering::Less => {
                            i += 1;
                            e.cmp(&0)
                        }
                        Ordering::Greater => {
                            j += 1;
                            0.cmp(&f)
                        }
                    };
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: Field,
    generators: Vec<Generator>,
}

/// How the enumerator walks a finite `(degree, weight)` piece.
struct EnumerationPlan {
    /// Unbounded degree-0 generator whose exponent is solved from the weight.
    solved: Option<GenId>,
    walked: Vec<GenId>,
}

impl GradedAlgebra {
    pub fn new(field: Field) -> Self {
        GradedAlgebra {
            field,
            generators: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: GenId) -> Option<&Generator> {
        self.generators.get(id)
    }

    pub fn generator_by_name(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn id_of(&self, name: &str) -> Result<GenId> {
        self.generator_by_name(name)
            .map(|g| g.id)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn declare_generator(
        &mut self,
        name: impl Into<String>,
        degree: i64,
        weight: i64,
        kind: GeneratorKind,
    ) -> Result<GenId> {
        let name = name.into();
        if self.generator_by_name(&name).is_some() {
            return Err(Error::DuplicateName(name));
        }
        if kind == GeneratorKind::Laurent && degree != 0 {
            return Err(Error::LaurentNonzeroDegree { name, degree });
        }
        let characteristic = self.field.characteristic();
        if characteristic != 2 {
            let odd = degree.rem_euclid(2) == 1;
            let legal = match kind {
                GeneratorKind::Exterior => odd,
                _ => !odd,
            };
            if !legal {
                return Err(Error::ParityViolation {
                    name,
                    degree,
                    kind: kind.name(),
                    characteristic,
                });
            }
        }
        let id = self.generators.len();
        self.generators.push(Generator {
            id,
            name,
            degree,
            weight,
            kind,
        });
        Ok(id)
    }

    pub fn declare(&mut self, decl: &GeneratorDecl) -> Result<GenId> {
        self.declare_generator(decl.name.clone(), decl.degree, decl.weight, decl.kind)
    }

    /// `self ⊗ other`: generators of `other` follow those of `self`.
    pub fn tensor(&self, other: &GradedAlgebra) -> Result<GradedAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for g in &other.generators {
            out.declare_generator(g.name.clone(), g.degree, g.weight, g.kind)?;
        }
        Ok(out)
    }

    /// Canonical monomial for the given exponents, or `None` when an exterior
    /// or truncated exponent runs past its bound. Repeated ids are summed.
    pub fn canonical_monomial(&self, exponents: &[(GenId, i64)]) -> Result<Option<Monomial>> {
        let mut merged: BTreeMap<GenId, i64> = BTreeMap::new();
        for &(id, e) in exponents {
            if id >= self.generators.len() {
                return Err(Error::UnknownGenerator(format!("#{id}")));
            }
            *merged.entry(id).or_insert(0) += e;
        }
        for (&id, &e) in &merged {
            let g = &self.generators[id];
            if e < 0 && g.kind != GeneratorKind::Laurent {
                return Err(Error::InvalidParameter(format!(
                    "negative exponent {e} on non-Laurent generator `{}`",
                    g.name
                )));
            }
            if g.kind.max_exponent().is_some_and(|m| e > m) {
                return Ok(None);
            }
        }
        let exps: Vec<_> = merged.into_iter().filter(|&(_, e)| e != 0).collect();
        Ok(Some(self.monomial_unchecked(exps)))
    }

    /// Same as [`canonical_monomial`](Self::canonical_monomial), addressing
    /// generators by name.
    pub fn monomial(&self, exponents: &[(&str, i64)]) -> Result<Option<Monomial>> {
        let ids = exponents
            .iter()
            .map(|&(name, e)| Ok((self.id_of(name)?, e)))
            .collect::<Result<Vec<_>>>()?;
        self.canonical_monomial(&ids)
    }

    fn monomial_unchecked(&self, exps: Vec<(GenId, i64)>) -> Monomial {
        let (mut degree, mut weight) = (0, 0);
        for &(id, e) in &exps {
            degree += self.generators[id].degree * e;
            weight += self.generators[id].weight * e;
        }
        Monomial { exps, degree, weight }
    }

    fn is_odd(&self, id: GenId, e: i64) -> bool {
        (self.generators[id].degree * e).rem_euclid(2) == 1
    }

    /// Product of two monomials as `(negated, product)`, or `None` when the
    /// product vanishes.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut negated = false;
        if self.field.characteristic() != 2 {
            // Moving each factor of `b` leftwards past the factors of `a`
            // with larger id.
            for &(j, f) in &b.exps {
                if !self.is_odd(j, f) {
                    continue;
                }
                let passes = a.exps.iter().filter(|&&(i, e)| i > j && self.is_odd(i, e)).count();
                negated ^= passes % 2 == 1;
            }
        }
        let mut exps = Vec::with_capacity(a.exps.len() + b.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < a.exps.len() || j < b.exps.len() {
            let (id, e) = match (a.exps.get(i), b.exps.get(j)) {
                (Some(&(g, e)), Some(&(h, f))) if g == h => {
                    i += 1;
                    j += 1;
                    (g, e + f)
                }
                (Some(&(g, e)), Some(&(h, _))) if g < h => {
                    i += 1;
                    (g, e)
                }
                (Some(&(g, e)), None) => {
                    i += 1;
                    (g, e)
                }
                (_, Some(&(h, f))) => {
                    j += 1;
                    (h, f)
                }
                (None, None) => unreachable!(),
            };
            if self.generators[id].kind.max_exponent().is_some_and(|m| e > m) {
                return None;
            }
            if e != 0 {
                exps.push((id, e));
            }
        }
        Some((
            negated,
            Monomial {
                exps,
                degree: a.degree + b.degree,
                weight: a.weight + b.weight,
            },
        ))
    }

    fn plan(&self) -> Result<EnumerationPlan> {
        let mut solved = None;
        let mut walked = Vec::new();
        for g in &self.generators {
            let bounded = g.kind.max_exponent().is_some();
            if g.degree < 0 && !bounded {
                return Err(Error::InfiniteBasis(format!(
                    "generator `{}` has negative degree and unbounded exponents",
                    g.name
                )));
            }
            if g.degree == 0 && !bounded {
                if g.weight == 0 {
                    return Err(Error::InfiniteBasis(format!(
                        "generator `{}` has bidegree (0, 0) and unbounded exponents",
                        g.name
                    )));
                }
                if let Some(prev) = solved {
                    let prev: GenId = prev;
                    return Err(Error::InfiniteBasis(format!(
                        "both `{}` and `{}` are unbounded in degree 0",
                        self.generators[prev].name, g.name
                    )));
                }
                solved = Some(g.id);
            } else {
                walked.push(g.id);
            }
        }
        Ok(EnumerationPlan { solved, walked })
    }

    /// Checks that every `(degree, weight)` piece is finite.
    pub fn check_finiteness(&self) -> Result<()> {
        self.plan().map(|_| ())
    }

    /// All canonical monomials of the given degree and weight, in ascending
    /// monomial order.
    pub fn enumerate_basis(&self, degree: i64, weight: i64) -> Result<Vec<Monomial>> {
        let plan = self.plan()?;
        let walked: Vec<&Generator> = plan.walked.iter().map(|&id| &self.generators[id]).collect();
        let len = walked.len();
        // Least and greatest degree the generators from position `i` on can add.
        let mut min_suffix = vec![0i64; len + 1];
        let mut max_suffix: Vec<Option<i64>> = vec![Some(0); len + 1];
        for i in (0..len).rev() {
            let g = walked[i];
            let bound = g.kind.max_exponent();
            min_suffix[i] = min_suffix[i + 1] + if g.degree < 0 { g.degree * bound.unwrap() } else { 0 };
            max_suffix[i] = match (max_suffix[i + 1], bound) {
                _ if g.degree <= 0 => max_suffix[i + 1],
                (Some(m), Some(b)) => Some(m + g.degree * b),
                _ => None,
            };
        }

        let mut partial = vec![0i64; len];
        let mut found: Vec<Vec<i64>> = Vec::new();
        walk(&walked, 0, degree, &min_suffix, &max_suffix, &mut partial, &mut found);

        let mut out = Vec::with_capacity(found.len());
        for exps in found {
            let rest_weight: i64 = exps.iter().zip(&walked).map(|(e, g)| e * g.weight).sum();
            let mut sparse: Vec<(GenId, i64)> = exps
                .iter()
                .zip(&walked)
                .filter(|(e, _)| **e != 0)
                .map(|(e, g)| (g.id, *e))
                .collect();
            match plan.solved {
                Some(id) => {
                    let g = &self.generators[id];
                    let diff = weight - rest_weight;
                    if diff % g.weight != 0 {
                        continue;
                    }
                    let e = diff / g.weight;
                    if e < 0 && g.kind != GeneratorKind::Laurent {
                        continue;
                    }
                    if e != 0 {
                        let pos = sparse.partition_point(|&(h, _)| h < id);
                        sparse.insert(pos, (id, e));
                    }
                }
                None if rest_weight != weight => continue,
                None => {}
            }
            out.push(self.monomial_unchecked(sparse));
        }
        out.sort();
        Ok(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        m.exps
            .iter()
            .map(|&(id, e)| {
                let name = &self.generators[id].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn walk(
    gens: &[&Generator],
    pos: usize,
    remaining: i64,
    min_suffix: &[i64],
    max_suffix: &[Option<i64>],
    partial: &mut Vec<i64>,
    found: &mut Vec<Vec<i64>>,
) {
    if pos == gens.len() {
        if remaining == 0 {
            found.push(partial.clone());
        }
        return;
    }
    let g = gens[pos];
    let bound = g.kind.max_exponent();
    let mut e = 0;
    loop {
        if bound.is_some_and(|b| e > b) {
            break;
        }
        let rest = remaining - e * g.degree;
        if g.degree > 0 && rest < min_suffix[pos + 1] {
            break;
        }
        let feasible = rest >= min_suffix[pos + 1] && max_suffix[pos + 1].is_none_or(|m| rest <= m);
        if feasible {
            partial[pos] = e;
            walk(gens, pos + 1, rest, min_suffix, max_suffix, partial, found);
        }
        e += 1;
    }
    partial[pos] = 0;
}

/// A finite linear combination of canonical monomials.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<GradedAlgebra>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.terms == other.terms
    }
}

impl Eq for Element {}

pub(crate) fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Element {
    pub fn zero(algebra: &Arc<GradedAlgebra>) -> Element {
        Element {
            algebra: Arc::clone(algebra),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<GradedAlgebra>) -> Element {
        Element::from_monomial(algebra, Monomial::unit(), algebra.field().one())
    }

    pub fn from_monomial(algebra: &Arc<GradedAlgebra>, m: Monomial, coeff: Scalar) -> Element {
        let mut out = Element::zero(algebra);
        if !coeff.is_zero() {
            out.terms.insert(m, coeff);
        }
        out
    }

    pub fn generator(algebra: &Arc<GradedAlgebra>, id: GenId) -> Result<Element> {
        let m = algebra
            .canonical_monomial(&[(id, 1)])?
            .expect("a single generator never exceeds its bound");
        Ok(Element::from_monomial(algebra, m, algebra.field().one()))
    }

    /// Monomial addressed by generator names, with coefficient 1 (or zero if
    /// it vanishes by truncation).
    pub fn monomial(algebra: &Arc<GradedAlgebra>, exponents: &[(&str, i64)]) -> Result<Element> {
        Ok(match algebra.monomial(exponents)? {
            Some(m) => Element::from_monomial(algebra, m, algebra.field().one()),
            None => Element::zero(algebra),
        })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.algebra.field().zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// `(degree, weight)` shared by all terms; `None` for zero.
    pub fn bidegree(&self) -> Option<(i64, i64)> {
        self.terms.keys().next().map(|m| (m.degree, m.weight))
    }

    /// The zero element counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut keys = self.terms.keys();
        match keys.next() {
            None => true,
            Some(first) => keys.all(|m| m.degree == first.degree && m.weight == first.weight),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, other: &Element) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-self.algebra.field().one())
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        let mut out = Element::zero(&self.algebra);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = Element::zero(&self.algebra);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((negated, m)) = self.algebra.multiply_monomials(a, b) {
                    let c = x * y;
                    out.add_term(m, if negated { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Same element viewed in `target`, mapping generators by name.
    pub fn transport(&self, target: &Arc<GradedAlgebra>) -> Result<Element> {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let exps = m
                .exps
                .iter()
                .map(|&(id, e)| Ok((target.id_of(&self.algebra.generators[id].name)?, e)))
                .collect::<Result<Vec<_>>>()?;
            if let Some(tm) = target.canonical_monomial(&exps)? {
                out.add_term(tm, c.clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = self.algebra.format_monomial(m);
                match (c.is_one(), m.is_unit()) {
                    (true, _) => mono,
                    (false, true) => c.to_string(),
                    (false, false) => format!("{c} {mono}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs).expect("elements of different algebras")
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("elements of different algebras")
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("elements of different algebras")
    }
}
