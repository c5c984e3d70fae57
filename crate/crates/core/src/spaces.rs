//! Builders for the E² pages of the free mapping space `L²ℙⁿ` and of its
//! holomorphic subspace.
//!
//! The fiber algebra is the homology of `Ω²ℙⁿ` (Loop) or of the based
//! rational maps (Hol), tensored with `H*(ℙⁿ)` graded negatively. The only
//! nonzero differential is `d(ι) = (n+1) u cⁿ`.
//!
//! Generator schedule, with `u` of degree `2n - 1` and weight 1:
//!
//! | field | generators                                                     |
//! |-------|----------------------------------------------------------------|
//! | `Q`   | `ι`, `u` (exterior)                                            |
//! | `F_2` | `ι`, `u`, `Qⁱu` of degree `2^{i+1}n - 1`, weight `2^i`, all polynomial |
//! | `F_p` | `ι`, `u`, `Qⁱu` (exterior), `βQⁱu` (polynomial), weight `pⁱ`   |
//!
//! `ι` is Laurent for Loop and polynomial for Hol. For odd `p` the degrees
//! follow `deg Q(y) = p·deg y + (p - 1)` and `deg βx = deg x - 1`, which is
//! our own derivation: it reproduces the mod 2 degrees at `p = 2`, giving
//! `deg Qⁱu = 2pⁱn - 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{
    generator_horizon, Element, GeneratorDecl, GeneratorKind, GeneratorTemplate, GradedAlgebra, Monomial,
};
use crate::dga::{check_inclusion, Derivation, DgaPage};
use crate::error::{Error, Result};
use crate::scalars::Field;

pub const IOTA: &str = "iota";
pub const U: &str = "u";
pub const C: &str = "c";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Continuous maps, all components.
    Loop,
    /// Holomorphic maps, components `k >= 0`.
    Hol,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Loop => "loop",
            Variant::Hol => "hol",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "loop" => Ok(Variant::Loop),
            "hol" => Ok(Variant::Hol),
            other => Err(Error::InvalidParameter(format!(
                "unknown space `{other}` (expected `loop` or `hol`)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    pub n: u32,
    pub field: Field,
    pub variant: Variant,
}

impl SpaceSpec {
    pub fn new(n: u32, field: Field, variant: Variant) -> Result<SpaceSpec> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(SpaceSpec { n, field, variant })
    }

    /// Offset between ordinary and internal degrees, `2n`.
    pub fn shift(&self) -> i64 {
        2 * self.n as i64
    }

    pub fn allows_component(&self, k: i64) -> bool {
        self.variant == Variant::Loop || k >= 0
    }
}

/// Name of the `i`-fold iterated Dyer–Lashof operation on `u`.
pub fn q_name(i: usize) -> String {
    if i == 1 {
        "Qu".to_string()
    } else {
        format!("Q{i}u")
    }
}

pub fn beta_q_name(i: usize) -> String {
    format!("b{}", q_name(i))
}

/// The generators of the fiber algebra, family `i` holding `Qⁱu` (and `βQⁱu`).
#[derive(Clone, Copy, Debug)]
pub struct GeneratorSchedule {
    pub n: u32,
    pub field: Field,
    pub variant: Variant,
}

impl GeneratorSchedule {
    /// Degree and weight of `Qⁱu`, or `None` on overflow.
    fn q_data(&self, i: usize) -> Option<(i64, i64)> {
        let p = self.field.characteristic() as i64;
        let mut degree = 2 * self.n as i64 - 1;
        let mut weight = 1i64;
        for _ in 0..i {
            degree = degree.checked_mul(p)?.checked_add(p - 1)?;
            weight = weight.checked_mul(p)?;
        }
        Some((degree, weight))
    }
}

impl GeneratorTemplate for GeneratorSchedule {
    fn family(&self, index: usize) -> Option<Vec<GeneratorDecl>> {
        use GeneratorKind::*;
        let characteristic = self.field.characteristic();
        if index == 0 {
            let iota_kind = match self.variant {
                Variant::Loop => Laurent,
                Variant::Hol => Polynomial,
            };
            let u_kind = if characteristic == 2 { Polynomial } else { Exterior };
            return Some(vec![
                GeneratorDecl::new(IOTA, 0, 1, iota_kind),
                GeneratorDecl::new(U, 2 * self.n as i64 - 1, 1, u_kind),
            ]);
        }
        if characteristic == 0 {
            return None;
        }
        let (degree, weight) = self.q_data(index)?;
        if characteristic == 2 {
            Some(vec![GeneratorDecl::new(q_name(index), degree, weight, Polynomial)])
        } else {
            Some(vec![
                GeneratorDecl::new(q_name(index), degree, weight, Exterior),
                GeneratorDecl::new(beta_q_name(index), degree - 1, weight, Polynomial),
            ])
        }
    }
}

/// Fiber algebra with every generator family up to the horizon for
/// `cutoff`.
pub fn pontrjagin_algebra(n: u32, field: Field, variant: Variant, cutoff: i64) -> Result<GradedAlgebra> {
    let spec = SpaceSpec::new(n, field, variant)?;
    let schedule = GeneratorSchedule {
        n: spec.n,
        field,
        variant,
    };
    let horizon = generator_horizon(&schedule, cutoff);
    let mut alg = GradedAlgebra::new(field);
    for i in 0..=horizon {
        for decl in schedule.family(i).unwrap_or_default() {
            alg.declare(&decl)?;
        }
    }
    Ok(alg)
}

/// `H*(ℙⁿ) = k[c]/c^{n+1}` with `c` in degree -2.
pub fn projective_cohomology(n: u32, field: Field) -> Result<GradedAlgebra> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut alg = GradedAlgebra::new(field);
    alg.declare_generator(C, -2, 0, GeneratorKind::Truncated(n))?;
    Ok(alg)
}

/// The E² page through ordinary degree `cutoff`: fiber algebra ⊗ `H*(ℙⁿ)`
/// with `d(ι) = (n+1) u cⁿ`.
pub fn e2_page(space: SpaceSpec, cutoff: i64) -> Result<DgaPage> {
    // One degree of padding for the incoming differential.
    e2_page_with_generators(space, cutoff + 1)
}

/// E² page built from the generators of degree at most `generator_cutoff`.
pub fn e2_page_with_generators(space: SpaceSpec, generator_cutoff: i64) -> Result<DgaPage> {
    let n = space.n;
    let schedule = GeneratorSchedule {
        n,
        field: space.field,
        variant: space.variant,
    };
    let fiber = pontrjagin_algebra(n, space.field, space.variant, generator_cutoff)?;
    let alg = Arc::new(fiber.tensor(&projective_cohomology(n, space.field)?)?);

    let image = Element::monomial(&alg, &[(U, 1), (C, n as i64)])?.scale(&space.field.from_i64(n as i64 + 1));
    let d = Derivation::from_generator_images(&alg, [(alg.id_of(IOTA)?, image)])?;

    // A monomial containing a left-out generator of degree g has internal
    // degree at least g - 2n.
    let horizon = generator_horizon(&schedule, generator_cutoff);
    let complete_through = schedule
        .family(horizon + 1)
        .and_then(|f| f.iter().map(|g| g.degree).min())
        .map(|g| g - 1 - space.shift());
    DgaPage::new(d, complete_through)
}

/// The Hol page inside the Loop page, both through the same cutoff.
#[derive(Clone, Debug)]
pub struct HolToLoop {
    pub hol: DgaPage,
    pub loop_page: DgaPage,
}

impl HolToLoop {
    pub fn image(&self, m: &Monomial) -> Result<Monomial> {
        let e = Element::from_monomial(self.hol.algebra(), m.clone(), self.hol.algebra().field().one());
        let t = e.transport(self.loop_page.algebra())?;
        let m = t.terms().next().expect("inclusion is injective on monomials").0.clone();
        Ok(m)
    }

    /// The Hol monomial mapping onto `m`, if any.
    pub fn preimage(&self, m: &Monomial) -> Result<Option<Monomial>> {
        let loop_alg = self.loop_page.algebra();
        let hol_alg = self.hol.algebra();
        let mut exps = Vec::new();
        for &(id, e) in m.exponents() {
            let name = &loop_alg.generators()[id].name;
            let Some(g) = hol_alg.generator_by_name(name) else {
                return Ok(None);
            };
            if e < 0 && g.kind != GeneratorKind::Laurent {
                return Ok(None);
            }
            exps.push((g.id, e));
        }
        hol_alg.canonical_monomial(&exps)
    }
}

pub fn hol_to_loop_inclusion(n: u32, field: Field, cutoff: i64) -> Result<HolToLoop> {
    let hol = e2_page(SpaceSpec::new(n, field, Variant::Hol)?, cutoff)?;
    let loop_page = e2_page(SpaceSpec::new(n, field, Variant::Loop)?, cutoff)?;
    check_inclusion(&hol, &loop_page)?;
    Ok(HolToLoop { hol, loop_page })
}

/// Rational Betti numbers of the degree-`k` holomorphic component in
/// ordinary grading: `ℙ^{n-1}` plus reduced `ℙⁿ` raised by `2n - 1`, and
/// `ℙⁿ` itself for `k = 0`.
pub fn closed_form_rational_hol_betti(n: u32, k: i64) -> BTreeMap<i64, usize> {
    let n = n as i64;
    if k == 0 {
        return (0..=n).map(|j| (2 * j, 1)).collect();
    }
    let lower = (0..n).map(|j| (2 * j, 1));
    let upper = (1..=n).map(|j| (2 * j + 2 * n - 1, 1));
    lower.chain(upper).collect()
}
