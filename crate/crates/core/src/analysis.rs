//! Betti tables, Poincaré series and the verification checks.
//!
//! Internal degrees are the monomial degrees of the E² page, with `c` in
//! degree -2. They coincide with the regraded homology `ℍ_* = H_{*+2n}`;
//! ordinary degrees are internal degrees plus `2n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::algebra::Element;
use crate::dga::{homology_dimensions, induced_map_on_homology, DgaPage, RankProfile, RankProfiles};
use crate::error::{Error, Result};
use crate::scalars::Field;
use crate::spaces::{e2_page, hol_to_loop_inclusion, SpaceSpec, Variant, IOTA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Ordinary,
    Regraded,
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grading::Ordinary => "ordinary",
            Grading::Regraded => "regraded",
        })
    }
}

impl FromStr for Grading {
    type Err = Error;
    fn from_str(s: &str) -> Result<Grading> {
        match s.to_ascii_lowercase().as_str() {
            "ordinary" => Ok(Grading::Ordinary),
            "regraded" => Ok(Grading::Regraded),
            other => Err(Error::InvalidParameter(format!(
                "unknown grading `{other}` (expected `ordinary` or `regraded`)"
            ))),
        }
    }
}

/// Betti numbers of one component, degree → dimension, zeros omitted.
pub type BettiColumn = BTreeMap<i64, usize>;

/// Per-component Betti numbers through an ordinary-degree cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub space: SpaceSpec,
    pub grading: Grading,
    /// Ordinary degree the table was computed through, whatever its grading.
    pub cutoff: i64,
    components: Vec<i64>,
    entries: BTreeMap<(i64, i64), usize>,
}

impl BettiTable {
    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn get(&self, component: i64, degree: i64) -> usize {
        self.entries.get(&(component, degree)).copied().unwrap_or(0)
    }

    /// `(component, degree, dimension)` in ascending order, zeros omitted.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, usize)> + '_ {
        self.entries.iter().map(|(&(k, d), &v)| (k, d, v))
    }

    pub fn column(&self, component: i64) -> BettiColumn {
        self.entries
            .range((component, i64::MIN)..=(component, i64::MAX))
            .map(|(&(_, d), &v)| (d, v))
            .collect()
    }

    pub fn to_grading(&self, grading: Grading) -> BettiTable {
        let shift = match (self.grading, grading) {
            (a, b) if a == b => 0,
            (Grading::Regraded, Grading::Ordinary) => self.space.shift(),
            _ => -self.space.shift(),
        };
        BettiTable {
            grading,
            entries: self.entries.iter().map(|(&(k, d), &v)| ((k, d + shift), v)).collect(),
            components: self.components.clone(),
            ..*self
        }
    }

    /// Highest degree covered, in this table's grading.
    pub fn top_degree(&self) -> i64 {
        match self.grading {
            Grading::Ordinary => self.cutoff,
            Grading::Regraded => self.cutoff - self.space.shift(),
        }
    }

    pub fn poincare_series(&self, component: i64) -> PoincareSeries {
        PoincareSeries {
            component,
            grading: self.grading,
            top_degree: self.top_degree(),
            coefficients: self.column(component),
        }
    }
}

/// `Σ b_d t^d` for one component through the table's top degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    pub component: i64,
    pub grading: Grading,
    pub top_degree: i64,
    pub coefficients: BettiColumn,
}

impl PoincareSeries {
    pub fn coefficient(&self, degree: i64) -> usize {
        self.coefficients.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .map(|(&d, &b)| {
                let power = match d {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{d}"),
                };
                match (b, power.is_empty()) {
                    (_, true) => b.to_string(),
                    (1, false) => power,
                    _ => format!("{b}{power}"),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

fn check_components(space: &SpaceSpec, components: &[i64]) -> Result<Vec<i64>> {
    if let Some(k) = components.iter().find(|&&k| !space.allows_component(k)) {
        return Err(Error::InvalidParameter(format!(
            "holomorphic components are nonnegative, got {k}"
        )));
    }
    let set: BTreeSet<i64> = components.iter().copied().collect();
    Ok(set.into_iter().collect())
}

/// Rank data for every internal degree up to the ordinary `cutoff`.
pub fn component_profiles(space: SpaceSpec, components: &[i64], cutoff: i64) -> Result<RankProfiles> {
    profiles_on_page(&e2_page(space, cutoff.max(0))?, space, components, cutoff)
}

fn profiles_on_page(page: &DgaPage, space: SpaceSpec, components: &[i64], cutoff: i64) -> Result<RankProfiles> {
    if cutoff < 0 {
        return Err(Error::InvalidParameter("cutoff must be nonnegative".into()));
    }
    let components = check_components(&space, components)?;
    let shift = space.shift();
    homology_dimensions(page, -shift..=cutoff - shift, &components)
}

fn table_from_profiles(
    space: SpaceSpec,
    components: &[i64],
    cutoff: i64,
    profiles: &RankProfiles,
    pick: impl Fn(&RankProfile) -> usize,
) -> Result<BettiTable> {
    let entries = profiles
        .values()
        .filter(|p| pick(p) > 0)
        .map(|p| ((p.weight, p.degree), pick(p)))
        .collect();
    Ok(BettiTable {
        space,
        grading: Grading::Regraded,
        cutoff,
        components: check_components(&space, components)?,
        entries,
    })
}

/// Betti numbers of E^∞, i.e. of the homology of the E² page.
pub fn betti_table(space: SpaceSpec, components: &[i64], cutoff: i64, grading: Grading) -> Result<BettiTable> {
    let profiles = component_profiles(space, components, cutoff)?;
    Ok(table_from_profiles(space, components, cutoff, &profiles, |p| p.betti)?.to_grading(grading))
}

/// [`betti_table`] on a page built elsewhere, e.g. with fewer generators.
/// Fails with `CutoffTooTight` if the page does not reach `cutoff`.
pub fn betti_table_on_page(
    page: &DgaPage,
    space: SpaceSpec,
    components: &[i64],
    cutoff: i64,
    grading: Grading,
) -> Result<BettiTable> {
    let profiles = profiles_on_page(page, space, components, cutoff)?;
    Ok(table_from_profiles(space, components, cutoff, &profiles, |p| p.betti)?.to_grading(grading))
}

/// Dimensions of the E² page itself.
pub fn e2_table(space: SpaceSpec, components: &[i64], cutoff: i64, grading: Grading) -> Result<BettiTable> {
    let profiles = component_profiles(space, components, cutoff)?;
    Ok(table_from_profiles(space, components, cutoff, &profiles, |p| p.dim_source)?.to_grading(grading))
}

/// Ordinary-grading Poincaré series of one component.
pub fn poincare_series(space: SpaceSpec, component: i64, cutoff: i64) -> Result<PoincareSeries> {
    Ok(betti_table(space, &[component], cutoff, Grading::Ordinary)?.poincare_series(component))
}

/// First cell (lowest degree) of a component where E^∞ is smaller than E².
pub fn collapse_witness(space: SpaceSpec, component: i64, cutoff: i64) -> Result<Option<RankProfile>> {
    let profiles = component_profiles(space, &[component], cutoff)?;
    Ok(profiles.into_values().find(|p| p.betti < p.dim_source))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypothesis of the statement being checked does not hold.
    NoClaim,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NoClaim => "NO-CLAIM",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    pub parameters: String,
    pub verdict: Verdict,
    /// First violation for `Fail`, confirming data otherwise.
    pub witness: String,
    pub details: Vec<String>,
}

impl VerificationReport {
    fn new(check: &str, parameters: String) -> Self {
        VerificationReport {
            check: check.to_string(),
            parameters,
            verdict: Verdict::Pass,
            witness: String::new(),
            details: Vec::new(),
        }
    }

    fn fail(&mut self, witness: String) {
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Fail;
            self.witness = witness;
        }
    }

    fn no_claim(mut self, why: String) -> Self {
        self.verdict = Verdict::NoClaim;
        self.witness = why;
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}]: {}",
            self.verdict, self.check, self.parameters, self.witness
        )
    }
}

fn format_components(components: &[i64]) -> String {
    components.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Whether the differential is predicted to vanish on component `k` mod `p`.
pub fn collapse_predicted(n: u32, p: u64, k: i64, variant: Variant) -> bool {
    let p = p as i64;
    let n = n as i64;
    (n + 1) % p == 0 || (variant == Variant::Hol && k == 0) || (p != 2 && k % p == 0)
}

/// Compares E² and E^∞ on every cell of every listed component, for both
/// variants (Hol only on `k >= 0`), against [`collapse_predicted`].
pub fn check_collapse(n: u32, p: u64, components: &[i64], cutoff: i64) -> Result<VerificationReport> {
    let field = Field::prime(p)?;
    let mut report = VerificationReport::new(
        "collapse",
        format!(
            "n={n} p={p} components={} cutoff={cutoff}",
            format_components(components)
        ),
    );
    let mut agreeing = 0;
    for variant in [Variant::Loop, Variant::Hol] {
        let space = SpaceSpec::new(n, field, variant)?;
        let ks: Vec<i64> = components
            .iter()
            .copied()
            .filter(|&k| space.allows_component(k))
            .collect();
        let profiles = component_profiles(space, &ks, cutoff)?;
        for &k in &ks {
            let witness = profiles.values().find(|c| c.weight == k && c.betti < c.dim_source);
            let predicted = collapse_predicted(n, p, k, variant);
            let observed = match witness {
                None => "collapses".to_string(),
                Some(c) => format!(
                    "does not collapse (degree {}: E2 {} > Einf {})",
                    c.degree + space.shift(),
                    c.dim_source,
                    c.betti
                ),
            };
            let line = format!(
                "{variant} k={k}: {observed}; predicted {}",
                if predicted { "collapse" } else { "non-collapse" }
            );
            if predicted == witness.is_none() {
                agreeing += 1;
            } else {
                report.fail(line.clone());
            }
            report.details.push(line);
        }
    }
    if report.verdict == Verdict::Pass {
        report.witness = format!("{agreeing} components match the prediction");
    }
    Ok(report)
}

/// Loop components `i` and `i + k` have equal regraded Betti columns when
/// `p | k(n+1)`.
pub fn check_periodicity(n: u32, p: u64, k: i64, components: &[i64], cutoff: i64) -> Result<VerificationReport> {
    let field = Field::prime(p)?;
    let report = VerificationReport::new(
        "periodicity",
        format!(
            "n={n} p={p} k={k} components={} cutoff={cutoff}",
            format_components(components)
        ),
    );
    if (k * (n as i64 + 1)) % p as i64 != 0 {
        return Ok(report.no_claim(format!("{p} does not divide {k}*{}", n + 1)));
    }
    let mut report = report;
    let space = SpaceSpec::new(n, field, Variant::Loop)?;
    let all: Vec<i64> = components.iter().flat_map(|&i| [i, i + k]).collect();
    let table = betti_table(space, &all, cutoff, Grading::Regraded)?;
    for &i in components {
        let (a, b) = (table.column(i), table.column(i + k));
        if a != b {
            let degree = a
                .keys()
                .chain(b.keys())
                .find(|d| a.get(d) != b.get(d))
                .copied()
                .unwrap();
            report.fail(format!(
                "components {i} and {}: regraded degree {degree} has {} vs {}",
                i + k,
                a.get(&degree).copied().unwrap_or(0),
                b.get(&degree).copied().unwrap_or(0)
            ));
        }
        report
            .details
            .push(format!("component {i} ~ {}: {}", i + k, table.poincare_series(i)));
    }
    if report.verdict == Verdict::Pass {
        report.witness = format!("{} component pairs agree", components.len());
    }
    Ok(report)
}

/// Every Loop component's column equals that of component 0 or component 1.
pub fn check_dichotomy(n: u32, field: Field, components: &[i64], cutoff: i64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "dichotomy",
        format!(
            "n={n} field={field} components={} cutoff={cutoff}",
            format_components(components)
        ),
    );
    let space = SpaceSpec::new(n, field, Variant::Loop)?;
    let mut all = components.to_vec();
    all.extend([0, 1]);
    let table = betti_table(space, &all, cutoff, Grading::Regraded)?;
    let (zero, one) = (table.column(0), table.column(1));
    for &k in components {
        let col = table.column(k);
        let matches = match (col == zero, col == one) {
            (true, true) => "0 and 1",
            (true, false) => "0",
            (false, true) => "1",
            (false, false) => {
                report.fail(format!("component {k} matches neither: {}", table.poincare_series(k)));
                "neither"
            }
        };
        report.details.push(format!("component {k} matches {matches}"));
    }
    if report.verdict == Verdict::Pass {
        report.witness = format!("{} components checked", components.len());
    }
    Ok(report)
}

/// Rank of `H(Hol) → H(Loop)` against the source Betti number at every
/// cell with ordinary degree `0..=cutoff` of the listed components.
pub fn check_injectivity(n: u32, field: Field, components: &[i64], cutoff: i64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "injectivity",
        format!(
            "n={n} field={field} components={} cutoff={cutoff}",
            format_components(components)
        ),
    );
    let hol = SpaceSpec::new(n, field, Variant::Hol)?;
    let components = check_components(&hol, components)?;
    let inclusion = hol_to_loop_inclusion(n, field, cutoff)?;
    let shift = hol.shift();
    let cells = induced_map_on_homology(
        &inclusion.hol,
        &inclusion.loop_page,
        -shift..=cutoff - shift,
        &components,
    )?;
    let mut nonzero = 0;
    for cell in cells.values() {
        if cell.source_betti > 0 {
            nonzero += 1;
        }
        if !cell.injective {
            report.fail(format!(
                "k={} degree {}: rank {} < {}",
                cell.weight,
                cell.degree + shift,
                cell.rank,
                cell.source_betti
            ));
        }
    }
    if report.verdict == Verdict::Pass {
        report.witness = format!("injective on {nonzero} nonzero cells");
    }
    Ok(report)
}

/// Which monomials the mod 2 counting formula puts in the `cⁿ` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example62Reading {
    /// `ι cⁿ A`: odd `ι`-exponent only.
    AsPrinted,
    /// Also the `u`-free monomials with even `ι`-exponent, which are cycles
    /// that no differential reaches.
    WithUnitBlock,
}

/// Dimension of `H_{degree}` (ordinary) of the weight-`weight` component of
/// `L²ℙⁿ` mod 2 for even `n`, counted from the monomial description
/// `A ⊕ cH ⊕ … ⊕ c^{n-1}H ⊕ ι cⁿ A` with
/// `A = F_2[ι^{±2}, u] ⊗ F_2[Qⁱu, i > 0]`. Does not touch the homology engine.
pub fn example62_dimension(n: u32, degree: i64, weight: i64, reading: Example62Reading) -> Result<usize> {
    if n % 2 == 1 {
        return Err(Error::OddN(n as u64));
    }
    let n = n as i64;
    let mut count = 0;
    for j in 0..=n {
        // fiber degree - 2j + 2n = ordinary degree
        let fiber_degree = degree - 2 * n + 2 * j;
        if fiber_degree < 0 {
            continue;
        }
        // (degree, weight) of u, Qu, Q2u, ... up to the needed degree
        let mut gens = vec![(2 * n - 1, 1i64)];
        let mut i = 1u32;
        while 2i64.pow(i + 1) * n - 1 <= fiber_degree {
            gens.push((2i64.pow(i + 1) * n - 1, 2i64.pow(i)));
            i += 1;
        }
        let mut tuples = Vec::new();
        count_tuples(&gens, 0, fiber_degree, &mut vec![0; gens.len()], &mut tuples);
        for exps in tuples {
            let fiber_weight: i64 = exps.iter().zip(&gens).map(|(e, g)| e * g.1).sum();
            let iota = weight - fiber_weight;
            let even = iota.rem_euclid(2) == 0;
            let u_free = exps[0] == 0;
            let keep = if j == 0 {
                even
            } else if j < n {
                true
            } else {
                match reading {
                    Example62Reading::AsPrinted => !even,
                    Example62Reading::WithUnitBlock => !even || u_free,
                }
            };
            count += keep as usize;
        }
    }
    Ok(count)
}

fn count_tuples(gens: &[(i64, i64)], pos: usize, remaining: i64, partial: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if pos == gens.len() {
        if remaining == 0 {
            out.push(partial.clone());
        }
        return;
    }
    let mut e = 0;
    while e * gens[pos].0 <= remaining {
        partial[pos] = e;
        count_tuples(gens, pos + 1, remaining - e * gens[pos].0, partial, out);
        e += 1;
    }
    partial[pos] = 0;
}

/// Compares the engine's mod 2 Betti numbers with [`example62_dimension`]
/// at every ordinary degree `0..=cutoff`.
pub fn check_example62(
    n: u32,
    components: &[i64],
    cutoff: i64,
    reading: Example62Reading,
) -> Result<VerificationReport> {
    if n % 2 == 1 {
        return Err(Error::OddN(n as u64));
    }
    let mut report = VerificationReport::new(
        "example62",
        format!(
            "n={n} components={} cutoff={cutoff} reading={reading:?}",
            format_components(components)
        ),
    );
    let space = SpaceSpec::new(n, Field::Prime(2), Variant::Loop)?;
    let table = betti_table(space, components, cutoff, Grading::Ordinary)?;
    let mut mismatches = 0;
    for &k in components {
        for degree in 0..=cutoff {
            let engine = table.get(k, degree);
            let counted = example62_dimension(n, degree, k, reading)?;
            if engine != counted {
                mismatches += 1;
                let line = format!("k={k} degree {degree}: engine {engine}, count {counted}");
                report.fail(line.clone());
                report.details.push(line);
            }
        }
    }
    report.witness = if mismatches == 0 {
        format!("{} cells agree", components.len() as i64 * (cutoff + 1))
    } else {
        format!("{mismatches} cells differ; first: {}", report.witness)
    };
    Ok(report)
}

/// When `p | k(n+1)`, `ιᵏ` and `ι^{-k}` are cycles giving nonzero classes
/// whose product is the class of 1.
pub fn unit_check(n: u32, p: u64, k: i64, cutoff: i64) -> Result<VerificationReport> {
    let field = Field::prime(p)?;
    let report = VerificationReport::new("unit", format!("n={n} p={p} k={k} cutoff={cutoff}"));
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if (k * (n as i64 + 1)) % p as i64 != 0 {
        return Ok(report.no_claim(format!("{p} does not divide {k}*{}", n + 1)));
    }
    let mut report = report;
    let page = e2_page(SpaceSpec::new(n, field, Variant::Loop)?, cutoff)?;
    let alg = page.algebra();
    let x = Element::monomial(alg, &[(IOTA, k)])?;
    let y = Element::monomial(alg, &[(IOTA, -k)])?;
    let one = Element::one(alg);
    let dx = page.differential().apply(&x)?;
    if !dx.is_zero() {
        report.fail(format!("d(iota^{k}) = {dx}"));
    }
    for (name, e) in [
        (format!("iota^{k}"), &x),
        (format!("iota^-{k}"), &y),
        ("1".into(), &one),
    ] {
        if !page.is_nonzero_class(e)? {
            report.fail(format!("[{name}] is zero or not a cycle"));
        }
    }
    let product = x.checked_mul(&y)?;
    let difference = product.checked_sub(&one)?;
    if !page.is_boundary(&difference)? {
        report.fail(format!("[iota^{k}][iota^-{k}] - [1] = [{difference}] is nonzero"));
    }
    if report.verdict == Verdict::Pass {
        report.witness = format!("d(iota^{k}) = 0, both classes nonzero, iota^{k} * iota^-{k} - 1 is a boundary");
    }
    Ok(report)
}
