//! The reproduction suite: a registry of named claims — codimension
//! formulas, cocharacter tables, generating-set verifications, axiom
//! checks, and multiplicity-profile reconstructions — with a parallel
//! runner and deterministic report emitters.
//!
//! Claim ids follow the source lemma numbering (`L3.4.2-codim-W_eta2_gr`,
//! `T4.7-roundtrip-…`); expected values carry a provenance tag: `[PAPER]`
//! for values stated in the source, `[TRIVIAL]` for base cases, and
//! `[DERIVED]` for values obtained by independent computation. Where the
//! computed value disagrees with a printed value, the claim checks the
//! computed value and carries a WARN note quoting what the source prints.

use crate::cocharacter::{cocharacter_table, codim_from_table, hwv_catalog, Multipartition, MultiplicityTable};
use crate::codim::{binom, codim, codim_sequence, crosscheck_eq1_eq3};
use crate::star_algebra::{catalog, resolve_key, CATALOG_KEYS};
use crate::tideal::{verify_tideal, GeneratorSet};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{0}")]
    Algebra(String),
    #[error("{0}")]
    Computation(String),
    #[error("invalid multiplicity profile: {0}")]
    BadProfile(String),
}

impl From<crate::star_algebra::AlgebraError> for VerifyError {
    fn from(e: crate::star_algebra::AlgebraError) -> Self {
        VerifyError::Algebra(e.to_string())
    }
}

impl From<crate::codim::CodimError> for VerifyError {
    fn from(e: crate::codim::CodimError) -> Self {
        VerifyError::Computation(e.to_string())
    }
}

impl From<crate::tideal::TidealError> for VerifyError {
    fn from(e: crate::tideal::TidealError) -> Self {
        VerifyError::Computation(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// generator-set sources (the file grammar of the tideal module)
// ---------------------------------------------------------------------------

/// The claimed generating set of the identity ideal of an algebra, written
/// in the generator-file grammar (wildcards for undecorated variables).
pub fn generator_source(key: &str) -> Option<&'static str> {
    Some(match key {
        "N3_gri" => "x1:0-\nx1:1? x2:1?\n[x1:0+, x2:1+]\n",
        "U3_gri" => "x1:0-\nx1:1? x2:1?\n[x1:0+, x2:1-]\n",
        "C3_i1_gr" => {
            "[x1:0+, x2?]\n[x1:1+, x2:1+]\nx1:1-\nx1:0- x2:0-\nx1:1+ x2:0-\nx1:1+ x2:1+ x3:1+\n"
        }
        "C3_i3_gr" => {
            "[x1:0+, x2?]\n[x1:1-, x2:1-]\nx1:1+\nx1:0- x2:0-\nx1:1- x2:0-\nx1:1- x2:1- x3:1-\n"
        }
        "G2_tau_gr" => "x1:0-\nx1:1+\n[x1:0+, x2?]\nx1:1- o x2:1-\nx1:1- x2:1- x3:1-\n",
        "G2_psi_gr" => "x1:0-\nx1:1-\n[x1:0+, x2?]\nx1:1+ o x2:1+\nx1:1+ x2:1+ x3:1+\n",
        "G2_gamma_gr" => {
            "x1:1- x2:1-\nx1:1+ x2:1+\nx1:0- x2:0-\nx1:1- x2:0-\nx1:1+ x2:0-\n[x1:0+, x2?]\nx1:1- o x2:1+\n"
        }
        "W_eta2_gr" => "[x1:0+, x2?]\n[x1:1-, x2:1+]\nx1:0-\nx1:1- x2:1-\nx1:1+ x2:1+\n",
        "G2_gamma_gri+W_eta1_gri" => {
            "[x1:0+, x2?]\nx1:0- x2:0-\nx1:0- x2:1-\nx1:1+ x2:1+\nx1:1+ x2:1-\nx1:1- x2:1-\n"
        }
        "G2_gamma_gr+W_eta2_gr" => {
            "[x1:0+, x2?]\nx1:1- x2:1-\nx1:1- x2:0-\nx1:1+ x2:1+\nx1:1+ x2:0-\nx1:0- x2:0-\n"
        }
        "G2_tau_gri+W_eta3_gri" => {
            "[x1:0+, x2?]\nx1:0- x2:0-\nx1:0- x2:1+\nx1:1- x2:1-\nx1:1- x2:1+\nx1:1+ x2:1+\n"
        }
        _ => return None,
    })
}

// ---------------------------------------------------------------------------
// expected cocharacter tables
// ---------------------------------------------------------------------------

fn p1(slot: usize) -> Multipartition {
    let mut m: [Vec<usize>; 4] = Default::default();
    m[slot] = vec![1];
    Multipartition(m)
}

fn p2(slot: usize, parts: &[usize]) -> Multipartition {
    let mut m: [Vec<usize>; 4] = Default::default();
    m[slot] = parts.to_vec();
    Multipartition(m)
}

fn pmix(s: usize, t: usize) -> Multipartition {
    let mut m: [Vec<usize>; 4] = Default::default();
    m[s] = vec![1];
    m[t] = vec![1];
    Multipartition(m)
}

/// The expected nonzero multiplicity map of a catalog key (component
/// slots 0..4 = types 0+, 0-, 1+, 1-).
pub fn expected_cocharacters(key: &str) -> Option<Vec<(Multipartition, usize)>> {
    let one = |mps: Vec<Multipartition>| mps.into_iter().map(|m| (m, 1)).collect();
    Some(match key {
        "F" => Vec::new(),
        "C2_star" => one(vec![p1(1)]),
        "C2_gr" => one(vec![p1(2)]),
        "C2_star_gr" => one(vec![p1(3)]),
        "C3_i2" => one(vec![p1(1), p2(1, &[2])]),
        "C3_i1_gr" => one(vec![p1(1), p1(2), p2(2, &[2])]),
        "C3_i3_gr" => one(vec![p1(1), p1(3), p2(3, &[2])]),
        "G2_tau" => one(vec![p1(1), p2(1, &[1, 1])]),
        "G2_psi_gr" => one(vec![p1(2), p2(2, &[1, 1])]),
        "G2_tau_gr" => one(vec![p1(3), p2(3, &[1, 1])]),
        "G2_gamma_gr" => one(vec![p1(1), p1(2), p1(3), pmix(2, 3)]),
        "G2_tau_gri" => one(vec![p1(1), p1(3), pmix(1, 3)]),
        "G2_gamma_gri" => one(vec![p1(1), p1(2), pmix(1, 2)]),
        "W_eta2_gr" => one(vec![p1(2), p1(3), pmix(2, 3)]),
        "W_eta1_gri" => one(vec![p1(1), p1(2), p1(3), pmix(1, 2)]),
        "W_eta3_gri" => one(vec![p1(1), p1(2), p1(3), pmix(1, 3)]),
        "N3_star" => one(vec![p1(1), pmix(0, 1)]),
        "U3_star" => one(vec![p1(1), p2(0, &[1, 1])]),
        "N3_gri" => one(vec![p1(2), p1(3), pmix(0, 3)]),
        "U3_gri" => one(vec![p1(2), p1(3), pmix(0, 2)]),
        "G2_gamma_gri+W_eta1_gri" => {
            vec![(p1(1), 1), (p1(2), 1), (p1(3), 1), (pmix(1, 2), 2)]
        }
        "G2_gamma_gr+W_eta2_gr" => {
            vec![(p1(1), 1), (p1(2), 1), (p1(3), 1), (pmix(2, 3), 2)]
        }
        "G2_tau_gri+W_eta3_gri" => {
            vec![(p1(1), 1), (p1(2), 1), (p1(3), 1), (pmix(1, 3), 2)]
        }
        _ => return None,
    })
}

fn chi_sum(entries: &[(Multipartition, usize)]) -> String {
    let t = MultiplicityTable {
        algebra: String::new(),
        entries: entries.to_vec(),
    };
    t.character_sum()
}

/// Presentation order: degree, then occupied component slots, then
/// partition shape — matching how the tables are usually listed
/// (0- before 1+ before 1-, pure before mixed).
fn natural_order(entries: &mut [(Multipartition, usize)]) {
    entries.sort_by_key(|(mp, _)| {
        let occ: Vec<usize> = (0..4).filter(|&i| !mp.0[i].is_empty()).collect();
        (mp.degree(), occ, mp.0.clone())
    });
}

// ---------------------------------------------------------------------------
// single-claim checks
// ---------------------------------------------------------------------------

/// Outcome of one check: pass flag plus deterministic computed/detail text.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub pass: bool,
    pub computed: String,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(computed: impl Into<String>) -> Self {
        CheckOutcome {
            pass: true,
            computed: computed.into(),
            detail: String::new(),
        }
    }
    fn fail(computed: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckOutcome {
            pass: false,
            computed: computed.into(),
            detail: detail.into(),
        }
    }
}

/// Check `c_n = a + b·n + c·binom(n,2)` for `1 ≤ n ≤ N`, plus the
/// degree-≤2 proper-codimension cross-check.
pub fn verify_codim_formula(
    key: &str,
    coeffs: (u64, u64, u64),
    n_max: usize,
) -> Result<CheckOutcome, VerifyError> {
    let a = resolve_key(key)?;
    let seq = codim_sequence(&a, n_max)?;
    let (ca, cb, cc) = coeffs;
    for n in 1..=n_max {
        let expect = ca + cb * n as u64 + cc * binom(n, 2);
        if seq.c[n] != expect {
            return Ok(CheckOutcome::fail(
                format!("c = {:?}", seq.c),
                format!("first mismatch at n = {n}: computed {} ≠ {expect}", seq.c[n]),
            ));
        }
    }
    let rows = crosscheck_eq1_eq3(&a, 2)?;
    if let Some(bad) = rows.iter().find(|r| !r.pass) {
        return Ok(CheckOutcome::fail(
            format!("c = {:?}", seq.c),
            format!(
                "proper cross-check failed at n = {}: transform {} ≠ direct {}",
                bad.n, bad.from_transform, bad.from_signatures
            ),
        ));
    }
    Ok(CheckOutcome::pass(format!(
        "c = {:?}; proper cross-check ok at n ≤ 2",
        seq.c
    )))
}

/// Check the nonzero multiplicity map of an algebra against the expected
/// entries, and that the table reproduces the codimension sequence.
pub fn verify_cocharacter_table(
    key: &str,
    expected: &[(Multipartition, usize)],
    n_max: usize,
) -> Result<CheckOutcome, VerifyError> {
    let a = resolve_key(key)?;
    let table = cocharacter_table(&a)?;
    let computed: BTreeMap<Multipartition, usize> = table
        .nonzero()
        .into_iter()
        .map(|(m, v)| (m.clone(), v))
        .collect();
    let expected_map: BTreeMap<Multipartition, usize> = expected.iter().cloned().collect();
    let mut problems = Vec::new();
    for (mp, m) in &expected_map {
        match computed.get(mp) {
            None => problems.push(format!("missing {mp} (expected {m})")),
            Some(v) if v != m => problems.push(format!("{mp}: computed {v}, expected {m}")),
            _ => {}
        }
    }
    for (mp, v) in &computed {
        if !expected_map.contains_key(mp) {
            problems.push(format!("extra {mp} = {v}"));
        }
    }
    let mut shown_entries: Vec<(Multipartition, usize)> =
        computed.iter().map(|(m, v)| (m.clone(), *v)).collect();
    natural_order(&mut shown_entries);
    let shown = chi_sum(&shown_entries);
    if !problems.is_empty() {
        return Ok(CheckOutcome::fail(shown, problems.join("; ")));
    }
    // End-to-end consistency: the table recovers the codimension sequence.
    let via_table = codim_from_table(&table, n_max);
    for (n, expect) in via_table.iter().enumerate() {
        let c = codim(&a, n)?;
        if c != *expect {
            return Ok(CheckOutcome::fail(
                shown,
                format!("table-derived c_{n} = {expect} but direct computation gives {c}"),
            ));
        }
    }
    Ok(CheckOutcome::pass(format!(
        "{shown}; table reproduces c_n for n ≤ {n_max}"
    )))
}

/// Run the bounded generating-set verification for a key with an embedded
/// generator source.
pub fn verify_generator_claim(key: &str, max_degree: usize) -> Result<CheckOutcome, VerifyError> {
    let src = generator_source(key)
        .ok_or_else(|| VerifyError::Computation(format!("no generator set recorded for {key}")))?;
    let gens = GeneratorSet::parse(src)?;
    let a = resolve_key(key)?;
    let report = match verify_tideal(&a, &gens, max_degree) {
        Ok(r) => r,
        Err(crate::tideal::TidealError::NotIdentity { gen, witness }) => {
            return Ok(CheckOutcome::fail(
                format!("generator {gen} is not an identity"),
                format!("witness: {witness}"),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    if report.verified {
        let dims: Vec<usize> = report.degrees.iter().map(|d| d.identity_dim).collect();
        Ok(CheckOutcome::pass(format!(
            "{} generators; identity dims per degree {:?}; spans match at n ≤ {max_degree}",
            report.generators.len(),
            dims
        )))
    } else {
        let bad: Vec<String> = report
            .degrees
            .iter()
            .filter(|d| !d.verdict)
            .map(|d| {
                let sigs: Vec<String> = d
                    .mismatches
                    .iter()
                    .map(|(s, c, i)| format!("{s}: consequences {c} vs identities {i}"))
                    .collect();
                format!("degree {}: {}", d.n, sigs.join(", "))
            })
            .collect();
        Ok(CheckOutcome::fail("span mismatch", bad.join("; ")))
    }
}

// ---------------------------------------------------------------------------
// reconstruction
// ---------------------------------------------------------------------------

/// A reconstruction building block: either a definite catalog key or an
/// unresolved two-way ambiguity (the degree-≤2 data alone cannot separate
/// the pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Single(String),
    Either(String, String),
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Single(k) => write!(f, "{k}"),
            Block::Either(a, b) => write!(f, "{a}|{b}"),
        }
    }
}

const C2_BY_SLOT: [&str; 4] = ["", "C2_star", "C2_gr", "C2_star_gr"];

/// Map a multiplicity profile to its building-block list:
/// `((2)_t)` and `((1,1)_t)` entries and the `((1)_{0+},(1)_t)` pairs
/// force specific blocks; other mixed pairs with multiplicity 1 yield an
/// ambiguity marker and with multiplicity 2 force both candidates;
/// degree-1 entries not covered by any chosen block add the matching
/// two-dimensional algebra; the empty profile is the base field.
pub fn reconstruct(profile: &MultiplicityTable) -> Result<Vec<Block>, VerifyError> {
    let nonzero: Vec<(Multipartition, usize)> = profile
        .nonzero()
        .into_iter()
        .map(|(m, v)| (m.clone(), v))
        .collect();
    for (mp, m) in &nonzero {
        let bound = hwv_catalog(mp).map_err(|e| VerifyError::BadProfile(e.to_string()))?;
        if *m > bound.polys.len() {
            return Err(VerifyError::BadProfile(format!(
                "{mp} has multiplicity {m} > bound {}",
                bound.polys.len()
            )));
        }
    }
    let mut blocks: Vec<Block> = Vec::new();
    for (mp, m) in &nonzero {
        if mp.degree() != 2 {
            continue;
        }
        let occupied: Vec<usize> = (0..4).filter(|&i| !mp.0[i].is_empty()).collect();
        match occupied.as_slice() {
            [t] => {
                let key = if mp.0[*t] == [2] {
                    match t {
                        1 => "C3_i2",
                        2 => "C3_i1_gr",
                        3 => "C3_i3_gr",
                        _ => unreachable!("bound check excludes (2) in the 0+ slot"),
                    }
                } else {
                    match t {
                        0 => "U3_star",
                        1 => "G2_tau",
                        2 => "G2_psi_gr",
                        3 => "G2_tau_gr",
                        _ => unreachable!(),
                    }
                };
                blocks.push(Block::Single(key.into()));
            }
            [0, t] => {
                let key = match t {
                    1 => "N3_star",
                    2 => "U3_gri",
                    3 => "N3_gri",
                    _ => unreachable!(),
                };
                blocks.push(Block::Single(key.into()));
            }
            [s, t] => {
                let (g, w) = match (s, t) {
                    (1, 2) => ("G2_gamma_gri", "W_eta1_gri"),
                    (2, 3) => ("G2_gamma_gr", "W_eta2_gr"),
                    (1, 3) => ("G2_tau_gri", "W_eta3_gri"),
                    _ => unreachable!(),
                };
                if *m == 2 {
                    blocks.push(Block::Single(g.into()));
                    blocks.push(Block::Single(w.into()));
                } else {
                    blocks.push(Block::Either(g.into(), w.into()));
                }
            }
            _ => unreachable!("degree 2 occupies at most two slots"),
        }
    }
    // Degree-1 entries not covered by any chosen block (under any
    // resolution of the markers) add the two-dimensional block of the
    // matching type.
    for (mp, _) in &nonzero {
        if mp.degree() != 1 {
            continue;
        }
        let slot = (0..4).find(|&i| !mp.0[i].is_empty()).unwrap();
        let covered = blocks.iter().any(|b| {
            let keys: Vec<&str> = match b {
                Block::Single(k) => vec![k],
                Block::Either(a, b) => vec![a, b],
            };
            keys.iter().any(|k| covers_degree_one(k, slot))
        });
        if !covered {
            blocks.push(Block::Single(C2_BY_SLOT[slot].into()));
        }
    }
    if blocks.is_empty() {
        blocks.push(Block::Single("F".into()));
    }
    Ok(blocks)
}

/// Whether the catalog algebra has a nonzero multiplicity at the degree-1
/// multipartition of the slot (from the expected tables, which the
/// cocharacter claims verify against computation).
fn covers_degree_one(key: &str, slot: usize) -> bool {
    expected_cocharacters(key)
        .map(|t| t.iter().any(|(mp, m)| *m > 0 && *mp == p1(slot)))
        .unwrap_or(false)
}

/// Outcome of one reconstruction round-trip.
#[derive(Debug, Clone)]
pub struct RoundtripOutcome {
    pub input: String,
    pub blocks: Vec<Block>,
    /// The resolved key list when some marker resolution passed.
    pub resolved: Option<Vec<String>>,
    pub pass: bool,
    pub detail: String,
}

/// Rebuild an algebra from its own multiplicity profile and require the
/// rebuilt direct sum to reproduce both the profile and the codimension
/// sequence up to `max_n`. Ambiguity markers are resolved by trying each
/// combination; a combination is accepted when its table and codimensions
/// both agree with the input.
pub fn reconstruction_roundtrip(key: &str, max_n: usize) -> Result<RoundtripOutcome, VerifyError> {
    let a = resolve_key(key)?;
    let profile = cocharacter_table(&a)?;
    let profile_map: BTreeMap<Multipartition, usize> = profile
        .nonzero()
        .into_iter()
        .map(|(m, v)| (m.clone(), v))
        .collect();
    let blocks = reconstruct(&profile)?;
    let marker_positions: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| matches!(b, Block::Either(_, _)))
        .map(|(i, _)| i)
        .collect();
    let input_c = codim_sequence(&a, max_n)?.c;
    let mut attempts: Vec<String> = Vec::new();
    for combo in 0..(1u32 << marker_positions.len()) {
        // Resolve markers: bit 0 = first candidate.
        let mut keys: Vec<String> = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            match b {
                Block::Single(k) => keys.push(k.clone()),
                Block::Either(g, w) => {
                    let pos = marker_positions.iter().position(|&p| p == i).unwrap();
                    let pick = if combo >> pos & 1 == 0 { g } else { w };
                    keys.push(pick.clone());
                }
            }
        }
        // Re-derive the degree-1 fill-ins for this resolution.
        let mut full = keys.clone();
        for (mp, _) in &profile_map {
            if mp.degree() != 1 {
                continue;
            }
            let slot = (0..4).find(|&i| !mp.0[i].is_empty()).unwrap();
            if !keys.iter().any(|k| covers_degree_one(k, slot)) {
                full.push(C2_BY_SLOT[slot].to_string());
            }
        }
        let b = resolve_key(&full.join("+"))?;
        let b_table = cocharacter_table(&b)?;
        let b_map: BTreeMap<Multipartition, usize> = b_table
            .nonzero()
            .into_iter()
            .map(|(m, v)| (m.clone(), v))
            .collect();
        if b_map != profile_map {
            let mut entries: Vec<(Multipartition, usize)> = b_map.into_iter().collect();
            natural_order(&mut entries);
            attempts.push(format!(
                "[{}]: table mismatch ({})",
                full.join(", "),
                chi_sum(&entries)
            ));
            continue;
        }
        let b_c = codim_sequence(&b, max_n)?.c;
        if b_c != input_c {
            attempts.push(format!(
                "[{}]: c = {:?} ≠ input {:?}",
                full.join(", "),
                b_c,
                input_c
            ));
            continue;
        }
        return Ok(RoundtripOutcome {
            input: a.name.clone(),
            blocks,
            resolved: Some(full),
            pass: true,
            detail: format!("c = {input_c:?}"),
        });
    }
    Ok(RoundtripOutcome {
        input: a.name.clone(),
        blocks,
        resolved: None,
        pass: false,
        detail: format!("no resolution matched: {}", attempts.join("; ")),
    })
}

// ---------------------------------------------------------------------------
// claim registry
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClaimKind {
    #[serde(rename = "codim-formula")]
    CodimFormula,
    #[serde(rename = "cocharacter-table")]
    CocharacterTable,
    #[serde(rename = "tideal")]
    Tideal,
    #[serde(rename = "reconstruction")]
    Reconstruction,
    #[serde(rename = "axiom")]
    Axiom,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClaimKind::CodimFormula => "codim-formula",
            ClaimKind::CocharacterTable => "cocharacter-table",
            ClaimKind::Tideal => "tideal",
            ClaimKind::Reconstruction => "reconstruction",
            ClaimKind::Axiom => "axiom",
        };
        write!(f, "{s}")
    }
}

/// Parameters of one claim.
#[derive(Debug, Clone)]
pub enum ClaimParams {
    CodimFormula {
        key: String,
        coeffs: (u64, u64, u64),
        max_n: usize,
    },
    CocharTable {
        key: String,
        expected: Vec<(Multipartition, usize)>,
        max_n: usize,
    },
    Tideal {
        key: String,
        max_degree: usize,
    },
    Roundtrip {
        key: String,
        max_n: usize,
    },
    Axiom {
        key: String,
    },
    /// The building-block set of the reconstruction is exactly the catalog.
    BlockSet,
}

/// One registry entry.
#[derive(Debug, Clone)]
pub struct Claim {
    pub id: String,
    pub kind: ClaimKind,
    pub params: ClaimParams,
    /// Human-readable expectation with a provenance tag.
    pub expected: String,
    /// WARN-level notes attached regardless of outcome.
    pub notes: Vec<String>,
}

/// Result of one executed claim.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub kind: ClaimKind,
    pub pass: bool,
    pub computed: String,
    pub expected: String,
    pub detail: String,
    pub notes: Vec<String>,
    /// Wall-clock run time; excluded from the emitted reports so they stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub runtime_ms: u128,
}

/// Full suite outcome, deterministically ordered by claim id.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub results: Vec<ClaimResult>,
    pub passed: usize,
    pub failed: usize,
    pub total: usize,
}

fn fmt_formula(c: (u64, u64, u64)) -> String {
    format!("c_n = {} + {}n + {}·binom(n,2)", c.0, c.1, c.2)
}

/// Build the full claim registry.
pub fn registry() -> Vec<Claim> {
    let mut claims = Vec::new();
    // Axioms for every catalog algebra.
    for key in CATALOG_KEYS {
        claims.push(Claim {
            id: format!("AX-{key}"),
            kind: ClaimKind::Axiom,
            params: ClaimParams::Axiom { key: key.to_string() },
            expected: "no axiom violations; component dims sum to dim [TRIVIAL]".into(),
            notes: Vec::new(),
        });
    }
    // Codimension formulas (with the proper cross-check folded in).
    let codims: [(&str, &str, (u64, u64, u64), &str); 23] = [
        ("BASE-codim-F", "F", (1, 0, 0), "[TRIVIAL]"),
        ("L3.1.2-codim-U3_star", "U3_star", (1, 1, 1), "[PAPER]"),
        ("L3.1.2-codim-N3_star", "N3_star", (1, 1, 2), "[PAPER]"),
        ("L3.1.2-codim-N3_gri", "N3_gri", (1, 2, 2), "[PAPER]"),
        ("L3.1.2-codim-U3_gri", "U3_gri", (1, 2, 2), "[PAPER]"),
        ("L3.2.3-codim-C2_star", "C2_star", (1, 1, 0), "[PAPER]"),
        ("L3.2.3-codim-C2_gr", "C2_gr", (1, 1, 0), "[PAPER]"),
        ("L3.2.3-codim-C2_star_gr", "C2_star_gr", (1, 1, 0), "[PAPER]"),
        ("L3.2.3-codim-C3_i1_gr", "C3_i1_gr", (1, 2, 1), "[PAPER]"),
        ("L3.2.3-codim-C3_i3_gr", "C3_i3_gr", (1, 2, 1), "[PAPER]"),
        ("L3.2.3-codim-C3_i2", "C3_i2", (1, 1, 1), "[PAPER]"),
        ("L3.3.4-codim-G2_tau", "G2_tau", (1, 1, 1), "[PAPER]"),
        ("L3.3.4-codim-G2_psi_gr", "G2_psi_gr", (1, 1, 1), "[PAPER]"),
        ("L3.3.4-codim-G2_tau_gr", "G2_tau_gr", (1, 1, 1), "[PAPER]"),
        ("L3.3.4-codim-G2_gamma_gr", "G2_gamma_gr", (1, 3, 2), "[PAPER]"),
        ("L3.3.4-codim-G2_tau_gri", "G2_tau_gri", (1, 2, 2), "[PAPER]"),
        ("L3.3.4-codim-G2_gamma_gri", "G2_gamma_gri", (1, 2, 2), "[PAPER]"),
        ("L3.4.2-codim-W_eta2_gr", "W_eta2_gr", (1, 2, 2), "[PAPER]"),
        ("L3.4.2-codim-W_eta1_gri", "W_eta1_gri", (1, 3, 2), "[PAPER]"),
        ("L3.4.2-codim-W_eta3_gri", "W_eta3_gri", (1, 3, 2), "[PAPER]"),
        (
            "L3.5.4-codim-G2_gamma_gri+W_eta1_gri",
            "G2_gamma_gri+W_eta1_gri",
            (1, 3, 4),
            "[PAPER]",
        ),
        (
            "L3.5.4-codim-G2_gamma_gr+W_eta2_gr",
            "G2_gamma_gr+W_eta2_gr",
            (1, 3, 4),
            "[PAPER]",
        ),
        (
            "L3.5.4-codim-G2_tau_gri+W_eta3_gri",
            "G2_tau_gri+W_eta3_gri",
            (1, 3, 4),
            "[PAPER]",
        ),
    ];
    for (id, key, coeffs, tag) in codims {
        claims.push(Claim {
            id: id.into(),
            kind: ClaimKind::CodimFormula,
            params: ClaimParams::CodimFormula {
                key: key.into(),
                coeffs,
                max_n: 5,
            },
            expected: format!("{} for n ≤ 5 {tag}", fmt_formula(coeffs)),
            notes: Vec::new(),
        });
    }
    // Cocharacter tables (with table→codim consistency folded in).
    let cochar_groups: [(&str, &[&str]); 6] = [
        ("BASE", &["F"]),
        ("L3.1.3", &["N3_star", "U3_star", "N3_gri", "U3_gri"]),
        (
            "L3.2.4",
            &["C2_star", "C2_gr", "C2_star_gr", "C3_i1_gr", "C3_i3_gr", "C3_i2"],
        ),
        (
            "L3.3.5",
            &["G2_tau", "G2_psi_gr", "G2_tau_gr", "G2_gamma_gr", "G2_tau_gri", "G2_gamma_gri"],
        ),
        ("L3.4.3", &["W_eta2_gr", "W_eta1_gri", "W_eta3_gri"]),
        (
            "L3.5.5",
            &[
                "G2_gamma_gri+W_eta1_gri",
                "G2_gamma_gr+W_eta2_gr",
                "G2_tau_gri+W_eta3_gri",
            ],
        ),
    ];
    for (prefix, keys) in cochar_groups {
        for key in keys {
            let expected = expected_cocharacters(key).expect("table recorded for every key");
            let tag = if *key == "F" { "[TRIVIAL]" } else { "[PAPER]" };
            let mut notes = Vec::new();
            match *key {
                "N3_star" | "U3_star" => notes.push(
                    "WARN: source table prints χ((1)_{1-}) as the degree-1 term; computed table has χ((1)_{0-})"
                        .into(),
                ),
                "W_eta1_gri" => notes.push(
                    "WARN: source table prints the mixed term χ((1)_{0+})⊗χ((1)_{1-}); computed table has χ((1)_{0-})⊗χ((1)_{1+})"
                        .into(),
                ),
                _ => {}
            }
            claims.push(Claim {
                id: format!("{prefix}-cochar-{key}"),
                kind: ClaimKind::CocharacterTable,
                params: ClaimParams::CocharTable {
                    key: key.to_string(),
                    expected: expected.clone(),
                    max_n: 5,
                },
                expected: format!("{} {tag}", chi_sum(&expected)),
                notes,
            });
        }
    }
    // Generating sets at degree ≤ 4.
    let tideals: [(&str, &str); 11] = [
        ("L3.1.1-tideal-N3_gri", "N3_gri"),
        ("L3.1.1-tideal-U3_gri", "U3_gri"),
        ("L3.2.1-tideal-C3_i1_gr", "C3_i1_gr"),
        ("L3.2.2-tideal-C3_i3_gr", "C3_i3_gr"),
        ("L3.3.1-tideal-G2_tau_gr", "G2_tau_gr"),
        ("L3.3.2-tideal-G2_psi_gr", "G2_psi_gr"),
        ("L3.3.3-tideal-G2_gamma_gr", "G2_gamma_gr"),
        ("L3.4.1-tideal-W_eta2_gr", "W_eta2_gr"),
        ("L3.5.1-tideal-G2_gamma_gri+W_eta1_gri", "G2_gamma_gri+W_eta1_gri"),
        ("L3.5.2-tideal-G2_gamma_gr+W_eta2_gr", "G2_gamma_gr+W_eta2_gr"),
        ("L3.5.3-tideal-G2_tau_gri+W_eta3_gri", "G2_tau_gri+W_eta3_gri"),
    ];
    for (id, key) in tideals {
        let mut notes = Vec::new();
        if matches!(key, "N3_gri" | "U3_gri") {
            notes.push(
                "undecorated odd product generators expanded to all four sign combinations".into(),
            );
        }
        claims.push(Claim {
            id: id.into(),
            kind: ClaimKind::Tideal,
            params: ClaimParams::Tideal {
                key: key.into(),
                max_degree: 4,
            },
            expected: "generators are identities; consequence dims = identity dims at n ≤ 4 [PAPER]"
                .into(),
            notes,
        });
    }
    // Reconstruction round-trips.
    let roundtrips: [&str; 8] = [
        "F",
        "W_eta2_gr",
        "G2_gamma_gr",
        "N3_gri+C3_i2",
        "G2_gamma_gri+W_eta1_gri",
        "G2_tau_gri+W_eta3_gri",
        "C3_i2+G2_tau",
        "U3_star+N3_star",
    ];
    for key in roundtrips {
        let tag = if key == "F" { "[TRIVIAL]" } else { "[DERIVED]" };
        claims.push(Claim {
            id: format!("T4.7-roundtrip-{key}"),
            kind: ClaimKind::Reconstruction,
            params: ClaimParams::Roundtrip {
                key: key.into(),
                max_n: 5,
            },
            expected: format!("rebuilt direct sum matches table and c_n for n ≤ 5 {tag}"),
            notes: Vec::new(),
        });
    }
    claims.push(Claim {
        id: "T4.7-iset".into(),
        kind: ClaimKind::Reconstruction,
        params: ClaimParams::BlockSet,
        expected: "every emittable building block is a catalog algebra; 20 keys [PAPER]".into(),
        notes: vec![
            "WARN: source set prints C_{3,i_2}^{gr}; the corresponding catalog key is C3_i3_gr"
                .into(),
        ],
    });
    claims
}

/// Keys the reconstruction can emit, in a fixed order.
fn emittable_blocks() -> Vec<&'static str> {
    vec![
        "F", "C2_star", "C2_gr", "C2_star_gr", "C3_i2", "C3_i1_gr", "C3_i3_gr", "U3_star",
        "G2_tau", "G2_psi_gr", "G2_tau_gr", "N3_star", "U3_gri", "N3_gri", "G2_gamma_gri",
        "W_eta1_gri", "G2_gamma_gr", "W_eta2_gr", "G2_tau_gri", "W_eta3_gri",
    ]
}

fn run_axiom(key: &str) -> Result<CheckOutcome, VerifyError> {
    let a = catalog(key)?;
    let violations = a.validate();
    if !violations.is_empty() {
        return Ok(CheckOutcome::fail(
            format!("{} axiom violations", violations.len()),
            violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    let comps = a.components()?;
    let dims = comps.dims();
    let total: usize = dims.iter().sum();
    if total != a.dim {
        return Ok(CheckOutcome::fail(
            format!("component dims {dims:?} sum to {total} ≠ dim {}", a.dim),
            String::new(),
        ));
    }
    Ok(CheckOutcome::pass(format!(
        "valid; component dims {dims:?} sum to {}",
        a.dim
    )))
}

fn run_blockset() -> CheckOutcome {
    let blocks = emittable_blocks();
    let missing: Vec<&str> = blocks
        .iter()
        .filter(|k| !CATALOG_KEYS.contains(k))
        .copied()
        .collect();
    let uncovered: Vec<&&str> = CATALOG_KEYS
        .iter()
        .filter(|k| !blocks.contains(k))
        .collect();
    if missing.is_empty() && uncovered.is_empty() {
        CheckOutcome::pass(format!("{} building-block keys, all catalog algebras", blocks.len()))
    } else {
        CheckOutcome::fail(
            "building-block set differs from catalog",
            format!("not in catalog: {missing:?}; catalog keys never emitted: {uncovered:?}"),
        )
    }
}

fn run_claim(claim: &Claim, max_n_override: Option<usize>) -> ClaimResult {
    let start = std::time::Instant::now();
    let cap = |n: usize| max_n_override.map_or(n, |m| m.min(n)).max(1);
    let outcome = match &claim.params {
        ClaimParams::CodimFormula { key, coeffs, max_n } => {
            verify_codim_formula(key, *coeffs, cap(*max_n))
        }
        ClaimParams::CocharTable { key, expected, max_n } => {
            verify_cocharacter_table(key, expected, cap(*max_n))
        }
        ClaimParams::Tideal { key, max_degree } => verify_generator_claim(key, cap(*max_degree)),
        ClaimParams::Roundtrip { key, max_n } => reconstruction_roundtrip(key, cap(*max_n))
            .map(|r| {
                let label = match &r.resolved {
                    Some(keys) => format!("blocks [{}]; {}", keys.join(", "), r.detail),
                    None => format!(
                        "blocks [{}]",
                        r.blocks
                            .iter()
                            .map(|b| b.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                };
                if r.pass {
                    CheckOutcome::pass(label)
                } else {
                    CheckOutcome::fail(label, r.detail)
                }
            }),
        ClaimParams::Axiom { key } => run_axiom(key),
        ClaimParams::BlockSet => Ok(run_blockset()),
    };
    let outcome = outcome.unwrap_or_else(|e| CheckOutcome::fail("error", e.to_string()));
    ClaimResult {
        id: claim.id.clone(),
        kind: claim.kind,
        pass: outcome.pass,
        computed: outcome.computed,
        expected: claim.expected.clone(),
        detail: outcome.detail,
        notes: claim.notes.clone(),
        runtime_ms: start.elapsed().as_millis(),
    }
}

/// Execute claims (optionally filtered by id prefix, degree bounds capped
/// by `max_n`), in parallel, and assemble the deterministic report.
pub fn run_claims(
    claims: &[Claim],
    only: Option<&str>,
    max_n: Option<usize>,
) -> VerificationReport {
    let selected: Vec<&Claim> = claims
        .iter()
        .filter(|c| only.is_none_or(|p| c.id.starts_with(p)))
        .collect();
    let mut results: Vec<ClaimResult> = selected
        .par_iter()
        .map(|c| run_claim(c, max_n))
        .collect();
    results.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = results.iter().filter(|r| r.pass).count();
    let failed = results.len() - passed;
    VerificationReport {
        total: results.len(),
        passed,
        failed,
        results,
    }
}

/// Run the complete registry.
pub fn run_paper_suite() -> VerificationReport {
    run_claims(&registry(), None, None)
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Markdown report, sectioned by claim-id prefix and byte-identical
    /// across runs.
    pub fn markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Verification report\n\n");
        out.push_str(&format!(
            "{} claims: {} passed, {} failed.\n",
            self.total, self.passed, self.failed
        ));
        let mut section = String::new();
        for r in &self.results {
            let prefix = r.id.split('-').next().unwrap_or("").to_string();
            if prefix != section {
                out.push_str(&format!("\n## {prefix}\n\n"));
                section = prefix;
            }
            let mark = if r.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("- **{}** [{} | {}]\n", r.id, mark, r.kind));
            out.push_str(&format!("  - expected: {}\n", r.expected));
            out.push_str(&format!("  - computed: {}\n", r.computed));
            if !r.detail.is_empty() {
                out.push_str(&format!("  - detail: {}\n", r.detail));
            }
            for n in &r.notes {
                out.push_str(&format!("  - {n}\n"));
            }
        }
        out
    }

    /// JSON report (no timing fields, byte-identical across runs).
    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codim_formula_checks() {
        assert!(verify_codim_formula("U3_star", (1, 1, 1), 3).unwrap().pass);
        assert!(verify_codim_formula("F", (1, 0, 0), 4).unwrap().pass);
        let bad = verify_codim_formula("U3_star", (1, 2, 1), 3).unwrap();
        assert!(!bad.pass);
        assert!(bad.detail.contains("n = 1"), "{}", bad.detail);
    }

    #[test]
    fn cocharacter_table_checks() {
        let expected = expected_cocharacters("G2_gamma_gr").unwrap();
        assert!(verify_cocharacter_table("G2_gamma_gr", &expected, 3)
            .unwrap()
            .pass);
        assert!(verify_cocharacter_table("F", &[], 3).unwrap().pass);
        // A wrong expectation is reported with the offending entry.
        let wrong = expected_cocharacters("C2_star").unwrap();
        let out = verify_cocharacter_table("C2_gr", &wrong, 2).unwrap();
        assert!(!out.pass);
        assert!(out.detail.contains("missing"), "{}", out.detail);
    }

    #[test]
    fn reconstruct_known_profiles() {
        let t = cocharacter_table(&catalog("N3_star").unwrap()).unwrap();
        assert_eq!(
            reconstruct(&t).unwrap(),
            vec![Block::Single("N3_star".into())]
        );
        let t = cocharacter_table(&catalog("F").unwrap()).unwrap();
        assert_eq!(reconstruct(&t).unwrap(), vec![Block::Single("F".into())]);
        let t = cocharacter_table(&resolve_key("G2_gamma_gri+W_eta1_gri").unwrap()).unwrap();
        assert_eq!(
            reconstruct(&t).unwrap(),
            vec![
                Block::Single("G2_gamma_gri".into()),
                Block::Single("W_eta1_gri".into())
            ]
        );
        let t = cocharacter_table(&catalog("W_eta2_gr").unwrap()).unwrap();
        assert_eq!(
            reconstruct(&t).unwrap(),
            vec![Block::Either("G2_gamma_gr".into(), "W_eta2_gr".into())]
        );
        // A two-dimensional profile alone reconstructs the C2 block.
        let t = cocharacter_table(&catalog("C2_gr").unwrap()).unwrap();
        assert_eq!(reconstruct(&t).unwrap(), vec![Block::Single("C2_gr".into())]);
    }

    #[test]
    fn roundtrips_resolve_ambiguity() {
        let r = reconstruction_roundtrip("W_eta2_gr", 3).unwrap();
        assert!(r.pass, "{}", r.detail);
        assert_eq!(r.resolved, Some(vec!["W_eta2_gr".to_string()]));
        let r = reconstruction_roundtrip("G2_gamma_gr", 3).unwrap();
        assert!(r.pass, "{}", r.detail);
        assert_eq!(r.resolved, Some(vec!["G2_gamma_gr".to_string()]));
        let r = reconstruction_roundtrip("C3_i2+G2_tau", 3).unwrap();
        assert!(r.pass, "{}", r.detail);
        let resolved = r.resolved.unwrap();
        assert!(resolved.contains(&"C3_i2".to_string()));
        assert!(resolved.contains(&"G2_tau".to_string()));
        let r = reconstruction_roundtrip("F", 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.resolved, Some(vec!["F".to_string()]));
    }

    #[test]
    fn registry_is_well_formed() {
        let claims = registry();
        assert!(claims.len() >= 60, "{} claims", claims.len());
        let mut ids: Vec<&String> = claims.iter().map(|c| &c.id).collect();
        let before = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), before, "claim ids must be unique");
        // Provenance tags everywhere.
        for c in &claims {
            assert!(
                c.expected.contains("[PAPER]")
                    || c.expected.contains("[TRIVIAL]")
                    || c.expected.contains("[DERIVED]"),
                "{} lacks a provenance tag",
                c.id
            );
        }
        // The advertised coverage: 23 codim, 23 cochar, 11 tideal, 20
        // axiom, 9 reconstruction.
        let count = |k: ClaimKind| claims.iter().filter(|c| c.kind == k).count();
        assert_eq!(count(ClaimKind::CodimFormula), 23);
        assert_eq!(count(ClaimKind::CocharacterTable), 23);
        assert_eq!(count(ClaimKind::Tideal), 11);
        assert_eq!(count(ClaimKind::Axiom), 20);
        assert_eq!(count(ClaimKind::Reconstruction), 9);
    }

    #[test]
    fn filtered_run_and_corrupted_registry() {
        let claims = registry();
        // Filter: only the axiom claims (fast) — all pass.
        let report = run_claims(&claims, Some("AX-"), None);
        assert_eq!(report.total, 20);
        assert!(report.all_pass());
        // Corrupt one expected value: exactly that claim fails.
        let mut corrupted: Vec<Claim> = claims
            .iter()
            .filter(|c| c.id.starts_with("L3.2.3-codim-C2"))
            .cloned()
            .collect();
        assert_eq!(corrupted.len(), 3);
        if let ClaimParams::CodimFormula { coeffs, .. } = &mut corrupted[0].params {
            *coeffs = (1, 7, 0);
        }
        let report = run_claims(&corrupted, None, Some(3));
        assert_eq!(report.failed, 1);
        for r in &report.results {
            assert_eq!(r.pass, r.id != "L3.2.3-codim-C2_star", "{}", r.id);
        }
    }

    #[test]
    fn report_emitters_are_deterministic() {
        let claims = registry();
        let a = run_claims(&claims, Some("L3.1.3"), Some(2));
        let b = run_claims(&claims, Some("L3.1.3"), Some(2));
        assert_eq!(a.markdown(), b.markdown());
        assert_eq!(a.json(), b.json());
        assert!(a.markdown().contains("## L3.1"));
        assert!(a
            .markdown()
            .contains("source table prints χ((1)_{1-})"));
        assert!(a.json().contains("\"passed\""));
        assert!(!a.json().contains("runtime"), "no timing in the report");
    }

    #[test]
    fn blockset_claim_passes() {
        let out = run_blockset();
        assert!(out.pass, "{}", out.detail);
    }
}
