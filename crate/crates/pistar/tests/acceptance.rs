//! Acceptance suite: one test per primary criterion.
//!
//! 1. Codimension formulas for every cataloged algebra, n = 1..5, exact.
//! 2. Cocharacter multiplicity tables match the recorded rows exactly.
//! 3. Generating-set verification at degree ≤ 4 for every recorded claim.
//! 4. Structure axioms for all twenty catalog algebras.
//! 5. Internal consistency between the two proper-codimension routes and
//!    between tables and codimension sequences.
//! 6. Reconstruction round-trips on composite direct sums.
//! 7. Parser grammar round-trip and formal-involution involutivity on a
//!    generated corpus.

use pistar::cocharacter::{cocharacter_table, codim_from_table, Multipartition};
use pistar::codim::{binom, codim, codim_sequence, crosscheck_eq1_eq3};
use pistar::exact::Rat;
use pistar::free_star::{parse_poly, star_free, Monomial, Polynomial, TypedVariable, VarType};
use pistar::star_algebra::{catalog, resolve_key, CATALOG_KEYS};
use pistar::tideal::{verify_tideal, GeneratorSet};
use pistar::verify::{
    expected_cocharacters, generator_source, reconstruction_roundtrip, registry, run_claims,
};
use std::collections::BTreeMap;
use std::time::Instant;

/// (key, (a, b, c)) with c_n = a + b·n + c·binom(n, 2).
const CODIM_FORMULAS: [(&str, (u64, u64, u64)); 23] = [
    ("F", (1, 0, 0)),
    ("C2_star", (1, 1, 0)),
    ("C2_gr", (1, 1, 0)),
    ("C2_star_gr", (1, 1, 0)),
    ("C3_i2", (1, 1, 1)),
    ("C3_i1_gr", (1, 2, 1)),
    ("C3_i3_gr", (1, 2, 1)),
    ("G2_tau", (1, 1, 1)),
    ("G2_psi_gr", (1, 1, 1)),
    ("G2_tau_gr", (1, 1, 1)),
    ("G2_gamma_gr", (1, 3, 2)),
    ("G2_tau_gri", (1, 2, 2)),
    ("G2_gamma_gri", (1, 2, 2)),
    ("W_eta2_gr", (1, 2, 2)),
    ("W_eta1_gri", (1, 3, 2)),
    ("W_eta3_gri", (1, 3, 2)),
    ("N3_star", (1, 1, 2)),
    ("U3_star", (1, 1, 1)),
    ("N3_gri", (1, 2, 2)),
    ("U3_gri", (1, 2, 2)),
    ("G2_gamma_gri+W_eta1_gri", (1, 3, 4)),
    ("G2_gamma_gr+W_eta2_gr", (1, 3, 4)),
    ("G2_tau_gri+W_eta3_gri", (1, 3, 4)),
];

#[test]
fn criterion1_codimension_formulas_exact_to_degree_5() {
    let start = Instant::now();
    for (key, (a, b, c)) in CODIM_FORMULAS {
        let alg = resolve_key(key).unwrap();
        let seq = codim_sequence(&alg, 5).unwrap();
        for n in 1..=5usize {
            let expect = a + b * n as u64 + c * binom(n, 2);
            assert_eq!(
                seq.c[n], expect,
                "{key}: c_{n} = {} but formula gives {expect}",
                seq.c[n]
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "codimension formulas took {elapsed:?}, budget is 60 s"
    );
}

/// The sixteen rows of the recorded multiplicity tables, plus the six
/// rows of the graded-Grassmann table.
const TABLE_ROWS: [&str; 22] = [
    "N3_star",
    "U3_star",
    "N3_gri",
    "U3_gri",
    "C2_star",
    "C2_gr",
    "C2_star_gr",
    "C3_i2",
    "C3_i1_gr",
    "C3_i3_gr",
    "W_eta2_gr",
    "W_eta1_gri",
    "W_eta3_gri",
    "G2_gamma_gri+W_eta1_gri",
    "G2_gamma_gr+W_eta2_gr",
    "G2_tau_gri+W_eta3_gri",
    "G2_tau",
    "G2_psi_gr",
    "G2_tau_gr",
    "G2_gamma_gr",
    "G2_tau_gri",
    "G2_gamma_gri",
];

#[test]
fn criterion2_cocharacter_tables_match_recorded_rows() {
    for key in TABLE_ROWS {
        let a = resolve_key(key).unwrap();
        let table = cocharacter_table(&a).unwrap();
        let computed: BTreeMap<Multipartition, usize> = table
            .nonzero()
            .into_iter()
            .map(|(m, v)| (m.clone(), v))
            .collect();
        let expected: BTreeMap<Multipartition, usize> =
            expected_cocharacters(key).unwrap().into_iter().collect();
        assert_eq!(computed, expected, "{key}: multiplicity table differs");
    }
}

#[test]
fn criterion3_generating_sets_verified_to_degree_4() {
    let claims = [
        "N3_gri",
        "U3_gri",
        "C3_i1_gr",
        "C3_i3_gr",
        "G2_tau_gr",
        "G2_psi_gr",
        "G2_gamma_gr",
        "W_eta2_gr",
        "G2_gamma_gri+W_eta1_gri",
        "G2_gamma_gr+W_eta2_gr",
        "G2_tau_gri+W_eta3_gri",
    ];
    for key in claims {
        let a = resolve_key(key).unwrap();
        let gens = GeneratorSet::parse(generator_source(key).unwrap()).unwrap();
        let report = verify_tideal(&a, &gens, 4)
            .unwrap_or_else(|e| panic!("{key}: {e}"));
        assert!(
            report.verified,
            "{key}: generating set not verified at degree ≤ 4: {:?}",
            report
                .degrees
                .iter()
                .filter(|d| !d.verdict)
                .map(|d| (d.n, d.mismatches.clone()))
                .collect::<Vec<_>>()
        );
        // The check is bounded by degree, and the report must say so.
        assert_eq!(report.max_degree, 4);
    }
}

#[test]
fn criterion4_axioms_hold_for_all_catalog_algebras() {
    assert_eq!(CATALOG_KEYS.len(), 20);
    for key in CATALOG_KEYS {
        let a = catalog(key).unwrap();
        let violations = a.validate();
        assert!(
            violations.is_empty(),
            "{key}: {}",
            violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        );
        let dims = a.components().unwrap().dims();
        assert_eq!(
            dims.iter().sum::<usize>(),
            a.dim,
            "{key}: component dims {dims:?} do not sum to {}",
            a.dim
        );
    }
}

#[test]
fn criterion5_internal_consistency() {
    // Proper codimensions via the inverse binomial transform agree with
    // the direct per-signature computation at n ∈ {1, 2} for every
    // unitary catalog algebra.
    let mut unitary = 0;
    for key in CATALOG_KEYS {
        let a = catalog(key).unwrap();
        if a.unit.is_none() {
            continue;
        }
        unitary += 1;
        let rows = crosscheck_eq1_eq3(&a, 2).unwrap();
        assert_eq!(rows.len(), 2, "{key}");
        for r in &rows {
            assert!(
                r.pass,
                "{key} at n = {}: transform {} ≠ per-signature {}",
                r.n, r.from_transform, r.from_signatures
            );
        }
    }
    assert!(unitary >= 16, "expected most catalog algebras unitary, got {unitary}");
    // The multiplicity table reproduces the codimension sequence for
    // n ≤ 5 for every catalog algebra.
    for key in CATALOG_KEYS {
        let a = catalog(key).unwrap();
        let table = cocharacter_table(&a).unwrap();
        let via_table = codim_from_table(&table, 5);
        for (n, expect) in via_table.iter().enumerate() {
            let direct = codim(&a, n).unwrap();
            assert_eq!(
                direct, *expect,
                "{key}: table-derived c_{n} = {expect} but direct computation gives {direct}"
            );
        }
    }
}

#[test]
fn criterion6_reconstruction_roundtrips() {
    let composites = [
        "N3_gri+C3_i2",
        "G2_gamma_gri+W_eta1_gri",
        "C3_i2+G2_tau",
        "U3_star+N3_star",
    ];
    for key in composites {
        let r = reconstruction_roundtrip(key, 5).unwrap();
        assert!(r.pass, "{key}: {}", r.detail);
        let resolved = r.resolved.expect("a passing round-trip resolves its blocks");
        for part in key.split('+') {
            assert!(
                resolved.contains(&part.to_string()),
                "{key}: resolution {resolved:?} misses {part}"
            );
        }
    }
    // Single-block and base-field round-trips close the loop as well.
    for key in ["F", "W_eta2_gr", "G2_gamma_gr"] {
        let r = reconstruction_roundtrip(key, 5).unwrap();
        assert!(r.pass, "{key}: {}", r.detail);
    }
}

/// Small deterministic generator (splitmix-style) for the parser corpus.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_polynomial(rng: &mut Rng) -> Polynomial {
    let coeffs: [i64; 7] = [1, -1, 2, -2, 3, 5, -7];
    let denoms: [i64; 3] = [1, 2, 3];
    let nterms = 1 + rng.below(3) as usize;
    let mut p = Polynomial::zero();
    for _ in 0..nterms {
        let num = coeffs[rng.below(7) as usize];
        let den = denoms[rng.below(3) as usize];
        let c = Rat::new(num.into(), den.into());
        let nvars = 1 + rng.below(4) as usize;
        let vars: Vec<TypedVariable> = (0..nvars)
            .map(|_| TypedVariable {
                index: 1 + rng.below(4) as u32,
                vtype: VarType::ALL[rng.below(4) as usize],
            })
            .collect();
        p = p.add(&Polynomial::from_term(Monomial(vars), c));
    }
    p
}

#[test]
fn criterion7_parser_roundtrip_and_involution_on_corpus() {
    let mut rng = Rng(0x5eed);
    let mut nonzero = 0;
    for _ in 0..1500 {
        let p = random_polynomial(&mut rng);
        if !p.is_zero() {
            nonzero += 1;
        }
        // Grammar round-trip through the canonical rendering.
        let rendered = p.to_string();
        let back = parse_poly(&rendered)
            .unwrap_or_else(|e| panic!("cannot re-parse {rendered:?}: {e}"));
        assert_eq!(back, p, "round-trip changed {rendered}");
        // The formal superinvolution is an involution.
        assert_eq!(star_free(&star_free(&p)), p, "star² ≠ id on {rendered}");
    }
    assert!(nonzero >= 1000, "corpus too degenerate: {nonzero} nonzero polynomials");
    // Bracketed grammar forms parse to the operations they denote.
    let x = |i, t| Polynomial::var(TypedVariable { index: i, vtype: t });
    let a = x(1, VarType::ZeroPlus);
    let b = x(2, VarType::OneMinus);
    assert_eq!(parse_poly("[x1:0+, x2:1-]").unwrap(), a.commutator(&b));
    assert_eq!(parse_poly("x1:0+ o x2:1-").unwrap(), a.jordan(&b));
    assert_eq!(parse_poly("(x1:0+ x2:1-)^*").unwrap(), star_free(&a.mul(&b)));
    assert_eq!(
        parse_poly("3/2 x1:0+ - x1:0+").unwrap(),
        a.scale(&Rat::new(1.into(), 2.into()))
    );
    assert_eq!(parse_poly("x1:0+ - x1:0+").unwrap(), Polynomial::zero());
    assert!(parse_poly("x1:0+ +").is_err());
}

#[test]
fn full_claim_registry_passes() {
    let report = run_claims(&registry(), None, None);
    assert_eq!(report.failed, 0, "{}", report.markdown());
    assert!(report.total >= 60);
}
