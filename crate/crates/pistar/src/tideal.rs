//! Verification of claimed generating sets of identity ideals.
//!
//! A generating set is a list of multilinear polynomials. Its multilinear
//! consequence space in a signature is spanned by all products
//! `a · g(p₁,…,p_k) · b` where the target variables are split into blocks
//! for `a`, `b`, and one block per variable of `g`, the outer factors run
//! over all orderings of their blocks, and each slot receives a
//! symmetrized monomial `m ± m*` on its block matching the slot variable's
//! parity and symmetry. Symmetric (resp. skew) multilinear polynomials on
//! a block are spanned by exactly these `m + m*` (resp. `m − m*`), and a
//! general substitution instance is a linear combination of such terms, so
//! restricting slots to symmetrized monomials loses nothing. Likewise a
//! general two-sided-ideal element is a sum of monomial-bordered terms,
//! so `a` and `b` may be taken to be monomials.
//!
//! Verification at a degree bound compares this span with the actual
//! identity space of an algebra: containment is soundness, equal dimension
//! is completeness at that degree. A bounded check never claims more —
//! "verified ≤ N" is all it asserts.
//!
//! Generator files are newline-separated polynomial expressions with `#`
//! comments. Untyped variables from informal statements are written with
//! wildcards: `x2?` ranges over all four variable types, `x2:1?` over the
//! two types of the given parity; a line expands to the product of its
//! wildcard choices. The set is then closed under the free star, since an
//! identity ideal of an algebra with involution always is.

use crate::exact::{Rat, RatMatrix, RrefAccum, SparseVec};
use crate::free_star::{
    factorial_u64, multilinear_basis, next_permutation, parse_poly, star_free, Monomial,
    Polynomial, Signature, TypedVariable,
};
use crate::star_algebra::StarAlgebra;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

pub use crate::codim::identity_space;

#[derive(Debug, Error)]
pub enum TidealError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("{0}")]
    Algebra(String),
    #[error("generator is not an identity: {gen}; witness: {witness}")]
    NotIdentity { gen: String, witness: String },
    #[error("degree bound {0} exceeds the supported limit {1}")]
    UnsupportedDegree(usize, usize),
}

impl From<crate::star_algebra::AlgebraError> for TidealError {
    fn from(e: crate::star_algebra::AlgebraError) -> Self {
        TidealError::Algebra(e.to_string())
    }
}

impl From<crate::codim::CodimError> for TidealError {
    fn from(e: crate::codim::CodimError) -> Self {
        TidealError::Algebra(e.to_string())
    }
}

/// A star-closed list of concrete multilinear generators, with notes on
/// how wildcard lines were expanded.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub gens: Vec<Polynomial>,
    pub expansion_notes: Vec<String>,
}

/// Present in the list up to sign (a scalar multiple spans the same
/// consequences).
fn present(list: &[Polynomial], p: &Polynomial) -> bool {
    list.iter().any(|g| g == p || g.neg() == *p)
}

/// Flip the sign so the coefficient of the lexicographically smallest
/// monomial is positive; purely cosmetic normalization for added star
/// images.
fn normalize_sign(p: Polynomial) -> Polynomial {
    let flip = matches!(p.terms().next(), Some((_, c)) if c < &Rat::zero());
    if flip {
        p.neg()
    } else {
        p
    }
}

impl GeneratorSet {
    /// Build from concrete polynomials: multilinearity check, ± dedup,
    /// star closure.
    pub fn from_polys(polys: Vec<Polynomial>) -> Result<GeneratorSet, TidealError> {
        let mut gens: Vec<Polynomial> = Vec::new();
        let mut notes = Vec::new();
        for p in polys {
            if p.is_zero() {
                return Err(TidealError::NotMultilinear("the zero polynomial".into()));
            }
            if !p.is_multilinear() {
                return Err(TidealError::NotMultilinear(p.to_string()));
            }
            if p.variables().len() > 3 {
                return Err(TidealError::NotMultilinear(format!(
                    "{p}: degree > 3 generators are not supported"
                )));
            }
            if !present(&gens, &p) {
                gens.push(p);
            }
        }
        let snapshot = gens.clone();
        for g in &snapshot {
            let s = normalize_sign(star_free(g));
            if !present(&gens, &s) {
                notes.push(format!("star closure added {s} (star of {g})"));
                gens.push(s);
            }
        }
        Ok(GeneratorSet {
            gens,
            expansion_notes: notes,
        })
    }

    /// Parse a generator file: one expression per line, `#` comments,
    /// wildcard variables `xN?` (all four types) and `xN:0?`/`xN:1?`
    /// (both signs of one parity).
    pub fn parse(text: &str) -> Result<GeneratorSet, TidealError> {
        let mut polys = Vec::new();
        let mut notes = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let expanded = expand_wildcards(line).map_err(|msg| TidealError::Parse {
                line: lineno + 1,
                msg,
            })?;
            if expanded.len() > 1 {
                notes.push(format!(
                    "line {}: `{}` expanded to {} typed generators",
                    lineno + 1,
                    line,
                    expanded.len()
                ));
            }
            for concrete in expanded {
                let p = parse_poly(&concrete).map_err(|e| TidealError::Parse {
                    line: lineno + 1,
                    msg: e.to_string(),
                })?;
                polys.push(p);
            }
        }
        let mut set = Self::from_polys(polys)?;
        notes.extend(std::mem::take(&mut set.expansion_notes));
        set.expansion_notes = notes;
        Ok(set)
    }
}

/// One wildcard occurrence in a line.
struct WildToken {
    start: usize,
    end: usize,
    index: u32,
    /// Allowed type labels.
    choices: &'static [&'static str],
}

const ALL_TYPES: [&str; 4] = ["0+", "0-", "1+", "1-"];
const EVEN_TYPES: [&str; 2] = ["0+", "0-"];
const ODD_TYPES: [&str; 2] = ["1+", "1-"];

/// Find wildcard tokens and return every concrete version of the line
/// (one per combination of choices for the distinct wildcard indices).
fn expand_wildcards(line: &str) -> Result<Vec<String>, String> {
    let bytes = line.as_bytes();
    let mut tokens: Vec<WildToken> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b'x' || i + 1 >= bytes.len() || !bytes[i + 1].is_ascii_digit() {
            i += 1;
            continue;
        }
        let start = i;
        let mut j = i + 1;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        let index: u32 = line[i + 1..j].parse().map_err(|_| "bad variable index")?;
        if j < bytes.len() && bytes[j] == b'?' {
            // `xN?` — any of the four types.
            tokens.push(WildToken {
                start,
                end: j + 1,
                index,
                choices: &ALL_TYPES,
            });
            i = j + 1;
            continue;
        }
        if j + 1 < bytes.len() && bytes[j] == b':' {
            let rest = &bytes[j + 1..];
            if rest[0] == b'?' {
                // `xN:?` — same as `xN?`.
                tokens.push(WildToken {
                    start,
                    end: j + 2,
                    index,
                    choices: &ALL_TYPES,
                });
                i = j + 2;
                continue;
            }
            if rest.len() >= 2 && (rest[0] == b'0' || rest[0] == b'1') && rest[1] == b'?' {
                tokens.push(WildToken {
                    start,
                    end: j + 3,
                    index,
                    choices: if rest[0] == b'0' { &EVEN_TYPES } else { &ODD_TYPES },
                });
                i = j + 3;
                continue;
            }
        }
        i = j;
    }
    if tokens.is_empty() {
        return Ok(vec![line.to_string()]);
    }
    // Distinct wildcard indices expand independently; all occurrences of
    // one index must agree on the wildcard form and take the same choice.
    let mut by_index: BTreeMap<u32, &'static [&'static str]> = BTreeMap::new();
    for t in &tokens {
        match by_index.get(&t.index) {
            None => {
                by_index.insert(t.index, t.choices);
            }
            Some(c) if *c == t.choices => {}
            Some(_) => {
                return Err(format!(
                    "variable x{} uses two different wildcard forms",
                    t.index
                ))
            }
        }
    }
    let indices: Vec<u32> = by_index.keys().copied().collect();
    let mut out = Vec::new();
    let mut counters = vec![0usize; indices.len()];
    loop {
        let pick: BTreeMap<u32, &str> = indices
            .iter()
            .zip(&counters)
            .map(|(&ix, &c)| (ix, by_index[&ix][c]))
            .collect();
        let mut s = line.to_string();
        for t in tokens.iter().rev() {
            s.replace_range(t.start..t.end, &format!("x{}:{}", t.index, pick[&t.index]));
        }
        out.push(s);
        let mut k = indices.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            counters[k] += 1;
            if counters[k] < by_index[&indices[k]].len() {
                break;
            }
            counters[k] = 0;
        }
    }
}

/// Substitute the slot polynomials for the variables of a multilinear
/// generator (`gvars` in ascending index order ↔ `ps` positionally).
fn substitute(g: &Polynomial, gvars: &[TypedVariable], ps: &[&Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero();
    for (mon, coeff) in g.terms() {
        let mut prod = Polynomial::one();
        for v in &mon.0 {
            let slot = gvars.iter().position(|w| w == v).expect("variable of g");
            prod = prod.mul(ps[slot]);
        }
        out = out.add(&prod.scale(coeff));
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted: Vec<usize> = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(sorted.clone());
        if !next_permutation(&mut sorted) {
            return out;
        }
    }
}

/// Accumulate the multilinear consequence span of the generators in one
/// signature (rows over the monomial coordinates of the signature's
/// multilinear space).
fn consequences_accum(gens: &GeneratorSet, sig: &Signature) -> RrefAccum {
    let vars = sig.variables();
    let n = vars.len();
    let nfact = factorial_u64(n) as usize;
    let rank_of: BTreeMap<Monomial, usize> = multilinear_basis(sig)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut accum = RrefAccum::new();
    'gens: for g in &gens.gens {
        let gvars: Vec<TypedVariable> = g.variables().into_iter().collect();
        let k = gvars.len();
        if k > n || n == 0 {
            continue;
        }
        // Label each target variable: 0 = left border, 1..=k the slots,
        // k+1 = right border.
        let nlabels = k + 2;
        let mut assign = vec![0usize; n];
        'assigns: loop {
            // Slot blocks must be nonempty and match the slot parity.
            let mut ok = true;
            for (s, gv) in gvars.iter().enumerate() {
                let block: Vec<usize> =
                    (0..n).filter(|&p| assign[p] == s + 1).collect();
                let parity: u8 = block
                    .iter()
                    .map(|&p| vars[p].vtype.parity())
                    .sum::<u8>()
                    % 2;
                if block.is_empty() || parity != gv.vtype.parity() {
                    ok = false;
                    break;
                }
            }
            if ok {
                emit_assignment(g, &gvars, &vars, &assign, &rank_of, &mut accum);
                if accum.rank() == nfact {
                    break 'gens; // the whole space is already spanned
                }
            }
            // Advance the label odometer.
            let mut p = n;
            loop {
                if p == 0 {
                    break 'assigns;
                }
                p -= 1;
                assign[p] += 1;
                if assign[p] < nlabels {
                    break;
                }
                assign[p] = 0;
            }
        }
    }
    accum
}

/// Emit every consequence row of one block assignment: all orderings of
/// the border blocks × all symmetrized slot monomials.
fn emit_assignment(
    g: &Polynomial,
    gvars: &[TypedVariable],
    vars: &[TypedVariable],
    assign: &[usize],
    rank_of: &BTreeMap<Monomial, usize>,
    accum: &mut RrefAccum,
) {
    let n = vars.len();
    let k = gvars.len();
    let block = |label: usize| -> Vec<usize> {
        (0..n).filter(|&p| assign[p] == label).collect()
    };
    let monomial_of = |order: &[usize]| -> Polynomial {
        Polynomial::from_term(
            Monomial(order.iter().map(|&p| vars[p]).collect()),
            Rat::from_integer(1.into()),
        )
    };
    // Symmetrized slot polynomials per slot: m ± m* over all orderings.
    let mut slot_polys: Vec<Vec<Polynomial>> = Vec::with_capacity(k);
    for (s, gv) in gvars.iter().enumerate() {
        let mut polys = Vec::new();
        for order in permutations(&block(s + 1)) {
            let m = monomial_of(&order);
            let st = star_free(&m);
            let p = if gv.vtype.sign() == 1 {
                m.add(&st)
            } else {
                m.sub(&st)
            };
            if !p.is_zero() {
                polys.push(p);
            }
        }
        if polys.is_empty() {
            return; // every symmetrization vanished: nothing to emit
        }
        slot_polys.push(polys);
    }
    let left = permutations(&block(0));
    let right = permutations(&block(k + 1));
    let mut counters = vec![0usize; k];
    loop {
        let ps: Vec<&Polynomial> = counters
            .iter()
            .enumerate()
            .map(|(s, &c)| &slot_polys[s][c])
            .collect();
        let middle = substitute(g, gvars, &ps);
        for a in &left {
            let am = monomial_of(a);
            for b in &right {
                let prod = am.mul(&middle).mul(&monomial_of(b));
                let mut row = SparseVec::new();
                for (m, c) in prod.terms() {
                    row.insert(rank_of[m], c.clone());
                }
                if !row.is_empty() {
                    accum.insert(row);
                }
            }
        }
        let mut s = k;
        loop {
            if s == 0 {
                return;
            }
            s -= 1;
            counters[s] += 1;
            if counters[s] < slot_polys[s].len() {
                break;
            }
            counters[s] = 0;
        }
    }
}

/// Reduced row-echelon basis of the consequence span of the generators in
/// the multilinear space of one signature.
pub fn consequences(gens: &GeneratorSet, sig: &Signature) -> RatMatrix {
    let nfact = factorial_u64(sig.degree()) as usize;
    consequences_accum(gens, sig).to_matrix(nfact)
}

/// One degree of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRecord {
    pub n: usize,
    /// Total consequence dimension over the signatures of the degree.
    pub consequence_dim: usize,
    /// Total identity dimension over the signatures of the degree.
    pub identity_dim: usize,
    /// Every consequence row lies inside the identity space.
    pub sound: bool,
    /// Signatures where the two dimensions differ.
    pub mismatches: Vec<(Signature, usize, usize)>,
    /// Sound and complete at this degree.
    pub verdict: bool,
}

/// Result of [`verify_tideal`].
#[derive(Debug, Clone)]
pub struct TidealReport {
    pub algebra: String,
    pub generators: Vec<String>,
    pub expansion_notes: Vec<String>,
    pub degrees: Vec<DegreeRecord>,
    pub max_degree: usize,
    /// All generators are identities and every degree passed.
    pub verified: bool,
}

/// Render a coordinate vector as a combination of labeled basis elements.
fn fmt_vec(labels: &[String], v: &[Rat]) -> String {
    let mut out = String::new();
    for (l, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rat::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&crate::exact::format_rat(&a));
            out.push('·');
        }
        out.push_str(l);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Search for an assignment of component-basis vectors on which the
/// polynomial does not vanish. `None` means the polynomial is an identity.
fn find_witness(a: &StarAlgebra, g: &Polynomial) -> Result<Option<String>, TidealError> {
    let comps = a.components()?;
    let vars: Vec<TypedVariable> = g.variables().into_iter().collect();
    let choices: Vec<&[Vec<Rat>]> = vars.iter().map(|v| comps.vectors(v.vtype)).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut counters = vec![0usize; vars.len()];
    loop {
        let assignment: BTreeMap<u32, Vec<Rat>> = vars
            .iter()
            .enumerate()
            .map(|(s, v)| (v.index, choices[s][counters[s]].clone()))
            .collect();
        let val = crate::free_star::evaluate_unchecked(a, g, &assignment)
            .map_err(|e| TidealError::Algebra(e.to_string()))?;
        if val.iter().any(|c| !c.is_zero()) {
            let subst: Vec<String> = vars
                .iter()
                .enumerate()
                .map(|(s, v)| format!("{v} ↦ {}", fmt_vec(&a.basis_labels, &choices[s][counters[s]])))
                .collect();
            return Ok(Some(format!(
                "{} (value {})",
                subst.join(", "),
                fmt_vec(&a.basis_labels, &val)
            )));
        }
        if vars.is_empty() {
            return Ok(None);
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            counters[k] += 1;
            if counters[k] < choices[k].len() {
                break;
            }
            counters[k] = 0;
        }
    }
}

/// Check a claimed generating set against an algebra up to a total-degree
/// bound: every generator must be an identity (hard error with a witness
/// otherwise), and in every signature the consequence span must be
/// contained in the identity space with matching total dimension per
/// degree.
pub fn verify_tideal(
    a: &StarAlgebra,
    gens: &GeneratorSet,
    max_n: usize,
) -> Result<TidealReport, TidealError> {
    if max_n > 5 {
        return Err(TidealError::UnsupportedDegree(max_n, 5));
    }
    for g in &gens.gens {
        if let Some(witness) = find_witness(a, g)? {
            return Err(TidealError::NotIdentity {
                gen: g.to_string(),
                witness,
            });
        }
    }
    let mut degrees = Vec::new();
    for n in 1..=max_n {
        let sigs = Signature::all_of_degree(n);
        let per_sig: Result<Vec<(Signature, usize, usize, bool)>, TidealError> = sigs
            .par_iter()
            .map(|sig| {
                let cons = consequences(gens, sig);
                let ident = identity_space(a, sig)?;
                let sound = (0..cons.rows()).all(|r| ident.subspace_contains(cons.row(r)));
                Ok((*sig, cons.rows(), ident.rows(), sound))
            })
            .collect();
        let per_sig = per_sig?;
        let consequence_dim = per_sig.iter().map(|r| r.1).sum();
        let identity_dim = per_sig.iter().map(|r| r.2).sum();
        let sound = per_sig.iter().all(|r| r.3);
        let mismatches: Vec<(Signature, usize, usize)> = per_sig
            .iter()
            .filter(|r| r.1 != r.2)
            .map(|r| (r.0, r.1, r.2))
            .collect();
        let verdict = sound && mismatches.is_empty();
        degrees.push(DegreeRecord {
            n,
            consequence_dim,
            identity_dim,
            sound,
            mismatches,
            verdict,
        });
    }
    let verified = degrees.iter().all(|d| d.verdict);
    Ok(TidealReport {
        algebra: a.name.clone(),
        generators: gens.gens.iter().map(|g| g.to_string()).collect(),
        expansion_notes: gens.expansion_notes.clone(),
        degrees,
        max_degree: max_n,
        verified,
    })
}
