//! Codimension sequences by exact rank computation.
//!
//! For one signature (a count of variables of each of the four types), the
//! degree-n multilinear space has the n! orderings of the typed variables as
//! a basis. Substituting component-basis vectors of an algebra for the
//! variables gives a linear "evaluation" map out of that space; the
//! signature codimension is its rank, and the identity space is its kernel.
//!
//! The total codimension `c_n` recombines signature codimensions with
//! multinomial weights. Proper codimensions `γ_n` are obtained from `c_n`
//! by the inverse binomial transform (with `c₀ = 1`), and independently —
//! for degree ≤ 2 — by ranking evaluations of explicit proper spanning
//! sets; [`crosscheck_eq1_eq3`] confronts the two.
//!
//! Ranks are accumulated column-by-column in an incremental reduced
//! row-echelon accumulator: each assignment tuple contributes one column
//! per algebra coordinate, and a depth-first walk over variable orderings
//! fills the column entries, pruning subtrees whose partial product is
//! already zero.

use crate::exact::{Rat, RatMatrix, RrefAccum, SparseVec};
use crate::free_star::{factorial_u64, Polynomial, Signature, TypedVariable, VarType};
use crate::star_algebra::{ComponentBases, StarAlgebra};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodimError {
    #[error("{0}")]
    Algebra(String),
    #[error("degree {0} is not supported by this operation (limit {1})")]
    UnsupportedDegree(usize, usize),
    #[error("inverse binomial transform produced a negative value at n = {n}; the sequence does not come from a unitary algebra")]
    NegativeProper { n: usize },
    #[error("bad codimension sequence: {0}")]
    BadSequence(String),
}

impl From<crate::star_algebra::AlgebraError> for CodimError {
    fn from(e: crate::star_algebra::AlgebraError) -> Self {
        CodimError::Algebra(e.to_string())
    }
}

/// Codimension data of one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureCodimRecord {
    pub sig: Signature,
    /// Dimension n! of the multilinear space of the signature.
    pub pn_dim: usize,
    /// Dimension of the identity subspace.
    pub identity_dim: usize,
    /// Rank of the evaluation map; `pn_dim − identity_dim`.
    pub codim: usize,
}

/// Binomial coefficient as an exact small integer.
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u64 = 1;
    for i in 0..k {
        num = num * (n - i) as u64 / (i + 1) as u64;
    }
    num
}

/// Walk state for the ordering enumeration of one assignment tuple.
struct OrderWalk<'a> {
    n: usize,
    dim: usize,
    /// Assigned vector per variable slot.
    assigned: Vec<&'a Vec<Rat>>,
    /// Right-multiplication rows per variable slot (row i = eᵢ·w).
    rmult: Vec<&'a Vec<Vec<Rat>>>,
    /// factorials 0!..n!
    fact: Vec<usize>,
    /// Column builders, one per algebra coordinate; key = ordering rank.
    cols: Vec<SparseVec>,
}

impl<'a> OrderWalk<'a> {
    /// Depth-first over the remaining variables in ascending slot order,
    /// maintaining the lexicographic rank of the ordering and the partial
    /// left-to-right product.
    fn walk(&mut self, used: u32, depth: usize, prod: &[Rat], rank: usize) {
        if depth == self.n {
            for (c, p) in prod.iter().enumerate() {
                if !p.is_zero() {
                    self.cols[c].insert(rank, p.clone());
                }
            }
            return;
        }
        let step = self.fact[self.n - depth - 1];
        let mut k = 0;
        for vi in 0..self.n {
            if used & (1 << vi) != 0 {
                continue;
            }
            let child_rank = rank + k * step;
            k += 1;
            let next: Vec<Rat> = if depth == 0 {
                self.assigned[vi].clone()
            } else {
                let rows = self.rmult[vi];
                let mut out = vec![Rat::zero(); self.dim];
                for (i, pi) in prod.iter().enumerate() {
                    if pi.is_zero() {
                        continue;
                    }
                    for (j, r) in rows[i].iter().enumerate() {
                        if !r.is_zero() {
                            out[j] += pi * r;
                        }
                    }
                }
                out
            };
            if next.iter().any(|c| !c.is_zero()) {
                self.walk(used | (1 << vi), depth + 1, &next, child_rank);
            }
        }
    }
}

/// Accumulate the evaluation columns of every assignment tuple of the
/// signature into a reduced row-echelon accumulator over the n! ordering
/// coordinates. The row space is the image of the transposed evaluation
/// map: its rank is the signature codimension and its kernel is the
/// identity space.
fn evaluation_accum(a: &StarAlgebra, comps: &ComponentBases, sig: &Signature) -> RrefAccum {
    let vars = sig.variables();
    let n = vars.len();
    let nfact = factorial_u64(n) as usize;
    let dim = a.dim;
    let mut accum = RrefAccum::new();
    let choices: Vec<&[Vec<Rat>]> = vars.iter().map(|v| comps.vectors(v.vtype)).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return accum; // a required component is zero: every evaluation vanishes
    }
    // Right-multiplication tables per (slot, choice), computed once.
    let rmult: Vec<Vec<Vec<Vec<Rat>>>> = choices
        .iter()
        .map(|ch| ch.iter().map(|w| a.right_mult_rows(w)).collect())
        .collect();
    let fact: Vec<usize> = (0..=n).map(|k| factorial_u64(k) as usize).collect();
    let mut counters = vec![0usize; n];
    'tuples: loop {
        let mut walk = OrderWalk {
            n,
            dim,
            assigned: counters
                .iter()
                .enumerate()
                .map(|(vi, &c)| &choices[vi][c])
                .collect(),
            rmult: counters
                .iter()
                .enumerate()
                .map(|(vi, &c)| &rmult[vi][c])
                .collect(),
            fact: fact.clone(),
            cols: vec![SparseVec::new(); dim],
        };
        walk.walk(0, 0, &[], 0);
        for col in walk.cols {
            if !col.is_empty() {
                accum.insert(col);
            }
        }
        if accum.rank() == nfact {
            break; // full rank: later columns cannot change rank or kernel
        }
        // Advance the tuple odometer (last slot fastest).
        let mut k = n;
        loop {
            if k == 0 {
                break 'tuples;
            }
            k -= 1;
            counters[k] += 1;
            if counters[k] < choices[k].len() {
                break;
            }
            counters[k] = 0;
        }
    }
    accum
}

/// Codimension of one signature: rank of the evaluation map on the
/// multilinear space of that signature.
pub fn signature_codim(a: &StarAlgebra, sig: &Signature) -> Result<SignatureCodimRecord, CodimError> {
    let n = sig.degree();
    if n == 0 {
        let c = usize::from(a.unit.is_some());
        return Ok(SignatureCodimRecord {
            sig: *sig,
            pn_dim: 1,
            identity_dim: 1 - c,
            codim: c,
        });
    }
    let comps = a.components()?;
    let accum = evaluation_accum(a, &comps, sig);
    let pn_dim = factorial_u64(n) as usize;
    let codim = accum.rank();
    Ok(SignatureCodimRecord {
        sig: *sig,
        pn_dim,
        identity_dim: pn_dim - codim,
        codim,
    })
}

/// Row-basis of the multilinear identities of the signature, in the
/// monomial coordinates of [`crate::free_star::multilinear_basis`] (kernel
/// of the evaluation map).
pub fn identity_space(a: &StarAlgebra, sig: &Signature) -> Result<RatMatrix, CodimError> {
    let n = sig.degree();
    let nfact = factorial_u64(n) as usize;
    let comps = a.components()?;
    let accum = evaluation_accum(a, &comps, sig);
    let kernel = accum.kernel_basis(nfact);
    if kernel.is_empty() {
        return Ok(RatMatrix::zero(0, nfact));
    }
    let (rr, pivots) = RatMatrix::from_rows(kernel).rref();
    Ok(RatMatrix::from_rows(
        (0..pivots.len()).map(|i| rr.row(i).to_vec()).collect(),
    ))
}

/// Total codimension `c_n`: multinomial-weighted sum of signature
/// codimensions over all signatures of degree n. Signatures are processed
/// in parallel.
pub fn codim(a: &StarAlgebra, n: usize) -> Result<u64, CodimError> {
    if n == 0 {
        return Ok(1);
    }
    let sigs = Signature::all_of_degree(n);
    let terms: Result<Vec<u64>, CodimError> = sigs
        .par_iter()
        .map(|s| signature_codim(a, s).map(|r| s.multinomial() * r.codim as u64))
        .collect();
    Ok(terms?.iter().sum())
}

/// All signature records of degree n, in lexicographic signature order.
pub fn per_signature(a: &StarAlgebra, n: usize) -> Result<Vec<SignatureCodimRecord>, CodimError> {
    Signature::all_of_degree(n)
        .par_iter()
        .map(|s| signature_codim(a, s))
        .collect()
}

/// A codimension sequence `c₀..c_N` (with `c₀ = 1` by convention) and, when
/// the inverse binomial transform stays nonnegative, the proper sequence
/// `γ₀..γ_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimSequence {
    pub algebra: String,
    pub c: Vec<u64>,
    pub gamma: Option<Vec<u64>>,
}

/// Compute `c₀..c_N` and the proper sequence.
pub fn codim_sequence(a: &StarAlgebra, nmax: usize) -> Result<CodimSequence, CodimError> {
    let mut c = vec![1u64];
    for n in 1..=nmax {
        c.push(codim(a, n)?);
    }
    let gamma = proper_from_codim(&c).ok();
    Ok(CodimSequence {
        algebra: a.name.clone(),
        c,
        gamma,
    })
}

/// Inverse binomial transform: the unique `γ` with
/// `c_n = Σᵢ binom(n,i)·γᵢ`, namely `γ_n = Σᵢ (−1)^{n−i} binom(n,i) cᵢ`.
/// Requires `c₀ = 1`; a negative `γ` value is an error (the sequence cannot
/// come from a unitary algebra).
pub fn proper_from_codim(c: &[u64]) -> Result<Vec<u64>, CodimError> {
    if c.first() != Some(&1) {
        return Err(CodimError::BadSequence(
            "sequence must start with c₀ = 1".into(),
        ));
    }
    let mut gamma = Vec::with_capacity(c.len());
    for n in 0..c.len() {
        let mut g: i128 = 0;
        for (i, &ci) in c.iter().enumerate().take(n + 1) {
            let term = binom(n, i) as i128 * ci as i128;
            if (n - i) % 2 == 0 {
                g += term;
            } else {
                g -= term;
            }
        }
        if g < 0 {
            return Err(CodimError::NegativeProper { n });
        }
        gamma.push(g as u64);
    }
    // Forward-substitution check: the transform must reproduce c exactly.
    for (n, &cn) in c.iter().enumerate() {
        let back: u64 = gamma
            .iter()
            .enumerate()
            .take(n + 1)
            .map(|(i, &gi)| binom(n, i) * gi)
            .sum();
        if back != cn {
            return Err(CodimError::BadSequence(format!(
                "round-trip failed at n = {n}: {back} ≠ {cn}"
            )));
        }
    }
    Ok(gamma)
}

/// The explicit spanning set of the proper multilinear space of a
/// signature of degree ≤ 2:
///
/// * degree 1 — the lone variable for types `0-`, `1+`, `1-`; empty for
///   `0+` (a single even symmetric variable is never proper);
/// * degree 2 — `[x₁,x₂]` when an even symmetric variable is involved;
///   `{x₁x₂, x₂x₁}` for the remaining pure and mixed signatures.
pub fn proper_spanning_set(sig: &Signature) -> Result<Vec<Polynomial>, CodimError> {
    let n = sig.degree();
    if n > 2 {
        return Err(CodimError::UnsupportedDegree(n, 2));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let vars = sig.variables();
    if n == 1 {
        return Ok(if vars[0].vtype == VarType::ZeroPlus {
            Vec::new()
        } else {
            vec![Polynomial::var(vars[0])]
        });
    }
    let x1 = Polynomial::var(vars[0]);
    let x2 = Polynomial::var(vars[1]);
    Ok(if sig.0[0] >= 1 {
        vec![x1.commutator(&x2)]
    } else {
        vec![x1.mul(&x2), x2.mul(&x1)]
    })
}

/// Rank of the joint evaluation matrix of a family of multilinear
/// polynomials: one row per polynomial, columns indexed by (assignment
/// tuple of component-basis vectors) × (result coordinate), tuples in
/// lexicographic order.
pub fn poly_eval_rank(a: &StarAlgebra, polys: &[Polynomial]) -> Result<usize, CodimError> {
    if polys.is_empty() {
        return Ok(0);
    }
    let comps = a.components()?;
    let mut vars: BTreeSet<TypedVariable> = BTreeSet::new();
    for p in polys {
        for v in p.variables() {
            if vars.iter().any(|w| w.index == v.index && w.vtype != v.vtype) {
                return Err(CodimError::BadSequence(format!(
                    "variable index {} used with two different types",
                    v.index
                )));
            }
            vars.insert(v);
        }
    }
    let vars: Vec<TypedVariable> = vars.into_iter().collect();
    let choices: Vec<&[Vec<Rat>]> = vars.iter().map(|v| comps.vectors(v.vtype)).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(0);
    }
    let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); polys.len()];
    let mut counters = vec![0usize; vars.len()];
    'tuples: loop {
        let assignment: BTreeMap<u32, Vec<Rat>> = vars
            .iter()
            .enumerate()
            .map(|(slot, v)| (v.index, choices[slot][counters[slot]].clone()))
            .collect();
        for (row, p) in rows.iter_mut().zip(polys) {
            let val = crate::free_star::evaluate_unchecked(a, p, &assignment)
                .map_err(|e| CodimError::Algebra(e.to_string()))?;
            row.extend(val);
        }
        if vars.is_empty() {
            break;
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                break 'tuples;
            }
            k -= 1;
            counters[k] += 1;
            if counters[k] < choices[k].len() {
                break;
            }
            counters[k] = 0;
        }
    }
    Ok(RatMatrix::from_rows(rows).rank())
}

/// Per-signature proper codimension for degrees ≤ 2: rank of the
/// evaluation of the proper spanning set.
pub fn proper_signature_codim(a: &StarAlgebra, sig: &Signature) -> Result<usize, CodimError> {
    let polys = proper_spanning_set(sig)?;
    poly_eval_rank(a, &polys)
}

/// One degree of the proper-codimension cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckRow {
    pub n: usize,
    /// γ_n from the inverse binomial transform of the codimension sequence.
    pub from_transform: u64,
    /// γ_n as the multinomial-weighted sum of per-signature proper ranks.
    pub from_signatures: u64,
    pub per_signature: Vec<(Signature, u64)>,
    pub pass: bool,
}

/// Verify that the proper codimensions obtained from the inverse binomial
/// transform agree with the direct per-signature computation for
/// `n ∈ 1..=nmax` (nmax ≤ 2).
pub fn crosscheck_eq1_eq3(a: &StarAlgebra, nmax: usize) -> Result<Vec<CrosscheckRow>, CodimError> {
    if nmax > 2 {
        return Err(CodimError::UnsupportedDegree(nmax, 2));
    }
    let mut c = vec![1u64];
    for n in 1..=nmax {
        c.push(codim(a, n)?);
    }
    let gamma = proper_from_codim(&c)?;
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut per = Vec::new();
        let mut direct: u64 = 0;
        for sig in Signature::all_of_degree(n) {
            let r = proper_signature_codim(a, &sig)? as u64;
            direct += sig.multinomial() * r;
            if r > 0 {
                per.push((sig, r));
            }
        }
        out.push(CrosscheckRow {
            n,
            from_transform: gamma[n],
            from_signatures: direct,
            per_signature: per,
            pass: gamma[n] == direct,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star_algebra::{catalog, direct_sum, resolve_key};

    #[test]
    fn signature_codim_examples() {
        let c2 = catalog("C2_star").unwrap();
        let r = signature_codim(&c2, &Signature([0, 1, 0, 0])).unwrap();
        assert_eq!(r.codim, 1);
        assert_eq!(r.pn_dim, 1);
        let f = catalog("F").unwrap();
        for n in 1..=4 {
            let r = signature_codim(&f, &Signature([n, 0, 0, 0])).unwrap();
            assert_eq!(r.codim, 1, "n = {n}");
        }
        let n3 = catalog("N3_gri").unwrap();
        let r = signature_codim(&n3, &Signature([1, 0, 0, 1])).unwrap();
        assert_eq!(r.codim, 2);
        // A signature requesting an empty component has codimension 0.
        let r = signature_codim(&n3, &Signature([0, 1, 0, 0])).unwrap();
        assert_eq!(r.codim, 0);
        assert_eq!(r.identity_dim, 1);
    }

    #[test]
    fn codim_point_values() {
        assert_eq!(codim(&catalog("U3_star").unwrap(), 3).unwrap(), 7);
        assert_eq!(codim(&catalog("G2_gamma_gr").unwrap(), 2).unwrap(), 9);
        let b = resolve_key("G2_gamma_gri+W_eta1_gri").unwrap();
        assert_eq!(codim(&b, 2).unwrap(), 11);
        assert_eq!(codim(&b, 3).unwrap(), 22);
    }

    #[test]
    fn codim_sequences_match_closed_forms() {
        // c_n = 1 + n + 2·binom(n,2)
        let n3 = catalog("N3_star").unwrap();
        let s = codim_sequence(&n3, 4).unwrap();
        assert_eq!(s.c, vec![1, 2, 5, 10, 17]);
        assert_eq!(s.gamma, Some(vec![1, 1, 2, 0, 0]));
        // c_n = 1 + n
        let c2 = catalog("C2_gr").unwrap();
        let s = codim_sequence(&c2, 4).unwrap();
        assert_eq!(s.c, vec![1, 2, 3, 4, 5]);
        assert_eq!(s.gamma, Some(vec![1, 1, 0, 0, 0]));
    }

    #[test]
    fn proper_from_codim_examples() {
        assert_eq!(proper_from_codim(&[1, 2, 3, 4]).unwrap(), vec![1, 1, 0, 0]);
        assert_eq!(proper_from_codim(&[1, 3, 7, 13]).unwrap(), vec![1, 2, 2, 0]);
        assert_eq!(proper_from_codim(&[1, 1, 1, 1]).unwrap(), vec![1, 0, 0, 0]);
        assert!(matches!(
            proper_from_codim(&[1, 0, 0]),
            Err(CodimError::NegativeProper { n: 1 })
        ));
        assert!(proper_from_codim(&[2, 2]).is_err());
    }

    #[test]
    fn proper_signature_values() {
        let g2 = catalog("G2_tau").unwrap();
        assert_eq!(proper_signature_codim(&g2, &Signature([0, 2, 0, 0])).unwrap(), 1);
        let w = catalog("W_eta2_gr").unwrap();
        assert_eq!(proper_signature_codim(&w, &Signature([0, 0, 1, 1])).unwrap(), 1);
        assert_eq!(proper_signature_codim(&w, &Signature([0, 0, 2, 0])).unwrap(), 0);
        let u3 = catalog("U3_star").unwrap();
        assert_eq!(proper_signature_codim(&u3, &Signature([2, 0, 0, 0])).unwrap(), 1);
        assert_eq!(proper_signature_codim(&u3, &Signature([1, 1, 0, 0])).unwrap(), 0);
        let f = catalog("F").unwrap();
        for sig in Signature::all_of_degree(2) {
            assert_eq!(proper_signature_codim(&f, &sig).unwrap(), 0, "{sig}");
        }
        assert!(matches!(
            proper_signature_codim(&f, &Signature([3, 0, 0, 0])),
            Err(CodimError::UnsupportedDegree(3, 2))
        ));
    }

    #[test]
    fn crosscheck_examples() {
        let rows = crosscheck_eq1_eq3(&catalog("U3_star").unwrap(), 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.pass));
        assert_eq!(rows[0].from_transform, 1);
        assert_eq!(rows[1].from_transform, 1);
        let rows = crosscheck_eq1_eq3(&catalog("F").unwrap(), 2).unwrap();
        assert!(rows.iter().all(|r| r.pass && r.from_transform == 0));
        let b = resolve_key("G2_gamma_gri+W_eta1_gri").unwrap();
        let rows = crosscheck_eq1_eq3(&b, 2).unwrap();
        assert_eq!(rows[0].from_transform, 3);
        assert_eq!(rows[1].from_transform, 4);
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn identity_space_dimensions() {
        let c2 = catalog("C2_star").unwrap();
        let m = identity_space(&c2, &Signature([0, 2, 0, 0])).unwrap();
        assert_eq!(m.rows(), 2);
        let f = catalog("F").unwrap();
        let m = identity_space(&f, &Signature([2, 0, 0, 0])).unwrap();
        assert_eq!(m.rows(), 1);
        // The kernel row is the commutator direction x₁x₂ − x₂x₁.
        assert_eq!(m.get(0, 0), &(m.get(0, 1) * crate::exact::rat_int(-1)));
        let w = catalog("W_eta2_gr").unwrap();
        let m = identity_space(&w, &Signature([0, 0, 2, 0])).unwrap();
        assert_eq!(m.rows(), 2);
    }

    #[test]
    fn identity_dim_complements_codim() {
        let a = catalog("N3_gri").unwrap();
        for sig in Signature::all_of_degree(3) {
            let r = signature_codim(&a, &sig).unwrap();
            let k = identity_space(&a, &sig).unwrap();
            assert_eq!(r.identity_dim, k.rows(), "{sig}");
            assert_eq!(r.pn_dim, 6);
        }
    }

    #[test]
    fn direct_sum_codim_sandwich() {
        let a = catalog("C3_i2").unwrap();
        let b = catalog("G2_tau").unwrap();
        let s = direct_sum(&a, &b);
        for n in 1..=3 {
            let ca = codim(&a, n).unwrap();
            let cb = codim(&b, n).unwrap();
            let cs = codim(&s, n).unwrap();
            assert!(ca.max(cb) <= cs, "lower bound at n = {n}");
            assert!(cs <= ca + cb, "upper bound at n = {n}");
        }
    }

    #[test]
    fn degree_zero_conventions() {
        let a = catalog("C2_star").unwrap();
        assert_eq!(codim(&a, 0).unwrap(), 1);
        let r = signature_codim(&a, &Signature([0, 0, 0, 0])).unwrap();
        assert_eq!(r.codim, 1);
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(4, 0), 1);
        assert_eq!(binom(3, 5), 0);
    }
}
