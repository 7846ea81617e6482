//! Proper cocharacter multiplicities in total degree ≤ 2.
//!
//! The proper multilinear space of each signature of degree ≤ 2 decomposes
//! with known highest-weight vectors: a lone non-`0+` variable in degree 1,
//! and in degree 2 the commutator, the Jordan product, or the pair
//! {commutator, plain product} depending on the types involved. The
//! multiplicity of a multipartition is the rank of the joint evaluation of
//! its highest-weight vectors — simultaneously "some h.w.v. survives" and
//! "how many stay independent modulo the identities".
//!
//! For an algebra whose proper codimensions vanish beyond degree 2, the
//! full codimension sequence is recovered from the table alone:
//! `c_n = 1 + n·(Σ degree-1 m) + binom(n,2)·(Σ weighted degree-2 m)`,
//! mixed-signature entries counting twice (two ways to distribute the two
//! distinguished variables). All character degrees are 1 in this range,
//! which the assembly asserts rather than computing hook lengths.

use crate::codim::{binom, poly_eval_rank, CodimError};
use crate::free_star::{Polynomial, Signature, TypedVariable, VarType};
use crate::star_algebra::StarAlgebra;
use rayon::prelude::*;
use std::fmt;

/// A partition for each of the four variable types; total degree ≤ 2 in
/// every supported operation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multipartition(pub [Vec<usize>; 4]);

impl Multipartition {
    pub fn degree(&self) -> usize {
        self.0.iter().flatten().sum()
    }

    /// The underlying signature: how many variables of each type.
    pub fn signature(&self) -> Signature {
        let mut s = [0usize; 4];
        for (i, part) in self.0.iter().enumerate() {
            s[i] = part.iter().sum();
        }
        Signature(s)
    }

    /// Every multipartition of every signature of degree n; signatures in
    /// lexicographic order, partition tuples lexicographic within each.
    pub fn all_of_degree(n: usize) -> Vec<Multipartition> {
        let mut out = Vec::new();
        for sig in Signature::all_of_degree(n) {
            let per_slot: Vec<Vec<Vec<usize>>> =
                sig.0.iter().map(|&k| partitions(k)).collect();
            let mut counters = vec![0usize; 4];
            loop {
                out.push(Multipartition(std::array::from_fn(|i| {
                    per_slot[i][counters[i]].clone()
                })));
                let mut k = 4;
                let mut done = true;
                while k > 0 {
                    k -= 1;
                    counters[k] += 1;
                    if counters[k] < per_slot[k].len() {
                        done = false;
                        break;
                    }
                    counters[k] = 0;
                }
                if done {
                    break;
                }
            }
        }
        out
    }

    /// `true` when two different types carry variables.
    pub fn is_mixed(&self) -> bool {
        self.0.iter().filter(|p| !p.is_empty()).count() > 1
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(VarType::ALL)
            .filter(|(p, _)| !p.is_empty())
            .map(|(p, t)| {
                let nums: Vec<String> = p.iter().map(|k| k.to_string()).collect();
                format!("({})_{{{}}}", nums.join(","), t.label())
            })
            .collect();
        if parts.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

/// All partitions of n in lexicographic order (parts weakly decreasing).
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, maxpart: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in 1..=n.min(maxpart) {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// The highest-weight vectors attached to a multipartition.
#[derive(Debug, Clone)]
pub struct HwvSet {
    pub mp: Multipartition,
    pub polys: Vec<Polynomial>,
}

/// The proper highest-weight vectors of a multipartition of total degree
/// ≤ 2. Empty exactly for `((1)_{0+})` and `((2)_{0+})`, where no proper
/// vector exists.
pub fn hwv_catalog(mp: &Multipartition) -> Result<HwvSet, CodimError> {
    let n = mp.degree();
    if n > 2 {
        return Err(CodimError::UnsupportedDegree(n, 2));
    }
    let occupied: Vec<(usize, &Vec<usize>)> = mp
        .0
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .collect();
    let polys: Vec<Polynomial> = match occupied.as_slice() {
        [] => Vec::new(),
        [(slot, part)] => {
            let t = VarType::ALL[*slot];
            let x1 = Polynomial::var(TypedVariable { index: 1, vtype: t });
            let x2 = Polynomial::var(TypedVariable { index: 2, vtype: t });
            match part.as_slice() {
                [1] if t == VarType::ZeroPlus => Vec::new(),
                [1] => vec![x1],
                [1, 1] => vec![x1.commutator(&x2)],
                [2] if t == VarType::ZeroPlus => Vec::new(),
                [2] => vec![x1.jordan(&x2)],
                _ => unreachable!("degree ≤ 2"),
            }
        }
        [(s, ps), (t, pt)] => {
            debug_assert_eq!((ps.as_slice(), pt.as_slice()), (&[1][..], &[1][..]));
            let x1 = Polynomial::var(TypedVariable {
                index: 1,
                vtype: VarType::ALL[*s],
            });
            let x2 = Polynomial::var(TypedVariable {
                index: 2,
                vtype: VarType::ALL[*t],
            });
            if VarType::ALL[*s] == VarType::ZeroPlus {
                vec![x1.commutator(&x2)]
            } else {
                vec![x1.commutator(&x2), x1.mul(&x2)]
            }
        }
        _ => unreachable!("degree ≤ 2 occupies at most two slots"),
    };
    Ok(HwvSet {
        mp: mp.clone(),
        polys,
    })
}

/// Multiplicity of the multipartition in the proper cocharacter of the
/// algebra: rank of the joint evaluation of its highest-weight vectors.
pub fn multiplicity(a: &StarAlgebra, mp: &Multipartition) -> Result<usize, CodimError> {
    let hwv = hwv_catalog(mp)?;
    poly_eval_rank(a, &hwv.polys)
}

/// Complete multiplicity table in total degrees 1 and 2, in deterministic
/// order (degree, then signature lexicographic, then partitions
/// lexicographic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub algebra: String,
    pub entries: Vec<(Multipartition, usize)>,
}

impl MultiplicityTable {
    pub fn get(&self, mp: &Multipartition) -> Option<usize> {
        self.entries
            .iter()
            .find(|(m, _)| m == mp)
            .map(|&(_, v)| v)
    }

    /// The entries with nonzero multiplicity, in table order.
    pub fn nonzero(&self) -> Vec<(&Multipartition, usize)> {
        self.entries
            .iter()
            .filter(|&&(_, m)| m > 0)
            .map(|(mp, m)| (mp, *m))
            .collect()
    }

    /// The nonzero part as a character sum, mixed entries as tensor
    /// products: `χ((1)_{0-}) + 2χ((1)_{0-})⊗χ((1)_{1+})`.
    pub fn character_sum(&self) -> String {
        let terms: Vec<String> = self
            .nonzero()
            .iter()
            .map(|(mp, m)| {
                let coeff = if *m == 1 { String::new() } else { m.to_string() };
                let factors: Vec<String> = mp
                    .0
                    .iter()
                    .zip(VarType::ALL)
                    .filter(|(p, _)| !p.is_empty())
                    .map(|(p, t)| {
                        let nums: Vec<String> = p.iter().map(|k| k.to_string()).collect();
                        format!("χ(({})_{{{}}})", nums.join(","), t.label())
                    })
                    .collect();
                format!("{coeff}{}", factors.join("⊗"))
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// One-row Markdown table: algebra name and its nonzero character sum.
    pub fn markdown(&self) -> String {
        format!(
            "| algebra | proper cocharacter (degree ≤ 2) |\n|---|---|\n| {} | {} |\n",
            self.algebra,
            self.character_sum()
        )
    }
}

/// Compute the full multiplicity table of an algebra; multipartitions are
/// processed in parallel.
pub fn cocharacter_table(a: &StarAlgebra) -> Result<MultiplicityTable, CodimError> {
    let mut mps = Multipartition::all_of_degree(1);
    mps.extend(Multipartition::all_of_degree(2));
    let entries: Result<Vec<(Multipartition, usize)>, CodimError> = mps
        .into_par_iter()
        .map(|mp| {
            let m = multiplicity(a, &mp)?;
            Ok((mp, m))
        })
        .collect();
    Ok(MultiplicityTable {
        algebra: a.name.clone(),
        entries: entries?,
    })
}

/// Recover the codimension sequence `c₀..c_N` from a degree-≤2
/// multiplicity table, valid for unitary algebras whose proper
/// codimensions vanish beyond degree 2:
/// `c_n = 1 + n·Σ₁ + binom(n,2)·Σ₂`, where Σ₁ sums the degree-1
/// multiplicities and Σ₂ the degree-2 multiplicities weighted by the
/// number of ways to distribute the two distinguished variables (2 for
/// mixed signatures, 1 for pure ones).
pub fn codim_from_table(table: &MultiplicityTable, nmax: usize) -> Vec<u64> {
    let mut deg1: u64 = 0;
    let mut deg2: u64 = 0;
    for (mp, m) in &table.entries {
        // Every partition here must have a single row or single column, so
        // its character degree is 1 and no hook lengths are needed.
        for p in &mp.0 {
            assert!(
                p.len() <= 1 || p.iter().all(|&k| k == 1),
                "partition outside the degree-≤2 regime"
            );
        }
        match mp.degree() {
            1 => deg1 += *m as u64,
            2 => {
                let weight = if mp.is_mixed() { 2 } else { 1 };
                deg2 += weight * *m as u64;
            }
            d => panic!("table entry of unsupported degree {d}"),
        }
    }
    (0..=nmax)
        .map(|n| 1 + n as u64 * deg1 + binom(n, 2) * deg2)
        .collect()
}
