//! Finite-dimensional superalgebras with superinvolution.
//!
//! An algebra is stored by structure constants on a homogeneous basis,
//! together with a parity per basis element (the ℤ₂-grading), the matrix of
//! the superinvolution, and an optional unit vector. [`validate`] checks the
//! axioms and reports violations as data; [`components`] splits the algebra
//! into the four subspaces (even/odd × symmetric/skew) that typed variables
//! range over.
//!
//! The built-in catalog ([`catalog`], [`CATALOG_KEYS`]) provides the small
//! algebras used throughout the verification suite. Their structure
//! constants are derived programmatically from explicit matrix
//! representations (upper-triangular matrix spans and a regular
//! representation of the rank-2 Grassmann algebra) rather than typed in by
//! hand.

use crate::exact::{format_rat, parse_rat, Rat, RatMatrix, SparseVec};
use crate::free_star::VarType;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors from algebra construction and the closure/quotient operations.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(String),
}

/// One failed axiom check: the axiom name, the basis indices witnessing the
/// failure, and a human-readable detail line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.axiom, self.witness, self.detail)
    }
}

/// Bases of the four homogeneous components, in the block order
/// `0+`, `0-`, `1+`, `1-`. Rows are reduced-row-echelon canonical.
#[derive(Debug, Clone)]
pub struct ComponentBases {
    pub bases: [Vec<Vec<Rat>>; 4],
}

impl ComponentBases {
    pub fn dims(&self) -> [usize; 4] {
        [
            self.bases[0].len(),
            self.bases[1].len(),
            self.bases[2].len(),
            self.bases[3].len(),
        ]
    }

    pub fn vectors(&self, t: VarType) -> &[Vec<Rat>] {
        &self.bases[t.block()]
    }

    /// True when `v` lies in the span of the component's basis.
    pub fn contains(&self, t: VarType, v: &[Rat]) -> bool {
        let rows = &self.bases[t.block()];
        if rows.is_empty() {
            return v.iter().all(Rat::is_zero);
        }
        let m = RatMatrix::from_rows(rows.clone());
        m.subspace_contains(v)
    }
}

/// A finite-dimensional superalgebra with superinvolution, given by
/// structure constants on a homogeneous basis.
#[derive(Debug, Clone)]
pub struct StarAlgebra {
    pub name: String,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub grading: Vec<u8>,
    /// `mult[i * dim + j]` = coordinates of the product of basis elements i·j.
    mult: Vec<SparseVec>,
    /// `involution[i]` = coordinates of the image of basis element i.
    involution: Vec<SparseVec>,
    pub unit: Option<Vec<Rat>>,
}

impl StarAlgebra {
    /// Construct from raw tables, checking only structural consistency
    /// (lengths and index ranges); axiom violations are reported by
    /// [`StarAlgebra::validate`] instead.
    pub fn new(
        name: String,
        basis_labels: Vec<String>,
        grading: Vec<u8>,
        mult: Vec<SparseVec>,
        involution: Vec<SparseVec>,
        unit: Option<Vec<Rat>>,
    ) -> Result<StarAlgebra, AlgebraError> {
        let dim = basis_labels.len();
        if grading.len() != dim {
            return Err(AlgebraError::LengthMismatch {
                expected: dim,
                got: grading.len(),
            });
        }
        if let Some(bad) = grading.iter().find(|&&g| g > 1) {
            return Err(AlgebraError::Invalid(format!(
                "grading entries must be 0 or 1, found {bad}"
            )));
        }
        if mult.len() != dim * dim {
            return Err(AlgebraError::LengthMismatch {
                expected: dim * dim,
                got: mult.len(),
            });
        }
        if involution.len() != dim {
            return Err(AlgebraError::LengthMismatch {
                expected: dim,
                got: involution.len(),
            });
        }
        for sv in mult.iter().chain(involution.iter()) {
            if let Some((&k, _)) = sv.iter().next_back() {
                if k >= dim {
                    return Err(AlgebraError::Invalid(format!(
                        "coordinate index {k} out of range for dimension {dim}"
                    )));
                }
            }
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(AlgebraError::LengthMismatch {
                    expected: dim,
                    got: u.len(),
                });
            }
        }
        Ok(StarAlgebra {
            name,
            dim,
            basis_labels,
            grading,
            mult,
            involution,
            unit,
        })
    }

    /// Coordinates of the product of basis elements `i · j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }

    /// Coordinates of the involution image of basis element `i`.
    pub fn basis_star(&self, i: usize) -> &SparseVec {
        &self.involution[i]
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply(&self, u: &[Rat], v: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        if u.len() != self.dim {
            return Err(AlgebraError::LengthMismatch {
                expected: self.dim,
                got: u.len(),
            });
        }
        if v.len() != self.dim {
            return Err(AlgebraError::LengthMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut out = vec![Rat::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (&k, w) in self.basis_product(i, j) {
                    out[k] += &c * w;
                }
            }
        }
        Ok(out)
    }

    /// Linear application of the involution.
    pub fn star(&self, v: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::LengthMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut out = vec![Rat::zero(); self.dim];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (&k, w) in &self.involution[i] {
                out[k] += vi * w;
            }
        }
        Ok(out)
    }

    /// Check every axiom; an empty result means the algebra is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let d = self.dim;
        let basis = |i: usize| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); d];
            v[i] = Rat::one();
            v
        };
        // Associativity: (e_i e_j) e_k = e_i (e_j e_k).
        for i in 0..d {
            for j in 0..d {
                let ij = to_dense(self.basis_product(i, j), d);
                for k in 0..d {
                    let jk = to_dense(self.basis_product(j, k), d);
                    let lhs = self.multiply(&ij, &basis(k)).unwrap();
                    let rhs = self.multiply(&basis(i), &jk).unwrap();
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: "associativity",
                            witness: vec![i, j, k],
                            detail: format!(
                                "({0}·{1})·{2} ≠ {0}·({1}·{2})",
                                self.basis_labels[i], self.basis_labels[j], self.basis_labels[k]
                            ),
                        });
                    }
                }
            }
        }
        // Grading compatibility: product of parities p,q supported on parity p+q.
        for i in 0..d {
            for j in 0..d {
                let want = (self.grading[i] + self.grading[j]) % 2;
                for (&k, c) in self.basis_product(i, j) {
                    if !c.is_zero() && self.grading[k] != want {
                        out.push(Violation {
                            axiom: "grading-product",
                            witness: vec![i, j, k],
                            detail: format!(
                                "{}·{} has a parity-{} component, expected parity {}",
                                self.basis_labels[i],
                                self.basis_labels[j],
                                self.grading[k],
                                want
                            ),
                        });
                    }
                }
            }
        }
        for i in 0..d {
            // Involution preserves parity.
            for (&k, c) in &self.involution[i] {
                if !c.is_zero() && self.grading[k] != self.grading[i] {
                    out.push(Violation {
                        axiom: "involution-parity",
                        witness: vec![i, k],
                        detail: format!(
                            "image of {} mixes parities",
                            self.basis_labels[i]
                        ),
                    });
                }
            }
            // Involution applied twice is the identity.
            let once = to_dense(&self.involution[i], d);
            let twice = self.star(&once).unwrap();
            if twice != basis(i) {
                out.push(Violation {
                    axiom: "involution-involutive",
                    witness: vec![i],
                    detail: format!("applying * twice does not fix {}", self.basis_labels[i]),
                });
            }
        }
        // Super-antihomomorphism: (e_i e_j)* = (−1)^{|e_i||e_j|} e_j* e_i*.
        for i in 0..d {
            for j in 0..d {
                let prod = to_dense(self.basis_product(i, j), d);
                let lhs = self.star(&prod).unwrap();
                let si = to_dense(&self.involution[i], d);
                let sj = to_dense(&self.involution[j], d);
                let mut rhs = self.multiply(&sj, &si).unwrap();
                if self.grading[i] == 1 && self.grading[j] == 1 {
                    for c in rhs.iter_mut() {
                        *c = -&*c;
                    }
                }
                if lhs != rhs {
                    out.push(Violation {
                        axiom: "super-antihomomorphism",
                        witness: vec![i, j],
                        detail: format!(
                            "({}·{})* deviates from the sign rule",
                            self.basis_labels[i], self.basis_labels[j]
                        ),
                    });
                }
            }
        }
        // Unit axioms.
        if let Some(u) = &self.unit {
            for i in 0..d {
                let left = self.multiply(u, &basis(i)).unwrap();
                let right = self.multiply(&basis(i), u).unwrap();
                if left != basis(i) {
                    out.push(Violation {
                        axiom: "unit-left",
                        witness: vec![i],
                        detail: format!("unit·{} ≠ {0}", self.basis_labels[i]),
                    });
                }
                if right != basis(i) {
                    out.push(Violation {
                        axiom: "unit-right",
                        witness: vec![i],
                        detail: format!("{0}·unit ≠ {0}", self.basis_labels[i]),
                    });
                }
            }
            if &self.star(u).unwrap() != u {
                out.push(Violation {
                    axiom: "unit-star",
                    witness: vec![],
                    detail: "unit is not fixed by the involution".into(),
                });
            }
            for (i, c) in u.iter().enumerate() {
                if !c.is_zero() && self.grading[i] != 0 {
                    out.push(Violation {
                        axiom: "unit-parity",
                        witness: vec![i],
                        detail: "unit has an odd component".into(),
                    });
                }
            }
        }
        out
    }

    /// The four homogeneous components: for each parity, every basis element
    /// is sent through the symmetrizer `(v + v*)/2` and skew-symmetrizer
    /// `(v − v*)/2`, and the resulting rows are canonicalized via reduced row
    /// echelon form.
    pub fn components(&self) -> Result<ComponentBases, AlgebraError> {
        let violations = self.validate();
        if let Some(v) = violations.first() {
            return Err(AlgebraError::Invalid(format!(
                "axiom violation: {v} ({} total)",
                violations.len()
            )));
        }
        let d = self.dim;
        let half = crate::exact::rat(1, 2);
        let mut bases: [Vec<Vec<Rat>>; 4] = Default::default();
        for (block, t) in VarType::ALL.iter().enumerate() {
            let parity = t.parity();
            let sign = t.sign();
            let mut rows = Vec::new();
            for i in 0..d {
                if self.grading[i] != parity {
                    continue;
                }
                let mut v = vec![Rat::zero(); d];
                v[i] = Rat::one();
                let sv = self.star(&v).unwrap();
                let mut proj = Vec::with_capacity(d);
                for (a, b) in v.iter().zip(sv.iter()) {
                    let s = if sign > 0 { a + b } else { a - b };
                    proj.push(&s * &half);
                }
                if proj.iter().any(|c| !c.is_zero()) {
                    rows.push(proj);
                }
            }
            bases[block] = if rows.is_empty() {
                Vec::new()
            } else {
                rref_nonzero_rows(&RatMatrix::from_rows(rows))
            };
        }
        Ok(ComponentBases { bases })
    }

    /// Dense row `i` of the right-multiplication operator by `w`:
    /// the product `e_i · w` for each basis element.
    pub fn right_mult_rows(&self, w: &[Rat]) -> Vec<Vec<Rat>> {
        let d = self.dim;
        (0..d)
            .map(|i| {
                let mut out = vec![Rat::zero(); d];
                for (j, wj) in w.iter().enumerate() {
                    if wj.is_zero() {
                        continue;
                    }
                    for (&k, c) in self.basis_product(i, j) {
                        out[k] += wj * c;
                    }
                }
                out
            })
            .collect()
    }
}

fn to_dense(sv: &SparseVec, n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (&k, c) in sv {
        out[k] = c.clone();
    }
    out
}

fn to_sparse(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

fn rref_nonzero_rows(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

// ---------------------------------------------------------------------------
// constructions
// ---------------------------------------------------------------------------

/// Block-diagonal sum. The result is recorded as unitary only when both
/// summands are (with the diagonal unit).
pub fn direct_sum(a: &StarAlgebra, b: &StarAlgebra) -> StarAlgebra {
    let d = a.dim + b.dim;
    let name = format!("{}+{}", a.name, b.name);
    let mut labels = Vec::with_capacity(d);
    labels.extend(a.basis_labels.iter().map(|l| format!("1:{l}")));
    labels.extend(b.basis_labels.iter().map(|l| format!("2:{l}")));
    let mut grading = a.grading.clone();
    grading.extend_from_slice(&b.grading);
    let mut mult = vec![SparseVec::new(); d * d];
    for i in 0..a.dim {
        for j in 0..a.dim {
            mult[i * d + j] = a.basis_product(i, j).clone();
        }
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            mult[(a.dim + i) * d + (a.dim + j)] = b
                .basis_product(i, j)
                .iter()
                .map(|(&k, c)| (a.dim + k, c.clone()))
                .collect();
        }
    }
    let mut involution = Vec::with_capacity(d);
    for i in 0..a.dim {
        involution.push(a.involution[i].clone());
    }
    for i in 0..b.dim {
        involution.push(
            b.involution[i]
                .iter()
                .map(|(&k, c)| (a.dim + k, c.clone()))
                .collect(),
        );
    }
    let unit = match (&a.unit, &b.unit) {
        (Some(ua), Some(ub)) => {
            let mut u = ua.clone();
            u.extend_from_slice(ub);
            Some(u)
        }
        _ => None,
    };
    StarAlgebra {
        name,
        dim: d,
        basis_labels: labels,
        grading,
        mult,
        involution,
        unit,
    }
}

/// Adjoin an external unit: the product algebra `A × F` with grading
/// `(A₀ × F, A₁ × {0})` and involution `(a, α)* = (a*, α)`.
pub fn unitarize(a: &StarAlgebra) -> StarAlgebra {
    let d = a.dim + 1;
    let u_idx = a.dim;
    let mut labels = a.basis_labels.clone();
    labels.push("1#".to_string());
    let mut grading = a.grading.clone();
    grading.push(0);
    let mut mult = vec![SparseVec::new(); d * d];
    for i in 0..a.dim {
        for j in 0..a.dim {
            mult[i * d + j] = a.basis_product(i, j).clone();
        }
        mult[i * d + u_idx] = SparseVec::from([(i, Rat::one())]);
        mult[u_idx * d + i] = SparseVec::from([(i, Rat::one())]);
    }
    mult[u_idx * d + u_idx] = SparseVec::from([(u_idx, Rat::one())]);
    let mut involution = a.involution.clone();
    involution.push(SparseVec::from([(u_idx, Rat::one())]));
    let mut unit = vec![Rat::zero(); d];
    unit[u_idx] = Rat::one();
    StarAlgebra {
        name: format!("unitarize({})", a.name),
        dim: d,
        basis_labels: labels,
        grading,
        mult,
        involution,
        unit: Some(unit),
    }
}

/// The smallest subspace containing the generators that is closed under
/// left/right multiplication by the algebra and under the involution,
/// as a reduced-row-echelon row-basis.
pub fn ideal_closure(a: &StarAlgebra, gens: &[Vec<Rat>]) -> RatMatrix {
    closure(a, gens, false, true)
}

/// The smallest involution-closed subspace containing the generators (and
/// the unit, when requested) that is closed under multiplication of its own
/// elements, as a reduced-row-echelon row-basis.
pub fn subalgebra_closure(a: &StarAlgebra, gens: &[Vec<Rat>], with_unit: bool) -> RatMatrix {
    let mut g = gens.to_vec();
    if with_unit {
        if let Some(u) = &a.unit {
            g.push(u.clone());
        }
    }
    closure(a, &g, true, false)
}

/// Fixpoint closure engine. `internal` closes under products of the rows
/// themselves (subalgebra); `two_sided` closes under products with every
/// algebra basis element (ideal). Both close under the involution.
fn closure(a: &StarAlgebra, gens: &[Vec<Rat>], internal: bool, two_sided: bool) -> RatMatrix {
    let d = a.dim;
    let mut acc = crate::exact::RrefAccum::new();
    for g in gens {
        assert_eq!(g.len(), d, "generator length mismatch");
        acc.insert(to_sparse(g));
    }
    loop {
        let before = acc.rank();
        let rows: Vec<Vec<Rat>> = acc.rows().map(|r| to_dense(r, d)).collect();
        for r in &rows {
            acc.insert(to_sparse(&a.star(r).unwrap()));
            if two_sided {
                for i in 0..d {
                    let mut e = vec![Rat::zero(); d];
                    e[i] = Rat::one();
                    acc.insert(to_sparse(&a.multiply(&e, r).unwrap()));
                    acc.insert(to_sparse(&a.multiply(r, &e).unwrap()));
                }
            }
        }
        if internal {
            let rows: Vec<Vec<Rat>> = acc.rows().map(|r| to_dense(r, d)).collect();
            for r in &rows {
                for s in &rows {
                    acc.insert(to_sparse(&a.multiply(r, s).unwrap()));
                }
            }
        }
        if acc.rank() == before {
            break;
        }
    }
    acc.to_matrix(d)
}

/// Reduce `v` modulo a reduced-row-echelon row-basis (zero out its pivot
/// coordinates).
fn reduce_mod(rows: &RatMatrix, pivots: &[usize], v: &[Rat]) -> Vec<Rat> {
    let mut out = v.to_vec();
    for (ri, &p) in pivots.iter().enumerate() {
        if out[p].is_zero() {
            continue;
        }
        let c = out[p].clone();
        for (j, x) in rows.row(ri).iter().enumerate() {
            let delta = &c * x;
            out[j] -= delta;
        }
    }
    out
}

/// Split a vector into its even and odd parts with respect to the grading.
fn parity_parts(grading: &[u8], v: &[Rat]) -> [Vec<Rat>; 2] {
    let mut even = vec![Rat::zero(); v.len()];
    let mut odd = vec![Rat::zero(); v.len()];
    for (i, c) in v.iter().enumerate() {
        if grading[i] == 0 {
            even[i] = c.clone();
        } else {
            odd[i] = c.clone();
        }
    }
    [even, odd]
}

/// Quotient by a subspace given as a row-basis. The subspace must be a
/// two-sided ideal, closed under the involution, and homogeneous with
/// respect to the grading; each failure is reported as an error.
pub fn quotient(a: &StarAlgebra, ideal: &RatMatrix) -> Result<StarAlgebra, AlgebraError> {
    let d = a.dim;
    if ideal.cols() != d && ideal.rows() > 0 {
        return Err(AlgebraError::LengthMismatch {
            expected: d,
            got: ideal.cols(),
        });
    }
    let (rr, pivots) = ideal.rref();
    let rank = pivots.len();
    let rows = RatMatrix::from_rows((0..rank).map(|i| rr.row(i).to_vec()).collect());
    let in_ideal = |v: &[Rat]| reduce_mod(&rows, &pivots, v).iter().all(Rat::is_zero);
    // Precondition checks.
    for i in 0..rank {
        let r = rows.row(i);
        for part in parity_parts(&a.grading, r) {
            if !in_ideal(&part) {
                return Err(AlgebraError::Invalid(
                    "subspace is not homogeneous with respect to the grading".into(),
                ));
            }
        }
        if !in_ideal(&a.star(r).unwrap()) {
            return Err(AlgebraError::Invalid(
                "subspace is not closed under the involution".into(),
            ));
        }
        for j in 0..d {
            let mut e = vec![Rat::zero(); d];
            e[j] = Rat::one();
            if !in_ideal(&a.multiply(&e, r).unwrap()) || !in_ideal(&a.multiply(r, &e).unwrap()) {
                return Err(AlgebraError::Invalid(
                    "subspace is not a two-sided ideal".into(),
                ));
            }
        }
    }
    // Complement basis: the non-pivot coordinates.
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let qd = free.len();
    let compress = |v: &[Rat]| -> Vec<Rat> {
        let red = reduce_mod(&rows, &pivots, v);
        free.iter().map(|&c| red[c].clone()).collect()
    };
    let mut mult = vec![SparseVec::new(); qd * qd];
    let mut involution = Vec::with_capacity(qd);
    for (qi, &ci) in free.iter().enumerate() {
        let mut ei = vec![Rat::zero(); d];
        ei[ci] = Rat::one();
        involution.push(to_sparse(&compress(&a.star(&ei).unwrap())));
        for (qj, &cj) in free.iter().enumerate() {
            let mut ej = vec![Rat::zero(); d];
            ej[cj] = Rat::one();
            mult[qi * qd + qj] = to_sparse(&compress(&a.multiply(&ei, &ej).unwrap()));
        }
    }
    let unit = a.unit.as_ref().and_then(|u| {
        let img = compress(u);
        if img.iter().all(Rat::is_zero) {
            None
        } else {
            Some(img)
        }
    });
    StarAlgebra::new(
        format!("{}/I", a.name),
        free.iter()
            .map(|&c| format!("[{}]", a.basis_labels[c]))
            .collect(),
        free.iter().map(|&c| a.grading[c]).collect(),
        mult,
        involution,
        unit,
    )
}

/// Materialize a multiplicatively closed, involution-closed, homogeneous
/// row-space (e.g. the output of [`subalgebra_closure`]) as an algebra in
/// its own right.
pub fn subalgebra(a: &StarAlgebra, rows_in: &RatMatrix) -> Result<StarAlgebra, AlgebraError> {
    // Homogenize: replace each row by its parity parts (verifying they stay
    // inside the span), then re-canonicalize.
    let (rr0, piv0) = rows_in.rref();
    let base = RatMatrix::from_rows((0..piv0.len()).map(|i| rr0.row(i).to_vec()).collect());
    let mut parts: Vec<Vec<Rat>> = Vec::new();
    for i in 0..base.rows() {
        for part in parity_parts(&a.grading, base.row(i)) {
            if part.iter().any(|c| !c.is_zero()) {
                if !base.subspace_contains(&part) {
                    return Err(AlgebraError::Invalid(
                        "subspace is not homogeneous with respect to the grading".into(),
                    ));
                }
                parts.push(part);
            }
        }
    }
    if parts.is_empty() {
        return StarAlgebra::new("0".into(), vec![], vec![], vec![], vec![], None);
    }
    let (rr, pivots) = RatMatrix::from_rows(parts).rref();
    let sd = pivots.len();
    let basis: Vec<Vec<Rat>> = (0..sd).map(|i| rr.row(i).to_vec()).collect();
    let span = RatMatrix::from_rows(basis.clone());
    // Coordinates in the rref basis can be read off the pivot columns.
    let coords = |v: &[Rat]| -> Result<Vec<Rat>, AlgebraError> {
        let cs: Vec<Rat> = pivots.iter().map(|&p| v[p].clone()).collect();
        let mut chk = v.to_vec();
        for (ci, b) in cs.iter().zip(&basis) {
            for (x, y) in chk.iter_mut().zip(b) {
                *x -= ci * y;
            }
        }
        if chk.iter().all(Rat::is_zero) {
            Ok(cs)
        } else {
            Err(AlgebraError::Invalid(
                "row-space is not closed (product or involution image escapes the span)".into(),
            ))
        }
    };
    let parity_of = |v: &[Rat]| -> Result<u8, AlgebraError> {
        let mut p: Option<u8> = None;
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                match p {
                    None => p = Some(a.grading[i]),
                    Some(q) if q != a.grading[i] => {
                        return Err(AlgebraError::Invalid(
                            "basis row is not homogeneous".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        Ok(p.unwrap_or(0))
    };
    let mut grading = Vec::with_capacity(sd);
    for b in &basis {
        grading.push(parity_of(b)?);
    }
    let mut mult = vec![SparseVec::new(); sd * sd];
    let mut involution = Vec::with_capacity(sd);
    for (i, bi) in basis.iter().enumerate() {
        involution.push(to_sparse(&coords(&a.star(bi).unwrap())?));
        for (j, bj) in basis.iter().enumerate() {
            mult[i * sd + j] = to_sparse(&coords(&a.multiply(bi, bj).unwrap())?);
        }
    }
    let unit = match &a.unit {
        Some(u) if span.subspace_contains(u) => Some(coords(u)?),
        _ => None,
    };
    StarAlgebra::new(
        format!("{}|sub", a.name),
        (0..sd).map(|i| format!("s{i}")).collect(),
        grading,
        mult,
        involution,
        unit,
    )
}

// ---------------------------------------------------------------------------
// matrix representations: the internal builder
// ---------------------------------------------------------------------------

/// Sparse n×n matrix over the rationals, 1-based cell indices.
type Mat = BTreeMap<(usize, usize), Rat>;

fn eij(i: usize, j: usize) -> Mat {
    Mat::from([((i, j), Rat::one())])
}

fn ident(n: usize) -> Mat {
    (1..=n).map(|i| ((i, i), Rat::one())).collect()
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    let mut out = a.clone();
    for (k, c) in b {
        let e = out.entry(*k).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            out.remove(k);
        }
    }
    out
}

fn mat_scale(a: &Mat, s: i64) -> Mat {
    if s == 0 {
        return Mat::new();
    }
    a.iter()
        .map(|(k, c)| (*k, c * crate::exact::rat_int(s)))
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::new();
    for (&(i, k), c) in a {
        for (&(k2, j), d) in b {
            if k != k2 {
                continue;
            }
            let e = out.entry((i, j)).or_insert_with(Rat::zero);
            *e += c * d;
            if e.is_zero() {
                out.remove(&(i, j));
            }
        }
    }
    out
}

/// Reflection along the secondary diagonal of an n×n matrix:
/// the cell (i, j) maps to (n+1−j, n+1−i).
fn mat_reflect(a: &Mat, n: usize) -> Mat {
    a.iter()
        .map(|(&(i, j), c)| ((n + 1 - j, n + 1 - i), c.clone()))
        .collect()
}

/// Solve for coordinates of `m` in the span of `basis` over the given cell
/// list; `None` when `m` is outside the span.
fn solve_in_span(cells: &[(usize, usize)], basis: &[Mat], m: &Mat) -> Option<Vec<Rat>> {
    for k in m.keys() {
        if !cells.contains(k) {
            return None;
        }
    }
    let d = basis.len();
    let mut aug = RatMatrix::zero(cells.len(), d + 1);
    for (r, cell) in cells.iter().enumerate() {
        for (c, b) in basis.iter().enumerate() {
            if let Some(v) = b.get(cell) {
                aug.set(r, c, v.clone());
            }
        }
        if let Some(v) = m.get(cell) {
            aug.set(r, d, v.clone());
        }
    }
    let (rr, pivots) = aug.rref();
    if pivots.contains(&d) {
        return None; // inconsistent system
    }
    let mut x = vec![Rat::zero(); d];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = rr.get(row, d).clone();
    }
    Some(x)
}

/// Build an algebra from an explicit matrix representation: basis matrices
/// (linearly independent, spanning a multiplicatively closed subspace), a
/// parity per basis element, and the involution given as the matrix image
/// of each basis element.
fn from_matrices(
    name: &str,
    basis: &[(&str, Mat)],
    grading: &[u8],
    star_images: &[Mat],
    nsize: usize,
) -> Result<StarAlgebra, AlgebraError> {
    let d = basis.len();
    assert_eq!(grading.len(), d);
    assert_eq!(star_images.len(), d);
    let mut cells: Vec<(usize, usize)> = basis
        .iter()
        .flat_map(|(_, m)| m.keys().copied())
        .collect();
    cells.sort_unstable();
    cells.dedup();
    // Independence of the basis matrices.
    {
        let mut s = RatMatrix::zero(d, cells.len());
        for (r, (_, m)) in basis.iter().enumerate() {
            for (c, cell) in cells.iter().enumerate() {
                if let Some(v) = m.get(cell) {
                    s.set(r, c, v.clone());
                }
            }
        }
        if s.rank() != d {
            return Err(AlgebraError::Invalid(format!(
                "matrix basis of {name} is linearly dependent"
            )));
        }
    }
    let mats: Vec<Mat> = basis.iter().map(|(_, m)| m.clone()).collect();
    let solve = |m: &Mat, what: &str| -> Result<SparseVec, AlgebraError> {
        solve_in_span(&cells, &mats, m)
            .map(|v| to_sparse(&v))
            .ok_or_else(|| {
                AlgebraError::Invalid(format!("span of {name} is not closed under {what}"))
            })
    };
    let mut mult = vec![SparseVec::new(); d * d];
    for i in 0..d {
        for j in 0..d {
            mult[i * d + j] = solve(&mat_mul(&mats[i], &mats[j]), "multiplication")?;
        }
    }
    let mut involution = Vec::with_capacity(d);
    for img in star_images {
        involution.push(solve(img, "the involution")?);
    }
    let unit = solve_in_span(&cells, &mats, &ident(nsize));
    StarAlgebra::new(
        name.to_string(),
        basis.iter().map(|(l, _)| l.to_string()).collect(),
        grading.to_vec(),
        mult,
        involution,
        unit,
    )
}

/// Star images obtained by scaling each basis matrix by ±1.
fn sign_star(basis: &[(&str, Mat)], signs: &[i64]) -> Vec<Mat> {
    basis
        .iter()
        .zip(signs)
        .map(|((_, m), &s)| mat_scale(m, s))
        .collect()
}

// ---------------------------------------------------------------------------
// the catalog
// ---------------------------------------------------------------------------

/// Which of the two span families to build in [`make_NU`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NUKind {
    N,
    U,
}

/// The span inside upper-triangular 2m×2m matrices generated by the
/// identity, the powers of the staircase element `E`, the corner pair
/// `e_{1,2} ∓ e_{2m−1,2m}` (− for N, + for U), and the border cells
/// `e_{1,j}` (3 ≤ j ≤ m), `e_{j,2m}` (m+1 ≤ j ≤ 2m−2); the involution is
/// the reflection along the secondary diagonal. Dimension `3m − 4`.
///
/// `parities`: optional tuple of 2m parities inducing the elementary
/// grading `deg e_{ij} = g_i + g_j`; it must satisfy the palindromic
/// constraint `g_i + g_{2m+1−i} = const` (so the reflection preserves the
/// grading) and make every basis matrix homogeneous. `None` gives the
/// trivial grading.
#[allow(non_snake_case)]
pub fn make_NU(
    m: usize,
    kind: NUKind,
    parities: Option<&[u8]>,
) -> Result<StarAlgebra, AlgebraError> {
    if m < 2 {
        return Err(AlgebraError::Invalid("make_NU requires m ≥ 2".into()));
    }
    let n = 2 * m;
    let label = |i: usize, j: usize| -> String {
        if i <= 9 && j <= 9 {
            format!("e{i}{j}")
        } else {
            format!("e({i},{j})")
        }
    };
    // Staircase element: nilpotent shifts in rows 2..m−1 and m+1..2m−2.
    let mut e_mat = Mat::new();
    for i in 2..=m.saturating_sub(1) {
        e_mat = mat_add(&e_mat, &eij(i, i + 1));
        e_mat = mat_add(&e_mat, &eij(n - i, n - i + 1));
    }
    let mut basis: Vec<(String, Mat)> = vec![("1".to_string(), ident(n))];
    let mut p = e_mat.clone();
    for k in 1..=m.saturating_sub(2) {
        let lbl = if k == 1 {
            "E".to_string()
        } else {
            format!("E^{k}")
        };
        basis.push((lbl, p.clone()));
        p = mat_mul(&p, &e_mat);
    }
    let corner_sign = match kind {
        NUKind::N => -1,
        NUKind::U => 1,
    };
    let corner = mat_add(&eij(1, 2), &mat_scale(&eij(n - 1, n), corner_sign));
    basis.push((
        match kind {
            NUKind::N => "a".to_string(),
            NUKind::U => "u".to_string(),
        },
        corner,
    ));
    for j in 3..=m {
        basis.push((label(1, j), eij(1, j)));
    }
    for j in m + 1..=n - 2 {
        basis.push((label(j, n), eij(j, n)));
    }
    // Parities per basis element.
    let grading: Vec<u8> = match parities {
        None => vec![0; basis.len()],
        Some(g) => {
            if g.len() != n {
                return Err(AlgebraError::LengthMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
            if g.iter().any(|&x| x > 1) {
                return Err(AlgebraError::Invalid("parities must be 0 or 1".into()));
            }
            let c0 = (g[0] + g[n - 1]) % 2;
            for i in 0..n {
                if (g[i] + g[n - 1 - i]) % 2 != c0 {
                    return Err(AlgebraError::Invalid(
                        "parity tuple violates the palindromic constraint g_i + g_{n+1-i} = const"
                            .into(),
                    ));
                }
            }
            let mut out = Vec::with_capacity(basis.len());
            for (lbl, mat) in &basis {
                let mut par: Option<u8> = None;
                for &(i, j) in mat.keys() {
                    let p = (g[i - 1] + g[j - 1]) % 2;
                    match par {
                        None => par = Some(p),
                        Some(q) if q != p => {
                            return Err(AlgebraError::Invalid(format!(
                                "basis element {lbl} is not homogeneous for the given parities"
                            )))
                        }
                        _ => {}
                    }
                }
                out.push(par.unwrap_or(0));
            }
            out
        }
    };
    let star_images: Vec<Mat> = basis.iter().map(|(_, m0)| mat_reflect(m0, n)).collect();
    let borrowed: Vec<(&str, Mat)> = basis.iter().map(|(l, m0)| (l.as_str(), m0.clone())).collect();
    from_matrices(
        &format!(
            "{}{m}",
            match kind {
                NUKind::N => "N",
                NUKind::U => "U",
            }
        ),
        &borrowed,
        &grading,
        &star_images,
        n,
    )
}

/// Catalog keys in canonical order.
pub const CATALOG_KEYS: [&str; 20] = [
    "F",
    "C2_star",
    "C2_gr",
    "C2_star_gr",
    "C3_i2",
    "C3_i1_gr",
    "C3_i3_gr",
    "G2_tau",
    "G2_psi_gr",
    "G2_tau_gr",
    "G2_gamma_gr",
    "G2_tau_gri",
    "G2_gamma_gri",
    "W_eta2_gr",
    "W_eta1_gri",
    "W_eta3_gri",
    "N3_star",
    "U3_star",
    "N3_gri",
    "U3_gri",
];

/// Build a catalog algebra by key. See [`CATALOG_KEYS`] for the valid keys.
pub fn catalog(key: &str) -> Result<StarAlgebra, AlgebraError> {
    let build = |name: &str,
                 basis: &[(&str, Mat)],
                 grading: &[u8],
                 signs: &[i64],
                 nsize: usize|
     -> Result<StarAlgebra, AlgebraError> {
        from_matrices(name, basis, grading, &sign_star(basis, signs), nsize)
    };
    // Two-dimensional algebra F + Fb with b² = 0, inside 2×2 upper
    // triangular matrices.
    let c2 = || -> Vec<(&'static str, Mat)> { vec![("1", ident(2)), ("b", eij(1, 2))] };
    // Three-dimensional algebra F + Fa + Fa² with a³ = 0.
    let c3 = || -> Vec<(&'static str, Mat)> {
        let a = mat_add(&eij(1, 2), &eij(2, 3));
        let a2 = mat_mul(&a, &a);
        vec![("1", ident(3)), ("a", a), ("a^2", a2)]
    };
    // Rank-2 Grassmann algebra via its left regular representation:
    // e1·e2 = −e2·e1, e1² = e2² = 0.
    let g2 = || -> Vec<(&'static str, Mat)> {
        let e1 = mat_add(&eij(2, 1), &eij(4, 3));
        let e2 = mat_add(&eij(3, 1), &mat_scale(&eij(4, 2), -1));
        let e12 = eij(4, 1);
        vec![("1", ident(4)), ("e1", e1), ("e2", e2), ("e1e2", e12)]
    };
    // Four-dimensional commutative algebra with b² = c² = 0, bc = d.
    let w = || -> Vec<(&'static str, Mat)> {
        vec![
            ("1", ident(4)),
            ("b", mat_add(&eij(1, 2), &eij(3, 4))),
            ("c", mat_add(&eij(1, 3), &eij(2, 4))),
            ("d", eij(1, 4)),
        ]
    };
    const GRI_PARITIES: [u8; 6] = [0, 1, 1, 0, 0, 1];
    let mut alg = match key {
        "F" => build("F", &[("1", ident(1))], &[0], &[1], 1)?,
        "C2_star" => build(key, &c2(), &[0, 0], &[1, -1], 2)?,
        "C2_gr" => build(key, &c2(), &[0, 1], &[1, 1], 2)?,
        "C2_star_gr" => build(key, &c2(), &[0, 1], &[1, -1], 2)?,
        "C3_i2" => build(key, &c3(), &[0, 0, 0], &[1, -1, 1], 3)?,
        "C3_i1_gr" => build(key, &c3(), &[0, 1, 0], &[1, 1, -1], 3)?,
        "C3_i3_gr" => build(key, &c3(), &[0, 1, 0], &[1, -1, -1], 3)?,
        "G2_tau" => build(key, &g2(), &[0, 0, 0, 0], &[1, -1, -1, -1], 4)?,
        "G2_psi_gr" => build(key, &g2(), &[0, 1, 1, 0], &[1, 1, 1, 1], 4)?,
        "G2_tau_gr" => build(key, &g2(), &[0, 1, 1, 0], &[1, -1, -1, 1], 4)?,
        "G2_gamma_gr" => build(key, &g2(), &[0, 1, 1, 0], &[1, -1, 1, -1], 4)?,
        "G2_tau_gri" => build(key, &g2(), &[0, 0, 1, 1], &[1, -1, -1, -1], 4)?,
        "G2_gamma_gri" => build(key, &g2(), &[0, 0, 1, 1], &[1, -1, 1, 1], 4)?,
        "W_eta2_gr" => build(key, &w(), &[0, 1, 1, 0], &[1, -1, 1, 1], 4)?,
        "W_eta1_gri" => build(key, &w(), &[0, 0, 1, 1], &[1, -1, 1, -1], 4)?,
        "W_eta3_gri" => build(key, &w(), &[0, 0, 1, 1], &[1, -1, -1, 1], 4)?,
        "N3_star" => make_NU(3, NUKind::N, None)?,
        "U3_star" => make_NU(3, NUKind::U, None)?,
        "N3_gri" => make_NU(3, NUKind::N, Some(&GRI_PARITIES))?,
        "U3_gri" => make_NU(3, NUKind::U, Some(&GRI_PARITIES))?,
        _ => return Err(AlgebraError::UnknownKey(key.to_string())),
    };
    alg.name = key.to_string();
    Ok(alg)
}

/// Resolve a key that may be a `+`-separated composite (direct sum of
/// catalog algebras).
pub fn resolve_key(key: &str) -> Result<StarAlgebra, AlgebraError> {
    let parts: Vec<&str> = key.split('+').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(AlgebraError::UnknownKey(key.to_string()));
    }
    let mut acc = catalog(parts[0])?;
    for p in &parts[1..] {
        let b = catalog(p)?;
        acc = direct_sum(&acc, &b);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    name: String,
    dim: usize,
    basis: Vec<String>,
    unit: Option<Vec<String>>,
    grading: Vec<u8>,
    mult: Vec<(usize, usize, Vec<(usize, String)>)>,
    involution: Vec<(usize, Vec<(usize, String)>)>,
}

impl StarAlgebra {
    /// Serialize to the interchange JSON format (pretty-printed).
    pub fn to_json_string(&self) -> String {
        let sparse_out = |sv: &SparseVec| -> Vec<(usize, String)> {
            sv.iter().map(|(&k, c)| (k, format_rat(c))).collect()
        };
        let mut mult = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.basis_product(i, j);
                if !p.is_empty() {
                    mult.push((i, j, sparse_out(p)));
                }
            }
        }
        let doc = AlgebraJson {
            name: self.name.clone(),
            dim: self.dim,
            basis: self.basis_labels.clone(),
            unit: self.unit.as_ref().map(|u| u.iter().map(format_rat).collect()),
            grading: self.grading.clone(),
            mult,
            involution: (0..self.dim)
                .map(|i| (i, sparse_out(&self.involution[i])))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
    }

    /// Parse the interchange JSON format. Structural problems (wrong
    /// lengths, bad indices, malformed rationals) are errors; axiom
    /// violations are left to [`StarAlgebra::validate`].
    pub fn from_json_str(s: &str) -> Result<StarAlgebra, AlgebraError> {
        let doc: AlgebraJson =
            serde_json::from_str(s).map_err(|e| AlgebraError::Json(e.to_string()))?;
        if doc.basis.len() != doc.dim {
            return Err(AlgebraError::LengthMismatch {
                expected: doc.dim,
                got: doc.basis.len(),
            });
        }
        let parse_sparse = |entries: &[(usize, String)]| -> Result<SparseVec, AlgebraError> {
            let mut sv = SparseVec::new();
            for (k, text) in entries {
                if *k >= doc.dim {
                    return Err(AlgebraError::Invalid(format!(
                        "coordinate index {k} out of range"
                    )));
                }
                let r = parse_rat(text).map_err(AlgebraError::Json)?;
                if !r.is_zero() {
                    sv.insert(*k, r);
                }
            }
            Ok(sv)
        };
        let mut mult = vec![SparseVec::new(); doc.dim * doc.dim];
        for (i, j, entries) in &doc.mult {
            if *i >= doc.dim || *j >= doc.dim {
                return Err(AlgebraError::Invalid(format!(
                    "product index ({i},{j}) out of range"
                )));
            }
            mult[i * doc.dim + j] = parse_sparse(entries)?;
        }
        let mut involution = vec![SparseVec::new(); doc.dim];
        let mut seen = vec![false; doc.dim];
        for (i, entries) in &doc.involution {
            if *i >= doc.dim {
                return Err(AlgebraError::Invalid(format!(
                    "involution index {i} out of range"
                )));
            }
            involution[*i] = parse_sparse(entries)?;
            seen[*i] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(AlgebraError::Invalid(format!(
                "involution image of basis element {missing} is missing"
            )));
        }
        let unit = match &doc.unit {
            None => None,
            Some(u) => {
                if u.len() != doc.dim {
                    return Err(AlgebraError::LengthMismatch {
                        expected: doc.dim,
                        got: u.len(),
                    });
                }
                Some(
                    u.iter()
                        .map(|t| parse_rat(t).map_err(AlgebraError::Json))
                        .collect::<Result<Vec<Rat>, _>>()?,
                )
            }
        };
        StarAlgebra::new(doc.name, doc.basis, doc.grading, mult, involution, unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn basis_vec(d: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); d];
        v[i] = Rat::one();
        v
    }

    #[test]
    fn all_catalog_keys_validate() {
        for key in CATALOG_KEYS {
            let a = catalog(key).unwrap();
            let v = a.validate();
            assert!(v.is_empty(), "{key}: {v:?}");
            assert_eq!(a.name, key);
            assert!(a.unit.is_some(), "{key} should be unitary");
        }
    }

    #[test]
    fn component_dimensions_match_known_values() {
        let expect: [(&str, [usize; 4]); 20] = [
            ("F", [1, 0, 0, 0]),
            ("C2_star", [1, 1, 0, 0]),
            ("C2_gr", [1, 0, 1, 0]),
            ("C2_star_gr", [1, 0, 0, 1]),
            ("C3_i2", [2, 1, 0, 0]),
            ("C3_i1_gr", [1, 1, 1, 0]),
            ("C3_i3_gr", [1, 1, 0, 1]),
            ("G2_tau", [1, 3, 0, 0]),
            ("G2_psi_gr", [2, 0, 2, 0]),
            ("G2_tau_gr", [2, 0, 0, 2]),
            ("G2_gamma_gr", [1, 1, 1, 1]),
            ("G2_tau_gri", [1, 1, 0, 2]),
            ("G2_gamma_gri", [1, 1, 2, 0]),
            ("W_eta2_gr", [2, 0, 1, 1]),
            ("W_eta1_gri", [1, 1, 1, 1]),
            ("W_eta3_gri", [1, 1, 1, 1]),
            ("N3_star", [3, 2, 0, 0]),
            ("U3_star", [4, 1, 0, 0]),
            ("N3_gri", [2, 0, 1, 2]),
            ("U3_gri", [2, 0, 2, 1]),
        ];
        for (key, dims) in expect {
            let a = catalog(key).unwrap();
            let c = a.components().unwrap();
            assert_eq!(c.dims(), dims, "component dims of {key}");
            assert_eq!(c.dims().iter().sum::<usize>(), a.dim, "dims sum for {key}");
        }
    }

    #[test]
    fn axiom_breaker_is_detected() {
        // Start from a valid algebra and redefine b·b := b while keeping
        // b* = −b; the involution sign rule then fails.
        let mut a = catalog("C2_star").unwrap();
        a.mult[1 * 2 + 1] = SparseVec::from([(1, Rat::one())]);
        let v = a.validate();
        assert!(!v.is_empty());
        assert!(v.iter().any(|x| x.axiom == "super-antihomomorphism"));
    }

    #[test]
    fn star_examples() {
        let a = catalog("C2_star").unwrap();
        let b = basis_vec(2, 1);
        let sb = a.star(&b).unwrap();
        assert_eq!(sb[1], -rat_int(1));
        let u = a.unit.clone().unwrap();
        assert_eq!(a.star(&u).unwrap(), u);
        let g = catalog("G2_gamma_gr").unwrap();
        let e1 = basis_vec(4, 1);
        assert_eq!(g.star(&e1).unwrap()[1], -rat_int(1));
        let e2 = basis_vec(4, 2);
        assert_eq!(g.star(&e2).unwrap()[2], rat_int(1));
    }

    #[test]
    fn multiply_examples() {
        // In the three-dimensional nilpotent-generator algebra, a·a = a².
        let a = catalog("C3_i2").unwrap();
        let av = basis_vec(3, 1);
        let sq = a.multiply(&av, &av).unwrap();
        assert_eq!(sq, basis_vec(3, 2));
        let cube = a.multiply(&sq, &av).unwrap();
        assert!(cube.iter().all(Rat::is_zero));
        // Unit is neutral, zero absorbs.
        let u = a.unit.clone().unwrap();
        assert_eq!(a.multiply(&u, &av).unwrap(), av);
        let zero = vec![Rat::zero(); 3];
        assert!(a.multiply(&zero, &av).unwrap().iter().all(Rat::is_zero));
        // Length mismatch is an error.
        assert!(a.multiply(&u, &basis_vec(2, 0)).is_err());
    }

    #[test]
    fn direct_sum_properties() {
        let a = catalog("G2_gamma_gri").unwrap();
        let b = catalog("W_eta1_gri").unwrap();
        let s = direct_sum(&a, &b);
        assert_eq!(s.dim, a.dim + b.dim);
        assert_eq!(s.name, "G2_gamma_gri+W_eta1_gri");
        assert!(s.unit.is_some());
        assert!(s.validate().is_empty());
        let c = s.components().unwrap();
        assert_eq!(c.dims(), [2, 2, 3, 1]);
    }

    #[test]
    fn unitarize_nilpotent_line_gives_known_two_dimensional_algebra() {
        // One-dimensional nilpotent algebra span{a}, a² = 0, a skew of
        // parity 0.
        let nil = StarAlgebra::new(
            "nil".into(),
            vec!["a".into()],
            vec![0],
            vec![SparseVec::new()],
            vec![SparseVec::from([(0, -rat_int(1))])],
            None,
        )
        .unwrap();
        assert!(nil.validate().is_empty());
        let u = unitarize(&nil);
        assert!(u.validate().is_empty());
        assert_eq!(u.dim, 2);
        // Compare structure constants to the catalog after relabeling so
        // that the unit comes first.
        let c2 = catalog("C2_star").unwrap();
        let perm = [1usize, 0]; // u-basis position of catalog basis element
        for i in 0..2 {
            for j in 0..2 {
                let expect: SparseVec = c2
                    .basis_product(i, j)
                    .iter()
                    .map(|(&k, c)| (perm[k], c.clone()))
                    .collect();
                assert_eq!(u.basis_product(perm[i], perm[j]), &expect);
            }
            let expect: SparseVec = c2
                .basis_star(i)
                .iter()
                .map(|(&k, c)| (perm[k], c.clone()))
                .collect();
            assert_eq!(u.basis_star(perm[i]), &expect);
            assert_eq!(u.grading[perm[i]], c2.grading[i]);
        }
    }

    #[test]
    fn unitarize_catalog_algebras_stay_valid() {
        for key in CATALOG_KEYS {
            let a = catalog(key).unwrap();
            let u = unitarize(&a);
            assert!(u.validate().is_empty(), "unitarize({key})");
            assert_eq!(u.dim, a.dim + 1);
        }
    }

    #[test]
    fn ideal_closure_examples() {
        let a = catalog("C3_i2").unwrap();
        // ⟨a³⟩ = ⟨0⟩ = zero space.
        let av = basis_vec(3, 1);
        let sq = a.multiply(&av, &av).unwrap();
        let cube = a.multiply(&sq, &av).unwrap();
        assert_eq!(ideal_closure(&a, &[cube]).rows(), 0);
        assert_eq!(ideal_closure(&a, &[]).rows(), 0);
        // ⟨unit⟩ = everything.
        let u = a.unit.clone().unwrap();
        assert_eq!(ideal_closure(&a, &[u]).rows(), 3);
        // ⟨a⟩ = span{a, a²}.
        assert_eq!(ideal_closure(&a, &[av]).rows(), 2);
    }

    #[test]
    fn subalgebra_closure_examples() {
        let a = catalog("C3_i2").unwrap();
        let gens = vec![basis_vec(3, 1)];
        let c = subalgebra_closure(&a, &gens, true);
        assert_eq!(c.rows(), 3);
        // Idempotent.
        let again = subalgebra_closure(&a, &(0..c.rows()).map(|i| c.row(i).to_vec()).collect::<Vec<_>>(), true);
        assert_eq!(again.rows(), 3);
        // Empty generators with unit → span of the unit.
        let just_unit = subalgebra_closure(&a, &[], true);
        assert_eq!(just_unit.rows(), 1);
    }

    #[test]
    fn quotient_by_zero_and_whole() {
        let a = catalog("W_eta2_gr").unwrap();
        let zero_ideal = RatMatrix::zero(0, a.dim);
        let q = quotient(&a, &zero_ideal).unwrap();
        assert_eq!(q.dim, a.dim);
        assert!(q.validate().is_empty());
        assert_eq!(q.components().unwrap().dims(), [2, 0, 1, 1]);
        let whole = ideal_closure(&a, &[a.unit.clone().unwrap()]);
        let q0 = quotient(&a, &whole).unwrap();
        assert_eq!(q0.dim, 0);
    }

    #[test]
    fn quotient_rejects_bad_subspaces() {
        let a = catalog("C3_i2").unwrap();
        // span{a} is not an ideal (a·a = a² escapes).
        let not_ideal = RatMatrix::from_rows(vec![basis_vec(3, 1)]);
        assert!(matches!(
            quotient(&a, &not_ideal),
            Err(AlgebraError::Invalid(_))
        ));
        // span{1 + e1} in a graded algebra is not homogeneous.
        let g = catalog("G2_gamma_gr").unwrap();
        let mut v = basis_vec(4, 0);
        v[1] = Rat::one();
        let not_homog = RatMatrix::from_rows(vec![v]);
        assert!(matches!(
            quotient(&g, &not_homog),
            Err(AlgebraError::Invalid(_))
        ));
    }

    #[test]
    fn generated_subalgebra_quotient_matches_small_catalog_algebra() {
        // Inside the direct sum of the 4-dimensional graded algebra with
        // γ-involution and the 3-dimensional algebra, take the subalgebra
        // generated by the unit, a = (e1, a), b = (e2, 0); quotient by the
        // ideal generated by a² and b². The result is 4-dimensional with
        // the same component dimensions as the γ-graded catalog algebra.
        let d = direct_sum(&catalog("G2_gamma_gri").unwrap(), &catalog("C3_i2").unwrap());
        let mut a = vec![Rat::zero(); 7];
        a[1] = Rat::one(); // e1 in the first summand
        a[5] = Rat::one(); // nilpotent generator in the second summand
        let mut b = vec![Rat::zero(); 7];
        b[2] = Rat::one(); // e2 in the first summand
        let rows = subalgebra_closure(&d, &[a.clone(), b.clone()], true);
        assert_eq!(rows.rows(), 5);
        let r = subalgebra(&d, &rows).unwrap();
        assert!(r.validate().is_empty());
        assert_eq!(r.dim, 5);
        // Express a and b in the subalgebra and generate the ideal ⟨a², b²⟩.
        let span = rows.clone();
        let coords = |v: &[Rat]| -> Vec<Rat> {
            // The rref rows have pivot columns; read off coefficients.
            let (rr, piv) = span.rref();
            let _ = rr;
            piv.iter().map(|&p| v[p].clone()).collect()
        };
        let a_in = coords(&a);
        let b_in = coords(&b);
        let a2 = r.multiply(&a_in, &a_in).unwrap();
        let b2 = r.multiply(&b_in, &b_in).unwrap();
        assert!(b2.iter().all(Rat::is_zero));
        let ideal = ideal_closure(&r, &[a2, b2]);
        assert_eq!(ideal.rows(), 1);
        let q = quotient(&r, &ideal).unwrap();
        assert_eq!(q.dim, 4);
        assert!(q.validate().is_empty());
        let want = catalog("G2_gamma_gri").unwrap().components().unwrap().dims();
        assert_eq!(q.components().unwrap().dims(), want);
    }

    #[test]
    fn make_nu_dimensions_and_validity() {
        for m in 2..=5 {
            for kind in [NUKind::N, NUKind::U] {
                let a = make_NU(m, kind, None).unwrap();
                assert_eq!(a.dim, 3 * m - 4, "dim of m={m}");
                assert!(a.validate().is_empty(), "m={m}");
            }
        }
        assert!(make_NU(1, NUKind::N, None).is_err());
        // Parity tuple of the wrong shape or breaking the palindromic
        // constraint is rejected.
        assert!(make_NU(3, NUKind::N, Some(&[0, 1])).is_err());
        assert!(make_NU(3, NUKind::N, Some(&[1, 0, 0, 0, 0, 0])).is_err());
        // Palindromic but leaving the staircase element non-homogeneous.
        assert!(make_NU(4, NUKind::N, Some(&[0, 0, 1, 1, 1, 1, 0, 0])).is_err());
        let gri = make_NU(3, NUKind::U, Some(&[0, 1, 1, 0, 0, 1])).unwrap();
        assert!(gri.validate().is_empty());
        assert_eq!(gri.grading, vec![0, 0, 1, 1, 1]);
    }

    #[test]
    fn nu_structure_products() {
        let n3 = catalog("N3_star").unwrap();
        // Basis order: 1, E, a, e13, e46. Check a·E = e13 and E·a = −e46.
        let e = basis_vec(5, 1);
        let a = basis_vec(5, 2);
        assert_eq!(n3.multiply(&a, &e).unwrap(), basis_vec(5, 3));
        let ea = n3.multiply(&e, &a).unwrap();
        assert_eq!(ea[4], -rat_int(1));
        // In the u-variant the sign flips to +e46.
        let u3 = catalog("U3_star").unwrap();
        let u = basis_vec(5, 2);
        assert_eq!(u3.multiply(&e, &u).unwrap(), basis_vec(5, 4));
        // a² = 0 in both variants.
        assert!(n3.multiply(&a, &a).unwrap().iter().all(Rat::is_zero));
    }

    #[test]
    fn resolve_composite_keys() {
        let s = resolve_key("C3_i2+G2_tau").unwrap();
        assert_eq!(s.dim, 7);
        assert!(s.validate().is_empty());
        assert!(resolve_key("C3_i2+nope").is_err());
        assert!(resolve_key("+C3_i2").is_err());
        let single = resolve_key("F").unwrap();
        assert_eq!(single.dim, 1);
    }

    #[test]
    fn json_roundtrip_all_catalog() {
        for key in CATALOG_KEYS {
            let a = catalog(key).unwrap();
            let s = a.to_json_string();
            let b = StarAlgebra::from_json_str(&s).unwrap();
            assert_eq!(a.name, b.name);
            assert_eq!(a.dim, b.dim);
            assert_eq!(a.grading, b.grading);
            assert_eq!(a.basis_labels, b.basis_labels);
            assert_eq!(a.unit, b.unit);
            assert_eq!(a.mult, b.mult);
            assert_eq!(a.involution, b.involution);
            assert!(b.validate().is_empty());
        }
    }

    #[test]
    fn json_rejects_structural_problems() {
        assert!(StarAlgebra::from_json_str("not json").is_err());
        let a = catalog("C2_star").unwrap();
        let good = a.to_json_string();
        // Out-of-range index in mult.
        let bad = good.replace("\"dim\": 2", "\"dim\": 2").replace(
            "\"mult\"",
            "\"mult_ignored\"",
        );
        // Missing mult field entirely → serde error.
        assert!(StarAlgebra::from_json_str(&bad).is_err());
        let broken = r#"{
            "name": "x", "dim": 1, "basis": ["1"], "unit": null,
            "grading": [0],
            "mult": [[0, 0, [[5, "1"]]]],
            "involution": [[0, [[0, "1"]]]]
        }"#;
        assert!(StarAlgebra::from_json_str(broken).is_err());
        let bad_rat = r#"{
            "name": "x", "dim": 1, "basis": ["1"], "unit": null,
            "grading": [0],
            "mult": [[0, 0, [[0, "1/0"]]]],
            "involution": [[0, [[0, "1"]]]]
        }"#;
        assert!(StarAlgebra::from_json_str(bad_rat).is_err());
    }

    #[test]
    fn zero_dimensional_quotient_is_fine() {
        let a = catalog("F").unwrap();
        let whole = ideal_closure(&a, &[a.unit.clone().unwrap()]);
        let q = quotient(&a, &whole).unwrap();
        assert_eq!(q.dim, 0);
        assert!(q.validate().is_empty());
        assert!(q.unit.is_none());
    }
}
