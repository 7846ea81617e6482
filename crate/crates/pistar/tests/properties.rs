//! Property-based tests: parser grammar round-trips, formal-involution
//! laws, and exact linear-algebra invariants.

use num_traits::Zero;
use pistar::codim::proper_from_codim;
use pistar::exact::{Rat, RatMatrix, RrefAccum, SparseVec};
use pistar::free_star::{
    parse_poly, star_free, Monomial, Polynomial, Signature, TypedVariable, VarType,
};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-20i64..21, 1i64..4).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn var_strategy() -> impl Strategy<Value = TypedVariable> {
    (1u32..5, 0usize..4).prop_map(|(index, t)| TypedVariable {
        index,
        vtype: VarType::ALL[t],
    })
}

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (rat_strategy(), prop::collection::vec(var_strategy(), 0..4)),
        1..4,
    )
    .prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (c, vars) in terms {
            p = p.add(&Polynomial::from_term(Monomial(vars), c));
        }
        p
    })
}

/// Expression trees over the full grammar surface.
#[derive(Debug, Clone)]
enum Expr {
    Var(TypedVariable),
    Prod(Box<Expr>, Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
    Jordan(Box<Expr>, Box<Expr>),
    Star(Box<Expr>),
}

impl Expr {
    fn eval(&self) -> Polynomial {
        match self {
            Expr::Var(v) => Polynomial::var(*v),
            Expr::Prod(a, b) => a.eval().mul(&b.eval()),
            Expr::Comm(a, b) => a.eval().commutator(&b.eval()),
            Expr::Jordan(a, b) => a.eval().jordan(&b.eval()),
            Expr::Star(a) => star_free(&a.eval()),
        }
    }

    fn render(&self) -> String {
        match self {
            Expr::Var(v) => format!("x{}:{}", v.index, v.vtype),
            Expr::Prod(a, b) => format!("({}) ({})", a.render(), b.render()),
            Expr::Comm(a, b) => format!("[{}, {}]", a.render(), b.render()),
            Expr::Jordan(a, b) => format!("({}) o ({})", a.render(), b.render()),
            Expr::Star(a) => format!("({})^*", a.render()),
        }
    }
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    var_strategy().prop_map(Expr::Var).prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Prod(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Comm(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Jordan(a.into(), b.into())),
            inner.prop_map(|a| Expr::Star(a.into())),
        ]
    })
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<Rat>>> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(rat_strategy(), c), r)
    })
}

fn dense_to_sparse(row: &[Rat]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

proptest! {
    #[test]
    fn parser_roundtrips_canonical_rendering(p in poly_strategy()) {
        let rendered = p.to_string();
        let back = parse_poly(&rendered).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn parser_evaluates_expression_trees(e in expr_strategy()) {
        let direct = e.eval();
        let parsed = parse_poly(&e.render()).unwrap();
        prop_assert_eq!(parsed, direct);
    }

    #[test]
    fn formal_involution_is_involutive(p in poly_strategy()) {
        prop_assert_eq!(star_free(&star_free(&p)), p);
    }

    #[test]
    fn formal_involution_is_linear(p in poly_strategy(), q in poly_strategy(), c in rat_strategy()) {
        let lhs = star_free(&p.add(&q.scale(&c)));
        let rhs = star_free(&p).add(&star_free(&q).scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_is_transpose_invariant(rows in matrix_strategy()) {
        let m = RatMatrix::from_rows(rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn accumulator_rank_matches_batch_rank_in_any_order(rows in matrix_strategy(), seed in 0u64..1000) {
        let m = RatMatrix::from_rows(rows.clone());
        let batch = m.rank();
        // Insert rows in a seed-dependent order.
        let mut order: Vec<usize> = (0..rows.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut acc = RrefAccum::new();
        for &i in &order {
            acc.insert(dense_to_sparse(&rows[i]));
        }
        prop_assert_eq!(acc.rank(), batch);
        // Every original row is contained in the accumulated span.
        for row in &rows {
            prop_assert!(acc.contains(&dense_to_sparse(row)));
        }
    }

    #[test]
    fn kernel_vectors_annihilate_the_matrix(rows in matrix_strategy()) {
        let ncols = rows[0].len();
        let m = RatMatrix::from_rows(rows.clone());
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), ncols);
        for k in &kernel {
            for row in &rows {
                let dot = row
                    .iter()
                    .zip(k)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
                prop_assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn inverse_binomial_transform_inverts(gamma in prop::collection::vec(0u64..6, 1..6)) {
        // Forward transform: c_n = Σ_k binom(n,k)·γ_k with γ_0 = 1.
        let mut g = vec![1u64];
        g.extend(&gamma);
        let c: Vec<u64> = (0..g.len())
            .map(|n| (0..=n).map(|k| pistar::codim::binom(n, k) * g[k]).sum())
            .collect();
        let recovered = proper_from_codim(&c).unwrap();
        prop_assert_eq!(recovered, g);
    }

    #[test]
    fn multinomials_sum_to_power(n in 1usize..6) {
        let total: u64 = Signature::all_of_degree(n)
            .iter()
            .map(|s| s.multinomial())
            .sum();
        prop_assert_eq!(total, 4u64.pow(n as u32));
    }
}
