//! Free `*`-polynomials on four kinds of typed variables.
//!
//! A variable `x{i}:{p}{s}` carries a parity `p` (0 = even, 1 = odd) and a
//! symmetry sign `s` (`+` = symmetric, `-` = skew) describing the component
//! of a superalgebra with superinvolution it ranges over. Polynomials are
//! exact rational linear combinations of words in such variables.
//!
//! The concrete syntax accepted by [`parse_poly`]:
//!
//! ```text
//! poly     := ['+'|'-'] term (('+'|'-') term)*
//! term     := rational | [rational] oexpr
//! oexpr    := juxt ('o' juxt)*            -- 'o' is the Jordan product a∘b = ab + ba
//! juxt     := atom (['*'] atom)*          -- juxtaposition (or '*') is the product
//! atom     := var | '[' poly ',' poly ']' | '(' poly ')' ['^*']
//! var      := 'x' INDEX ':' ('0'|'1') ('+'|'-')
//! rational := INT ['/' INT]
//! ```
//!
//! Whitespace is insignificant, `'o'` binds looser than juxtaposition,
//! `[f, g]` is the commutator `fg - gf`, and `(f)^*` applies [`star_free`].

use crate::exact::{format_rat, parse_rat, Rat};
use crate::star_algebra::StarAlgebra;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// The four variable types: parity (even/odd) times symmetry (`+`/`-`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarType {
    ZeroPlus,
    ZeroMinus,
    OnePlus,
    OneMinus,
}

impl VarType {
    /// All types in the canonical block order `0+`, `0-`, `1+`, `1-`.
    pub const ALL: [VarType; 4] = [
        VarType::ZeroPlus,
        VarType::ZeroMinus,
        VarType::OnePlus,
        VarType::OneMinus,
    ];

    /// Parity: 0 for even variables, 1 for odd ones.
    pub fn parity(self) -> u8 {
        match self {
            VarType::ZeroPlus | VarType::ZeroMinus => 0,
            VarType::OnePlus | VarType::OneMinus => 1,
        }
    }

    /// Symmetry sign under the superinvolution: `+1` or `-1`.
    pub fn sign(self) -> i8 {
        match self {
            VarType::ZeroPlus | VarType::OnePlus => 1,
            VarType::ZeroMinus | VarType::OneMinus => -1,
        }
    }

    /// Position in the canonical block order.
    pub fn block(self) -> usize {
        match self {
            VarType::ZeroPlus => 0,
            VarType::ZeroMinus => 1,
            VarType::OnePlus => 2,
            VarType::OneMinus => 3,
        }
    }

    pub fn from_parts(parity: u8, sign: i8) -> Self {
        match (parity, sign >= 0) {
            (0, true) => VarType::ZeroPlus,
            (0, false) => VarType::ZeroMinus,
            (_, true) => VarType::OnePlus,
            (_, false) => VarType::OneMinus,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            VarType::ZeroPlus => "0+",
            VarType::ZeroMinus => "0-",
            VarType::OnePlus => "1+",
            VarType::OneMinus => "1-",
        }
    }
}

impl fmt::Display for VarType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A typed variable `x{index}:{type}`; indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypedVariable {
    pub index: u32,
    pub vtype: VarType,
}

impl TypedVariable {
    pub fn new(index: u32, vtype: VarType) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        TypedVariable { index, vtype }
    }
}

impl fmt::Display for TypedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}:{}", self.index, self.vtype)
    }
}

/// A word in typed variables; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<TypedVariable>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Exact rational linear combination of monomials; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::from_term(Monomial::one(), Rat::one())
    }

    pub fn var(v: TypedVariable) -> Self {
        Polynomial::from_term(Monomial(vec![v]), Rat::one())
    }

    pub fn from_term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Polynomial) -> Polynomial {
        self.mul(other).sub(&other.mul(self))
    }

    /// Jordan product `self ∘ other = self·other + other·self`.
    pub fn jordan(&self, other: &Polynomial) -> Polynomial {
        self.mul(other).add(&other.mul(self))
    }

    /// The set of variables occurring in the polynomial.
    pub fn variables(&self) -> BTreeSet<TypedVariable> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().copied())
            .collect()
    }

    /// True when every monomial is a permutation of one common variable set
    /// with each variable occurring exactly once.
    pub fn is_multilinear(&self) -> bool {
        let mut expected: Option<BTreeSet<TypedVariable>> = None;
        for m in self.terms.keys() {
            let set: BTreeSet<TypedVariable> = m.0.iter().copied().collect();
            if set.len() != m.0.len() {
                return false;
            }
            match &expected {
                None => expected = Some(set),
                Some(e) => {
                    if *e != set {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rename variable indices via the given map (types are preserved).
    pub fn rename(&self, map: &BTreeMap<u32, u32>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let vars = m
                .0
                .iter()
                .map(|v| TypedVariable::new(*map.get(&v.index).unwrap_or(&v.index), v.vtype))
                .collect();
            out.add_term(Monomial(vars), c.clone());
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if abs.is_one() && m.degree() > 0 {
                write!(f, "{m}")?;
            } else if m.degree() == 0 {
                write!(f, "{}", format_rat(&abs))?;
            } else {
                write!(f, "{} {m}", format_rat(&abs))?;
            }
        }
        Ok(())
    }
}

/// The formal superinvolution of the free algebra.
///
/// A word `w1 … wk` maps to `ε · σ(wk) … σ(w1)` where `σ` negates variables
/// of `-` symmetry and `ε = (-1)^{t(t-1)/2}` for `t` the number of odd
/// variables in the word. Applying it twice is the identity.
pub fn star_free(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let t = m.0.iter().filter(|v| v.vtype.parity() == 1).count();
        let minus_vars = m.0.iter().filter(|v| v.vtype.sign() < 0).count();
        let mut sign = if (t * t.saturating_sub(1) / 2) % 2 == 1 {
            -Rat::one()
        } else {
            Rat::one()
        };
        if minus_vars % 2 == 1 {
            sign = -sign;
        }
        let rev: Vec<TypedVariable> = m.0.iter().rev().copied().collect();
        out.add_term(Monomial(rev), c * &sign);
    }
    out
}

/// A signature: counts of variables of each type in block order
/// `(n_{0+}, n_{0-}, n_{1+}, n_{1-})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(pub [usize; 4]);

impl Signature {
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// All signatures of the given degree, in lexicographic order.
    pub fn all_of_degree(n: usize) -> Vec<Signature> {
        let mut out = Vec::new();
        for a in 0..=n {
            for b in 0..=n - a {
                for c in 0..=n - a - b {
                    out.push(Signature([a, b, c, n - a - b - c]));
                }
            }
        }
        out
    }

    /// The multinomial coefficient `n! / (n1! n2! n3! n4!)`.
    pub fn multinomial(&self) -> u64 {
        let n = self.degree();
        let mut num = factorial_u64(n);
        for &k in &self.0 {
            num /= factorial_u64(k);
        }
        num
    }

    /// The variables `x1 … xn` in block order: first the `0+` block, then
    /// `0-`, `1+`, `1-`.
    pub fn variables(&self) -> Vec<TypedVariable> {
        let mut out = Vec::new();
        let mut idx = 1u32;
        for (t, &k) in VarType::ALL.iter().zip(&self.0) {
            for _ in 0..k {
                out.push(TypedVariable::new(idx, *t));
                idx += 1;
            }
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

pub fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The `n!` multilinear monomials `x_{σ(1)} … x_{σ(n)}` for a signature,
/// enumerated in lexicographic order of the index sequence `σ`.
pub fn multilinear_basis(sig: &Signature) -> Vec<Monomial> {
    let vars = sig.variables();
    let n = vars.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(factorial_u64(n) as usize);
    loop {
        out.push(Monomial(order.iter().map(|&i| vars[i]).collect()));
        if !next_permutation(&mut order) {
            break;
        }
    }
    out
}

/// Advance to the next lexicographic permutation; false after the last one.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

/// Errors from [`evaluate`] and [`is_identity`].
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no assignment for variable index {0}")]
    MissingAssignment(u32),
    #[error("assignment for x{0} lies outside the component {1}")]
    WrongComponent(u32, &'static str),
    #[error("assignment for x{index} has length {got}, algebra dimension is {expected}")]
    BadLength { index: u32, got: usize, expected: usize },
    #[error("polynomial has a constant term but the algebra has no unit")]
    NoUnit,
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("{0}")]
    Algebra(String),
}

/// Substitute coordinate vectors for the variables without checking
/// component membership (callers that enumerate component bases already
/// know the vectors are in place).
pub(crate) fn evaluate_unchecked(
    a: &StarAlgebra,
    p: &Polynomial,
    assignment: &BTreeMap<u32, Vec<Rat>>,
) -> Result<Vec<Rat>, EvalError> {
    let mut acc = vec![Rat::zero(); a.dim];
    for (m, c) in p.terms() {
        let val: Vec<Rat> = match m.0.split_first() {
            None => a.unit.clone().ok_or(EvalError::NoUnit)?,
            Some((v0, rest)) => {
                let mut val = assignment
                    .get(&v0.index)
                    .ok_or(EvalError::MissingAssignment(v0.index))?
                    .clone();
                for v in rest {
                    let w = assignment
                        .get(&v.index)
                        .ok_or(EvalError::MissingAssignment(v.index))?;
                    val = a
                        .multiply(&val, w)
                        .map_err(|e| EvalError::Algebra(e.to_string()))?;
                }
                val
            }
        };
        for (x, y) in acc.iter_mut().zip(&val) {
            *x += c * y;
        }
    }
    Ok(acc)
}

/// Image of `p` under the substitution homomorphism sending each variable
/// index to its assigned coordinate vector. Every assigned vector must lie
/// in the homogeneous component matching the variable's type.
pub fn evaluate(
    a: &StarAlgebra,
    p: &Polynomial,
    assignment: &BTreeMap<u32, Vec<Rat>>,
) -> Result<Vec<Rat>, EvalError> {
    let comps = a
        .components()
        .map_err(|e| EvalError::Algebra(e.to_string()))?;
    for v in p.variables() {
        let vec = assignment
            .get(&v.index)
            .ok_or(EvalError::MissingAssignment(v.index))?;
        if vec.len() != a.dim {
            return Err(EvalError::BadLength {
                index: v.index,
                got: vec.len(),
                expected: a.dim,
            });
        }
        if !comps.contains(v.vtype, vec) {
            return Err(EvalError::WrongComponent(v.index, v.vtype.label()));
        }
    }
    evaluate_unchecked(a, p, assignment)
}

/// True iff `p` vanishes under every substitution of component-basis
/// vectors for its variables — by multilinearity this decides whether `p`
/// is an identity of the algebra. Rejects non-multilinear input.
pub fn is_identity(a: &StarAlgebra, p: &Polynomial) -> Result<bool, EvalError> {
    if !p.is_multilinear() {
        return Err(EvalError::NotMultilinear);
    }
    let comps = a
        .components()
        .map_err(|e| EvalError::Algebra(e.to_string()))?;
    let vars: Vec<TypedVariable> = p.variables().into_iter().collect();
    if vars.is_empty() {
        let v = evaluate_unchecked(a, p, &BTreeMap::new())?;
        return Ok(v.iter().all(Rat::is_zero));
    }
    // If any required component is zero, every admissible evaluation sends
    // that variable to 0 and the multilinear polynomial vanishes.
    if vars.iter().any(|v| comps.vectors(v.vtype).is_empty()) {
        return Ok(true);
    }
    let mut counters = vec![0usize; vars.len()];
    loop {
        let assignment: BTreeMap<u32, Vec<Rat>> = vars
            .iter()
            .zip(&counters)
            .map(|(v, &c)| (v.index, comps.vectors(v.vtype)[c].clone()))
            .collect();
        let val = evaluate_unchecked(a, p, &assignment)?;
        if val.iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
        // Advance the odometer.
        let mut k = vars.len();
        loop {
            if k == 0 {
                return Ok(true);
            }
            k -= 1;
            counters[k] += 1;
            if counters[k] < comps.vectors(vars[k].vtype).len() {
                break;
            }
            counters[k] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

/// Error from [`parse_poly`].
#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {at}: {msg}")]
pub struct ParseError {
    pub at: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Var(TypedVariable),
    Plus,
    Minus,
    Slash,
    Star,
    SuperStar, // ^*
    Circ,      // o
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].to_string())));
            }
            'x' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if i == ds {
                    return Err(ParseError {
                        at: start,
                        msg: "expected variable index after 'x'".into(),
                    });
                }
                let index: u32 = s[ds..i].parse().map_err(|_| ParseError {
                    at: ds,
                    msg: "variable index out of range".into(),
                })?;
                if index == 0 {
                    return Err(ParseError {
                        at: ds,
                        msg: "variable indices start at 1".into(),
                    });
                }
                if i >= b.len() || b[i] as char != ':' {
                    return Err(ParseError {
                        at: i,
                        msg: "expected ':' in variable".into(),
                    });
                }
                i += 1;
                let parity = match b.get(i).map(|&x| x as char) {
                    Some('0') => 0u8,
                    Some('1') => 1u8,
                    _ => {
                        return Err(ParseError {
                            at: i,
                            msg: "expected parity '0' or '1'".into(),
                        })
                    }
                };
                i += 1;
                let sign = match b.get(i).map(|&x| x as char) {
                    Some('+') => 1i8,
                    Some('-') => -1i8,
                    _ => {
                        return Err(ParseError {
                            at: i,
                            msg: "expected sign '+' or '-'".into(),
                        })
                    }
                };
                i += 1;
                out.push((
                    start,
                    Tok::Var(TypedVariable::new(index, VarType::from_parts(parity, sign))),
                ));
            }
            'o' => {
                out.push((i, Tok::Circ));
                i += 1;
            }
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                if b.get(i + 1).map(|&x| x as char) == Some('*') {
                    out.push((i, Tok::SuperStar));
                    i += 2;
                } else {
                    return Err(ParseError {
                        at: i,
                        msg: "expected '*' after '^'".into(),
                    });
                }
            }
            '[' => {
                out.push((i, Tok::LBrack));
                i += 1;
            }
            ']' => {
                out.push((i, Tok::RBrack));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            _ => {
                return Err(ParseError {
                    at: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(a, _)| *a)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError {
                at: self.at(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            at: self.at(),
            msg: msg.into(),
        }
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut sign = Rat::one();
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -sign;
            }
            _ => {}
        }
        let mut acc = self.term()?.scale(&sign);
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut coeff = Rat::one();
        if let Some(Tok::Int(_)) = self.peek() {
            coeff = self.rational()?;
            if !self.starts_atom() {
                // A bare constant term.
                return Ok(Polynomial::from_term(Monomial::one(), coeff));
            }
        }
        let e = self.oexpr()?;
        Ok(e.scale(&coeff))
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let Some(Tok::Int(n)) = self.bump() else {
            return Err(self.err("expected integer"));
        };
        let mut text = n;
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let Some(Tok::Int(d)) = self.bump() else {
                return Err(self.err("expected denominator"));
            };
            text = format!("{text}/{d}");
        }
        parse_rat(&text).map_err(|msg| self.err(msg))
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Var(_)) | Some(Tok::LBrack) | Some(Tok::LParen)
        )
    }

    fn oexpr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.juxt()?;
        while self.peek() == Some(&Tok::Circ) {
            self.pos += 1;
            let rhs = self.juxt()?;
            acc = acc.jordan(&rhs);
        }
        Ok(acc)
    }

    fn juxt(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.atom()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                let rhs = self.atom()?;
                acc = acc.mul(&rhs);
            } else if self.starts_atom() {
                let rhs = self.atom()?;
                acc = acc.mul(&rhs);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Var(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(Polynomial::var(v))
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                let f = self.poly()?;
                self.expect(&Tok::Comma, "','")?;
                let g = self.poly()?;
                self.expect(&Tok::RBrack, "']'")?;
                Ok(f.commutator(&g))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.poly()?;
                self.expect(&Tok::RParen, "')'")?;
                if self.peek() == Some(&Tok::SuperStar) {
                    self.pos += 1;
                    Ok(star_free(&f))
                } else {
                    Ok(f)
                }
            }
            _ => Err(self.err("expected variable, '[', or '('")),
        }
    }
}

/// Parse a polynomial from the concrete syntax described in the module docs.
pub fn parse_poly(s: &str) -> Result<Polynomial, ParseError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ParseError {
            at: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
    };
    let out = p.poly()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}
