//! Exact linear programming.
//!
//! A two-phase primal simplex with Bland's rule on an integer-preserving
//! tableau: every entry is the tableau value times the current basis
//! determinant, so each pivot is a 2x2 cross product followed by an exact
//! division. Problems are solved first in `i128` with checked arithmetic and
//! re-solved with big integers if anything overflows.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{Int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[Rat]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Variables are free unless marked nonnegative.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    n_vars: usize,
    nonneg: Vec<bool>,
    constraints: Vec<(Vec<Rat>, Relation, Rat)>,
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram {
            n_vars,
            nonneg: vec![false; n_vars],
            constraints: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn set_nonneg(&mut self, var: usize) {
        self.nonneg[var] = true;
    }

    pub fn add(&mut self, coeffs: Vec<Rat>, rel: Relation, rhs: Rat) {
        assert_eq!(coeffs.len(), self.n_vars, "constraint width");
        self.constraints.push((coeffs, rel, rhs));
    }

    pub fn add_int(&mut self, coeffs: &[Int], rel: Relation, rhs: Int) {
        self.add(
            coeffs.iter().cloned().map(Rat::from_integer).collect(),
            rel,
            Rat::from_integer(rhs),
        );
    }

    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        match self.maximize(&vec![Rat::zero(); self.n_vars]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn maximize(&self, objective: &[Rat]) -> LpOutcome {
        assert_eq!(objective.len(), self.n_vars, "objective width");
        let sf = StandardForm::build(self, objective);
        let raw = match solve::<i128>(&sf) {
            Some(r) => r,
            None => solve::<BigInt>(&sf).expect("big-integer simplex cannot overflow"),
        };
        sf.translate(raw)
    }

    pub fn minimize(&self, objective: &[Rat]) -> LpOutcome {
        let neg: Vec<Rat> = objective.iter().map(|x| -x).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value: -value,
                point,
            },
            other => other,
        }
    }
}

/// `A x = b, x >= 0`, integer data, `b >= 0`; maximize `c x`.
struct StandardForm {
    a: Vec<Vec<Int>>,
    b: Vec<Int>,
    c: Vec<Int>,
    c_scale: Int,
    /// For each original variable: (positive column, optional negative column).
    var_cols: Vec<(usize, Option<usize>)>,
    n_cols: usize,
}

fn lcm_denoms<'a>(it: impl Iterator<Item = &'a Rat>) -> Int {
    it.fold(Int::one(), |l, x| l.lcm(x.denom()))
}

fn scaled(x: &Rat, l: &Int) -> Int {
    x.numer() * (l / x.denom())
}

impl StandardForm {
    fn build(lp: &LinearProgram, objective: &[Rat]) -> Self {
        let mut var_cols = Vec::with_capacity(lp.n_vars);
        let mut n_cols = 0;
        for j in 0..lp.n_vars {
            if lp.nonneg[j] {
                var_cols.push((n_cols, None));
                n_cols += 1;
            } else {
                var_cols.push((n_cols, Some(n_cols + 1)));
                n_cols += 2;
            }
        }
        let n_slack = lp
            .constraints
            .iter()
            .filter(|(_, r, _)| *r != Relation::Eq)
            .count();
        let total = n_cols + n_slack;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut slack = n_cols;
        for (coeffs, rel, rhs) in &lp.constraints {
            let l = lcm_denoms(coeffs.iter().chain(std::iter::once(rhs)));
            let mut row = vec![<Int as Zero>::zero(); total];
            for (j, x) in coeffs.iter().enumerate() {
                let v = scaled(x, &l);
                let (p, n) = var_cols[j];
                if let Some(n) = n {
                    row[n] = -v.clone();
                }
                row[p] = v;
            }
            match rel {
                Relation::Le => {
                    row[slack] = Int::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Int::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut rhs = scaled(rhs, &l);
            if rhs.is_negative() {
                rhs = -rhs;
                for x in row.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            a.push(row);
            b.push(rhs);
        }
        let c_scale = lcm_denoms(objective.iter());
        let mut c = vec![<Int as Zero>::zero(); total];
        for (j, x) in objective.iter().enumerate() {
            let v = scaled(x, &c_scale);
            let (p, n) = var_cols[j];
            if let Some(n) = n {
                c[n] = -v.clone();
            }
            c[p] = v;
        }
        StandardForm {
            a,
            b,
            c,
            c_scale,
            var_cols,
            n_cols: total,
        }
    }

    fn translate(&self, raw: Raw) -> LpOutcome {
        match raw {
            Raw::Infeasible => LpOutcome::Infeasible,
            Raw::Unbounded => LpOutcome::Unbounded,
            Raw::Optimal { values, denom, z } => {
                let col_val = |c: usize| Rat::new(values[c].clone(), denom.clone());
                let point = self
                    .var_cols
                    .iter()
                    .map(|&(p, n)| match n {
                        Some(n) => col_val(p) - col_val(n),
                        None => col_val(p),
                    })
                    .collect();
                let value = Rat::new(z, denom * &self.c_scale);
                LpOutcome::Optimal { value, point }
            }
        }
    }
}

enum Raw {
    Infeasible,
    Unbounded,
    /// Column values are `values[j] / denom`.
    Optimal {
        values: Vec<Int>,
        denom: Int,
        z: Int,
    },
}

trait Exact: Clone + Ord + Debug {
    fn zero() -> Self;
    fn from_big(x: &Int) -> Option<Self>;
    fn to_big(&self) -> Int;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;

    fn sign(&self) -> Ordering {
        self.cmp(&Self::zero())
    }
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn from_big(x: &Int) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> Int {
        Int::from(*self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = (self.checked_div(*o)?, self.checked_rem(*o)?);
        debug_assert_eq!(r, 0, "inexact division in integer tableau");
        (r == 0).then_some(q)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(x: &Int) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> Int {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o);
        assert!(r.is_zero(), "inexact division in integer tableau");
        Some(q)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

struct Tableau<N> {
    rows: Vec<Vec<N>>,
    z: Vec<N>,
    basis: Vec<usize>,
    det: N,
    rhs: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl<N: Exact> Tableau<N> {
    fn pivot(&mut self, r: usize, s: usize) -> Option<()> {
        let p = self.rows[r][s].clone();
        let width = self.rhs + 1;
        let pivot_row = self.rows[r].clone();
        let update = |row: &mut Vec<N>, det: &N| -> Option<()> {
            let f = row[s].clone();
            for j in 0..width {
                let v = p.mul(&row[j])?.sub(&f.mul(&pivot_row[j])?)?;
                row[j] = v.div_exact(det)?;
            }
            Some(())
        };
        for i in 0..self.rows.len() {
            if i != r {
                update(&mut self.rows[i], &self.det)?;
            }
        }
        update(&mut self.z, &self.det)?;
        self.det = p;
        self.basis[r] = s;
        if self.det.sign() == Ordering::Less {
            for row in self.rows.iter_mut().chain(std::iter::once(&mut self.z)) {
                for x in row.iter_mut() {
                    *x = x.neg()?;
                }
            }
            self.det = self.det.neg()?;
        }
        Some(())
    }

    /// Bland's rule over columns `< allowed`.
    fn run(&mut self, allowed: usize) -> Option<Phase> {
        loop {
            let Some(s) = (0..allowed).find(|&j| self.z[j].sign() == Ordering::Less) else {
                return Some(Phase::Optimal);
            };
            let mut best: Option<usize> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][s].sign() != Ordering::Greater {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        // rows[i][rhs]/rows[i][s] vs rows[b][rhs]/rows[b][s]
                        let lhs = self.rows[i][self.rhs].mul(&self.rows[b][s])?;
                        let rhs = self.rows[b][self.rhs].mul(&self.rows[i][s])?;
                        match lhs.cmp(&rhs) {
                            Ordering::Less => Some(i),
                            Ordering::Equal if self.basis[i] < self.basis[b] => Some(i),
                            _ => Some(b),
                        }
                    }
                };
            }
            let Some(r) = best else {
                return Some(Phase::Unbounded);
            };
            self.pivot(r, s)?;
        }
    }
}

fn solve<N: Exact>(sf: &StandardForm) -> Option<Raw> {
    let m = sf.a.len();
    let n = sf.n_cols;
    let rhs = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![N::zero(); rhs + 1];
        for (x, a) in row.iter_mut().zip(&sf.a[i]).take(n) {
            *x = N::from_big(a)?;
        }
        row[n + i] = N::from_big(&Int::one())?;
        row[rhs] = N::from_big(&sf.b[i])?;
        rows.push(row);
    }
    // Phase 1: maximize minus the sum of artificials.
    let mut z = vec![N::zero(); rhs + 1];
    for j in (0..n).chain(std::iter::once(rhs)) {
        let mut s = N::zero();
        for row in &rows {
            s = s.sub(&row[j])?;
        }
        z[j] = s;
    }
    let mut t = Tableau {
        rows,
        z,
        basis: (n..n + m).collect(),
        det: N::from_big(&Int::one())?,
        rhs,
    };
    t.run(n)?;
    if t.z[rhs].sign() == Ordering::Less {
        return Some(Raw::Infeasible);
    }
    // Drive remaining (zero-valued) artificials out of the basis. Rows with no
    // structural entry are redundant and stay inert.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| t.rows[r][j].sign() != Ordering::Equal) {
                t.pivot(r, j)?;
            }
        }
    }
    // Phase 2 objective row, expressed in the current basis.
    let c: Vec<N> = sf.c.iter().map(N::from_big).collect::<Option<Vec<_>>>()?;
    let mut z = vec![N::zero(); rhs + 1];
    for j in 0..=rhs {
        let mut v = if j < n {
            t.det.mul(&c[j])?.neg()?
        } else {
            N::zero()
        };
        for (i, &bj) in t.basis.iter().enumerate() {
            if bj < n && c[bj].sign() != Ordering::Equal {
                v = v.add(&c[bj].mul(&t.rows[i][j])?)?;
            }
        }
        z[j] = v;
    }
    t.z = z;
    match t.run(n)? {
        Phase::Unbounded => Some(Raw::Unbounded),
        Phase::Optimal => {
            let mut values = vec![<Int as Zero>::zero(); n];
            for (i, &bj) in t.basis.iter().enumerate() {
                if bj < n {
                    values[bj] = t.rows[i][rhs].to_big();
                }
            }
            Some(Raw::Optimal {
                values,
                denom: t.det.to_big(),
                z: t.z[rhs].to_big(),
            })
        }
    }
}

/// Is `target` a nonnegative rational combination of `generators`?
pub fn in_cone(generators: &[Vec<Int>], target: &[Int]) -> bool {
    cone_certificate(generators, target).is_some()
}

/// Nonnegative coefficients expressing `target` in the generators, if any.
pub fn cone_certificate(generators: &[Vec<Int>], target: &[Int]) -> Option<Vec<Rat>> {
    if target.iter().all(Zero::is_zero) {
        return Some(vec![Rat::zero(); generators.len()]);
    }
    if generators.is_empty() {
        return None;
    }
    let mut lp = LinearProgram::new(generators.len());
    for j in 0..generators.len() {
        lp.set_nonneg(j);
    }
    for (i, t) in target.iter().enumerate() {
        let row: Vec<Int> = generators.iter().map(|g| g[i].clone()).collect();
        lp.add_int(&row, Relation::Eq, t.clone());
    }
    lp.feasible_point()
}
