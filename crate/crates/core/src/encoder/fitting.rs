//! Generalized fitting matrices and their minimum rank.

use crate::budget::{power_within, Budget};
use crate::codeset::increment;
use crate::error::Result;
use crate::gfield::{FieldElement, FieldSpec};
use crate::linalg::{EchelonBasis, FMatrix, IndexSet};
use crate::sigraph::ProblemSpec;

/// One column of a fitting matrix: receiver `i` ignoring the cached packets in
/// `ignored`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingColumn {
    pub receiver: usize,
    pub ignored: IndexSet,
    pub forced_one: usize,
    pub forced_zero: IndexSet,
    pub free: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingTemplate {
    n: usize,
    columns: Vec<FittingColumn>,
}

/// Lexicographic `k`-subsets of `items`.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<IndexSet> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
        if cur.len() == k {
            out.push(IndexSet::from(cur.clone()));
            return;
        }
        for t in start..items.len() {
            if items.len() - t < k - cur.len() {
                break;
            }
            cur.push(items[t]);
            go(items, k, t + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// For every receiver, one column per `side_budget`-subset of its cache (or a
/// single column ignoring the whole cache when it is smaller than that).
pub fn fitting_template(spec: &ProblemSpec) -> FittingTemplate {
    let g = spec.graph();
    let b = spec.side_budget();
    let mut columns = Vec::new();
    for i in 0..g.m() {
        let x = g.side(i);
        let y = g.y_set(i).expect("receiver in range");
        let subsets = if x.len() < b {
            vec![x.clone()]
        } else {
            combinations(x.as_slice(), b)
        };
        for ignored in subsets {
            columns.push(FittingColumn {
                receiver: i,
                forced_one: g.demand(i),
                forced_zero: ignored.union(&y),
                free: x.difference(&ignored),
                ignored,
            });
        }
    }
    FittingTemplate { n: g.n(), columns }
}

impl FittingTemplate {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[FittingColumn] {
        &self.columns
    }

    pub fn free_count(&self) -> usize {
        self.columns.iter().map(|c| c.free.len()).sum()
    }

    fn column_vector(&self, c: usize, values: &[FieldElement]) -> Vec<FieldElement> {
        let col = &self.columns[c];
        let mut v = vec![FieldElement::ZERO; self.n];
        v[col.forced_one] = FieldElement::ONE;
        for (j, &x) in col.free.iter().zip(values) {
            v[j] = x;
        }
        v
    }

    /// The `n × columns` matrix with free positions filled from `assignment`,
    /// column by column, each column's free positions in ascending order.
    pub fn complete(&self, field: &FieldSpec, assignment: &[FieldElement]) -> FMatrix {
        assert_eq!(assignment.len(), self.free_count());
        let mut m = FMatrix::zeros(field, self.n, self.columns.len());
        let mut offset = 0;
        for c in 0..self.columns.len() {
            let k = self.columns[c].free.len();
            let v = self.column_vector(c, &assignment[offset..offset + k]);
            offset += k;
            for (r, x) in v.into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinrankResult {
    pub rank: usize,
    /// Lexicographically first assignment attaining `rank`.
    pub assignment: Vec<FieldElement>,
    pub matrix: FMatrix,
}

impl MinrankResult {
    /// `n × rank` generator made of the first independent columns of the
    /// completed fitting matrix.
    pub fn generator(&self) -> FMatrix {
        let t = self.matrix.transpose();
        let mut basis = EchelonBasis::new(t.field(), t.cols());
        let rows: Vec<Vec<FieldElement>> = (0..t.rows())
            .filter(|&r| basis.insert(t.row_slice(r)))
            .map(|r| t.row_slice(r).to_vec())
            .collect();
        FMatrix::from_row_slices(t.field(), &rows, t.cols()).transpose()
    }
}

/// Exact minimum rank over all completions of the fitting template.
///
/// Depth-first over columns, each column's free values in lexicographic
/// order; a branch is cut once its partial rank reaches the best rank found.
pub fn minrank(spec: &ProblemSpec, budget: &Budget) -> Result<MinrankResult> {
    let t = fitting_template(spec);
    power_within(spec.q(), t.free_count(), budget.minrank_bits, "minrank assignments")?;
    let field = spec.field();
    let mut search = MinrankSearch {
        t: &t,
        field,
        basis: EchelonBasis::new(field, t.n),
        current: Vec::with_capacity(t.free_count()),
        best: t.n + 1,
        best_assignment: Vec::new(),
    };
    search.run(0);
    let matrix = t.complete(field, &search.best_assignment);
    Ok(MinrankResult {
        rank: search.best,
        assignment: search.best_assignment,
        matrix,
    })
}

struct MinrankSearch<'a> {
    t: &'a FittingTemplate,
    field: &'a FieldSpec,
    basis: EchelonBasis,
    current: Vec<FieldElement>,
    best: usize,
    best_assignment: Vec<FieldElement>,
}

impl MinrankSearch<'_> {
    fn run(&mut self, c: usize) {
        if self.basis.rank() >= self.best {
            return;
        }
        if c == self.t.columns.len() {
            self.best = self.basis.rank();
            self.best_assignment = self.current.clone();
            return;
        }
        let k = self.t.columns[c].free.len();
        let mut values = vec![FieldElement::ZERO; k];
        loop {
            let v = self.t.column_vector(c, &values);
            let grew = self.basis.insert(&v);
            self.current.extend_from_slice(&values);
            self.run(c + 1);
            self.current.truncate(self.current.len() - k);
            if grew {
                self.basis.pop();
            }
            if !increment(self.field, &mut values) {
                break;
            }
        }
    }
}
