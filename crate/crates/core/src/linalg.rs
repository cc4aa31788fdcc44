//! Dense vectors and matrices over `F_q`.
//!
//! Indices are 0-based throughout the library; the 1-based convention only
//! appears in the file formats and the command line.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::gfield::{FieldElement, FieldSpec};

/// A set of indices kept sorted and free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new() -> Self {
        IndexSet(Vec::new())
    }

    pub fn range(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        IndexSet((0..64).filter(|&b| mask >> b & 1 == 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        self.iter().filter(|&i| !other.contains(i)).collect()
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        self.iter().filter(|&i| other.contains(i)).collect()
    }

    /// Bitmask of the set; indices must be below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1u64 << i)
    }

    /// Position of `i` within the set.
    pub fn rank_of(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }
}

impl From<Vec<usize>> for IndexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for IndexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

fn check_index(set: &IndexSet, len: usize) -> Result<()> {
    match set.max() {
        Some(i) if i >= len => Err(Error::IndexOutOfRange { index: i, len }),
        _ => Ok(()),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FVector {
    field: FieldSpec,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FVector[q={}]{}", self.field.q(), self)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FVector {
    /// Entries are assumed to be elements of `field`.
    pub fn new(field: &FieldSpec, entries: Vec<FieldElement>) -> Result<Self> {
        for x in &entries {
            field.elem(x.rep())?;
        }
        Ok(FVector {
            field: field.clone(),
            entries,
        })
    }

    pub fn from_reps(field: &FieldSpec, reps: &[u32]) -> Result<Self> {
        let entries = reps.iter().map(|&r| field.elem(r)).collect::<Result<_>>()?;
        Ok(FVector {
            field: field.clone(),
            entries,
        })
    }

    pub fn zeros(field: &FieldSpec, len: usize) -> Self {
        FVector {
            field: field.clone(),
            entries: vec![FieldElement::ZERO; len],
        }
    }

    pub(crate) fn from_entries_unchecked(field: &FieldSpec, entries: Vec<FieldElement>) -> Self {
        FVector {
            field: field.clone(),
            entries,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn reps(&self) -> Vec<u32> {
        self.entries.iter().map(|x| x.rep()).collect()
    }

    pub fn get(&self, i: usize) -> FieldElement {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        weight(&self.entries)
    }

    pub fn support(&self) -> IndexSet {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// `x_D`: the entries at the indices of `d`, in ascending index order.
    pub fn subvector(&self, d: &IndexSet) -> Result<FVector> {
        check_index(d, self.len())?;
        Ok(FVector {
            field: self.field.clone(),
            entries: d.iter().map(|i| self.entries[i]).collect(),
        })
    }

    pub fn add(&self, other: &FVector) -> Result<FVector> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FVector) -> Result<FVector> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: FieldElement) -> FVector {
        FVector {
            field: self.field.clone(),
            entries: self.entries.iter().map(|&x| self.field.mul(c, x)).collect(),
        }
    }

    pub fn dot(&self, other: &FVector) -> Result<FieldElement> {
        self.field.check_same(&other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "dot of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(dot(&self.field, &self.entries, &other.entries))
    }

    fn zip_with(
        &self,
        other: &FVector,
        op: impl Fn(&FieldSpec, FieldElement, FieldElement) -> FieldElement,
    ) -> Result<FVector> {
        self.field.check_same(&other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(FVector {
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| op(&self.field, a, b))
                .collect(),
        })
    }
}

pub(crate) fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

pub(crate) fn dot(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// `acc += c * v`
#[inline]
pub(crate) fn axpy(field: &FieldSpec, acc: &mut [FieldElement], c: FieldElement, v: &[FieldElement]) {
    if c.is_zero() {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = field.add(*a, field.mul(c, x));
    }
}

/// Parses a comma-separated list of canonical integers, e.g. `1,0,1`.
/// Surrounding whitespace and an empty list are accepted.
pub fn parse_vector(field: &FieldSpec, text: &str) -> std::result::Result<FVector, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(FVector::zeros(field, 0));
    }
    let mut reps = Vec::new();
    for (k, tok) in trimmed.split(',').enumerate() {
        let tok = tok.trim();
        let v: u32 = tok.parse().map_err(|_| {
            ParseError::field(
                format!("entry {}", k + 1),
                format!("`{tok}` is not a non-negative integer"),
            )
        })?;
        if v >= field.q() {
            return Err(ParseError::field(
                format!("entry {}", k + 1),
                format!("{v} is not an element of F_{}", field.q()),
            ));
        }
        reps.push(v);
    }
    Ok(FVector::from_reps(field, &reps).expect("range checked"))
}

#[derive(Clone, PartialEq, Eq)]
pub struct FMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix[q={}, {}x{}]", self.field.q(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  {:?}",
                self.row_slice(r).iter().map(|x| x.rep()).collect::<Vec<_>>()
            )?;
        }
        Ok(())
    }
}

impl FMatrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for x in &data {
            field.elem(x.rep())?;
        }
        Ok(FMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Rows given as canonical integers. `cols` is needed only when there are no rows.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &x in r {
                data.push(field.elem(x)?);
            }
        }
        Ok(FMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_vectors(field: &FieldSpec, rows: &[FVector], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        for v in rows {
            field.check_same(v.field())?;
            if v.len() != cols {
                return Err(Error::DimensionMismatch("row length".into()));
            }
            data.extend_from_slice(v.entries());
        }
        Ok(FMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_row_slices(field: &FieldSpec, rows: &[Vec<FieldElement>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        FMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.data[r * self.cols + c] = x;
    }

    pub fn with_entry(&self, r: usize, c: usize, x: FieldElement) -> FMatrix {
        let mut m = self.clone();
        m.set(r, c, x);
        m
    }

    pub fn row_slice(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row(&self, r: usize) -> FVector {
        FVector::from_entries_unchecked(&self.field, self.row_slice(r).to_vec())
    }

    pub fn row_reps(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row_slice(r).iter().map(|x| x.rep()).collect())
            .collect()
    }

    /// Row-major canonical integers; the order used for tie-breaking.
    pub fn serialized(&self) -> Vec<u32> {
        self.data.iter().map(|x| x.rep()).collect()
    }

    /// `A_D`: the rows listed in `d`, ascending.
    pub fn submatrix_rows(&self, d: &IndexSet) -> Result<FMatrix> {
        check_index(d, self.rows)?;
        let mut data = Vec::with_capacity(d.len() * self.cols);
        for r in d.iter() {
            data.extend_from_slice(self.row_slice(r));
        }
        Ok(FMatrix {
            field: self.field.clone(),
            rows: d.len(),
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix_cols(&self, d: &IndexSet) -> Result<FMatrix> {
        check_index(d, self.cols)?;
        let mut data = Vec::with_capacity(d.len() * self.rows);
        for r in 0..self.rows {
            data.extend(d.iter().map(|c| self.get(r, c)));
        }
        Ok(FMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: d.len(),
            data,
        })
    }

    pub fn transpose(&self) -> FMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        FMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `x A` for a row vector `x`.
    pub fn left_mul(&self, x: &FVector) -> Result<FVector> {
        self.field.check_same(x.field())?;
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(FVector::from_entries_unchecked(
            &self.field,
            self.left_mul_slice(x.entries()),
        ))
    }

    pub(crate) fn left_mul_slice(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &c) in x.iter().enumerate() {
            axpy(&self.field, &mut out, c, self.row_slice(r));
        }
        out
    }

    /// `A vᵀ` as a vector of length `rows`.
    pub fn apply(&self, v: &FVector) -> Result<FVector> {
        self.field.check_same(v.field())?;
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(FVector::from_entries_unchecked(
            &self.field,
            (0..self.rows)
                .map(|r| dot(&self.field, self.row_slice(r), v.entries()))
                .collect(),
        ))
    }

    pub fn mul(&self, other: &FMatrix) -> Result<FMatrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            data.extend(other.left_mul_slice(self.row_slice(r)));
        }
        Ok(FMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn vstack(&self, other: &FMatrix) -> Result<FMatrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form and its pivot columns. Columns are scanned left
    /// to right and the pivot is the first remaining row with a nonzero entry.
    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(r) = (next..self.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, next);
            let inv = f.inv(m.get(next, c)).expect("pivot is nonzero");
            for k in 0..self.cols {
                let v = f.mul(inv, m.get(next, k));
                m.set(next, k, v);
            }
            let pivot_row = m.row_slice(next).to_vec();
            for r in 0..self.rows {
                if r != next {
                    let factor = f.neg(m.get(r, c));
                    if !factor.is_zero() {
                        let row = &mut m.data[r * self.cols..(r + 1) * self.cols];
                        axpy(f, row, factor, &pivot_row);
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.cols {
                self.data.swap(a * self.cols + k, b * self.cols + k);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A vᵀ = 0}`, one row per free column of
    /// the reduced echelon form, in ascending free-column order.
    pub fn null_space_basis(&self) -> FMatrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut data = Vec::with_capacity(free.len() * self.cols);
        for &fc in &free {
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[fc] = FieldElement::ONE;
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(pr, fc));
            }
            data.extend(v);
        }
        FMatrix {
            field: f.clone(),
            rows: free.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn in_row_span(&self, v: &FVector) -> Result<bool> {
        self.field.check_same(v.field())?;
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("span test vector length".into()));
        }
        let mut basis = EchelonBasis::new(&self.field, self.cols);
        for r in 0..self.rows {
            basis.insert(self.row_slice(r));
        }
        Ok(basis.contains(v.entries()))
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &FMatrix) -> Result<bool> {
        for r in 0..other.rows {
            if !self.in_row_span(&other.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

/// Incrementally built row basis in semi-echelon form. Rows are normalized
/// to a leading 1 and reduced against all earlier rows, so the most recent
/// insertion can be undone with [`EchelonBasis::pop`].
#[derive(Debug, Clone)]
pub(crate) struct EchelonBasis {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &FieldSpec, cols: usize) -> Self {
        EchelonBasis {
            field: field.clone(),
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero() {
                axpy(f, &mut w, f.neg(c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Returns true if `v` was independent and has been added.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = self.field.mul(inv, *x);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn pop(&mut self) {
        self.rows.pop();
        self.pivots.pop();
    }
}
