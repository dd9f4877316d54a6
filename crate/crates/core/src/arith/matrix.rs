use std::fmt;

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Dense matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// Result of [`PolyMatrix::minors`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minors {
    /// `k <= 0`: the ideal of minors is the whole ring by convention.
    Unit,
    /// Every nonzero `k x k` minor. Empty when `k` exceeds a dimension.
    List(Vec<Poly>),
}

impl PolyMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            rows,
            cols,
            entries: vec![Poly::zero(field); rows * cols],
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Input("ragged matrix".into()));
        }
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        if let Some(p) = entries.iter().find(|p| p.field() != field) {
            return Err(Error::FieldMismatch(field, p.field()));
        }
        Ok(PolyMatrix { field, rows: r, cols: c, entries })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, height: usize, columns: &[Vec<Poly>]) -> Result<Self> {
        let mut m = PolyMatrix::zeros(field, height, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != height {
                return Err(Error::Input(format!(
                    "column {j} has length {} instead of {height}",
                    col.len()
                )));
            }
            for (i, p) in col.iter().enumerate() {
                if p.field() != field {
                    return Err(Error::FieldMismatch(field, p.field()));
                }
                m.set(i, j, p.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.field);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Block-diagonal assembly.
    pub fn block_diagonal(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by Laplace expansion along the sparsest line.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Input("determinant of a non-square matrix".into()));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.det_sub(&rows, &cols))
    }

    fn det_sub(&self, rows: &[usize], cols: &[usize]) -> Poly {
        let n = rows.len();
        match n {
            0 => return Poly::one(self.field),
            1 => return self.get(rows[0], cols[0]).clone(),
            2 => {
                let a = self.get(rows[0], cols[0]);
                let b = self.get(rows[0], cols[1]);
                let c = self.get(rows[1], cols[0]);
                let d = self.get(rows[1], cols[1]);
                return a.mul(d).sub(&b.mul(c));
            }
            _ => {}
        }
        let row_nnz = |i: usize| cols.iter().filter(|&&c| !self.get(rows[i], c).is_zero()).count();
        let col_nnz = |j: usize| rows.iter().filter(|&&r| !self.get(r, cols[j]).is_zero()).count();
        let (best_row, row_count) = (0..n).map(|i| (i, row_nnz(i))).min_by_key(|&(_, c)| c).unwrap();
        let (best_col, col_count) = (0..n).map(|j| (j, col_nnz(j))).min_by_key(|&(_, c)| c).unwrap();
        if row_count == 0 || col_count == 0 {
            return Poly::zero(self.field);
        }
        let mut acc = Poly::zero(self.field);
        if row_count <= col_count {
            let i = best_row;
            let sub_rows: Vec<usize> = rows.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &r)| r).collect();
            for j in 0..n {
                let e = self.get(rows[i], cols[j]);
                if e.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &c)| c).collect();
                let term = e.mul(&self.det_sub(&sub_rows, &sub_cols));
                acc = if (i + j) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
        } else {
            let j = best_col;
            let sub_cols: Vec<usize> = cols.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &c)| c).collect();
            for i in 0..n {
                let e = self.get(rows[i], cols[j]);
                if e.is_zero() {
                    continue;
                }
                let sub_rows: Vec<usize> = rows.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &r)| r).collect();
                let term = e.mul(&self.det_sub(&sub_rows, &sub_cols));
                acc = if (i + j) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
        }
        acc
    }

    /// All nonzero `k x k` minors, deduplicated. `k <= 0` yields [`Minors::Unit`].
    pub fn minors(&self, k: i64) -> Minors {
        if k <= 0 {
            return Minors::Unit;
        }
        let k = k as usize;
        if k > self.rows || k > self.cols {
            return Minors::List(Vec::new());
        }
        let mut out: Vec<Poly> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for rs in subsets(self.rows, k) {
            // Columns with no nonzero entry in the chosen rows can never help.
            let live: Vec<usize> = (0..self.cols)
                .filter(|&c| rs.iter().any(|&r| !self.get(r, c).is_zero()))
                .collect();
            if live.len() < k {
                continue;
            }
            for cs in subsets(live.len(), k) {
                let cols: Vec<usize> = cs.iter().map(|&i| live[i]).collect();
                let d = self.det_sub(&rs, &cols);
                if !d.is_zero() && seen.insert(d.normalized()) {
                    out.push(d);
                }
            }
        }
        Minors::List(out)
    }

    /// Connected components of the bipartite graph of nonzero entries, as
    /// `(rows, cols)` index lists. Zero rows and zero columns are omitted.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut used = vec![false; n];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    used[i] = true;
                    used[self.rows + j] = true;
                    let (a, b) = (find(&mut parent, i), find(&mut parent, self.rows + j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
        for v in 0..n {
            if !used[v] {
                continue;
            }
            let root = find(&mut parent, v);
            let entry = groups.entry(root).or_default();
            if v < self.rows {
                entry.0.push(v);
            } else {
                entry.1.push(v - self.rows);
            }
        }
        let mut comps: Vec<_> = groups.into_values().collect();
        comps.sort();
        comps
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;
    use proptest::prelude::*;

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        let f = Field::Rational;
        PolyMatrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s, f).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn as_set(m: Minors) -> Vec<String> {
        let Minors::List(v) = m else { panic!("unit") };
        let mut s: Vec<String> = v.into_iter().map(|p| p.normalized().to_string()).collect();
        s.sort();
        s
    }

    #[test]
    fn two_by_two_minors_of_presentation() {
        let a = mat(&[&["y", "0"], &["-x^2", "y"], &["0", "-x"]]);
        let mut want: Vec<String> = ["y^2", "x*y", "x^3"]
            .iter()
            .map(|s| parse_poly(s, Field::Rational).unwrap().normalized().to_string())
            .collect();
        want.sort();
        assert_eq!(as_set(a.minors(2)), want);
    }

    #[test]
    fn one_by_one_minors_are_entries() {
        let a = mat(&[&["y"], &["-x"]]);
        assert_eq!(as_set(a.minors(1)), vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn nonpositive_size_is_unit_and_oversize_is_empty() {
        let a = mat(&[&["y"], &["-x"]]);
        assert_eq!(a.minors(0), Minors::Unit);
        assert_eq!(a.minors(-3), Minors::Unit);
        assert_eq!(a.minors(2), Minors::List(vec![]));
    }

    #[test]
    fn subsets_enumerates_binomial_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn components_split_block_diagonal() {
        let a = mat(&[&["y", "0"], &["-x", "0"], &["0", "y"], &["0", "-x"]]);
        assert_eq!(a.components(), vec![(vec![0, 1], vec![0]), (vec![2, 3], vec![1])]);
    }

    /// Leibniz formula, kept independent of the Laplace expansion.
    fn det_permutation(m: &PolyMatrix) -> Poly {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.nrows();
        let mut acc = Poly::zero(m.field());
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = Poly::one(m.field());
            for (i, &pi) in p.iter().enumerate() {
                term = term.mul(m.get(i, pi));
            }
            acc = if inversions % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..4).prop_map(|ts| {
            let f = Field::Rational;
            Poly::from_terms(
                f,
                ts.into_iter()
                    .map(|(a, b, c)| (crate::arith::Monomial::new(a, b), f.from_i64(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(42), ..ProptestConfig::default() })]

        #[test]
        fn laplace_matches_leibniz(entries in proptest::collection::vec(small_poly(), 9)) {
            let rows: Vec<Vec<Poly>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let m = PolyMatrix::from_rows(Field::Rational, rows).unwrap();
            prop_assert_eq!(m.determinant().unwrap(), det_permutation(&m));
        }

        #[test]
        fn ring_axioms(f in small_poly(), g in small_poly(), h in small_poly()) {
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
        }
    }
}
