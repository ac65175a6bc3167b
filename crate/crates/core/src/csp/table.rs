//! Dense tables over the product of a scope's domains.

/// A function from the joint assignments of `scope` to `T`, stored densely.
///
/// `scope` holds variable indices and `dims` their domain sizes. Cells are
/// row-major: the first scope variable is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table<T> {
    scope: Vec<usize>,
    dims: Vec<usize>,
    cells: Vec<T>,
}

impl<T: Clone> Table<T> {
    /// A table with an empty scope.
    pub fn constant(value: T) -> Self {
        Table {
            scope: Vec::new(),
            dims: Vec::new(),
            cells: vec![value],
        }
    }

    /// # Panics
    /// If `cells.len()` differs from the product of `dims`.
    pub fn new(scope: Vec<usize>, dims: Vec<usize>, cells: Vec<T>) -> Self {
        assert_eq!(scope.len(), dims.len());
        assert_eq!(cells.len(), dims.iter().product::<usize>());
        Table { scope, dims, cells }
    }

    /// Builds a table by evaluating `f` on every joint tuple, in index order.
    pub fn tabulate(scope: Vec<usize>, dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let size = dims.iter().product::<usize>();
        let mut cells = Vec::with_capacity(size);
        let mut digits = vec![0; dims.len()];
        for _ in 0..size {
            cells.push(f(&digits));
            increment(&mut digits, &dims);
        }
        Table { scope, dims, cells }
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.scope.contains(&var)
    }

    /// The single cell of an empty-scope table.
    pub fn as_constant(&self) -> Option<&T> {
        self.scope.is_empty().then(|| &self.cells[0])
    }

    /// Index of a joint tuple given per-scope-position digits.
    pub fn index_of(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&d, &n)| acc * n + d)
    }

    /// Per-scope-position digits of a cell index.
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for (slot, &n) in digits.iter_mut().zip(&self.dims).rev() {
            *slot = index % n;
            index /= n;
        }
        digits
    }

    /// The cell selected by a full assignment vector (variable index → value
    /// index). Returns the first unassigned scope variable on failure.
    pub fn lookup(&self, assignment: &[Option<usize>]) -> Result<&T, usize> {
        let mut index = 0;
        for (&var, &n) in self.scope.iter().zip(&self.dims) {
            let d = assignment.get(var).copied().flatten().ok_or(var)?;
            index = index * n + d;
        }
        Ok(&self.cells[index])
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Table<U> {
        Table {
            scope: self.scope.clone(),
            dims: self.dims.clone(),
            cells: self.cells.iter().map(f).collect(),
        }
    }

    /// Pointwise combination over the ordered union of both scopes (this
    /// table's variables first, then the other's new ones).
    pub fn zip_with<U: Clone, R: Clone>(&self, other: &Table<U>, mut f: impl FnMut(&T, &U) -> R) -> Table<R> {
        let mut scope = self.scope.clone();
        let mut dims = self.dims.clone();
        for (&v, &n) in other.scope.iter().zip(&other.dims) {
            if !scope.contains(&v) {
                scope.push(v);
                dims.push(n);
            }
        }
        let left_pos: Vec<usize> = self.scope.iter().map(|v| position(&scope, *v)).collect();
        let right_pos: Vec<usize> = other.scope.iter().map(|v| position(&scope, *v)).collect();
        let mut left_digits = vec![0; left_pos.len()];
        let mut right_digits = vec![0; right_pos.len()];
        Table::tabulate(scope, dims, |digits| {
            for (slot, &p) in left_digits.iter_mut().zip(&left_pos) {
                *slot = digits[p];
            }
            for (slot, &p) in right_digits.iter_mut().zip(&right_pos) {
                *slot = digits[p];
            }
            f(
                &self.cells[self.index_of(&left_digits)],
                &other.cells[other.index_of(&right_digits)],
            )
        })
    }

    /// Removes `var` from the scope, folding the cells that differ only in
    /// `var` (in domain order) with `fold`. `None` if `var` is not in scope.
    pub fn eliminate(&self, var: usize, mut fold: impl FnMut(&[T]) -> T) -> Option<Table<T>> {
        let pos = self.scope.iter().position(|&v| v == var)?;
        let mut scope = self.scope.clone();
        let mut dims = self.dims.clone();
        scope.remove(pos);
        let n = dims.remove(pos);
        let mut full = vec![0; self.scope.len()];
        let mut column = Vec::with_capacity(n);
        Some(Table::tabulate(scope, dims, |digits| {
            full[..pos].copy_from_slice(&digits[..pos]);
            full[pos + 1..].copy_from_slice(&digits[pos..]);
            column.clear();
            for d in 0..n {
                full[pos] = d;
                column.push(self.cells[self.index_of(&full)].clone());
            }
            fold(&column)
        }))
    }

    /// Fixes every assigned scope variable, dropping it from the scope.
    pub fn condition(&self, assignment: &[Option<usize>]) -> Table<T> {
        let fixed: Vec<Option<usize>> = self
            .scope
            .iter()
            .map(|&v| assignment.get(v).copied().flatten())
            .collect();
        let keep: Vec<usize> = (0..self.scope.len()).filter(|&i| fixed[i].is_none()).collect();
        let scope = keep.iter().map(|&i| self.scope[i]).collect();
        let dims = keep.iter().map(|&i| self.dims[i]).collect();
        let mut full: Vec<usize> = fixed.iter().map(|d| d.unwrap_or(0)).collect();
        Table::tabulate(scope, dims, |digits| {
            for (&i, &d) in keep.iter().zip(digits) {
                full[i] = d;
            }
            self.cells[self.index_of(&full)].clone()
        })
    }
}

fn position(scope: &[usize], var: usize) -> usize {
    scope.iter().position(|&v| v == var).expect("variable in merged scope")
}

/// Advances mixed-radix `digits`, least significant last.
pub(crate) fn increment(digits: &mut [usize], dims: &[usize]) {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < dims[i] {
            return;
        }
        digits[i] = 0;
    }
}
