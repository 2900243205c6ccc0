//! Multilinear maps `g x ... x g -> V` stored by their values on basis tuples.
//!
//! [`AltMap`] holds an alternating map by its values on strictly increasing
//! index tuples, listed in lexicographic order. [`DenseMap`] holds an arbitrary
//! multilinear map by its values on every index tuple, row-major. In both the
//! `V`-coordinate runs fastest.

use crate::linalg::{vector, Field, Scalar};

/// Strictly increasing `k`-tuples from `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of a strictly increasing tuple in the lexicographic order of [`combinations`].
pub fn combination_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &c) in tuple.iter().enumerate() {
        for skipped in prev..c {
            rank += binomial(n - 1 - skipped, k - 1 - pos);
        }
        prev = c + 1;
    }
    rank
}

/// Sorts `idx` in place and returns the sign of the sorting permutation, or
/// `None` when an index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// Evaluates a multilinear map at vector arguments by expanding each argument
/// over its nonzero coordinates and calling `basis` on the resulting index tuples.
pub fn expand_multilinear(
    field: Field,
    codim: usize,
    args: &[&[Scalar]],
    mut basis: impl FnMut(&[usize]) -> Option<Vec<Scalar>>,
) -> Vec<Scalar> {
    let mut out = vector::zeros(field, codim);
    let supports: Vec<Vec<(usize, &Scalar)>> =
        args.iter().map(|a| vector::support(a).collect()).collect();
    if supports.iter().any(Vec::is_empty) && !args.is_empty() {
        return out;
    }
    let mut idx = vec![0usize; args.len()];
    let mut cursor = vec![0usize; args.len()];
    loop {
        let mut coeff = field.one();
        for (pos, &c) in cursor.iter().enumerate() {
            let (i, x) = supports[pos][c];
            idx[pos] = i;
            coeff = coeff * x;
        }
        if let Some(value) = basis(&idx) {
            vector::axpy(&mut out, &coeff, &value);
        }
        // odometer step
        let mut pos = args.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < supports[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
    }
}

/// An alternating multilinear map `Λ^arity(k^dim) -> k^codim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltMap {
    field: Field,
    arity: usize,
    dim: usize,
    codim: usize,
    data: Vec<Scalar>,
}

impl AltMap {
    pub fn zero(field: Field, arity: usize, dim: usize, codim: usize) -> Self {
        AltMap {
            field,
            arity,
            dim,
            codim,
            data: vec![field.zero(); binomial(dim, arity) * codim],
        }
    }

    pub fn from_vec(
        field: Field,
        arity: usize,
        dim: usize,
        codim: usize,
        data: Vec<Scalar>,
    ) -> Self {
        assert_eq!(
            data.len(),
            binomial(dim, arity) * codim,
            "alternating map data length"
        );
        assert!(
            data.iter().all(|x| x.field() == field),
            "entry from another field"
        );
        AltMap {
            field,
            arity,
            dim,
            codim,
            data,
        }
    }

    /// Builds the map from its values on increasing tuples.
    pub fn from_fn(
        field: Field,
        arity: usize,
        dim: usize,
        codim: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> Self {
        let mut data = Vec::with_capacity(binomial(dim, arity) * codim);
        for t in combinations(dim, arity) {
            let v = f(&t);
            assert_eq!(v.len(), codim, "value length");
            data.extend(v);
        }
        AltMap::from_vec(field, arity, dim, codim, data)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn num_tuples(&self) -> usize {
        binomial(self.dim, self.arity)
    }

    /// Stored value on the `t`-th increasing tuple.
    pub fn value_at(&self, t: usize) -> &[Scalar] {
        &self.data[t * self.codim..(t + 1) * self.codim]
    }

    /// Value on an arbitrary basis tuple, expanding by the sign of the sorting
    /// permutation; `None` (meaning zero) on repeated indices.
    pub fn basis_value(&self, idx: &[usize]) -> Option<Vec<Scalar>> {
        assert_eq!(idx.len(), self.arity, "alternating map arity");
        let mut sorted = idx.to_vec();
        let negative = sort_with_sign(&mut sorted)?;
        let v = self.value_at(combination_rank(self.dim, &sorted));
        Some(if negative { vector::neg(v) } else { v.to_vec() })
    }

    pub fn basis_value_or_zero(&self, idx: &[usize]) -> Vec<Scalar> {
        self.basis_value(idx)
            .unwrap_or_else(|| vector::zeros(self.field, self.codim))
    }

    pub fn eval(&self, args: &[&[Scalar]]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.arity, "alternating map arity");
        expand_multilinear(self.field, self.codim, args, |idx| self.basis_value(idx))
    }

    /// The same map stored on every index tuple.
    pub fn to_dense(&self) -> DenseMap {
        DenseMap::from_fn(self.field, self.arity, self.dim, self.codim, |idx| {
            self.basis_value_or_zero(idx)
        })
    }

    /// Applies a linear map `k^codim -> k^m` to every value.
    pub fn post_compose(&self, m: &crate::linalg::Matrix) -> AltMap {
        assert_eq!(m.cols(), self.codim, "post-composition dimension");
        let mut data = Vec::with_capacity(self.num_tuples() * m.rows());
        for t in 0..self.num_tuples() {
            data.extend(m.apply(self.value_at(t)));
        }
        AltMap::from_vec(self.field, self.arity, self.dim, m.rows(), data)
    }

    pub fn add(&self, rhs: &AltMap) -> AltMap {
        self.assert_same_shape(rhs);
        AltMap {
            data: vector::add(&self.data, &rhs.data),
            ..self.clone()
        }
    }

    pub fn sub(&self, rhs: &AltMap) -> AltMap {
        self.assert_same_shape(rhs);
        AltMap {
            data: vector::sub(&self.data, &rhs.data),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    fn assert_same_shape(&self, rhs: &AltMap) {
        assert_eq!(
            (self.arity, self.dim, self.codim),
            (rhs.arity, rhs.dim, rhs.codim),
            "alternating map shape"
        );
    }
}

/// An arbitrary multilinear map `(k^dim)^{⊗arity} -> k^codim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMap {
    field: Field,
    arity: usize,
    dim: usize,
    codim: usize,
    data: Vec<Scalar>,
}

/// Every index tuple of length `arity` over `0..dim`, row-major.
pub fn all_tuples(dim: usize, arity: usize) -> Vec<Vec<usize>> {
    let count = dim.pow(arity as u32);
    (0..count)
        .map(|mut k| {
            let mut t = vec![0; arity];
            for slot in t.iter_mut().rev() {
                *slot = k % dim;
                k /= dim;
            }
            t
        })
        .collect()
}

impl DenseMap {
    pub fn zero(field: Field, arity: usize, dim: usize, codim: usize) -> Self {
        DenseMap {
            field,
            arity,
            dim,
            codim,
            data: vec![field.zero(); dim.pow(arity as u32) * codim],
        }
    }

    pub fn from_vec(
        field: Field,
        arity: usize,
        dim: usize,
        codim: usize,
        data: Vec<Scalar>,
    ) -> Self {
        assert_eq!(
            data.len(),
            dim.pow(arity as u32) * codim,
            "multilinear map data length"
        );
        assert!(
            data.iter().all(|x| x.field() == field),
            "entry from another field"
        );
        DenseMap {
            field,
            arity,
            dim,
            codim,
            data,
        }
    }

    pub fn from_fn(
        field: Field,
        arity: usize,
        dim: usize,
        codim: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> Self {
        let mut data = Vec::with_capacity(dim.pow(arity as u32) * codim);
        for t in all_tuples(dim, arity) {
            let v = f(&t);
            assert_eq!(v.len(), codim, "value length");
            data.extend(v);
        }
        DenseMap::from_vec(field, arity, dim, codim, data)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn basis_value(&self, idx: &[usize]) -> &[Scalar] {
        assert_eq!(idx.len(), self.arity, "multilinear map arity");
        let t = idx.iter().fold(0, |acc, &i| acc * self.dim + i);
        &self.data[t * self.codim..(t + 1) * self.codim]
    }

    pub fn eval(&self, args: &[&[Scalar]]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.arity, "multilinear map arity");
        expand_multilinear(self.field, self.codim, args, |idx| {
            Some(self.basis_value(idx).to_vec())
        })
    }

    /// Converts to alternating storage when the map vanishes on repeated
    /// arguments and flips sign under transpositions; otherwise returns the
    /// first offending tuple.
    pub fn to_alternating(&self) -> Result<AltMap, Vec<usize>> {
        for t in all_tuples(self.dim, self.arity) {
            let mut sorted = t.clone();
            let value = self.basis_value(&t);
            match sort_with_sign(&mut sorted) {
                None => {
                    if !vector::is_zero(value) {
                        return Err(t);
                    }
                }
                Some(negative) => {
                    let base = self.basis_value(&sorted);
                    let expected = if negative {
                        vector::neg(base)
                    } else {
                        base.to_vec()
                    };
                    if value != expected.as_slice() {
                        return Err(t);
                    }
                }
            }
        }
        Ok(AltMap::from_fn(
            self.field,
            self.arity,
            self.dim,
            self.codim,
            |t| self.basis_value(t).to_vec(),
        ))
    }

    pub fn add(&self, rhs: &DenseMap) -> DenseMap {
        assert_eq!(
            (self.arity, self.dim, self.codim),
            (rhs.arity, rhs.dim, rhs.codim),
            "multilinear map shape"
        );
        DenseMap {
            data: vector::add(&self.data, &rhs.data),
            ..self.clone()
        }
    }

    pub fn sub(&self, rhs: &DenseMap) -> DenseMap {
        assert_eq!(
            (self.arity, self.dim, self.codim),
            (rhs.arity, rhs.dim, rhs.codim),
            "multilinear map shape"
        );
        DenseMap {
            data: vector::sub(&self.data, &rhs.data),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_ranks_match_enumeration() {
        for n in 0..6 {
            for k in 0..=n {
                let all = combinations(n, k);
                assert_eq!(all.len(), binomial(n, k));
                for (r, t) in all.iter().enumerate() {
                    assert_eq!(combination_rank(n, t), r, "n={n} k={k} t={t:?}");
                }
            }
        }
    }

    #[test]
    fn alternating_evaluation_signs() {
        let f = Field::Rationals;
        // Λ²(k³) -> k, values 1, 2, 3 on (0,1), (0,2), (1,2)
        let m = AltMap::from_vec(
            f,
            2,
            3,
            1,
            vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)],
        );
        assert_eq!(m.basis_value(&[1, 0]).unwrap(), vec![f.from_i64(-1)]);
        assert!(m.basis_value(&[2, 2]).is_none());
        let x = vec![f.one(), f.one(), f.zero()];
        let y = vec![f.zero(), f.one(), f.one()];
        // (e0+e1) ∧ (e1+e2) = e0∧e1 + e0∧e2 + e1∧e2
        assert_eq!(m.eval(&[&x, &y]), vec![f.from_i64(6)]);
        assert_eq!(m.to_dense().to_alternating().unwrap(), m);
    }

    #[test]
    fn non_alternating_dense_map_is_reported() {
        let f = Field::Prime(2);
        let d = DenseMap::from_vec(f, 2, 1, 1, vec![f.one()]);
        assert_eq!(d.to_alternating().unwrap_err(), vec![0, 0]);
    }
}
