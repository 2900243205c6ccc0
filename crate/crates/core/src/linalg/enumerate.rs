//! Deterministic enumeration of all linear maps between small spaces over `F_p`.

use std::ops::Range;

use super::{Field, Matrix};
use crate::error::{Error, Result};

/// All `codomain x domain` matrices over a prime field, indexed `0..len()`.
///
/// Index `k` is read as a base-`p` numeral whose most significant digit is
/// the first row-major entry, so iteration is lexicographic in the entries.
/// Any index range can be materialized independently, which lets callers
/// split a search into chunks.
#[derive(Clone, Debug)]
pub struct LinearMaps {
    field: Field,
    p: u64,
    rows: usize,
    cols: usize,
    count: u64,
}

/// Enumerates every linear map from a `domain_dim`-space to a `codomain_dim`-space.
pub fn enumerate_linear_maps(
    domain_dim: usize,
    codomain_dim: usize,
    field: Field,
) -> Result<LinearMaps> {
    let Field::Prime(p) = field else {
        return Err(Error::NotEnumerable);
    };
    let entries = u32::try_from(domain_dim * codomain_dim).map_err(|_| {
        Error::FieldTooLarge(format!("{codomain_dim}x{domain_dim} matrices over {field}"))
    })?;
    let count = p.checked_pow(entries).ok_or_else(|| {
        Error::FieldTooLarge(format!("{codomain_dim}x{domain_dim} matrices over {field}"))
    })?;
    Ok(LinearMaps {
        field,
        p,
        rows: codomain_dim,
        cols: domain_dim,
        count,
    })
}

impl LinearMaps {
    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// The matrix with the given index.
    pub fn get(&self, mut index: u64) -> Matrix {
        assert!(index < self.count, "linear map index out of range");
        let n = self.rows * self.cols;
        let mut digits = vec![0u64; n];
        for d in digits.iter_mut().rev() {
            *d = index % self.p;
            index /= self.p;
        }
        Matrix::from_vec(
            self.field,
            self.rows,
            self.cols,
            digits.into_iter().map(|d| self.field.element(d)).collect(),
        )
    }

    pub fn range(&self, range: Range<u64>) -> impl Iterator<Item = Matrix> + '_ {
        let end = range.end.min(self.count);
        (range.start..end).map(move |k| self.get(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = Matrix> + '_ {
        self.range(0..self.count)
    }
}

/// Enumerates every vector of length `n` over `F_p`, in the same digit order.
pub fn enumerate_vectors(
    n: usize,
    field: Field,
) -> Result<impl Iterator<Item = Vec<crate::linalg::Scalar>>> {
    let maps = enumerate_linear_maps(1, n, field)?;
    Ok((0..maps.len()).map(move |k| maps.get(k).entries().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn one_by_one_over_f2() {
        let maps = enumerate_linear_maps(1, 1, Field::Prime(2)).unwrap();
        let all: Vec<_> = maps.iter().collect();
        assert_eq!(
            all,
            vec![
                Matrix::from_i64(Field::Prime(2), 1, 1, &[0]),
                Matrix::from_i64(Field::Prime(2), 1, 1, &[1])
            ]
        );
    }

    #[test]
    fn counts_and_uniqueness() {
        assert_eq!(
            enumerate_linear_maps(2, 1, Field::Prime(2))
                .unwrap()
                .iter()
                .count(),
            4
        );
        let maps = enumerate_linear_maps(2, 2, Field::Prime(3)).unwrap();
        let all: HashSet<_> = maps.iter().collect();
        assert_eq!(maps.len(), 81);
        assert_eq!(all.len(), 81);
    }

    #[test]
    fn partitions_agree_with_full_stream() {
        let maps = enumerate_linear_maps(2, 2, Field::Prime(3)).unwrap();
        let full: Vec<_> = maps.iter().collect();
        let mut chunked = Vec::new();
        for start in (0..81).step_by(17) {
            chunked.extend(maps.range(start..start + 17));
        }
        assert_eq!(full, chunked);
    }

    #[test]
    fn rationals_rejected() {
        assert_eq!(
            enumerate_linear_maps(1, 1, Field::Rationals).unwrap_err(),
            Error::NotEnumerable
        );
    }
}
