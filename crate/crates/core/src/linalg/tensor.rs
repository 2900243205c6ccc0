use super::{Field, Scalar};

/// A dense array of scalars with an explicit shape, row-major (last index fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    field: Field,
    shape: Vec<usize>,
    data: Vec<Scalar>,
}

impl Tensor {
    pub fn zeros(field: Field, shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor {
            field,
            shape: shape.to_vec(),
            data: vec![field.zero(); len],
        }
    }

    pub fn from_vec(field: Field, shape: &[usize], data: Vec<Scalar>) -> Self {
        assert_eq!(
            data.len(),
            shape.iter().product::<usize>(),
            "tensor data length"
        );
        assert!(
            data.iter().all(|x| x.field() == field),
            "tensor entry from another field"
        );
        Tensor {
            field,
            shape: shape.to_vec(),
            data,
        }
    }

    pub fn from_i64(field: Field, shape: &[usize], entries: &[i64]) -> Self {
        Tensor::from_vec(
            field,
            shape,
            entries.iter().map(|&x| field.from_i64(x)).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn offset(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.shape.len(), "tensor index rank");
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "tensor index out of range");
            acc * n + i
        })
    }

    pub fn get(&self, index: &[usize]) -> &Scalar {
        &self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Scalar) {
        assert_eq!(value.field(), self.field, "tensor entry from another field");
        let o = self.offset(index);
        self.data[o] = value;
    }

    /// The contiguous run of entries obtained by fixing all but the last index.
    pub fn fiber(&self, prefix: &[usize]) -> &[Scalar] {
        assert_eq!(prefix.len() + 1, self.shape.len(), "fiber prefix rank");
        let last = *self.shape.last().expect("tensor has rank at least one");
        let start = prefix
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &n)| acc * n + i)
            * last;
        &self.data[start..start + last]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}
