//! The cochain complex of an averaging Lie algebra with coefficients in a representation.
//!
//! `C^1 = Hom(g, V)` and `C^n = Hom(Λ^n g, V) ⊕ Hom(g^{⊗ n-1}, V)` for `n >= 2`.
//! Cochains vectorize as the alternating block (increasing tuples in
//! lexicographic order, `V`-coordinate fastest) followed by the dense block.

use crate::error::{Error, Result};
use crate::lie::Representation;
use crate::linalg::{vector, Field, Matrix, Scalar};
use crate::multilinear::{binomial, AltMap, DenseMap};

/// A cochain `(f, θ)`; `θ` is absent in degree one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    f: AltMap,
    theta: Option<DenseMap>,
}

/// Dimension of `C^n` for `dim g = g` and `dim V = v`.
pub fn cochain_dim(g: usize, v: usize, degree: usize) -> usize {
    match degree {
        0 => 0,
        1 => g * v,
        n => binomial(g, n) * v + g.pow(n as u32 - 1) * v,
    }
}

impl Cochain {
    pub fn new(degree: usize, f: AltMap, theta: Option<DenseMap>) -> Result<Self> {
        let mismatch = |what: &str, expected: String, found: String| Error::DimensionMismatch {
            what: what.into(),
            expected,
            found,
        };
        if degree == 0 {
            return Err(mismatch("cochain degree", ">= 1".into(), "0".into()));
        }
        if f.arity() != degree {
            return Err(mismatch(
                "alternating component arity",
                degree.to_string(),
                f.arity().to_string(),
            ));
        }
        match (&theta, degree) {
            (None, 1) => {}
            (Some(t), n) if n >= 2 => {
                if t.arity() != n - 1
                    || t.dim() != f.dim()
                    || t.codim() != f.codim()
                    || t.field() != f.field()
                {
                    return Err(mismatch(
                        "dense component",
                        format!("arity {} on dim {} into dim {}", n - 1, f.dim(), f.codim()),
                        format!(
                            "arity {} on dim {} into dim {}",
                            t.arity(),
                            t.dim(),
                            t.codim()
                        ),
                    ));
                }
            }
            (None, _) => {
                return Err(mismatch(
                    "dense component",
                    "present".into(),
                    "absent".into(),
                ))
            }
            (Some(_), _) => {
                return Err(mismatch(
                    "dense component",
                    "absent in degree 1".into(),
                    "present".into(),
                ))
            }
        }
        Ok(Cochain { degree, f, theta })
    }

    pub fn zero(field: Field, gdim: usize, vdim: usize, degree: usize) -> Self {
        let theta = (degree >= 2).then(|| DenseMap::zero(field, degree - 1, gdim, vdim));
        Cochain::new(degree, AltMap::zero(field, degree, gdim, vdim), theta)
            .expect("zero cochain is well-formed")
    }

    pub fn zero_for(r: &Representation, degree: usize) -> Self {
        Cochain::zero(r.field(), r.base().dim(), r.vdim(), degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn f(&self) -> &AltMap {
        &self.f
    }

    pub fn theta(&self) -> Option<&DenseMap> {
        self.theta.as_ref()
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }

    pub fn gdim(&self) -> usize {
        self.f.dim()
    }

    pub fn vdim(&self) -> usize {
        self.f.codim()
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v = self.f.entries().to_vec();
        if let Some(t) = &self.theta {
            v.extend_from_slice(t.entries());
        }
        v
    }

    pub fn from_vector(
        field: Field,
        gdim: usize,
        vdim: usize,
        degree: usize,
        v: Vec<Scalar>,
    ) -> Self {
        assert_eq!(
            v.len(),
            cochain_dim(gdim, vdim, degree),
            "cochain vector length"
        );
        let split = binomial(gdim, degree) * vdim;
        let mut v = v;
        let rest = v.split_off(split);
        let f = AltMap::from_vec(field, degree, gdim, vdim, v);
        let theta = (degree >= 2).then(|| DenseMap::from_vec(field, degree - 1, gdim, vdim, rest));
        Cochain::new(degree, f, theta).expect("vector has the cochain layout")
    }

    pub fn add(&self, rhs: &Cochain) -> Cochain {
        self.zip(rhs, vector::add)
    }

    pub fn sub(&self, rhs: &Cochain) -> Cochain {
        self.zip(rhs, vector::sub)
    }

    fn zip(&self, rhs: &Cochain, op: fn(&[Scalar], &[Scalar]) -> Vec<Scalar>) -> Cochain {
        assert_eq!(
            (self.degree, self.gdim(), self.vdim()),
            (rhs.degree, rhs.gdim(), rhs.vdim()),
            "cochain shape"
        );
        Cochain::from_vector(
            self.field(),
            self.gdim(),
            self.vdim(),
            self.degree,
            op(&self.to_vector(), &rhs.to_vector()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.theta.as_ref().is_none_or(DenseMap::is_zero)
    }
}

fn sign(field: Field, negative: bool) -> Scalar {
    if negative {
        field.from_i64(-1)
    } else {
        field.one()
    }
}

/// The Chevalley–Eilenberg differential of `g` with coefficients in `(V, ψ)`.
pub fn delta_lie(r: &Representation, f: &AltMap) -> AltMap {
    let g = r.base().algebra();
    let field = r.field();
    let n = f.arity();
    AltMap::from_fn(field, n + 1, g.dim(), r.vdim(), |t| {
        let mut out = vector::zeros(field, r.vdim());
        for i in 0..=n {
            let rest: Vec<usize> = t
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &x)| x)
                .collect();
            let value = f.basis_value_or_zero(&rest);
            vector::axpy(
                &mut out,
                &sign(field, i % 2 == 1),
                &r.action()[t[i]].apply(&value),
            );
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let bracket = g.bracket_basis(t[i], t[j]);
                if vector::is_zero(bracket) {
                    continue;
                }
                let rest: Vec<Vec<Scalar>> = t
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &x)| g.unit(x))
                    .collect();
                let mut args: Vec<&[Scalar]> = vec![bracket];
                args.extend(rest.iter().map(Vec::as_slice));
                vector::axpy(&mut out, &sign(field, (i + j) % 2 == 1), &f.eval(&args));
            }
        }
        out
    })
}

/// The Leibniz-type differential of the dense component, taking an
/// `(n-1)`-linear map to an `n`-linear one.
pub fn partial_leib(r: &Representation, theta: &DenseMap) -> DenseMap {
    let a = r.base();
    let g = a.algebra();
    let field = r.field();
    let n = theta.arity() + 1;
    let psi_p: Vec<Matrix> = (0..g.dim())
        .map(|k| r.action_matrix(&a.op().column(k)))
        .collect();
    let q_psi: Vec<Matrix> = r.action().iter().map(|m| r.q().mul(m)).collect();
    let p_cols = a.op().columns();
    DenseMap::from_fn(field, n, g.dim(), r.vdim(), |t| {
        let mut out = vector::zeros(field, r.vdim());
        // Σ_{i=1}^{n} (-1)^{i+1} ψ_{P x_i} θ(.. x̂_i ..), the i = n term written separately in the formula
        for i in 0..n {
            let rest: Vec<usize> = t
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &x)| x)
                .collect();
            vector::axpy(
                &mut out,
                &sign(field, i % 2 == 1),
                &psi_p[t[i]].apply(theta.basis_value(&rest)),
            );
        }
        // (-1)^n Q ψ_{x_n} θ(x_1, ..., x_{n-1})
        let head = &t[..n - 1];
        vector::axpy(
            &mut out,
            &sign(field, n % 2 == 1),
            &q_psi[t[n - 1]].apply(theta.basis_value(head)),
        );
        // Σ_{i<j} (-1)^i θ(.. x̂_i .., [P x_i, x_j], ..), with 1-based i
        for i in 0..n {
            for j in i + 1..n {
                let bracket = g.bracket(&p_cols[t[i]], &g.unit(t[j]));
                if vector::is_zero(&bracket) {
                    continue;
                }
                let units: Vec<Vec<Scalar>> = t.iter().map(|&x| g.unit(x)).collect();
                let args: Vec<&[Scalar]> = (0..n)
                    .filter(|&k| k != i)
                    .map(|k| {
                        if k == j {
                            bracket.as_slice()
                        } else {
                            units[k].as_slice()
                        }
                    })
                    .collect();
                vector::axpy(&mut out, &sign(field, i % 2 == 0), &theta.eval(&args));
            }
        }
        out
    })
}

/// `δ^n(f, θ) = (δ_Lie f, ∂θ + (-1)^n f∘P^{⊗n} - (-1)^n Q f∘(P^{⊗ n-1} ⊗ Id))`;
/// in degree one the `∂θ` term is absent.
pub fn delta_alie(r: &Representation, c: &Cochain) -> Cochain {
    let a = r.base();
    let field = r.field();
    let n = c.degree();
    assert_eq!(
        (c.gdim(), c.vdim()),
        (a.dim(), r.vdim()),
        "cochain does not match the representation"
    );
    let f_next = delta_lie(r, c.f());
    let p_cols = a.op().columns();
    let units: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.algebra().unit(i)).collect();
    let s = sign(field, n % 2 == 1);
    let twisted = DenseMap::from_fn(field, n, a.dim(), r.vdim(), |t| {
        let all_p: Vec<&[Scalar]> = t.iter().map(|&x| p_cols[x].as_slice()).collect();
        let mut last_plain = all_p.clone();
        last_plain[n - 1] = &units[t[n - 1]];
        let first = c.f().eval(&all_p);
        let second = r.q().apply(&c.f().eval(&last_plain));
        vector::scale(&s, &vector::sub(&first, &second))
    });
    let theta_next = match c.theta() {
        Some(theta) => partial_leib(r, theta).add(&twisted),
        None => twisted,
    };
    Cochain::new(n + 1, f_next, Some(theta_next)).expect("differential has the cochain layout")
}

/// Matrix of `δ^n` in the canonical cochain bases.
pub fn assemble_delta_matrix(r: &Representation, degree: usize) -> Matrix {
    let field = r.field();
    let (g, v) = (r.base().dim(), r.vdim());
    let cols: Vec<Vec<Scalar>> = (0..cochain_dim(g, v, degree))
        .map(|b| {
            let c = Cochain::from_vector(
                field,
                g,
                v,
                degree,
                vector::unit(field, cochain_dim(g, v, degree), b),
            );
            delta_alie(r, &c).to_vector()
        })
        .collect();
    Matrix::from_columns(field, cochain_dim(g, v, degree + 1), &cols)
}

/// Dimensions around `H^n`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CohomologyDims {
    pub degree: usize,
    pub cochain_dim: usize,
    pub rank_delta: usize,
    pub rank_previous: usize,
    pub cocycle_dim: usize,
    pub cohomology_dim: usize,
}

/// `dim H^n = dim ker δ^n - rank δ^{n-1}`, with `δ^0 = 0`.
pub fn cohomology_dim(r: &Representation, degree: usize) -> CohomologyDims {
    assert!(degree >= 1, "cohomology degree starts at 1");
    let dim = cochain_dim(r.base().dim(), r.vdim(), degree);
    let rank_delta = assemble_delta_matrix(r, degree).rank();
    let rank_previous = if degree == 1 {
        0
    } else {
        assemble_delta_matrix(r, degree - 1).rank()
    };
    CohomologyDims {
        degree,
        cochain_dim: dim,
        rank_delta,
        rank_previous,
        cocycle_dim: dim - rank_delta,
        cohomology_dim: dim - rank_delta - rank_previous,
    }
}

pub fn is_cocycle(r: &Representation, c: &Cochain) -> bool {
    delta_alie(r, c).is_zero()
}

/// A preimage under `δ^{n-1}` (free variables zero), if one exists. Degree
/// must be at least two since `C^0 = 0`.
pub fn is_coboundary(r: &Representation, c: &Cochain) -> Result<Option<Cochain>> {
    if c.degree() < 2 {
        return Err(Error::DimensionMismatch {
            what: "coboundary degree".into(),
            expected: ">= 2".into(),
            found: c.degree().to_string(),
        });
    }
    let m = assemble_delta_matrix(r, c.degree() - 1);
    Ok(m.solve_affine(&c.to_vector()).map(|s| {
        Cochain::from_vector(
            r.field(),
            r.base().dim(),
            r.vdim(),
            c.degree() - 1,
            s.particular,
        )
    }))
}
