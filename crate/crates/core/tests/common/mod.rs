//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use avglie::cohomology::{assemble_delta_matrix, Cochain};
use avglie::extensions::{build_extension, extract_cocycle, ExtensionData, NonAbelianCocycle};
use avglie::linalg::Scalar;
use avglie::{AveragingLieAlgebra, Field, LieAlgebra, Matrix, Representation, Tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn load(name: &str) -> avglie::cli::Object {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    avglie::cli::Object::from_document(
        &avglie::cli::Document::parse(&text).expect("fixture parses"),
    )
    .expect("fixture is valid")
}

pub fn load_extension(name: &str) -> ExtensionData {
    match load(name) {
        avglie::cli::Object::Extension(e) => e,
        other => panic!("{name} is not an extension: {other:?}"),
    }
}

pub fn scalar(f: Field, rng: &mut impl Rng) -> Scalar {
    match f.order() {
        Some(q) => f.element(rng.gen_range(0..q)),
        None => f.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn matrix(f: Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(f, rows, cols, |_, _| scalar(f, rng))
}

pub fn invertible(f: Field, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = matrix(f, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// The algebra `g` in the coordinates `v' = S v`.
pub fn transport_algebra(a: &AveragingLieAlgebra, s: &Matrix) -> AveragingLieAlgebra {
    let f = a.field();
    let s_inv = s.inverse().expect("basis change is invertible");
    let g = a.algebra();
    let alg = LieAlgebra::from_basis_brackets(f, a.dim(), |i, j| {
        s.apply(&g.bracket(&s_inv.column(i), &s_inv.column(j)))
    })
    .expect("isomorphic image of a Lie algebra");
    AveragingLieAlgebra::new(alg, s.mul(a.op()).mul(&s_inv))
        .expect("isomorphic image of an averaging operator")
}

pub fn transport_extension(e: &ExtensionData, s: &Matrix) -> ExtensionData {
    let s_inv = s.inverse().expect("basis change is invertible");
    ExtensionData::new(
        e.base().clone(),
        e.coef().clone(),
        transport_algebra(e.total(), s),
        s.mul(e.i()),
        e.p().mul(&s_inv),
        None,
    )
    .expect("isomorphic image of an extension")
}

fn tensor(f: Field, n: usize, entries: &[i64]) -> LieAlgebra {
    LieAlgebra::new(f, n, Tensor::from_i64(f, &[n, n, n], entries)).expect("fixed Lie algebra")
}

/// `[e0, e1] = e1`
pub fn aff(f: Field) -> LieAlgebra {
    tensor(f, 2, &[0, 0, 0, 1, 0, -1, 0, 0])
}

/// `[e0, e1] = e2`
pub fn heisenberg(f: Field) -> LieAlgebra {
    let mut c = vec![0; 27];
    c[5] = 1;
    c[11] = -1;
    tensor(f, 3, &c)
}

/// `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h` in the basis `(e, f, h)`.
pub fn sl2(f: Field) -> LieAlgebra {
    let mut c = vec![0; 27];
    let mut put = |i: usize, j: usize, k: usize, v: i64| {
        c[(i * 3 + j) * 3 + k] = v;
        c[(j * 3 + i) * 3 + k] = -v;
    };
    put(2, 0, 0, 2);
    put(2, 1, 1, -2);
    put(0, 1, 2, 1);
    tensor(f, 3, &c)
}

fn unit_row(f: Field, n: usize, k: usize, row: &[Scalar]) -> Matrix {
    Matrix::from_fn(
        f,
        n,
        n,
        |r, c| if r == k { row[c].clone() } else { f.zero() },
    )
}

/// A random averaging Lie algebra of dimension 2 or 3, in a random basis.
/// Families: abelian with any operator, `aff` with `diag(c, 0)` or a scalar,
/// Heisenberg with an operator into the center, `sl2` with a scalar.
pub fn averaging(f: Field, rng: &mut impl Rng) -> AveragingLieAlgebra {
    let lambda = scalar(f, rng);
    let base = match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(1..=3);
            AveragingLieAlgebra::new(LieAlgebra::abelian(f, n), matrix(f, n, n, rng))
        }
        1 => {
            let c = scalar(f, rng);
            AveragingLieAlgebra::new(
                aff(f),
                Matrix::from_fn(f, 2, 2, |r, col| {
                    if r == 0 && col == 0 {
                        c.clone()
                    } else {
                        f.zero()
                    }
                }),
            )
        }
        2 => AveragingLieAlgebra::new(aff(f), Matrix::identity(f, 2).scale(&lambda)),
        3 => {
            let row: Vec<Scalar> = (0..3).map(|_| scalar(f, rng)).collect();
            AveragingLieAlgebra::new(heisenberg(f), unit_row(f, 3, 2, &row))
        }
        _ => AveragingLieAlgebra::new(sl2(f), Matrix::identity(f, 3).scale(&lambda)),
    }
    .expect("family members are averaging");
    let n = base.dim();
    transport_algebra(&base, &invertible(f, n, rng))
}

/// Like [`averaging`] but never abelian and with a nonzero operator.
pub fn nonabelian_averaging(f: Field, rng: &mut impl Rng) -> AveragingLieAlgebra {
    loop {
        let a = averaging(f, rng);
        if !a.algebra().is_abelian() && !a.op().is_zero() {
            return a;
        }
    }
}

/// Adjoint (`Q = P`), trivial with a random `Q`, or their direct sum, in a random basis of `V`.
pub fn representation_of(a: &AveragingLieAlgebra, rng: &mut impl Rng) -> Representation {
    let f = a.field();
    let n = a.dim();
    let adjoint = Representation::adjoint(a);
    let (vdim, action, q) = match rng.gen_range(0..3) {
        0 => (n, adjoint.action().to_vec(), adjoint.q().clone()),
        1 => {
            let k = rng.gen_range(1..=2);
            (k, vec![Matrix::zeros(f, k, k); n], matrix(f, k, k, rng))
        }
        _ => {
            let k = 1;
            let action = adjoint
                .action()
                .iter()
                .map(|m| m.direct_sum(&Matrix::zeros(f, k, k)))
                .collect();
            (n + k, action, adjoint.q().direct_sum(&matrix(f, k, k, rng)))
        }
    };
    let t = invertible(f, vdim, rng);
    let t_inv = t.inverse().unwrap();
    let action = action.iter().map(|m| t.mul(m).mul(&t_inv)).collect();
    let r =
        Representation::new(a.clone(), vdim, action, t.mul(&q).mul(&t_inv)).expect("shapes agree");
    assert!(r.check().is_pass(), "generated representation is valid");
    r
}

pub fn random_cochain(r: &Representation, degree: usize, rng: &mut impl Rng) -> Cochain {
    let f = r.field();
    let len = avglie::cohomology::cochain_dim(r.base().dim(), r.vdim(), degree);
    let v = (0..len).map(|_| scalar(f, rng)).collect();
    Cochain::from_vector(f, r.base().dim(), r.vdim(), degree, v)
}

/// A random element of the cocycle space `Z^n`.
pub fn random_cocycle_of(r: &Representation, degree: usize, rng: &mut impl Rng) -> Cochain {
    let f = r.field();
    let len = avglie::cohomology::cochain_dim(r.base().dim(), r.vdim(), degree);
    let mut v = vec![f.zero(); len];
    for k in assemble_delta_matrix(r, degree).kernel_basis() {
        let c = scalar(f, rng);
        for (a, b) in v.iter_mut().zip(&k) {
            a.add_product(&c, b);
        }
    }
    Cochain::from_vector(f, r.base().dim(), r.vdim(), degree, v)
}

/// A valid non-abelian cocycle: either an abelian one from a random `Z^2`
/// element, or `h = g` with the adjoint action, then re-extracted along a
/// random section of the corresponding extension.
pub fn nonabelian_cocycle(f: Field, rng: &mut impl Rng) -> NonAbelianCocycle {
    let g = averaging(f, rng);
    let c = if rng.gen_bool(0.5) {
        let r = representation_of(&g, rng);
        let z = random_cocycle_of(&r, 2, rng);
        let theta = z.theta().expect("degree 2 has a dense part");
        let phi = Matrix::from_columns(
            f,
            r.vdim(),
            &(0..g.dim())
                .map(|x| theta.basis_value(&[x]).to_vec())
                .collect::<Vec<_>>(),
        );
        let h = AveragingLieAlgebra::new(LieAlgebra::abelian(f, r.vdim()), r.q().clone()).unwrap();
        NonAbelianCocycle::new(g, h, z.f().clone(), r.action().to_vec(), phi).unwrap()
    } else {
        let psi = g.algebra().adjoint_action();
        NonAbelianCocycle::from_action(g.clone(), g, psi).unwrap()
    };
    assert!(c.check().is_pass(), "seed cocycle is valid");
    let e = build_extension(&c).unwrap();
    let shift = matrix(f, e.hdim(), e.gdim(), rng);
    let s = e.section_or_default().add(&e.i().mul(&shift));
    extract_cocycle(&e, &s).unwrap()
}
