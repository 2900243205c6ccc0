use crate::cohomology::{delta_alie, is_coboundary, Cochain};
use crate::error::{Error, Result};
use crate::lie::{
    action_of, check_matrix_shape, check_shape, AveragingLieAlgebra, LieAlgebra, Representation,
};
use crate::linalg::{vector, Field, Matrix, Scalar, Tensor};
use crate::multilinear::AltMap;
use crate::verdict::{expect_eq, Verdict, Violation};

/// A 2-term L∞-algebra `g_1 --d--> g_0`.
///
/// Only `⟦x,y⟧` (`l2_00`) and `⟦x,h⟧` (`l2_01[x]` as a matrix on `g_1`) are
/// stored; `⟦h,x⟧ = -⟦x,h⟧` and `⟦h,k⟧ = 0` are built in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoTermLinf {
    pub field: Field,
    pub n0: usize,
    pub n1: usize,
    pub d: Matrix,
    pub l2_00: Tensor,
    pub l2_01: Vec<Matrix>,
    pub l3: AltMap,
}

/// A homotopy averaging operator `(P_0, P_1, P_2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomotopyAveraging {
    pub p0: Matrix,
    pub p1: Matrix,
    pub p2: AltMap,
}

impl TwoTermLinf {
    /// Checks shapes and fields only.
    pub fn new(d: Matrix, l2_00: Tensor, l2_01: Vec<Matrix>, l3: AltMap) -> Result<Self> {
        let field = d.field();
        let (n0, n1) = (d.rows(), d.cols());
        check_shape("l2_00", field, &[n0, n0, n0], &l2_00)?;
        if l2_01.len() != n0 {
            return Err(Error::DimensionMismatch {
                what: "l2_01".into(),
                expected: format!("{n0} matrices"),
                found: format!("{} matrices", l2_01.len()),
            });
        }
        for m in &l2_01 {
            check_matrix_shape("l2_01", field, n1, n1, m)?;
        }
        if (l3.arity(), l3.dim(), l3.codim(), l3.field()) != (3, n0, n1, field) {
            return Err(Error::DimensionMismatch {
                what: "l3".into(),
                expected: format!("alternating 3-map from dim {n0} to dim {n1}"),
                found: format!(
                    "arity {} from dim {} to dim {}",
                    l3.arity(),
                    l3.dim(),
                    l3.codim()
                ),
            });
        }
        Ok(TwoTermLinf {
            field,
            n0,
            n1,
            d,
            l2_00,
            l2_01,
            l3,
        })
    }

    /// `⟦x, y⟧` for `x, y ∈ g_0`.
    pub fn br00(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.n0);
        for (i, a) in vector::support(x) {
            for (j, b) in vector::support(y) {
                vector::axpy(&mut out, &(a * b), self.l2_00.fiber(&[i, j]));
            }
        }
        out
    }

    /// `⟦x, h⟧` for `x ∈ g_0`, `h ∈ g_1`.
    pub fn br01(&self, x: &[Scalar], h: &[Scalar]) -> Vec<Scalar> {
        action_of(self.field, &self.l2_01, x, self.n1, self.n1).apply(h)
    }

    fn e0(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.n0, i)
    }

    fn e1(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.n1, i)
    }

    pub fn l3_eval(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.l3.eval(&[x, y, z])
    }

    pub fn is_skeletal(&self) -> bool {
        self.d.is_zero()
    }

    /// (L1), (L4)–(L8) on basis tuples.
    pub fn check(&self) -> Verdict {
        let (n0, n1) = (self.n0, self.n1);
        let zero0 = vector::zeros(self.field, n0);
        let run = || -> Result<(), Violation> {
            for x in 0..n0 {
                for y in x..n0 {
                    let rhs = if x == y {
                        zero0.clone()
                    } else {
                        vector::neg(self.l2_00.fiber(&[y, x]))
                    };
                    expect_eq("L1", &[x, y], self.l2_00.fiber(&[x, y]).to_vec(), rhs)?;
                }
            }
            for x in 0..n0 {
                for h in 0..n1 {
                    let lhs = self.d.apply(&self.l2_01[x].column(h));
                    let rhs = self.br00(&self.e0(x), &self.d.column(h));
                    expect_eq("L4", &[x, h], lhs, rhs)?;
                }
            }
            for h in 0..n1 {
                for k in 0..n1 {
                    let lhs = self.br01(&self.d.column(h), &self.e1(k));
                    let rhs = vector::neg(&self.br01(&self.d.column(k), &self.e1(h)));
                    expect_eq("L5", &[h, k], lhs, rhs)?;
                }
            }
            for x in 0..n0 {
                for y in 0..n0 {
                    for z in 0..n0 {
                        let (ex, ey, ez) = (self.e0(x), self.e0(y), self.e0(z));
                        let lhs = self.d.apply(&self.l3_eval(&ex, &ey, &ez));
                        let a = self.br00(&ex, &self.br00(&ey, &ez));
                        let b = self.br00(&ey, &self.br00(&ez, &ex));
                        let c = self.br00(&ez, &self.br00(&ex, &ey));
                        expect_eq("L6", &[x, y, z], lhs, vector::add(&vector::add(&a, &b), &c))?;
                    }
                }
            }
            for x in 0..n0 {
                for y in 0..n0 {
                    for h in 0..n1 {
                        let (ex, ey, eh) = (self.e0(x), self.e0(y), self.e1(h));
                        let lhs = self.l3_eval(&ex, &ey, &self.d.column(h));
                        // ⟦x,⟦y,h⟧⟧ + ⟦y,⟦h,x⟧⟧ + ⟦h,⟦x,y⟧⟧
                        let a = self.br01(&ex, &self.br01(&ey, &eh));
                        let b = vector::neg(&self.br01(&ey, &self.br01(&ex, &eh)));
                        let c = vector::neg(&self.br01(&self.br00(&ex, &ey), &eh));
                        expect_eq("L7", &[x, y, h], lhs, vector::add(&vector::add(&a, &b), &c))?;
                    }
                }
            }
            for w in 0..n0 {
                for x in 0..n0 {
                    for y in 0..n0 {
                        for z in 0..n0 {
                            let (lhs, rhs) = self.l8_sides(w, x, y, z);
                            expect_eq("L8", &[w, x, y, z], lhs, rhs)?;
                        }
                    }
                }
            }
            Ok(())
        };
        run().into()
    }

    fn l8_sides(&self, w: usize, x: usize, y: usize, z: usize) -> (Vec<Scalar>, Vec<Scalar>) {
        let (ew, ex, ey, ez) = (self.e0(w), self.e0(x), self.e0(y), self.e0(z));
        let l = |a: &[Scalar], b: &[Scalar], c: &[Scalar]| self.l3_eval(a, b, c);
        let terms_lhs = [
            self.br01(&ew, &l(&ex, &ey, &ez)),
            vector::neg(&self.br01(&ex, &l(&ew, &ey, &ez))),
            self.br01(&ey, &l(&ew, &ex, &ez)),
            vector::neg(&self.br01(&ez, &l(&ew, &ex, &ey))),
        ];
        let b = |p: &[Scalar], q: &[Scalar]| self.br00(p, q);
        let terms_rhs = [
            l(&b(&ew, &ex), &ey, &ez),
            vector::neg(&l(&b(&ew, &ey), &ex, &ez)),
            l(&b(&ew, &ez), &ex, &ey),
            l(&b(&ex, &ey), &ew, &ez),
            vector::neg(&l(&b(&ex, &ez), &ew, &ey)),
            l(&b(&ey, &ez), &ew, &ex),
        ];
        let sum = |ts: &[Vec<Scalar>]| {
            ts.iter()
                .fold(vector::zeros(self.field, self.n1), |acc, t| {
                    vector::add(&acc, t)
                })
        };
        (sum(&terms_lhs), sum(&terms_rhs))
    }
}

pub fn check_two_term(t: &TwoTermLinf) -> Verdict {
    t.check()
}

impl HomotopyAveraging {
    pub fn zero(t: &TwoTermLinf) -> Self {
        HomotopyAveraging {
            p0: Matrix::zeros(t.field, t.n0, t.n0),
            p1: Matrix::zeros(t.field, t.n1, t.n1),
            p2: AltMap::zero(t.field, 2, t.n0, t.n1),
        }
    }

    fn check_shapes(&self, t: &TwoTermLinf) -> Result<()> {
        check_matrix_shape("P0", t.field, t.n0, t.n0, &self.p0)?;
        check_matrix_shape("P1", t.field, t.n1, t.n1, &self.p1)?;
        if (
            self.p2.arity(),
            self.p2.dim(),
            self.p2.codim(),
            self.p2.field(),
        ) != (2, t.n0, t.n1, t.field)
        {
            return Err(Error::DimensionMismatch {
                what: "P2".into(),
                expected: format!("alternating 2-map from dim {} to dim {}", t.n0, t.n1),
                found: format!(
                    "arity {} from dim {} to dim {}",
                    self.p2.arity(),
                    self.p2.dim(),
                    self.p2.codim()
                ),
            });
        }
        Ok(())
    }
}

pub fn is_strict(t: &TwoTermLinf, p: &HomotopyAveraging) -> bool {
    t.l3.is_zero() && p.p2.is_zero()
}

/// (A1)–(A4) on basis tuples; both equalities of (A3) are checked, the
/// second under the clause name `A3-right`.
pub fn check_homotopy_averaging(t: &TwoTermLinf, p: &HomotopyAveraging) -> Result<Verdict> {
    if let Verdict::Fail(v) = t.check() {
        return Err(Error::InvalidBase(v));
    }
    p.check_shapes(t)?;
    let (n0, n1) = (t.n0, t.n1);
    let p0c = p.p0.columns();
    let run = || -> Result<(), Violation> {
        crate::lie::first_column_difference("A1", &p.p0.mul(&t.d), &t.d.mul(&p.p1))?;
        for x in 0..n0 {
            for y in 0..n0 {
                let ey = t.e0(y);
                let lhs = t.d.apply(&p.p2.basis_value_or_zero(&[x, y]));
                let rhs = vector::sub(
                    &p.p0.apply(&t.br00(&p0c[x], &ey)),
                    &t.br00(&p0c[x], &p0c[y]),
                );
                expect_eq("A2", &[x, y], lhs, rhs)?;
            }
        }
        for x in 0..n0 {
            for h in 0..n1 {
                let (ex, eh) = (t.e0(x), t.e1(h));
                let p1h = p.p1.column(h);
                let lhs = p.p2.eval(&[&ex, &t.d.column(h)]);
                let common = t.br01(&p0c[x], &p1h);
                let middle = vector::sub(&p.p1.apply(&t.br01(&p0c[x], &eh)), &common);
                let right = vector::sub(&p.p1.apply(&t.br01(&ex, &p1h)), &common);
                expect_eq("A3", &[x, h], lhs, middle.clone())?;
                expect_eq("A3-right", &[x, h], middle, right)?;
            }
        }
        for x in 0..n0 {
            for y in 0..n0 {
                for z in 0..n0 {
                    let (lhs, rhs) = a4_sides(t, p, x, y, z);
                    expect_eq("A4", &[x, y, z], lhs, rhs)?;
                }
            }
        }
        Ok(())
    };
    Ok(run().into())
}

fn a4_sides(
    t: &TwoTermLinf,
    p: &HomotopyAveraging,
    x: usize,
    y: usize,
    z: usize,
) -> (Vec<Scalar>, Vec<Scalar>) {
    let (ex, ey, ez) = (t.e0(x), t.e0(y), t.e0(z));
    let (px, py, pz) = (p.p0.column(x), p.p0.column(y), p.p0.column(z));
    let p2 = |a: &[Scalar], b: &[Scalar]| p.p2.eval(&[a, b]);
    let terms = [
        t.br01(&px, &p2(&ey, &ez)),
        vector::neg(&t.br01(&py, &p2(&ex, &ez))),
        t.br01(&pz, &p2(&ex, &ey)),
        vector::neg(&p.p1.apply(&t.br01(&ez, &p2(&ex, &ey)))),
        vector::neg(&p2(&t.br00(&px, &ey), &ez)),
        vector::neg(&p2(&ey, &t.br00(&px, &ez))),
        p2(&ex, &t.br00(&py, &ez)),
    ];
    let lhs = terms
        .iter()
        .fold(vector::zeros(t.field, t.n1), |acc, v| vector::add(&acc, v));
    let rhs = vector::sub(
        &t.l3_eval(&px, &py, &pz),
        &p.p1.apply(&t.l3_eval(&px, &py, &ez)),
    );
    (lhs, rhs)
}

/// The triple `((g_0)_{P_0}, (g_1)_{P_1}, (l_3, P_2))` of a skeletal structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletalTriple {
    pub algebra: AveragingLieAlgebra,
    pub representation: Representation,
    pub cocycle: Cochain,
}

fn validate_pair(t: &TwoTermLinf, p: &HomotopyAveraging) -> Result<()> {
    match check_homotopy_averaging(t, p)? {
        Verdict::Pass => Ok(()),
        Verdict::Fail(v) => Err(Error::Violation(v)),
    }
}

pub fn skeletal_to_triple(t: &TwoTermLinf, p: &HomotopyAveraging) -> Result<SkeletalTriple> {
    if !t.is_skeletal() {
        return Err(Error::NotSkeletal);
    }
    validate_pair(t, p)?;
    let g0 = LieAlgebra::new(t.field, t.n0, t.l2_00.clone())?;
    let algebra = AveragingLieAlgebra::new(g0, p.p0.clone())?;
    let representation = Representation::new(algebra.clone(), t.n1, t.l2_01.clone(), p.p1.clone())?;
    if let Verdict::Fail(v) = representation.check() {
        return Err(Error::Inconsistent(format!(
            "skeletal structure gives no representation: {v}"
        )));
    }
    let cocycle = Cochain::new(3, t.l3.clone(), Some(p.p2.to_dense()))?;
    if let Some(v) = cocycle_violation(&representation, &cocycle) {
        return Err(Error::Inconsistent(format!(
            "(l3, P2) is not a cocycle: {v}"
        )));
    }
    Ok(SkeletalTriple {
        algebra,
        representation,
        cocycle,
    })
}

/// The first nonzero coordinate of `δc`, as a violation.
pub fn cocycle_violation(r: &Representation, c: &Cochain) -> Option<Violation> {
    let image = delta_alie(r, c).to_vector();
    image.iter().position(|x| !x.is_zero()).map(|k| {
        Violation::new(
            "cocycle",
            &[k],
            vec![image[k].clone()],
            vec![r.field().zero()],
        )
    })
}

pub fn triple_to_skeletal(
    a: &AveragingLieAlgebra,
    r: &Representation,
    c: &Cochain,
) -> Result<(TwoTermLinf, HomotopyAveraging)> {
    if c.degree() != 3 || c.gdim() != a.dim() || c.vdim() != r.vdim() {
        return Err(Error::DimensionMismatch {
            what: "3-cochain".into(),
            expected: format!("degree 3 on dim {} into dim {}", a.dim(), r.vdim()),
            found: format!(
                "degree {} on dim {} into dim {}",
                c.degree(),
                c.gdim(),
                c.vdim()
            ),
        });
    }
    if let Some(v) = cocycle_violation(r, c) {
        return Err(Error::NotACocycle(v));
    }
    let theta = c.theta().expect("degree 3 has a dense component");
    let p2 = theta.to_alternating().map_err(Error::NotAlternating)?;
    let t = TwoTermLinf::new(
        Matrix::zeros(a.field(), a.dim(), r.vdim()),
        a.algebra().structure_constants().clone(),
        r.action().to_vec(),
        c.f().clone(),
    )?;
    let p = HomotopyAveraging {
        p0: a.op().clone(),
        p1: r.q().clone(),
        p2,
    };
    validate_pair(&t, &p).map_err(|e| {
        Error::Inconsistent(format!("cocycle does not give a skeletal structure: {e}"))
    })?;
    Ok((t, p))
}

/// A degree-2 cochain `(g, ϑ)` with `(l_3', P_2') = (l_3, P_2) + δ(g, ϑ)`, if any.
/// Structures with different brackets, `P_0` or `P_1` are never equivalent.
pub fn skeletal_equivalent(
    x: (&TwoTermLinf, &HomotopyAveraging),
    y: (&TwoTermLinf, &HomotopyAveraging),
) -> Result<Option<Cochain>> {
    if x.0.l2_00 != y.0.l2_00 || x.0.l2_01 != y.0.l2_01 || x.1.p0 != y.1.p0 || x.1.p1 != y.1.p1 {
        return Ok(None);
    }
    let tx = skeletal_to_triple(x.0, x.1)?;
    let ty = skeletal_to_triple(y.0, y.1)?;
    is_coboundary(&tx.representation, &ty.cocycle.sub(&tx.cocycle))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_dim_bracket(field: Field) -> Tensor {
        Tensor::from_i64(field, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0])
    }

    /// `(g --Id--> g, [,], l3 = 0)` with `⟦x,h⟧ = [x,h]`.
    fn identity_structure(field: Field) -> TwoTermLinf {
        let g = LieAlgebra::new(field, 2, two_dim_bracket(field)).unwrap();
        TwoTermLinf::new(
            Matrix::identity(field, 2),
            two_dim_bracket(field),
            g.adjoint_action(),
            AltMap::zero(field, 3, 2, 2),
        )
        .unwrap()
    }

    #[test]
    fn identity_structure_is_strict_averaging() {
        let f = Field::Rationals;
        let t = identity_structure(f);
        assert!(t.check().is_pass());
        let p = HomotopyAveraging {
            p0: Matrix::identity(f, 2),
            p1: Matrix::identity(f, 2),
            p2: AltMap::zero(f, 2, 2, 2),
        };
        assert!(check_homotopy_averaging(&t, &p).unwrap().is_pass());
        assert!(check_homotopy_averaging(&t, &HomotopyAveraging::zero(&t))
            .unwrap()
            .is_pass());
        assert!(is_strict(&t, &p));
        assert!(!t.is_skeletal());
    }

    #[test]
    fn broken_jacobi_is_an_l6_violation() {
        let f = Field::Prime(2);
        // 3-dim bracket breaking Jacobi, d = 0, trivial module
        let mut b = Tensor::zeros(f, &[3, 3, 3]);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (0, 2, 0)] {
            b.set(&[i, j, k], f.one());
            b.set(&[j, i, k], f.one());
        }
        let t = TwoTermLinf::new(
            Matrix::zeros(f, 3, 1),
            b,
            vec![Matrix::zeros(f, 1, 1); 3],
            AltMap::zero(f, 3, 3, 1),
        )
        .unwrap();
        assert_eq!(t.check().violation().unwrap().clause, "L6");
    }

    #[test]
    fn skeletal_round_trip() {
        let f = Field::Prime(3);
        let g = LieAlgebra::new(f, 2, two_dim_bracket(f)).unwrap();
        let a = AveragingLieAlgebra::with_identity(g);
        let r = Representation::adjoint(&a);
        let zero = Cochain::zero_for(&r, 3);
        let (t, p) = triple_to_skeletal(&a, &r, &zero).unwrap();
        assert!(t.is_skeletal());
        let back = skeletal_to_triple(&t, &p).unwrap();
        assert_eq!(back.algebra, a);
        assert_eq!(back.representation, r);
        assert_eq!(back.cocycle, zero);
        let w = skeletal_equivalent((&t, &p), (&t, &p)).unwrap().unwrap();
        assert!(w.is_zero());
    }
}
