//! Period points, B-field operators, kappa-class arithmetic, degree
//! reversal, conjugation certificates, and twistor 3-spaces.
//!
//! A period point is stored as the rational pair `(x, y)` of real and
//! imaginary parts of an isotropic line with positive pairing against its
//! conjugate, so every Hodge-theoretic condition in this module is an exact
//! rational statement.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::lattice::BBFLattice;
use crate::linalg::{BilinearForm, QMatrix, QVector};
use crate::mukai::{
    adjoint_f, exp_nilpotent, is_isometry, is_isometry_between, lefschetz_e, GradedOperator,
    MukaiExtension,
};
use crate::rational::{rat_int, Rat};

/// Rational period data: `sigma = x + i y` with
/// `q(x, x) = q(y, y) > 0` and `q(x, y) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodPoint {
    pub x: QVector,
    pub y: QVector,
}

impl PeriodPoint {
    pub fn new(lattice: &BBFLattice, x: QVector, y: QVector) -> Result<Self, Error> {
        if !is_period_point(lattice, &x, &y)? {
            return Err(Error::InvalidParameter(
                "not a period point: need q(x,x) = q(y,y) > 0 and q(x,y) = 0".into(),
            ));
        }
        Ok(PeriodPoint { x, y })
    }
}

/// `q(x, x) = q(y, y)`, `q(x, y) = 0`, `q(x, x) > 0` — the exact form of
/// "isotropic line with positive pairing against the conjugate".
pub fn is_period_point(lattice: &BBFLattice, x: &QVector, y: &QVector) -> Result<bool, Error> {
    let form = lattice.form();
    let xx = form.norm(x)?;
    let yy = form.norm(y)?;
    let xy = form.eval(x, y)?;
    Ok(xx == yy && xy.is_zero() && xx.is_positive())
}

/// Which pairing an isometry matrix acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryLevel {
    /// The lattice itself (degree-2 classes).
    Base,
    /// The Mukai extension.
    Mukai,
}

/// A validated isometry with its level and a user-supplied orientation
/// sign. The sign is bookkeeping (it is not derivable from the matrix) and
/// does not enter any computation here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeIsometry {
    pub matrix: QMatrix,
    pub level: IsometryLevel,
    pub orientation_sign: i8,
}

impl HodgeIsometry {
    pub fn new_base(lattice: &BBFLattice, matrix: QMatrix, orientation_sign: i8) -> Result<Self, Error> {
        if !is_isometry(lattice.form(), &matrix)? {
            return Err(Error::NotIsometry);
        }
        Self::with_sign(matrix, IsometryLevel::Base, orientation_sign)
    }

    pub fn new_mukai(ext: &MukaiExtension, matrix: QMatrix, orientation_sign: i8) -> Result<Self, Error> {
        if !is_isometry(ext.pairing(), &matrix)? {
            return Err(Error::NotIsometry);
        }
        Self::with_sign(matrix, IsometryLevel::Mukai, orientation_sign)
    }

    fn with_sign(matrix: QMatrix, level: IsometryLevel, orientation_sign: i8) -> Result<Self, Error> {
        if orientation_sign != 1 && orientation_sign != -1 {
            return Err(Error::InvalidParameter(format!(
                "orientation sign must be +1 or -1, got {orientation_sign}"
            )));
        }
        Ok(HodgeIsometry {
            matrix,
            level,
            orientation_sign,
        })
    }
}

/// Does `psi` send the period line of `sigma_x` to that of `sigma_y`?
/// Solved exactly: seek rationals `(a, b) != (0, 0)` with
/// `psi(x) = a x' - b y'` and `psi(y) = b x' + a y'`.
pub fn is_hodge_isometry(
    lattice: &BBFLattice,
    psi: &QMatrix,
    sigma_x: &PeriodPoint,
    sigma_y: &PeriodPoint,
) -> Result<bool, Error> {
    if !is_isometry(lattice.form(), psi)? {
        return Err(Error::NotIsometry);
    }
    let px = psi.mul_vec(&sigma_x.x)?;
    let py = psi.mul_vec(&sigma_x.y)?;
    let n = lattice.rank();
    // Rows: psi(x)_k = a x'_k - b y'_k, then psi(y)_k = b x'_k + a y'_k.
    let mut system = QMatrix::zero(2 * n, 2);
    let mut rhs = Vec::with_capacity(2 * n);
    for k in 0..n {
        system.set(k, 0, sigma_y.x[k].clone());
        system.set(k, 1, -sigma_y.y[k].clone());
        rhs.push(px[k].clone());
    }
    for k in 0..n {
        system.set(n + k, 0, sigma_y.y[k].clone());
        system.set(n + k, 1, sigma_y.x[k].clone());
        rhs.push(py[k].clone());
    }
    match system.solve(&QVector::new(rhs))? {
        None => Ok(false),
        Some(ab) => Ok(!ab.is_zero()),
    }
}

/// B-field operator `exp(e_v) = 1 + e_v + e_v^2/2` for `v` in the base:
/// a unipotent isometry fixing `b` and sending
/// `a -> a + v + (q(v,v)/2) b`.
pub fn bfield(ext: &MukaiExtension, v: &QVector) -> Result<QMatrix, Error> {
    let e = lefschetz_e(ext, v)?;
    exp_nilpotent(&e.matrix, 3)
}

/// Rank and first-Chern-class decomposition data of a kernel sheaf on a
/// product: `c_1 = pi_X^* lambda_X + pi_Y^* lambda_Y` with rank `r > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub r: u32,
    pub lambda_x: QVector,
    pub lambda_y: QVector,
}

impl ChernData {
    pub fn new(r: u32, lambda_x: QVector, lambda_y: QVector) -> Result<Self, Error> {
        if r == 0 {
            return Err(Error::InvalidParameter("rank must be positive".into()));
        }
        Ok(ChernData {
            r,
            lambda_x,
            lambda_y,
        })
    }
}

/// Transport an isometry of Mukai extensions through the B-fields of the
/// kappa normalization: `B(-lambda_Y / r) . Phi . B(-lambda_X / r)`.
pub fn phi_kappa(
    ext_x: &MukaiExtension,
    ext_y: &MukaiExtension,
    phi: &QMatrix,
    cd: &ChernData,
) -> Result<QMatrix, Error> {
    if !is_isometry_between(ext_x.pairing(), ext_y.pairing(), phi)? {
        return Err(Error::NotIsometry);
    }
    let r = rat_int(i64::from(cd.r));
    let bx = bfield(ext_x, &cd.lambda_x.scale(&(-Rat::one() / &r)))?;
    let by = bfield(ext_y, &cd.lambda_y.scale(&(-Rat::one() / &r)))?;
    by.mul(phi)?.mul(&bx)
}

/// True iff the isometry exchanges the degree spans:
/// image of `a_X` inside `span(b_Y)` and image of `b_X` inside `span(a_Y)`.
pub fn check_degree_reversing(
    ext_x: &MukaiExtension,
    ext_y: &MukaiExtension,
    phi: &QMatrix,
) -> Result<bool, Error> {
    let (dx, dy) = (ext_x.dim(), ext_y.dim());
    if phi.rows() != dy || phi.cols() != dx {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map between extensions of dims {dx} and {dy}",
            phi.rows(),
            phi.cols()
        )));
    }
    let alpha_image = phi.col(0);
    let beta_image = phi.col(dx - 1);
    let alpha_in_beta_span = (0..dy - 1).all(|i| alpha_image[i].is_zero());
    let beta_in_alpha_span = (1..dy).all(|i| beta_image[i].is_zero());
    Ok(alpha_in_beta_span && beta_in_alpha_span)
}

/// The degree-0 block of an endomorphism of the extension, acting on the
/// base lattice.
pub fn degree_zero_block(ext: &MukaiExtension, m: &QMatrix) -> QMatrix {
    let rank = ext.base().rank();
    let idx: Vec<usize> = (1..=rank).collect();
    m.submatrix(&idx, &idx)
}

/// Certificate that conjugating a raising operator through a
/// degree-reversing isometry produces the adjoint lowering operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LscCertificate {
    /// The conjugate `phi^-1 . e_(phi_0 f) . phi`, a degree -2 operator.
    pub operator: GradedOperator,
    /// The scalar with `operator = scalar * f_f`.
    pub scalar: Rat,
}

/// Compute `A = phi^-1 . e_(phi_0 f) . phi` for degree-reversing `phi` and
/// verify exactly that `A = c * f_f` for a single nonzero rational `c`.
///
/// Preconditions: `phi` is a degree-reversing isometry of the extension;
/// `q(f, f) != 0`; `q(phi_0 f, phi_0 f) != 0` for the degree-0 block
/// `phi_0`. Errors if the conjugate is not proportional to the adjoint.
pub fn lsc_certificate(
    ext: &MukaiExtension,
    phi: &QMatrix,
    f: &QVector,
) -> Result<LscCertificate, Error> {
    if !is_isometry(ext.pairing(), phi)? {
        return Err(Error::NotIsometry);
    }
    if !check_degree_reversing(ext, ext, phi)? {
        return Err(Error::NotDegreeReversing);
    }
    let base_form = ext.base().form();
    if base_form.norm(f)?.is_zero() {
        return Err(Error::Isotropic("q(f, f) = 0".into()));
    }
    let phi0 = degree_zero_block(ext, phi);
    let phi0_f = phi0.mul_vec(f)?;
    if base_form.norm(&phi0_f)?.is_zero() {
        return Err(Error::Isotropic("q(phi_0 f, phi_0 f) = 0".into()));
    }
    let raised = lefschetz_e(ext, &phi0_f)?;
    let conjugate = phi.inverse()?.mul(&raised.matrix)?.mul(phi)?;
    let lowering = adjoint_f(ext, f)?;

    // Proportionality scalar from the first nonzero entry of f_f.
    let dim = ext.dim();
    let mut scalar = None;
    'search: for r in 0..dim {
        for c in 0..dim {
            if !lowering.matrix.at(r, c).is_zero() {
                scalar = Some(conjugate.at(r, c) / lowering.matrix.at(r, c));
                break 'search;
            }
        }
    }
    let scalar = scalar.expect("adjoint operator of a non-isotropic vector is nonzero");
    if scalar.is_zero() || conjugate != lowering.matrix.scale(&scalar) {
        return Err(Error::ProportionalityFailure);
    }
    Ok(LscCertificate {
        operator: GradedOperator {
            matrix: conjugate,
            degree: -2,
        },
        scalar,
    })
}

/// Even-cohomology vector `(v_0, v_2, v_4)` of an abelian surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiVectorAb {
    pub v0: Rat,
    pub v2: QVector,
    pub v4: Rat,
}

/// The even-cohomology pairing `<v, w> = g2(v_2, w_2) - v_0 w_4 - v_4 w_0`.
pub fn mukai_pairing_ab(
    g2: &BilinearForm,
    v: &MukaiVectorAb,
    w: &MukaiVectorAb,
) -> Result<Rat, Error> {
    let middle = g2.eval(&v.v2, &w.v2)?;
    Ok(middle - &v.v0 * &w.v4 - &v.v4 * &w.v0)
}

/// Rank-`r` root-twisted characteristic class of `(r, c_1, ch_2)`:
/// the truncated product `ch * exp(-c_1 / r) = (r, 0, ch_2 - q(c_1)/2r)`.
/// The degree-1 part vanishes identically.
pub fn kappa_of_chern(
    r: u32,
    c1: &QVector,
    ch2: &Rat,
    g2: &BilinearForm,
) -> Result<MukaiVectorAb, Error> {
    if r == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    let q = g2.norm(c1)?;
    let rr = rat_int(i64::from(r));
    Ok(MukaiVectorAb {
        v0: rr.clone(),
        v2: QVector::zero(c1.dim()),
        v4: ch2 - q / (rat_int(2) * rr),
    })
}

/// A positive-definite 3-space spanned by the period plane and a
/// compatible positive class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistorSpace {
    pub basis3: [QVector; 3],
    pub gram3: QMatrix,
}

/// Span `(x, y, omega)` of the period plane and a positive class
/// orthogonal to it; the 3x3 Gram must be positive definite.
pub fn twistor_space(
    lattice: &BBFLattice,
    sigma: &PeriodPoint,
    omega: &QVector,
) -> Result<TwistorSpace, Error> {
    let form = lattice.form();
    let wx = form.eval(omega, &sigma.x)?;
    let wy = form.eval(omega, &sigma.y)?;
    if !wx.is_zero() || !wy.is_zero() {
        return Err(Error::InvalidParameter(
            "omega is not orthogonal to the period plane".into(),
        ));
    }
    let basis = [sigma.x.clone(), sigma.y.clone(), omega.clone()];
    let gram3 = QMatrix::from_fn(3, 3, |r, c| {
        form.eval(&basis[r], &basis[c]).expect("dims already checked")
    });
    let gram_form = BilinearForm::new(gram3.clone())?;
    if !gram_form.is_positive_definite() {
        return Err(Error::InvalidParameter(
            "twistor Gram is not positive definite".into(),
        ));
    }
    Ok(TwistorSpace {
        basis3: basis,
        gram3,
    })
}

/// A matched pair of twistor 3-spaces related by an isometry, together
/// with the Gram of the graph basis `(v, psi v)` under the product form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalTwistor {
    pub source: TwistorSpace,
    pub image: TwistorSpace,
    pub graph_gram: QMatrix,
}

/// Apply an isometry to a twistor triple. The image space is positive
/// definite with the same Gram automatically; the graph Gram is the sum of
/// both, i.e. twice the source Gram.
pub fn diagonal_twistor(
    lattice: &BBFLattice,
    psi: &QMatrix,
    sigma: &PeriodPoint,
    omega: &QVector,
) -> Result<DiagonalTwistor, Error> {
    let source = twistor_space(lattice, sigma, omega)?;
    let image_sigma = PeriodPoint::new(
        lattice,
        psi.mul_vec(&sigma.x)?,
        psi.mul_vec(&sigma.y)?,
    )?;
    if !is_hodge_isometry(lattice, psi, sigma, &image_sigma)? {
        return Err(Error::NotIsometry);
    }
    let image = twistor_space(lattice, &image_sigma, &psi.mul_vec(omega)?)?;
    let graph_gram = source.gram3.add(&image.gram3)?;
    Ok(DiagonalTwistor {
        source,
        image,
        graph_gram,
    })
}

/// Lattice-level surrogate for carrying a positive cone class to the same
/// connected positive-cone component: `q(psi w, psi w) > 0` and
/// `q(psi w, witness) > 0`. The witness must have positive norm.
pub fn kahler_cone_compatible(
    lattice: &BBFLattice,
    psi: &QMatrix,
    omega: &QVector,
    witness: &QVector,
) -> Result<bool, Error> {
    let form = lattice.form();
    if !form.norm(witness)?.is_positive() {
        return Err(Error::InvalidParameter(
            "witness must have positive norm".into(),
        ));
    }
    if !form.norm(omega)?.is_positive() {
        return Err(Error::InvalidParameter(
            "omega must have positive norm".into(),
        ));
    }
    let image = psi.mul_vec(omega)?;
    Ok(form.norm(&image)?.is_positive() && form.eval(&image, witness)?.is_positive())
}
