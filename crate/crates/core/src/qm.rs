//! Finite quantum states with `C_n` amplitudes.
//!
//! The state space is only a pre-Hilbert space: the scalar product lands in
//! `C_n` and accumulates with the non-associative `+_{2n}`, so the order of
//! summation is part of the definition. Inner products run over the left
//! state's basis, first label first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arithmetic::{cadd, cmul, CnNumber};
use crate::error::Error;
use crate::lattice::{window_enum, LatticePoint, Window};
use crate::number::{parse_or_round, round_to_grid, ExactRational, GridParams, RnNumber};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Name(String),
    /// Position eigenstate `|x⟩` at a lattice point.
    Position(LatticePoint),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Name(s) => f.write_str(s),
            Label::Position(p) => {
                f.write_str("x[")?;
                for (i, c) in p.coords().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QState {
    params: GridParams,
    basis: Vec<Label>,
    amps: Vec<CnNumber>,
}

impl QState {
    /// Singular position labels are rejected.
    pub fn new(params: GridParams, basis: Vec<Label>, amps: Vec<CnNumber>) -> Result<Self, Error> {
        Self::build(params, basis, amps, false)
    }

    /// Like [`QState::new`] but lets amplitudes sit on singular positions.
    pub fn with_singular(params: GridParams, basis: Vec<Label>, amps: Vec<CnNumber>) -> Result<Self, Error> {
        Self::build(params, basis, amps, true)
    }

    fn build(
        params: GridParams,
        basis: Vec<Label>,
        amps: Vec<CnNumber>,
        allow_singular: bool,
    ) -> Result<Self, Error> {
        if basis.len() != amps.len() {
            return Err(Error::ArityMismatch {
                expected: basis.len(),
                got: amps.len(),
            });
        }
        for (i, label) in basis.iter().enumerate() {
            if basis[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            if let Label::Position(p) = label {
                params.ensure_same(&p.params())?;
                if p.is_singular() && !allow_singular {
                    return Err(Error::SingularLabel(label.to_string()));
                }
            }
        }
        for a in &amps {
            params.ensure_same(&a.params())?;
        }
        Ok(Self { params, basis, amps })
    }

    /// A basis state `|label⟩` with unit amplitude.
    pub fn basis_state(params: GridParams, label: Label) -> Result<Self, Error> {
        Self::new(params, vec![label], vec![CnNumber::one(params)])
    }

    pub fn params(&self) -> GridParams {
        self.params
    }

    pub fn basis(&self) -> &[Label] {
        &self.basis
    }

    pub fn amps(&self) -> &[CnNumber] {
        &self.amps
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &CnNumber)> {
        self.basis.iter().zip(&self.amps)
    }

    /// `⟨label|ψ⟩`, zero for labels outside the basis.
    pub fn amplitude(&self, label: &Label) -> CnNumber {
        self.iter()
            .find(|(l, _)| *l == label)
            .map(|(_, a)| a.clone())
            .unwrap_or_else(|| CnNumber::zero(self.params))
    }
}

/// `(ψ, φ) = Σ conj(ψ_a) ×_{2n} φ_a`, summed with `+_{2n}` in ψ's basis order.
pub fn inner(psi: &QState, phi: &QState) -> Result<CnNumber, Error> {
    psi.params.ensure_same(&phi.params)?;
    let mut acc = CnNumber::zero(psi.params);
    for (label, a) in psi.iter() {
        if let Some((_, b)) = phi.iter().find(|(l, _)| *l == label) {
            let term = cmul(&a.conj(), b)?;
            acc = cadd(&acc, &term)?;
        }
    }
    Ok(acc)
}

/// Exact inner product of the stored amplitudes, no rounding anywhere.
pub fn inner_exact(psi: &QState, phi: &QState) -> Result<(ExactRational, ExactRational), Error> {
    psi.params.ensure_same(&phi.params)?;
    let mut re = ExactRational::zero();
    let mut im = ExactRational::zero();
    for (label, a) in psi.iter() {
        if let Some((_, b)) = phi.iter().find(|(l, _)| *l == label) {
            let (ar, ai) = a.value();
            let (br, bi) = b.value();
            // conj(a) · b
            re = re + (&ar * &br + &ai * &bi);
            im = im + (&ar * &bi - &ai * &br);
        }
    }
    Ok((re, im))
}

/// Normalization diagnostics for one state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormReport {
    /// `Re (ψ, ψ)` in grid arithmetic.
    pub norm2: RnNumber,
    /// `Σ |c|²` of the stored amplitudes, exact.
    pub exact_norm2: ExactRational,
    /// `Σ |c|²_n`: each squared modulus rounded once, then summed exactly.
    pub rounded_square_sum: ExactRational,
    /// `rounded_square_sum − 1`.
    pub residual: ExactRational,
    /// `exact_norm2 − 1`.
    pub exact_residual: ExactRational,
}

pub fn norm_check(psi: &QState) -> Result<NormReport, Error> {
    let norm2 = inner(psi, psi)?.re().clone();
    let exact_norm2: ExactRational = psi.amps.iter().map(CnNumber::norm_sqr_exact).sum();
    let rounded_square_sum: ExactRational = psi
        .amps
        .iter()
        .map(|a| round_to_grid(&a.norm_sqr_exact(), psi.params).value())
        .sum();
    let one = ExactRational::one();
    Ok(NormReport {
        norm2,
        residual: &rounded_square_sum - &one,
        exact_residual: &exact_norm2 - &one,
        exact_norm2,
        rounded_square_sum,
    })
}

/// `δ^{2n}_{a,b}`: one when the labels are identical, zero otherwise.
pub fn delta_2n(a: &Label, b: &Label, params: GridParams) -> CnNumber {
    if a == b {
        CnNumber::one(params)
    } else {
        CnNumber::zero(params)
    }
}

/// Coefficients `⟨x|ψ⟩` for every nonsingular position `x` of a finite
/// window, in window order. Positions are `d`-dimensional where `d` is taken
/// from ψ's first position label (1 when it has none). Singular positions are
/// skipped whatever the window says.
pub fn position_expand(psi: &QState, window: &Window) -> Result<Vec<(Label, CnNumber)>, Error> {
    let d = psi
        .basis
        .iter()
        .find_map(|l| match l {
            Label::Position(p) => Some(p.dims()),
            Label::Name(_) => None,
        })
        .unwrap_or(1);
    let window = window.with_singular(false);
    let points = window_enum(psi.params, d, &window)?;
    Ok(points
        .into_iter()
        .map(|p| {
            let label = Label::Position(p);
            let c = psi.amplitude(&label);
            (label, c)
        })
        .collect())
}

/// Rebuilds a state from expansion coefficients, keeping nonzero terms.
pub fn reconstruct(params: GridParams, expansion: &[(Label, CnNumber)]) -> Result<QState, Error> {
    let (basis, amps) = expansion
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .cloned()
        .unzip();
    QState::new(params, basis, amps)
}

/// JSON form of a state: `{params, basis, amps}`.
///
/// `params` uses the `k=..,n=..,grid=..,round=..` text form. A basis entry is
/// a name or an array of coordinate literals. An amplitude is a single real
/// component or a `[re, im]` pair; each component is a grid literal or an
/// exact value (`p/q`, integer or decimal) that gets rounded onto the grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub params: String,
    pub basis: Vec<LabelSpec>,
    pub amps: Vec<AmpSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelSpec {
    Name(String),
    Position(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmpSpec {
    Real(String),
    Complex([String; 2]),
}

impl StateFile {
    pub fn to_state(&self) -> Result<QState, Error> {
        let params: GridParams = self.params.parse()?;
        let basis = self
            .basis
            .iter()
            .map(|l| match l {
                LabelSpec::Name(s) => Ok(Label::Name(s.clone())),
                LabelSpec::Position(coords) => {
                    let coords = coords
                        .iter()
                        .map(|c| RnNumber::parse(c, params))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(Label::Position(LatticePoint::new(coords)?))
                }
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let amps = self
            .amps
            .iter()
            .map(|a| match a {
                AmpSpec::Real(r) => Ok(CnNumber::real(parse_or_round(r, params)?)),
                AmpSpec::Complex([r, i]) => {
                    CnNumber::new(parse_or_round(r, params)?, parse_or_round(i, params)?)
                }
            })
            .collect::<Result<Vec<_>, Error>>()?;
        QState::new(params, basis, amps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SignSelection;
    use crate::number::{GridMode, RoundMode};

    fn p22() -> GridParams {
        GridParams::symmetric(2, 2).unwrap()
    }

    fn name(s: &str) -> Label {
        Label::Name(s.into())
    }

    fn pos(lit: &str) -> Label {
        Label::Position(LatticePoint::new(vec![RnNumber::parse(lit, p22()).unwrap()]).unwrap())
    }

    #[test]
    fn basis_states_are_orthonormal() {
        let p = p22();
        let a = QState::basis_state(p, name("a")).unwrap();
        let b = QState::basis_state(p, name("b")).unwrap();
        assert_eq!(inner(&a, &a).unwrap(), CnNumber::one(p));
        assert_eq!(inner(&a, &b).unwrap(), CnNumber::zero(p));
        for (x, y) in [("a", "a"), ("a", "b"), ("b", "a")] {
            let sx = QState::basis_state(p, name(x)).unwrap();
            let sy = QState::basis_state(p, name(y)).unwrap();
            assert_eq!(inner(&sx, &sy).unwrap(), delta_2n(&name(x), &name(y), p));
        }
    }

    #[test]
    fn construction_errors() {
        let p = p22();
        assert_eq!(
            QState::new(p, vec![name("a"), name("a")], vec![CnNumber::one(p), CnNumber::one(p)]),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert!(matches!(
            QState::new(p, vec![name("a")], vec![]),
            Err(Error::ArityMismatch { .. })
        ));
        let origin = Label::Position(LatticePoint::origin(p, 1));
        assert!(matches!(
            QState::basis_state(p, origin.clone()),
            Err(Error::SingularLabel(_))
        ));
        assert!(QState::with_singular(p, vec![origin], vec![CnNumber::one(p)]).is_ok());
    }

    #[test]
    fn single_amplitude_is_normalized() {
        let s = QState::basis_state(p22(), name("a")).unwrap();
        let r = norm_check(&s).unwrap();
        assert!(r.residual.is_zero());
        assert!(r.exact_residual.is_zero());
        assert_eq!(r.norm2, RnNumber::one(p22()));
    }

    #[test]
    fn three_equal_amplitudes_overshoot() {
        let p = GridParams::new(10, 2, GridMode::FreeExponent, RoundMode::RoundHalfUp).unwrap();
        let a = CnNumber::real(RnNumber::parse("57.74e-2", p).unwrap());
        let s = QState::new(p, vec![name("alpha"), name("beta"), name("gamma")], vec![a.clone(), a.clone(), a])
            .unwrap();
        let r = norm_check(&s).unwrap();
        assert_eq!(r.rounded_square_sum, ExactRational::new(10002, 10000).unwrap());
        assert_eq!(r.residual, ExactRational::new(2, 10000).unwrap());
        assert_eq!(r.exact_norm2, "1.00017228".parse().unwrap());
        // the grid sum rounds the overshoot away again
        assert_eq!(r.norm2.value(), ExactRational::one());
    }

    #[test]
    fn self_inner_product_is_real() {
        let p = p22();
        let amps = vec![
            CnNumber::new(RnNumber::parse("01.01e0", p).unwrap(), RnNumber::parse("-00.11e0", p).unwrap()).unwrap(),
            CnNumber::new(RnNumber::parse("-10.01e-1", p).unwrap(), RnNumber::parse("11.11e0", p).unwrap()).unwrap(),
        ];
        let s = QState::new(p, vec![name("a"), name("b")], amps).unwrap();
        assert!(inner(&s, &s).unwrap().im().is_zero());
    }

    #[test]
    fn expansion_of_a_position_state() {
        let p = p22();
        let x = pos("01.10e0");
        let s = QState::basis_state(p, x.clone()).unwrap();
        let exp = position_expand(&s, &Window::new(-1, 1, SignSelection::Both)).unwrap();
        assert_eq!(exp.len(), 2 * 3 * 15);
        let nonzero: Vec<_> = exp.iter().filter(|(_, c)| !c.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].0, x);
        assert_eq!(nonzero[0].1, CnNumber::one(p));
        assert!(exp.iter().all(|(l, _)| match l {
            Label::Position(pt) => !pt.is_singular(),
            Label::Name(_) => false,
        }));
        let outside = position_expand(&s, &Window::new(2, 3, SignSelection::Both)).unwrap();
        assert!(outside.iter().all(|(_, c)| c.is_zero()));
        assert_eq!(reconstruct(p, &exp).unwrap(), s);
    }

    #[test]
    fn state_file_parsing() {
        let json = r#"{"params":"k=10,n=2,grid=free,round=half-up",
            "basis":["alpha","beta"],
            "amps":["57.74e-2",["0.5774","-1/3"]]}"#;
        let f: StateFile = serde_json::from_str(json).unwrap();
        let s = f.to_state().unwrap();
        assert_eq!(s.amps()[0], s.amps()[0].clone());
        assert_eq!(s.amps()[1].re(), s.amps()[0].re());
        assert_eq!(s.amps()[1].im().value(), "-0.3333".parse().unwrap());
        let pos_json = r#"{"params":"k=2,n=2","basis":[["01.10e0"]],"amps":["01.00e0"]}"#;
        let f: StateFile = serde_json::from_str(pos_json).unwrap();
        assert_eq!(f.to_state().unwrap().basis()[0], pos("01.10e0"));
    }
}
