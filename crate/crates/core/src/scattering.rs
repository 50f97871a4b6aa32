//! Transfer matrices of the three-region system, inverse-LEED boundary
//! conditions, and evaluation of the basis wave function at any point for
//! any (possibly complex) energy.
//!
//! Region 1 is 0 < x < d (hard wall on the left), region 2 is d < x < 2d,
//! region 3 is x > 2d (vacuum). Amplitudes in region j are referenced to the
//! offsets x_j ∈ {0, d, 2d}:
//!
//!   ψ_j(E, x) = A_j e^{i k_j (x − x_j)} + B_j e^{−i k_j (x − x_j)}
//!
//! with k_1 = k_2 = √(2(E + χ)) and k_3 = √(2E) (principal branch).

use crate::error::{Error, Result};
use crate::model::EmitterConfig;
use crate::scalar::{cplx, imag_unit, Cplx, Real};

/// 2×2 complex matrix relating partial amplitudes between reference points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2c<T> {
    pub m11: Cplx<T>,
    pub m12: Cplx<T>,
    pub m21: Cplx<T>,
    pub m22: Cplx<T>,
}

impl<T: Real> Matrix2c<T> {
    pub fn identity() -> Self {
        Self {
            m11: cplx(T::one()),
            m12: Cplx::new(T::zero(), T::zero()),
            m21: Cplx::new(T::zero(), T::zero()),
            m22: cplx(T::one()),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }

    pub fn det(&self) -> Cplx<T> {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, v: (Cplx<T>, Cplx<T>)) -> (Cplx<T>, Cplx<T>) {
        (
            self.m11 * v.0 + self.m12 * v.1,
            self.m21 * v.0 + self.m22 * v.1,
        )
    }
}

/// Which region-3 amplitudes enter the wave function when it is contracted
/// into fields: both, only the outgoing wave (B3 := 0), or only the incoming
/// wave (A3 := 0). Regions 1 and 2 are unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContributionSelector {
    Full,
    OutgoingOnly,
    IncomingOnly,
}

impl ContributionSelector {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Full => "full",
            Self::OutgoingOnly => "outgoing",
            Self::IncomingOnly => "incoming",
        }
    }
}

/// Interior wave number k₁ = k₂ = √(2(E + χ)), principal branch.
pub fn wave_number_interior<T: Real>(energy: Cplx<T>, config: &EmitterConfig<T>) -> Cplx<T> {
    ((energy + cplx(config.chi())) * cplx(T::two())).sqrt()
}

/// Exterior wave number k₃ = √(2E), principal branch.
pub fn wave_number_exterior<T: Real>(energy: Cplx<T>) -> Cplx<T> {
    (energy * cplx(T::two())).sqrt()
}

/// Transfer matrix across one delta barrier of power `omega`, in a common-k
/// local basis referenced at the barrier position: ψ continuous, ψ′ jumps by
/// Ω ψ.
pub fn delta_matrix<T: Real>(k: Cplx<T>, omega: T) -> Result<Matrix2c<T>> {
    if k.norm() == T::zero() {
        return Err(Error::SingularEnergy {
            reason: "delta matrix needs k != 0".into(),
        });
    }
    // g = Ω / (2ik)
    let g = cplx(omega) / (imag_unit::<T>() * k * cplx(T::two()));
    let one = cplx(T::one());
    Ok(Matrix2c {
        m11: one + g,
        m12: g,
        m21: -g,
        m22: one - g,
    })
}

/// Phase evolution over `length` within one region: diag(e^{ikL}, e^{−ikL})
/// re-references amplitudes from x_j to x_j + L.
pub fn propagation_matrix<T: Real>(k: Cplx<T>, length: T) -> Matrix2c<T> {
    let phase = imag_unit::<T>() * k * cplx(length);
    Matrix2c {
        m11: phase.exp(),
        m12: Cplx::new(T::zero(), T::zero()),
        m21: Cplx::new(T::zero(), T::zero()),
        m22: (-phase).exp(),
    }
}

/// Basis change at a potential step from wave number `k_left` to `k_right`
/// at a common reference point: continuity of ψ and ψ′.
pub fn interface_matrix<T: Real>(k_left: Cplx<T>, k_right: Cplx<T>) -> Result<Matrix2c<T>> {
    if k_right.norm() == T::zero() {
        return Err(Error::SingularEnergy {
            reason: "interface matrix needs k_right != 0".into(),
        });
    }
    let r = k_left / k_right;
    let one = cplx(T::one());
    let half = cplx(T::half());
    let a = (one + r) * half;
    let b = (one - r) * half;
    Ok(Matrix2c {
        m11: a,
        m12: b,
        m21: b,
        m22: a,
    })
}

/// Total transfer matrix mapping (A₁, B₁) to (A₃, B₃):
/// interface(k₁→k₃) · M_Ω · M(d) · M_Ω · M(d), with both delta factors in the
/// interior basis and the step applied at x₃ where barrier and step coincide.
pub fn total_transfer<T: Real>(
    energy: Cplx<T>,
    config: &EmitterConfig<T>,
) -> Result<Matrix2c<T>> {
    let k1 = wave_number_interior(energy, config);
    let k3 = wave_number_exterior(energy);
    if k1.norm() == T::zero() || k3.norm() == T::zero() {
        return Err(Error::SingularEnergy {
            reason: format!(
                "energy {:?} a.u. makes a wave number vanish (E = 0 or E = -chi)",
                energy
            ),
        });
    }
    let prop = propagation_matrix(k1, config.d());
    let barrier = delta_matrix(k1, config.omega())?;
    let step = interface_matrix(k1, k3)?;
    Ok(step
        .mul(&barrier)
        .mul(&prop)
        .mul(&barrier)
        .mul(&prop))
}

/// Resonance denominator m₁₁ − m₁₂ of the total transfer matrix. Its complex
/// zeros are the quasi-stationary poles of all partial amplitudes except A₃.
pub fn resonance_denominator<T: Real>(
    energy: Cplx<T>,
    config: &EmitterConfig<T>,
) -> Result<Cplx<T>> {
    let m = total_transfer(energy, config)?;
    Ok(m.m11 - m.m12)
}

/// Per-energy inverse-LEED coefficients and wave numbers.
///
/// A₃ is fixed by delta-of-energy normalization, B₁ = −A₁ by the hard wall,
/// and everything else follows from the transfer matrices.
#[derive(Debug, Clone, Copy)]
pub struct PartialAmplitudes<T> {
    pub a1: Cplx<T>,
    pub b1: Cplx<T>,
    pub a2: Cplx<T>,
    pub b2: Cplx<T>,
    pub a3: Cplx<T>,
    pub b3: Cplx<T>,
    pub k_in: Cplx<T>,
    pub k_out: Cplx<T>,
    pub energy: Cplx<T>,
}

/// Solves the inverse-LEED boundary problem at `energy`.
///
/// Complex energies near poles are allowed; only an exact pole (|m_r| below
/// 1e-300) is an error.
pub fn amplitudes<T: Real>(
    energy: Cplx<T>,
    config: &EmitterConfig<T>,
) -> Result<PartialAmplitudes<T>> {
    let m = total_transfer(energy, config)?;
    let m_r = m.m11 - m.m12;
    if m_r.norm() < T::lit(1e-300) {
        return Err(Error::PoleEvaluation {
            energy_re: energy.re.to_f64().unwrap_or(f64::NAN),
            energy_im: energy.im.to_f64().unwrap_or(f64::NAN),
            m_r_abs: m_r.norm().to_f64().unwrap_or(0.0),
        });
    }
    let k1 = wave_number_interior(energy, config);
    let k3 = wave_number_exterior(energy);
    // A₃ = √(1/(2π k₃)) normalizes ψ to the delta function of energy.
    let a3 = (cplx(T::one()) / (k3 * cplx(T::TAU()))).sqrt();
    let a1 = a3 / m_r;
    let b1 = -a1;
    let b3 = (m.m21 - m.m22) * a1;
    let inner = delta_matrix(k1, config.omega())?.mul(&propagation_matrix(k1, config.d()));
    let (a2, b2) = inner.apply((a1, b1));
    Ok(PartialAmplitudes {
        a1,
        b1,
        a2,
        b2,
        a3,
        b3,
        k_in: k1,
        k_out: k3,
        energy,
    })
}

/// Wave function value and spatial derivative.
#[derive(Debug, Clone, Copy)]
pub struct WaveValue<T> {
    pub value: Cplx<T>,
    pub derivative: Cplx<T>,
}

impl<T: Real> PartialAmplitudes<T> {
    /// Region index (1-based) for a position; boundary points belong to the
    /// region on their right so that the selector acts at x = 2d.
    fn region(&self, x: T, config: &EmitterConfig<T>) -> usize {
        if x < config.x2() {
            1
        } else if x < config.x3() {
            2
        } else {
            3
        }
    }

    /// Evaluates ψ and dψ/dx with the amplitudes of a specific region's
    /// formula, regardless of where x lies. Used for the matching tests.
    pub fn evaluate_region(
        &self,
        region: usize,
        x: T,
        config: &EmitterConfig<T>,
        selector: ContributionSelector,
    ) -> WaveValue<T> {
        let (mut a, mut b, k, x_ref) = match region {
            1 => (self.a1, self.b1, self.k_in, config.x1()),
            2 => (self.a2, self.b2, self.k_in, config.x2()),
            _ => (self.a3, self.b3, self.k_out, config.x3()),
        };
        if region == 3 {
            match selector {
                ContributionSelector::Full => {}
                ContributionSelector::OutgoingOnly => b = Cplx::new(T::zero(), T::zero()),
                ContributionSelector::IncomingOnly => a = Cplx::new(T::zero(), T::zero()),
            }
        }
        let phase = imag_unit::<T>() * k * cplx(x - x_ref);
        let ep = phase.exp();
        let em = (-phase).exp();
        let ik = imag_unit::<T>() * k;
        WaveValue {
            value: a * ep + b * em,
            derivative: ik * (a * ep - b * em),
        }
    }

    /// ψ and dψ/dx at `x ≥ 0` using the region-appropriate amplitudes.
    pub fn wave(
        &self,
        x: T,
        config: &EmitterConfig<T>,
        selector: ContributionSelector,
    ) -> Result<WaveValue<T>> {
        if x < T::zero() {
            return Err(Error::Domain(format!("x must be >= 0, got {x}")));
        }
        Ok(self.evaluate_region(self.region(x, config), x, config, selector))
    }
}

/// ψ and dψ/dx at position `x` for energy `energy`.
pub fn psi<T: Real>(
    energy: Cplx<T>,
    x: T,
    config: &EmitterConfig<T>,
    selector: ContributionSelector,
) -> Result<WaveValue<T>> {
    amplitudes(energy, config)?.wave(x, config, selector)
}
