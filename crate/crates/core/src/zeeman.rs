//! Anomalous Zeeman splitting of fine-structure levels in a weak field.
//!
//! A level with quantum numbers (l, s, j) carries the Landé factor
//!
//! ```text
//! g_j = 1 + (g_s - 1) * [j(j+1) - l(l+1) + s(s+1)] / (2 j(j+1))
//! ```
//!
//! and each magnetic sublevel m_j shifts in first order by
//! `E = mu_B * B * m_j * g_j`. Electric-dipole lines between two split
//! levels obey `|delta l| = 1`, `|delta j| <= 1` (no 0 to 0) and
//! `|delta m_j| <= 1`; their wavenumber offsets are
//! `(m'g' - mg) * mu_B * B / (K c)` where the divisor K is a Planck
//! constant choice, see [`PlanckConvention`].
//!
//! Quantum numbers live in [`HalfInt`], which stores twice the value as an
//! integer, so products like j(j+1) are exact and sublevel bookkeeping
//! never meets floating-point halves.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// Bohr magneton, J/T.
pub const BOHR_MAGNETON: f64 = 9.274_009_15e-24;
/// Electron spin g-factor.
pub const ELECTRON_G_FACTOR: f64 = 2.002_319_2;
/// Orbital g-factor.
pub const ORBITAL_G_FACTOR: f64 = 1.0;
/// Reduced Planck constant, J s.
pub const REDUCED_PLANCK: f64 = 1.054_571_726e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

// ---------------------------------------------------------------------------
// Half-integers
// ---------------------------------------------------------------------------

/// An exact half-integer: the wrapped value is twice the represented one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    /// The integer `n`.
    pub const fn whole(n: i32) -> Self {
        HalfInt(2 * n)
    }

    /// `twice / 2`, so `halves(3)` is 3/2.
    pub const fn halves(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// x(x+1), exact: (t/2)(t/2 + 1) = t(t+2)/4 on the doubled value.
    pub fn times_successor(self) -> f64 {
        f64::from(self.0) * f64::from(self.0 + 2) / 4.0
    }

    /// -x, -x+1, ..., x-1, x in unit steps; empty when x < 0.
    pub fn symmetric_range(self) -> impl Iterator<Item = HalfInt> {
        (-self.0..=self.0).step_by(2).map(HalfInt)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

// ---------------------------------------------------------------------------
// Levels and sublevels
// ---------------------------------------------------------------------------

/// Landé factor of an (l, s, j) level. j = 0 leaves the formula
/// indeterminate and is rejected; a j = 0 level does not split anyway.
pub fn lande_g(l: HalfInt, s: HalfInt, j: HalfInt) -> Result<f64> {
    let jj = j.times_successor();
    if jj == 0.0 {
        return Err(Error::Physics("Landé factor is undefined for j = 0".into()));
    }
    Ok(ORBITAL_G_FACTOR
        + (ELECTRON_G_FACTOR - ORBITAL_G_FACTOR)
            * (jj - l.times_successor() + s.times_successor())
            / (2.0 * jj))
}

/// A fine-structure level `n l_j` with spin s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomicLevel {
    n: u32,
    l: HalfInt,
    s: HalfInt,
    j: HalfInt,
}

impl AtomicLevel {
    pub fn new(n: u32, l: HalfInt, s: HalfInt, j: HalfInt) -> Result<Self> {
        let bad = |text: String| Error::Physics(format!("invalid atomic level: {text}"));
        if n == 0 {
            return Err(bad("principal number n must be >= 1".into()));
        }
        if !l.is_integer() || l < HalfInt::ZERO {
            return Err(bad(format!("orbital number l = {l} must be a whole number >= 0")));
        }
        if l.twice() as i64 >= 2 * i64::from(n) {
            return Err(bad(format!("orbital number l = {l} must be below n = {n}")));
        }
        if s < HalfInt::ZERO {
            return Err(bad(format!("spin s = {s} must be >= 0")));
        }
        let lo = if l >= s { l - s } else { s - l };
        if j < lo || j > l + s {
            return Err(bad(format!(
                "j = {j} outside the coupling range |l-s| = {lo} ..= l+s = {}",
                l + s
            )));
        }
        // l + s and j differ by a whole number in any coupling
        if !(j + l + s).is_integer() {
            return Err(bad(format!("j = {j} incompatible with l = {l}, s = {s}")));
        }
        Ok(AtomicLevel { n, l, s, j })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> HalfInt {
        self.l
    }

    pub fn s(&self) -> HalfInt {
        self.s
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn lande_g(&self) -> Result<f64> {
        lande_g(self.l, self.s, self.j)
    }

    /// The Landé factor, or 0 for a j = 0 level whose single m_j = 0
    /// sublevel never shifts.
    fn g_or_zero(&self) -> f64 {
        self.lande_g().unwrap_or(0.0)
    }

    /// Spectroscopic name such as `3p3/2`.
    pub fn label(&self) -> String {
        let l_index = (self.l.twice() / 2) as usize;
        let letter = b"spdfghik".get(l_index).map(|b| *b as char);
        match letter {
            Some(ch) => format!("{}{}{}", self.n, ch, self.j),
            None => format!("{}(l={}){}", self.n, self.l, self.j),
        }
    }
}

impl fmt::Display for AtomicLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One magnetic sublevel: a level plus its m_j projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeemanState {
    pub level: AtomicLevel,
    pub m_j: HalfInt,
}

impl ZeemanState {
    pub fn new(level: AtomicLevel, m_j: HalfInt) -> Result<Self> {
        let j = level.j;
        if m_j < -j || m_j > j || !(j - m_j).is_integer() {
            return Err(Error::Physics(format!(
                "m_j = {m_j} is not one of the 2j+1 projections of j = {j}"
            )));
        }
        Ok(ZeemanState { level, m_j })
    }
}

impl fmt::Display for ZeemanState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(m={})", self.level, self.m_j)
    }
}

/// First-order energy displacement of one sublevel, in joules.
pub fn zeeman_energy_shift(state: &ZeemanState, field: f64) -> f64 {
    if state.m_j == HalfInt::ZERO {
        return 0.0;
    }
    BOHR_MAGNETON * field * state.m_j.value() * state.level.g_or_zero()
}

/// The 2j+1 sublevels of `level` in a field of `field` tesla, ascending
/// in m_j, each with its energy displacement in joules.
pub fn split_level(level: &AtomicLevel, field: f64) -> Vec<(HalfInt, f64)> {
    let g = level.g_or_zero();
    level
        .j
        .symmetric_range()
        .map(|m_j| (m_j, BOHR_MAGNETON * field * m_j.value() * g))
        .collect()
}

// ---------------------------------------------------------------------------
// Transitions
// ---------------------------------------------------------------------------

/// Divisor pairing the energy quantum with the wavenumber observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlanckConvention {
    /// Divide by hbar c: angular wavenumbers.
    #[default]
    Reduced,
    /// Divide by h c: wavenumbers of the emitted photon.
    Photon,
}

impl PlanckConvention {
    pub fn constant(self) -> f64 {
        match self {
            PlanckConvention::Reduced => REDUCED_PLANCK,
            PlanckConvention::Photon => std::f64::consts::TAU * REDUCED_PLANCK,
        }
    }
}

/// Electric-dipole rules between whole levels: `|delta l| = 1` and
/// `|delta j| <= 1` with j = 0 to j = 0 excluded.
pub fn levels_dipole_allowed(lower: &AtomicLevel, upper: &AtomicLevel) -> bool {
    let dl = (upper.l - lower.l).twice().abs();
    let dj = (upper.j - lower.j).twice().abs();
    dl == 2 && dj <= 2 && !(upper.j == HalfInt::ZERO && lower.j == HalfInt::ZERO)
}

/// Full dipole verdict for a sublevel pair: the level rules plus
/// `|delta m_j| <= 1`.
pub fn transition_allowed(from: &ZeemanState, to: &ZeemanState) -> bool {
    levels_dipole_allowed(&from.level, &to.level) && (to.m_j - from.m_j).twice().abs() <= 2
}

/// One Zeeman component of a line. Suppressed combinations (those failing
/// a selection rule) are kept with `observable` false so reports can show
/// the full grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub lower: ZeemanState,
    pub upper: ZeemanState,
    /// `(m'g' - mg) mu_B B / (K c)`, 1/m.
    pub wavenumber_shift: f64,
    pub observable: bool,
}

/// A split line: every (upper m', lower m) combination of two levels.
#[derive(Debug, Clone)]
pub struct Multiplet {
    pub lower: AtomicLevel,
    pub upper: AtomicLevel,
    /// Unperturbed wavelength, m.
    pub base_wavelength: f64,
    /// Field strength, T.
    pub field: f64,
    pub convention: PlanckConvention,
    pub lines: Vec<SpectralLine>,
}

impl Multiplet {
    pub fn observable_lines(&self) -> impl Iterator<Item = &SpectralLine> {
        self.lines.iter().filter(|line| line.observable)
    }

    /// Wavelength of one component: the unperturbed wavenumber plus the
    /// component's shift, inverted back.
    pub fn shifted_wavelength(&self, line: &SpectralLine) -> f64 {
        1.0 / (1.0 / self.base_wavelength + line.wavenumber_shift)
    }
}

/// Splits the `upper -> lower` line in a field of `field` tesla into all
/// (2j+1)(2j'+1) candidate components. `base_wavelength` is the
/// zero-field wavelength in meters. Components failing a selection rule
/// are flagged, not dropped.
pub fn zeeman_multiplet(
    lower: &AtomicLevel,
    upper: &AtomicLevel,
    base_wavelength: f64,
    field: f64,
    convention: PlanckConvention,
) -> Result<Multiplet> {
    if base_wavelength.is_nan() || base_wavelength <= 0.0 {
        return Err(Error::Physics(format!(
            "base wavelength must be positive, got {base_wavelength}"
        )));
    }
    if field.is_nan() || field < 0.0 {
        return Err(Error::Physics(format!("field strength must be >= 0, got {field}")));
    }
    let scale = BOHR_MAGNETON * field / (convention.constant() * SPEED_OF_LIGHT);
    let g_lower = lower.g_or_zero();
    let g_upper = upper.g_or_zero();
    let mut lines = Vec::new();
    for m_up in upper.j.symmetric_range() {
        for m_low in lower.j.symmetric_range() {
            let up = ZeemanState { level: *upper, m_j: m_up };
            let low = ZeemanState { level: *lower, m_j: m_low };
            let delta_mg = m_up.value() * g_upper - m_low.value() * g_lower;
            lines.push(SpectralLine {
                lower: low,
                upper: up,
                wavenumber_shift: delta_mg * scale,
                observable: transition_allowed(&low, &up),
            });
        }
    }
    Ok(Multiplet {
        lower: *lower,
        upper: *upper,
        base_wavelength,
        field,
        convention,
        lines,
    })
}

/// The sodium doublet split in a field of `field` tesla: D1
/// (3p1/2 to 3s1/2, 589.59 nm) and D2 (3p3/2 to 3s1/2, 589.00 nm).
pub fn sodium_doublet(field: f64, convention: PlanckConvention) -> Result<[Multiplet; 2]> {
    let half = HalfInt::halves(1);
    let ground = AtomicLevel::new(3, HalfInt::whole(0), half, half)?;
    let p_half = AtomicLevel::new(3, HalfInt::whole(1), half, half)?;
    let p_three_half = AtomicLevel::new(3, HalfInt::whole(1), half, HalfInt::halves(3))?;
    let d1 = zeeman_multiplet(&ground, &p_half, 589.59e-9, field, convention)?;
    let d2 = zeeman_multiplet(&ground, &p_three_half, 589.00e-9, field, convention)?;
    Ok([d1, d2])
}
