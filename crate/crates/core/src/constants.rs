use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::poly::{int, parse_rational, rational_to_f64, Rational};

/// Physical constants that enter structure constants and cocycles. They are
/// exact rationals folded into coefficients, never chart variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constants {
    pub m: Rational,
    pub q: Rational,
    pub g: Rational,
    pub kappa: Rational,
    pub hbar: Rational,
    pub c: Rational,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("unknown constant {0:?} (expected m, q, g, kappa, hbar or c)")]
    Unknown(String),
    #[error("{name} must be nonzero")]
    Zero { name: &'static str },
    #[error(transparent)]
    Parse(#[from] crate::poly::RationalParseError),
}

impl Default for Constants {
    /// `m = q = 1`, `g = m c`, `kappa = 0`, `hbar = c = 1`.
    fn default() -> Self {
        Constants {
            m: int(1),
            q: int(1),
            g: int(1),
            kappa: int(0),
            hbar: int(1),
            c: int(1),
        }
    }
}

impl Constants {
    pub fn set(&mut self, name: &str, value: Rational) -> Result<(), ConstantsError> {
        let slot = match name {
            "m" => &mut self.m,
            "q" => &mut self.q,
            "g" => &mut self.g,
            "kappa" | "κ" => &mut self.kappa,
            "hbar" | "ħ" => &mut self.hbar,
            "c" => &mut self.c,
            _ => return Err(ConstantsError::Unknown(name.to_string())),
        };
        *slot = value;
        Ok(())
    }

    pub fn set_str(&mut self, name: &str, value: &str) -> Result<(), ConstantsError> {
        self.set(name, parse_rational(value)?)
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.set(name, value).expect("known constant name");
        self
    }

    /// Sets `g = m c`.
    pub fn with_g_mc(mut self) -> Self {
        self.g = &self.m * &self.c;
        self
    }

    pub fn g_is_mc(&self) -> bool {
        self.g == &self.m * &self.c
    }

    /// `hbar` and `c` divide coefficients and must not vanish.
    pub fn validate(&self) -> Result<(), ConstantsError> {
        if self.hbar.is_zero() {
            return Err(ConstantsError::Zero { name: "hbar" });
        }
        if self.c.is_zero() {
            return Err(ConstantsError::Zero { name: "c" });
        }
        Ok(())
    }

    pub fn to_f64(&self) -> NumericConstants {
        NumericConstants {
            m: rational_to_f64(&self.m),
            q: rational_to_f64(&self.q),
            g: rational_to_f64(&self.g),
            kappa: rational_to_f64(&self.kappa),
            hbar: rational_to_f64(&self.hbar),
            c: rational_to_f64(&self.c),
        }
    }
}

impl fmt::Display for Constants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} q={} g={} kappa={} hbar={} c={}",
            self.m, self.q, self.g, self.kappa, self.hbar, self.c
        )
    }
}

/// Double-precision copy of [`Constants`] for the numeric integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConstants {
    pub m: f64,
    pub q: f64,
    pub g: f64,
    pub kappa: f64,
    pub hbar: f64,
    pub c: f64,
}

impl Default for NumericConstants {
    fn default() -> Self {
        Constants::default().to_f64()
    }
}
