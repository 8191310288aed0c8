//! Real numbers of the form `mantissa · π^power`.
//!
//! Norms of the triangular waves, kernels and extremal functions are
//! rational multiples of a power of π, so they are kept in this form and
//! only converted to floating point at the API boundary.

use std::f64::consts::PI;
use std::fmt;

use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::poly::rational_to_f64;

#[derive(Clone, Debug, PartialEq)]
pub enum Mantissa {
    Exact(BigRational),
    /// Used when a value depends on an irrational root location.
    Approx(f64),
}

impl Mantissa {
    pub fn to_f64(&self) -> f64 {
        match self {
            Mantissa::Exact(r) => rational_to_f64(r),
            Mantissa::Approx(v) => *v,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiScaled {
    pub mantissa: Mantissa,
    pub pi_power: i32,
}

impl PiScaled {
    pub fn exact(mantissa: BigRational, pi_power: i32) -> Self {
        Self { mantissa: Mantissa::Exact(mantissa), pi_power }
    }

    pub fn approx(mantissa: f64, pi_power: i32) -> Self {
        Self { mantissa: Mantissa::Approx(mantissa), pi_power }
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa.to_f64() * PI.powi(self.pi_power)
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match &self.mantissa {
            Mantissa::Exact(r) => Some(r),
            Mantissa::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.as_exact().is_some()
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mantissa {
            Mantissa::Exact(r) => write!(f, "({r})·π^{}", self.pi_power),
            Mantissa::Approx(v) => write!(f, "{v:e}·π^{}", self.pi_power),
        }
    }
}

impl Serialize for PiScaled {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PiScaled", 4)?;
        match &self.mantissa {
            Mantissa::Exact(r) => st.serialize_field("mantissa", &r.to_string())?,
            Mantissa::Approx(v) => st.serialize_field("mantissa", v)?,
        }
        st.serialize_field("pi_power", &self.pi_power)?;
        st.serialize_field("exact", &self.is_exact())?;
        st.serialize_field("value", &self.to_f64())?;
        st.end()
    }
}
