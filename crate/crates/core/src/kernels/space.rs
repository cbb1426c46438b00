use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Bergman,
    Hardy,
    Dirichlet,
    #[serde(rename = "reallp")]
    RealLp,
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bergman" => Ok(Space::Bergman),
            "hardy" => Ok(Space::Hardy),
            "dirichlet" => Ok(Space::Dirichlet),
            "reallp" | "real_lp" | "lp" => Ok(Space::RealLp),
            other => Err(Error::param(format!("unknown space '{other}'"))),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Bergman => "bergman",
            Space::Hardy => "hardy",
            Space::Dirichlet => "dirichlet",
            Space::RealLp => "reallp",
        })
    }
}

/// A function space together with its integrability exponent and weight.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    space: Space,
    p: f64,
    alpha: f64,
}

impl SpaceParams {
    /// Validates the parameter constraints of each space. The Dirichlet
    /// space ignores the arguments and uses `(p, α) = (2, 1)`.
    pub fn new(space: Space, p: f64, alpha: f64) -> Result<Self> {
        if space == Space::Dirichlet {
            return Ok(SpaceParams {
                space,
                p: 2.0,
                alpha: 1.0,
            });
        }
        if p.is_nan() || p < 1.0 {
            return Err(Error::param(format!("p must lie in [1, ∞], got {p}")));
        }
        if p.is_infinite() && space == Space::Bergman {
            return Err(Error::param("p = ∞ is only available for hardy and reallp"));
        }
        match space {
            Space::Bergman if !(alpha > 0.0) => Err(Error::param(format!("bergman spaces need alpha > 0, got {alpha}"))),
            Space::Hardy | Space::RealLp if !(alpha > -1.0) => {
                Err(Error::param(format!("{space} spaces need alpha > -1, got {alpha}")))
            }
            _ if !alpha.is_finite() => Err(Error::param("alpha must be finite")),
            _ => Ok(SpaceParams { space, p, alpha }),
        }
    }

    pub fn bergman(p: f64, alpha: f64) -> Result<Self> {
        SpaceParams::new(Space::Bergman, p, alpha)
    }

    pub fn hardy(p: f64, alpha: f64) -> Result<Self> {
        SpaceParams::new(Space::Hardy, p, alpha)
    }

    pub fn real_lp(p: f64, alpha: f64) -> Result<Self> {
        SpaceParams::new(Space::RealLp, p, alpha)
    }

    pub fn dirichlet() -> Self {
        SpaceParams {
            space: Space::Dirichlet,
            p: 2.0,
            alpha: 1.0,
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Homogeneity index `(1+α)/p`: the dilation `f(·/t)` scales the norm
    /// by `t^index`. Zero for `p = ∞` and for the Dirichlet space.
    pub fn index(&self) -> f64 {
        if self.space == Space::Dirichlet || self.p.is_infinite() {
            0.0
        } else {
            (1.0 + self.alpha) / self.p
        }
    }

    /// Power of `t` multiplying `|φ(t)|` in the moment integral.
    pub fn moment_exponent(&self) -> f64 {
        self.index() - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SpaceParams::bergman(2.0, 0.0).is_err());
        assert!(SpaceParams::bergman(f64::INFINITY, 1.0).is_err());
        assert!(SpaceParams::hardy(f64::INFINITY, 0.0).is_ok());
        assert!(SpaceParams::hardy(0.5, 0.0).is_err());
        assert!(SpaceParams::real_lp(2.0, -1.0).is_err());
        let d = SpaceParams::new(Space::Dirichlet, 7.0, 3.0).unwrap();
        assert_eq!((d.p(), d.alpha(), d.moment_exponent()), (2.0, 1.0, -1.0));
        assert_eq!(SpaceParams::hardy(f64::INFINITY, 0.0).unwrap().moment_exponent(), -1.0);
        assert_eq!(SpaceParams::bergman(2.0, 1.0).unwrap().moment_exponent(), 0.0);
    }
}
