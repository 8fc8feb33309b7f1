use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Edge density `edges / C(vertices, 2)`, exactly; a single vertex has density 1.
pub fn density(edge_count: u64, vertex_count: u64) -> Result<Ratio<u64>> {
    match vertex_count {
        0 => Err(Error::Contract("density of an empty vertex set".into())),
        1 => Ok(Ratio::from_integer(1)),
        k => {
            let pairs = k * (k - 1) / 2;
            if edge_count > pairs {
                return Err(Error::Contract(format!(
                    "{edge_count} edges exceed C({k}, 2) = {pairs}"
                )));
            }
            Ok(Ratio::new(edge_count, pairs))
        }
    }
}

/// A density threshold in `(0, 1]`, held as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rho {
    num: u64,
    den: u64,
}

impl Rho {
    pub const ONE: Rho = Rho { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Rho> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::Argument(format!(
                "density threshold {num}/{den} is not in (0, 1]"
            )));
        }
        let r = Ratio::new(num, den);
        Ok(Rho {
            num: *r.numer(),
            den: *r.denom(),
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn as_ratio(&self) -> Ratio<u64> {
        Ratio::new_raw(self.num, self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `edges / C(vertices, 2) >= rho`, compared by cross-multiplication.
    /// Zero or one vertex always qualifies.
    #[inline]
    pub fn admits(&self, edges: u64, vertices: u64) -> bool {
        if vertices <= 1 {
            return true;
        }
        let lhs = 2 * edges as u128 * self.den as u128;
        let rhs = self.num as u128 * vertices as u128 * (vertices as u128 - 1);
        lhs >= rhs
    }

    /// Density test for `C ∪ V(G)` where the clique `C` (size `clique`) is
    /// fully joined to the `vertices` of a subgraph with `edges` edges.
    #[inline]
    pub fn admits_extension(&self, edges: u64, vertices: u64, clique: u64) -> bool {
        let total_edges = edges + clique * vertices + clique * clique.saturating_sub(1) / 2;
        self.admits(total_edges, vertices + clique)
    }
}

impl FromStr for Rho {
    type Err = Error;

    /// Parses a decimal such as `0.8`, `1`, `1.0` or `.25` into an exact fraction.
    fn from_str(s: &str) -> Result<Rho> {
        let bad = || Error::Argument(format!("cannot parse density threshold {s:?}"));
        let s = s.trim();
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if (int_part.is_empty() && frac_part.is_empty())
            || !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.len() > 18
        {
            return Err(bad());
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let int: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac))
            .ok_or_else(bad)?;
        Rho::new(num, den)
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}
