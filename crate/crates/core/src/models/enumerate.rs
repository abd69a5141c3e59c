use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::model::{is_strict_order_bits, FiniteModel, ModelError};

/// Which `lt` relations a scan ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every binary relation.
    Arbitrary,
    /// Only irreflexive, transitive relations.
    Strict,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Arbitrary => "arbitrary",
            Mode::Strict => "strict",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arbitrary" => Ok(Mode::Arbitrary),
            "strict" | "strict-order" => Ok(Mode::Strict),
            _ => Err(format!("unknown mode `{s}` (expected arbitrary or strict)")),
        }
    }
}

/// Size caps for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanLimits {
    pub max_n_arbitrary: usize,
    pub max_n_strict: usize,
}

impl ScanLimits {
    /// Ceiling that overrides cannot raise.
    pub const HARD: ScanLimits = ScanLimits {
        max_n_arbitrary: 5,
        max_n_strict: 5,
    };

    pub fn cap(&self, mode: Mode) -> usize {
        match mode {
            Mode::Arbitrary => self.max_n_arbitrary,
            Mode::Strict => self.max_n_strict,
        }
    }

    pub fn check(&self, n: usize, mode: Mode) -> Result<(), ModelError> {
        let cap = self.cap(mode).min(ScanLimits::HARD.cap(mode));
        if n > cap {
            Err(ModelError::SizeCapExceeded { n, cap })
        } else {
            Ok(())
        }
    }
}

impl Default for ScanLimits {
    fn default() -> Self {
        ScanLimits {
            max_n_arbitrary: 4,
            max_n_strict: 5,
        }
    }
}

/// Every strict order on `{0..n-1}` as an `lt` bitmask, ascending.
pub fn strict_orders(n: usize) -> Vec<u64> {
    let off_diagonal: Vec<usize> = (0..n * n).filter(|b| b / n != b % n).collect();
    let mut out = Vec::new();
    for k in 0u64..1 << off_diagonal.len() {
        let mut lt = 0u64;
        for (i, &bit) in off_diagonal.iter().enumerate() {
            lt |= (k >> i & 1) << bit;
        }
        if is_strict_order_bits(n, lt) {
            out.push(lt);
        }
    }
    out
}

/// The models of one size, addressable by position. Positions ascend in
/// model-index order.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    n: usize,
    orders: Option<Vec<u64>>,
}

impl ModelSpace {
    pub fn new(n: usize, mode: Mode, limits: &ScanLimits) -> Result<Self, ModelError> {
        limits.check(n, mode)?;
        let orders = match mode {
            Mode::Arbitrary => None,
            Mode::Strict => Some(strict_orders(n)),
        };
        Ok(ModelSpace { n, orders })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> u64 {
        let labels = 1u64 << (2 * self.n);
        match &self.orders {
            None => labels << (self.n * self.n),
            Some(orders) => labels * orders.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, pos: u64) -> FiniteModel {
        match &self.orders {
            None => FiniteModel::from_index(self.n, pos as u128).expect("position in range"),
            Some(orders) => {
                let k = orders.len() as u64;
                let lt = orders[(pos % k) as usize];
                let labels = pos / k;
                let occ = (labels & ((1 << self.n) - 1)) as u8;
                let img = (labels >> self.n) as u8;
                FiniteModel::from_parts(self.n, lt, occ, img)
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = FiniteModel> + '_ {
        (0..self.len()).map(move |p| self.get(p))
    }
}

/// Every model of size exactly `n`, in ascending index order.
pub fn enumerate_models(
    n: usize,
    mode: Mode,
    limits: &ScanLimits,
) -> Result<impl Iterator<Item = FiniteModel>, ModelError> {
    let space = ModelSpace::new(n, mode, limits)?;
    Ok((0..space.len()).map(move |p| space.get(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Independent oracle: nested loops over a boolean matrix.
    fn count_strict_by_triple_loop(n: usize) -> usize {
        let mut count = 0;
        for bits in 0u64..1 << (n * n) {
            let r: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| bits >> (i * n + j) & 1 == 1).collect())
                .collect();
            let irreflexive = (0..n).all(|i| !r[i][i]);
            let mut transitive = true;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if r[a][b] && r[b][c] && !r[a][c] {
                            transitive = false;
                        }
                    }
                }
            }
            if irreflexive && transitive {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn strict_order_counts_match_the_oracle() {
        for (n, expected) in [(0, 1), (1, 1), (2, 3), (3, 19), (4, 219)] {
            assert_eq!(strict_orders(n).len(), expected, "n={n}");
            assert_eq!(count_strict_by_triple_loop(n), expected, "n={n}");
        }
        assert_eq!(strict_orders(5).len(), 4231);
    }

    #[test]
    fn arbitrary_counts_and_distinctness() {
        let limits = ScanLimits::default();
        for (n, expected) in [(0u64, 1u64), (1, 8), (2, 256)] {
            let models: Vec<_> = enumerate_models(n as usize, Mode::Arbitrary, &limits)
                .unwrap()
                .collect();
            assert_eq!(models.len() as u64, expected);
            let distinct: HashSet<_> = models.iter().copied().collect();
            assert_eq!(distinct.len() as u64, expected);
        }
        assert_eq!(
            ModelSpace::new(3, Mode::Arbitrary, &limits).unwrap().len(),
            32768
        );
    }

    #[test]
    fn strict_mode_yields_exactly_the_strict_models_in_index_order() {
        let limits = ScanLimits::default();
        let strict: Vec<_> = enumerate_models(2, Mode::Strict, &limits)
            .unwrap()
            .collect();
        let filtered: Vec<_> = enumerate_models(2, Mode::Arbitrary, &limits)
            .unwrap()
            .filter(|m| m.is_strict_order())
            .collect();
        assert_eq!(strict, filtered);
        assert_eq!(strict.len(), 3 * 16);
        assert!(strict.windows(2).all(|w| w[0].index() < w[1].index()));
    }

    #[test]
    fn caps_are_enforced() {
        let limits = ScanLimits::default();
        assert!(matches!(
            ModelSpace::new(5, Mode::Arbitrary, &limits),
            Err(ModelError::SizeCapExceeded { n: 5, cap: 4 })
        ));
        let raised = ScanLimits {
            max_n_arbitrary: 9,
            max_n_strict: 9,
        };
        assert!(raised.check(5, Mode::Arbitrary).is_ok());
        assert!(raised.check(6, Mode::Arbitrary).is_err());
        assert!(raised.check(6, Mode::Strict).is_err());
    }
}
