use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest domain a [`FiniteModel`] can represent: `lt` is packed into 64 bits.
pub const MAX_DOMAIN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("domain size {n} exceeds the cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("element {element} is outside the domain 0..{n}")]
    OutOfRange { element: usize, n: usize },
    #[error("malformed model text: {0}")]
    Parse(String),
}

/// A structure over `{0..n-1}` interpreting `lt`, `occ` and `img`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteModel {
    n: usize,
    lt: u64,
    occ: u8,
    img: u8,
}

impl FiniteModel {
    /// The model with every relation empty.
    pub fn empty(n: usize) -> Result<Self, ModelError> {
        if n > MAX_DOMAIN {
            return Err(ModelError::SizeCapExceeded { n, cap: MAX_DOMAIN });
        }
        Ok(FiniteModel {
            n,
            lt: 0,
            occ: 0,
            img: 0,
        })
    }

    /// Builds a model from explicit tables.
    pub fn from_tables(lt: &[Vec<bool>], occ: &[bool], img: &[bool]) -> Result<Self, ModelError> {
        let n = occ.len();
        let mut m = FiniteModel::empty(n)?;
        if img.len() != n || lt.len() != n || lt.iter().any(|row| row.len() != n) {
            return Err(ModelError::Parse(format!("tables are not all of size {n}")));
        }
        for (i, row) in lt.iter().enumerate() {
            m.set_occ(i, occ[i])?;
            m.set_img(i, img[i])?;
            for (j, &less) in row.iter().enumerate() {
                m.set_lt(i, j, less)?;
            }
        }
        Ok(m)
    }

    /// Decodes an enumeration index: `lt` bits (row-major) lowest, then `occ`,
    /// then `img`.
    pub fn from_index(n: usize, index: u128) -> Result<Self, ModelError> {
        let m = FiniteModel::empty(n)?;
        let n2 = n * n;
        if index >> (n2 + 2 * n) != 0 {
            return Err(ModelError::Parse(format!(
                "index {index} out of range for n={n}"
            )));
        }
        let low = |shift: usize, width: usize| ((index >> shift) & ((1u128 << width) - 1)) as u64;
        Ok(FiniteModel {
            lt: low(0, n2),
            occ: low(n2, n) as u8,
            img: low(n2 + n, n) as u8,
            ..m
        })
    }

    pub(crate) fn from_parts(n: usize, lt: u64, occ: u8, img: u8) -> Self {
        FiniteModel { n, lt, occ, img }
    }

    pub fn index(&self) -> u128 {
        let n2 = self.n * self.n;
        self.lt as u128 | (self.occ as u128) << n2 | (self.img as u128) << (n2 + self.n)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn lt_bits(&self) -> u64 {
        self.lt
    }

    pub fn occ_bits(&self) -> u8 {
        self.occ
    }

    pub fn img_bits(&self) -> u8 {
        self.img
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.lt >> (i * self.n + j) & 1 == 1
    }

    pub fn occ(&self, i: usize) -> bool {
        i < self.n && self.occ >> i & 1 == 1
    }

    pub fn img(&self, i: usize) -> bool {
        i < self.n && self.img >> i & 1 == 1
    }

    fn check(&self, element: usize) -> Result<(), ModelError> {
        if element < self.n {
            Ok(())
        } else {
            Err(ModelError::OutOfRange { element, n: self.n })
        }
    }

    pub fn set_lt(&mut self, i: usize, j: usize, value: bool) -> Result<(), ModelError> {
        self.check(i)?;
        self.check(j)?;
        let bit = 1u64 << (i * self.n + j);
        if value {
            self.lt |= bit;
        } else {
            self.lt &= !bit;
        }
        Ok(())
    }

    pub fn set_occ(&mut self, i: usize, value: bool) -> Result<(), ModelError> {
        self.check(i)?;
        if value {
            self.occ |= 1 << i;
        } else {
            self.occ &= !(1 << i);
        }
        Ok(())
    }

    pub fn set_img(&mut self, i: usize, value: bool) -> Result<(), ModelError> {
        self.check(i)?;
        if value {
            self.img |= 1 << i;
        } else {
            self.img &= !(1 << i);
        }
        Ok(())
    }

    /// Successor sets of `lt`, one bitmask per element.
    pub fn lt_rows(&self) -> Vec<u64> {
        lt_rows(self.n, self.lt)
    }

    /// `lt` is irreflexive and transitive.
    pub fn is_strict_order(&self) -> bool {
        is_strict_order_bits(self.n, self.lt)
    }

    pub fn lt_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn lt_rows(n: usize, lt: u64) -> Vec<u64> {
    let row_mask = if n == 0 { 0 } else { (1u64 << n) - 1 };
    (0..n).map(|i| (lt >> (i * n)) & row_mask).collect()
}

pub(crate) fn is_strict_order_bits(n: usize, lt: u64) -> bool {
    let mut rows = [0u64; MAX_DOMAIN];
    for (i, row) in lt_rows(n, lt).into_iter().enumerate() {
        rows[i] = row;
    }
    rows[..n].iter().enumerate().all(|(i, &row)| {
        row >> i & 1 == 0
            && (0..n)
                .filter(|j| row >> j & 1 == 1)
                .all(|j| rows[j] & !row == 0)
    })
}

fn write_set(f: &mut fmt::Formatter<'_>, bits: u8, n: usize) -> fmt::Result {
    let items: Vec<String> = (0..n)
        .filter(|i| bits >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    write!(f, "{{{}}}", items.join(","))
}

/// `n=2; lt={(0,1),(1,0)}; occ={0,1}; img={}`
impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .lt_pairs()
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        write!(f, "n={}; lt={{{}}}; occ=", self.n, pairs.join(","))?;
        write_set(f, self.occ, self.n)?;
        f.write_str("; img=")?;
        write_set(f, self.img, self.n)
    }
}

impl fmt::Debug for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModel({self})")
    }
}

fn braced<'a>(field: &'a str, key: &str) -> Result<&'a str, ModelError> {
    field
        .trim()
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix('='))
        .map(str::trim)
        .and_then(|r| r.strip_prefix('{'))
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| {
            ModelError::Parse(format!(
                "expected `{key}={{...}}`, found `{}`",
                field.trim()
            ))
        })
}

fn element(s: &str) -> Result<usize, ModelError> {
    s.trim()
        .parse()
        .map_err(|_| ModelError::Parse(format!("`{}` is not a domain element", s.trim())))
}

impl FromStr for FiniteModel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split(';').collect();
        let [n_field, lt_field, occ_field, img_field] = fields.as_slice() else {
            return Err(ModelError::Parse(
                "expected four `;`-separated fields".into(),
            ));
        };
        let n = n_field
            .trim()
            .strip_prefix("n=")
            .ok_or_else(|| ModelError::Parse("expected `n=<size>`".into()))
            .and_then(element)?;
        let mut m = FiniteModel::empty(n)?;
        let lt = braced(lt_field, "lt")?;
        let mut rest = lt.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| ModelError::Parse(format!("expected `(i,j)` in `{lt}`")))?;
            let (pair, after) = body
                .split_once(')')
                .ok_or_else(|| ModelError::Parse(format!("unclosed pair in `{lt}`")))?;
            let (i, j) = pair
                .split_once(',')
                .ok_or_else(|| ModelError::Parse(format!("expected `(i,j)`, found `({pair})`")))?;
            m.set_lt(element(i)?, element(j)?, true)?;
            rest = after.trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        for (field, key) in [(occ_field, "occ"), (img_field, "img")] {
            let items = braced(field, key)?;
            for item in items.split(',').filter(|t| !t.trim().is_empty()) {
                let e = element(item)?;
                if key == "occ" {
                    m.set_occ(e, true)?;
                } else {
                    m.set_img(e, true)?;
                }
            }
        }
        Ok(m)
    }
}

impl Serialize for FiniteModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FiniteModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
