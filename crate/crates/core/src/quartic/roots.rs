use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BinaryQuartic;
use crate::error::{Error, Result};
use crate::exactmath::{real_root_count, squarefree_decomposition, UniPoly};

/// One square-free factor of `q` with its multiplicity and real-root count.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RealFactor {
    pub factor: UniPoly,
    pub multiplicity: u32,
    pub real_roots: usize,
}

/// Roots of the quartic on ℝP¹, with the point at infinity carrying
/// multiplicity `4 − deg q`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RootStructure {
    pub infinity_multiplicity: u32,
    pub factors: Vec<RealFactor>,
    /// Multiplicity of each complex-conjugate pair, descending.
    pub complex_pairs: Vec<u32>,
}

impl RootStructure {
    /// Multiplicities of the real roots (infinity included), descending.
    pub fn real_multiplicities(&self) -> Vec<u32> {
        let mut out: Vec<u32> =
            self.factors.iter().flat_map(|f| std::iter::repeat_n(f.multiplicity, f.real_roots)).collect();
        if self.infinity_multiplicity > 0 {
            out.push(self.infinity_multiplicity);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn has_repeated_root(&self) -> bool {
        self.real_multiplicities().iter().chain(&self.complex_pairs).any(|&m| m > 1)
    }

    pub fn is_quadruple(&self) -> bool {
        self.real_multiplicities() == [4]
    }

    pub fn web_type(&self) -> Result<WebType> {
        let real = self.real_multiplicities();
        let cc = &self.complex_pairs;
        let t = match (real.as_slice(), cc.as_slice()) {
            ([1, 1, 1, 1], []) => WebType::BiCyclide,
            ([], [1, 1]) => WebType::FlatRingCyclide,
            ([1, 1], [1]) => WebType::DiskCyclide,
            ([2, 1, 1], []) => WebType::InverseProlateSpheroidal,
            ([2], [1]) => WebType::InverseOblateSpheroidal,
            ([], [2]) => WebType::Toroidal,
            ([2, 2], []) => WebType::Bispherical,
            ([3, 1], []) => WebType::Cardioid,
            ([4], []) => WebType::TangentSphere,
            _ => {
                return Err(Error::Consistency(format!(
                    "root partition real={real:?} complex pairs={cc:?} does not total four"
                )))
            }
        };
        Ok(t)
    }
}

pub fn root_structure(q: &BinaryQuartic) -> Result<RootStructure> {
    q.require_nonzero("root_structure")?;
    let poly = q.dehomogenize();
    let degree = poly.degree().unwrap_or(0) as u32;
    let mut factors = Vec::new();
    let mut complex_pairs = Vec::new();
    for (factor, multiplicity) in squarefree_decomposition(&poly)? {
        let real_roots = real_root_count(&factor)?;
        let pairs = (factor.degree().unwrap_or(0) - real_roots) / 2;
        complex_pairs.extend(std::iter::repeat_n(multiplicity, pairs));
        factors.push(RealFactor { factor, multiplicity, real_roots });
    }
    complex_pairs.sort_unstable_by(|a, b| b.cmp(a));
    Ok(RootStructure { infinity_multiplicity: 4 - degree, factors, complex_pairs })
}

pub fn classify_by_roots(q: &BinaryQuartic) -> Result<WebType> {
    root_structure(q)?.web_type()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WebType {
    BiCyclide,
    FlatRingCyclide,
    DiskCyclide,
    InverseProlateSpheroidal,
    InverseOblateSpheroidal,
    Toroidal,
    Bispherical,
    Cardioid,
    TangentSphere,
}

impl WebType {
    pub const ALL: [WebType; 9] = [
        WebType::BiCyclide,
        WebType::FlatRingCyclide,
        WebType::DiskCyclide,
        WebType::InverseProlateSpheroidal,
        WebType::InverseOblateSpheroidal,
        WebType::Toroidal,
        WebType::Bispherical,
        WebType::Cardioid,
        WebType::TangentSphere,
    ];

    pub fn label(self) -> &'static str {
        match self {
            WebType::BiCyclide => "Bi-cyclide",
            WebType::FlatRingCyclide => "Flat-ring cyclide",
            WebType::DiskCyclide => "Disk cyclide",
            WebType::InverseProlateSpheroidal => "Inverse prolate spheroidal",
            WebType::InverseOblateSpheroidal => "Inverse oblate spheroidal",
            WebType::Toroidal => "Toroidal",
            WebType::Bispherical => "Bispherical",
            WebType::Cardioid => "Cardioid",
            WebType::TangentSphere => "Tangent sphere",
        }
    }

    pub fn root_description(self) -> &'static str {
        match self {
            WebType::BiCyclide => "4 distinct real",
            WebType::FlatRingCyclide => "2 distinct complex-conjugate pairs",
            WebType::DiskCyclide => "2 distinct real, 1 complex-conjugate pair",
            WebType::InverseProlateSpheroidal => "1 double real, 2 simple real",
            WebType::InverseOblateSpheroidal => "1 double real, 1 complex-conjugate pair",
            WebType::Toroidal => "1 double complex-conjugate pair",
            WebType::Bispherical => "2 double real",
            WebType::Cardioid => "1 triple real, 1 simple real",
            WebType::TangentSphere => "1 quadruple real",
        }
    }
}

impl fmt::Display for WebType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for WebType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_alphanumeric()).collect::<String>().to_lowercase();
        WebType::ALL
            .into_iter()
            .find(|t| {
                let label: String =
                    t.label().chars().filter(|c| c.is_alphanumeric()).collect::<String>().to_lowercase();
                let debug = format!("{t:?}").to_lowercase();
                key == label || key == debug
            })
            .ok_or_else(|| Error::Parse(format!("unknown web type `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn structure_examples() {
        let s = root_structure(&BinaryQuartic::from_ints([1, 0, 2, 0, 1])).unwrap();
        assert_eq!(s.complex_pairs, vec![2]);
        assert!(s.real_multiplicities().is_empty());
        let s = root_structure(&BinaryQuartic::from_ints([0, 1, 0, 0, 0])).unwrap();
        assert_eq!((s.infinity_multiplicity, s.real_multiplicities()), (1, vec![3, 1]));
        let s = root_structure(&BinaryQuartic::from_ints([0, 0, 0, 0, 1])).unwrap();
        assert_eq!(s.infinity_multiplicity, 4);
        assert!(s.is_quadruple());
        assert!(root_structure(&BinaryQuartic::from_ints([0; 5])).is_err());
    }

    #[test]
    fn classification_examples() {
        let bicyclide = BinaryQuartic::new([rat(-1, 4), int(0), rat(5, 4), int(0), int(-1)]);
        assert_eq!(classify_by_roots(&bicyclide).unwrap(), WebType::BiCyclide);
        assert_eq!(
            classify_by_roots(&BinaryQuartic::from_ints([1, 0, -1, 0, 0])).unwrap(),
            WebType::InverseProlateSpheroidal
        );
        let toroidal = BinaryQuartic::new([rat(1, 2), int(0), int(1), int(0), rat(1, 2)]);
        assert_eq!(classify_by_roots(&toroidal).unwrap(), WebType::Toroidal);
        assert_eq!(
            classify_by_roots(&BinaryQuartic::from_ints([1, 0, 1, 0, 0])).unwrap(),
            WebType::InverseOblateSpheroidal
        );
        assert_eq!(classify_by_roots(&BinaryQuartic::from_ints([1, 0, -1, 0, -2])).unwrap(), WebType::DiskCyclide);
        assert_eq!(classify_by_roots(&BinaryQuartic::from_ints([0, 0, 1, 0, 0])).unwrap(), WebType::Bispherical);
    }

    #[test]
    fn web_type_names_round_trip() {
        for t in WebType::ALL {
            assert_eq!(t.label().parse::<WebType>().unwrap(), t);
            assert_eq!(format!("{t:?}").parse::<WebType>().unwrap(), t);
        }
    }
}
