use std::fmt;

use super::EmbedError;
use crate::pauli::{PauliAxis, PauliString, Phase};

/// Which qubits carry their axis into the basis-change string `χ′`.
///
/// On the support of `χ` a set bit moves that qubit's axis into `χ′` (and
/// out of `χ″`). A set bit outside the support places the `extension` axis
/// on that qubit in both `χ′` and `χ″`, where the two copies cancel in the
/// product. This second form is what lets a string such as `X…X` act as
/// `χ′` for a term `IX…X` with `χ″ = XI…I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorMask {
    bits: Vec<bool>,
    extension: Option<PauliAxis>,
}

impl FactorMask {
    /// Validate `bits` against `chi` and canonicalize: an extension axis is
    /// kept only when some off-support bit is set.
    pub fn new(
        chi: &PauliString,
        bits: Vec<bool>,
        extension: Option<PauliAxis>,
    ) -> Result<Self, EmbedError> {
        if bits.len() != chi.len() {
            return Err(EmbedError::InvalidMask(format!(
                "mask has {} bits for a {}-qubit term",
                bits.len(),
                chi.len()
            )));
        }
        let off_support = bits
            .iter()
            .zip(chi.axes())
            .any(|(&b, a)| b && a.is_identity());
        let extension = if off_support {
            match extension {
                Some(PauliAxis::I) | None => {
                    return Err(EmbedError::InvalidMask(
                        "mask marks qubits outside the term's support but has no X/Y/Z extension axis"
                            .into(),
                    ))
                }
                some => some,
            }
        } else {
            None
        };
        Ok(FactorMask { bits, extension })
    }

    /// Every qubit of `chi`'s support; `χ′ = χ`, `χ″ = 𝟙`.
    pub fn full_support(chi: &PauliString) -> Self {
        FactorMask {
            bits: chi.axes().iter().map(|a| !a.is_identity()).collect(),
            extension: None,
        }
    }

    /// Recover the mask that produces a given `χ′`.
    pub fn from_chi_prime(chi: &PauliString, chi_prime: &PauliString) -> Result<Self, EmbedError> {
        if chi.len() != chi_prime.len() {
            return Err(EmbedError::InvalidMask(format!(
                "chi' has {} qubits, term has {}",
                chi_prime.len(),
                chi.len()
            )));
        }
        let mut bits = Vec::with_capacity(chi.len());
        let mut extension = None;
        for (q, (&c, &p)) in chi.axes().iter().zip(chi_prime.axes()).enumerate() {
            match (c.is_identity(), p.is_identity()) {
                (_, true) => bits.push(false),
                (false, false) if c == p => bits.push(true),
                (false, false) => {
                    return Err(EmbedError::InvalidMask(format!(
                        "chi' axis {p} on qubit {q} differs from the term's axis {c}"
                    )))
                }
                (true, false) => {
                    if extension.is_some_and(|e| e != p) {
                        return Err(EmbedError::InvalidMask(
                            "chi' uses more than one axis outside the term's support".into(),
                        ));
                    }
                    extension = Some(p);
                    bits.push(true);
                }
            }
        }
        Self::new(chi, bits, extension)
    }

    /// Parse `0110` or `1111:X` (bits, then an optional extension axis).
    pub fn parse(text: &str, chi: &PauliString) -> Result<Self, EmbedError> {
        let (bits_text, ext_text) = match text.split_once(':') {
            Some((b, e)) => (b, Some(e)),
            None => (text, None),
        };
        let bits = bits_text
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(EmbedError::InvalidMask(format!(
                    "invalid mask character {other:?} at position {i}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let extension = match ext_text {
            None => None,
            Some(e) => {
                let mut chars = e.chars();
                match (chars.next().and_then(PauliAxis::from_char), chars.next()) {
                    (Some(a), None) if !a.is_identity() => Some(a),
                    _ => {
                        return Err(EmbedError::InvalidMask(format!(
                            "invalid extension axis `{e}`"
                        )))
                    }
                }
            }
        };
        Self::new(chi, bits, extension)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn extension(&self) -> Option<PauliAxis> {
        self.extension
    }

    pub fn set_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Split `chi` into `(χ′, χ″)` with `χ′·χ″ = χ`, phase +1.
    pub fn factor(&self, chi: &PauliString) -> Result<(PauliString, PauliString), EmbedError> {
        if self.bits.len() != chi.len() {
            return Err(EmbedError::InvalidMask(format!(
                "mask has {} bits for a {}-qubit term",
                self.bits.len(),
                chi.len()
            )));
        }
        let mut prime = Vec::with_capacity(chi.len());
        let mut second = Vec::with_capacity(chi.len());
        for (&bit, &axis) in self.bits.iter().zip(chi.axes()) {
            match (bit, axis.is_identity()) {
                (false, _) => {
                    prime.push(PauliAxis::I);
                    second.push(axis);
                }
                (true, false) => {
                    prime.push(axis);
                    second.push(PauliAxis::I);
                }
                (true, true) => {
                    let e = self.extension.ok_or_else(|| {
                        EmbedError::InvalidMask("off-support bit without extension axis".into())
                    })?;
                    prime.push(e);
                    second.push(e);
                }
            }
        }
        let prime = PauliString::new(prime)?;
        let second = PauliString::new(second)?;
        debug_assert_eq!(
            prime.multiply(&second).map(|r| (r.phase, r.string)),
            Ok((Phase::One, chi.clone()))
        );
        Ok((prime, second))
    }
}

impl fmt::Display for FactorMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        if let Some(e) = self.extension {
            write!(f, ":{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn disjoint_factorization_example() {
        let chi = p("XYZIY");
        let mask = FactorMask::parse("11000", &chi).unwrap();
        let (a, b) = mask.factor(&chi).unwrap();
        assert_eq!(a, p("XYIII"));
        assert_eq!(b, p("IIZIY"));
    }

    #[test]
    fn extension_covers_missing_qubit() {
        let chi = p("IXXX");
        let mask = FactorMask::parse("1111:X", &chi).unwrap();
        let (a, b) = mask.factor(&chi).unwrap();
        assert_eq!(a, p("XXXX"));
        assert_eq!(b, p("XIII"));
        assert_eq!(mask.to_string(), "1111:X");
        assert_eq!(FactorMask::from_chi_prime(&chi, &a).unwrap(), mask);
    }

    #[test]
    fn unused_extension_is_dropped() {
        let chi = p("XXI");
        let mask = FactorMask::parse("110:Z", &chi).unwrap();
        assert_eq!(mask, FactorMask::full_support(&chi));
        assert_eq!(mask.to_string(), "110");
    }

    #[test]
    fn invalid_masks() {
        let chi = p("IXX");
        assert!(FactorMask::parse("11", &chi).is_err());
        assert!(FactorMask::parse("111", &chi).is_err());
        assert!(FactorMask::parse("1a1", &chi).is_err());
        assert!(FactorMask::parse("111:I", &chi).is_err());
        assert!(FactorMask::from_chi_prime(&chi, &p("IZX")).is_err());
        assert!(FactorMask::from_chi_prime(&chi, &p("XXX")).is_ok());
    }

    #[test]
    fn every_mask_multiplies_back() {
        let chi = p("XIYZ");
        for bits in 0u32..16 {
            for ext in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
                let v: Vec<bool> = (0..4).map(|q| bits >> q & 1 == 1).collect();
                let mask = FactorMask::new(&chi, v, Some(ext)).unwrap();
                let (a, b) = mask.factor(&chi).unwrap();
                let r = a.multiply(&b).unwrap();
                assert_eq!(r.phase, Phase::One);
                assert_eq!(r.string, chi);
                assert!(a.commutes(&b).unwrap());
            }
        }
    }
}
