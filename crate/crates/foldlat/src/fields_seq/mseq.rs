use std::collections::HashMap;

use serde::Serialize;

use super::gf::FiniteField;
use crate::error::{Error, Result};

/// A maximal-length LFSR sequence of period 2^n − 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MSequence {
    pub order: u32,
    /// Feedback polynomial, high to low, e.g. "100101".
    pub poly: String,
    pub bits: Vec<u8>,
}

impl MSequence {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn to_bit_string(&self) -> String {
        bits_to_string(&self.bits)
    }
}

pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("{c:?} is not a bit"))),
        })
        .collect()
}

/// LFSR output s_{t+n} = Σ c_i s_{t+i} from the seed 0…01, where
/// x^n + Σ c_i x^i is `poly` (high to low) or the canonical primitive
/// polynomial when `poly` is None.
pub fn msequence(n: u32, poly: Option<&str>) -> Result<MSequence> {
    if !(2..=24).contains(&n) {
        return Err(Error::ParamOutOfRange(format!("M-sequence order must be in 2..=24, got {n}")));
    }
    let field = match poly {
        None => FiniteField::new(2, n)?,
        Some(text) => {
            let coeffs: Vec<u64> = parse_bits(text)
                .map_err(|_| Error::NotPrimitivePolynomial(text.to_string()))?
                .into_iter()
                .map(u64::from)
                .collect();
            if coeffs.len() != n as usize + 1 {
                return Err(Error::NotPrimitivePolynomial(format!("{text} does not have degree {n}")));
            }
            FiniteField::with_modulus(2, &coeffs).map_err(|_| Error::NotPrimitivePolynomial(text.to_string()))?
        }
    };
    let modulus = field.modulus();
    let mut taps = 0u32;
    for i in 0..n as usize {
        if modulus[n as usize - i] == 1 {
            taps |= 1 << i;
        }
    }
    let len = (1usize << n) - 1;
    // state bit i holds s_{t+i}
    let mut state: u32 = 1 << (n - 1);
    let mut bits = Vec::with_capacity(len);
    for _ in 0..len {
        bits.push((state & 1) as u8);
        let next = (state & taps).count_ones() & 1;
        state = (state >> 1) | (next << (n - 1));
    }
    Ok(MSequence { order: n, poly: field.modulus_string(), bits })
}

/// Outcome of the four M-sequence checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MSequenceReport {
    pub order: Option<u32>,
    pub window: bool,
    pub balance: bool,
    pub shift_add: bool,
    pub autocorrelation: bool,
}

impl MSequenceReport {
    pub fn is_valid(&self) -> bool {
        self.window && self.balance && self.shift_add && self.autocorrelation
    }
}

fn cyclic_window(bits: &[u8], start: usize, n: usize) -> u64 {
    (0..n).fold(0u64, |acc, j| (acc << 1) | bits[(start + j) % bits.len()] as u64)
}

/// Window property, balance, shift-and-add closure, and two-valued
/// autocorrelation.
pub fn validate_msequence(bits: &[u8]) -> MSequenceReport {
    let fail = MSequenceReport { order: None, window: false, balance: false, shift_add: false, autocorrelation: false };
    let len = bits.len();
    let n = (len + 1).trailing_zeros();
    if len < 3 || (len + 1).count_ones() != 1 || bits.iter().any(|&b| b > 1) {
        return fail;
    }
    let n = n as usize;
    let mut where_: HashMap<u64, usize> = HashMap::with_capacity(len);
    let mut window = true;
    for t in 0..len {
        let w = cyclic_window(bits, t, n);
        if w == 0 || where_.insert(w, t).is_some() {
            window = false;
        }
    }
    let ones = bits.iter().filter(|&&b| b == 1).count();
    let balance = ones == len.div_ceil(2);
    let shift_add = window
        && (1..len).all(|t| {
            let sum: Vec<u8> = (0..len).map(|i| bits[i] ^ bits[(i + t) % len]).collect();
            match where_.get(&cyclic_window(&sum, 0, n)) {
                Some(&u) => (0..len).all(|i| sum[i] == bits[(i + u) % len]),
                None => false,
            }
        });
    let autocorrelation = (1..len).all(|t| {
        let c: i64 = (0..len).map(|i| if bits[i] == bits[(i + t) % len] { 1 } else { -1 }).sum();
        c == -1
    });
    MSequenceReport { order: Some(n as u32), window, balance, shift_add, autocorrelation }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_sequences() {
        let s = msequence(4, Some("11001")).unwrap();
        assert_eq!(s.to_bit_string(), "000111101011001");
        let s = msequence(5, None).unwrap();
        assert_eq!(s.poly, "100101");
        assert_eq!(s.to_bit_string(), "0000100101100111110001101110101");
        assert!(matches!(msequence(4, Some("10001")), Err(Error::NotPrimitivePolynomial(_))));
        assert!(matches!(msequence(4, Some("1001")), Err(Error::NotPrimitivePolynomial(_))));
    }

    #[test]
    fn validator_rejects() {
        assert!(!validate_msequence(&[0; 15]).is_valid());
        assert!(!validate_msequence(&[0, 1, 1, 0]).is_valid());
        let mut b = parse_bits("000111101011001").unwrap();
        assert!(validate_msequence(&b).is_valid());
        b[3] ^= 1;
        assert!(!validate_msequence(&b).is_valid());
    }
}
